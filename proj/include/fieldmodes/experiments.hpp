#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fieldmodes {

// Sweep size: kCi keeps every experiment's grid small enough for routine
// runs (multimode counts capped at 100 modes); kFull reproduces the
// complete grids, including the 1088-sphere close-packing sweep.
enum class Scale { kCi, kFull };

struct RunOptions {
  Scale scale = Scale::kCi;
  int jobs = 1;  // worker threads; rows of a sweep are independent
};

// Tabular sweep output. Each row holds the axis values followed by the
// output columns; a row whose evaluation failed carries NaN outputs and the
// diagnostic in row_errors at the same index (clean rows hold ""). The
// config snapshot lists every resolved parameter, so a result can be
// reproduced from its metadata alone; identical inputs give bit-identical
// tables (fixed grids, fixed summation orders, no seeds).
struct ExperimentResult {
  std::string name;
  std::vector<std::string> axes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_errors;
  std::vector<std::pair<std::string, double>> config;
  std::string version;

  bool has_errors() const;
  // Column index by name, counting axes first; DomainError when absent.
  int column_index(const std::string& column) const;
};

// Registered experiments in a fixed order: name and one-line description.
const std::vector<std::pair<std::string, std::string>>& experiment_catalog();

// Runs one named sweep. Unknown names throw UnknownExperimentError; unknown
// override keys throw ParseError naming the key and the experiment. Rows
// that fail numerically are recorded as error markers, never aborting the
// sweep.
ExperimentResult run_experiment(const std::string& name,
                                const std::map<std::string, double>& overrides,
                                const RunOptions& options = {});

// Library version stamped into results and sidecars.
const std::string& library_version();

}  // namespace fieldmodes
