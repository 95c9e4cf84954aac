#include "fieldmodes/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <thread>

#include "fieldmodes/correlators.hpp"
#include "fieldmodes/errors.hpp"
#include "fieldmodes/gaussian.hpp"
#include "fieldmodes/geometry.hpp"
#include "fieldmodes/mode.hpp"
#include "fieldmodes/smearing.hpp"

namespace fieldmodes {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

using Params = std::map<std::string, double>;

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) return {lo};
  for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) return {lo};
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int k = 0; k < n; ++k)
    out.push_back(std::exp(llo + (lhi - llo) * k / (n - 1)));
  return out;
}

std::vector<double> step_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double x = lo + k * step;
    if (x > hi + 1e-9 * std::max(1.0, std::abs(hi))) break;
    out.push_back(x);
  }
  return out;
}

std::vector<double> int_range(int lo, int hi, int step = 1) {
  std::vector<double> out;
  for (int k = lo; k <= hi; k += step) out.push_back(k);
  return out;
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

std::vector<std::vector<double>> one_axis(const std::vector<double>& values) {
  std::vector<std::vector<double>> rows;
  rows.reserve(values.size());
  for (double v : values) rows.push_back({v});
  return rows;
}

// PolyBump pair mode of unit radius centered at (x, 0, ..., 0).
ModeSpec bump_mode(int dimension, double delta, double x) {
  SmearingSpec s;
  s.family = SmearingFamily::kPolyBump;
  s.dimension = dimension;
  s.radius = 1.0;
  s.delta = delta;
  s.center.assign(dimension, 0.0);
  s.center[0] = x;
  return make_pair_mode(s);
}

FieldParams field_of(double dimension, double mass) {
  FieldParams p;
  p.dimension = static_cast<int>(dimension);
  p.mass = mass;
  return p;
}

struct Measures {
  double nu_tilde_min = kNan;
  double log_neg = kNan;
  double entangled = kNan;
  double mi = kNan;
};

Measures measures_of(const GaussianState& state, const Bipartition& split) {
  Measures m;
  m.nu_tilde_min = symplectic_spectrum(partial_transpose(state, split)).min();
  m.log_neg = log_negativity(state, split);
  m.entangled = entanglement_verdict(m.log_neg, split) == "entangled" ? 1.0
                                                                      : 0.0;
  m.mi = mutual_information(state, split);
  return m;
}

Measures measures_of(const Configuration& config, const FieldParams& params,
                     CorrelatorCache& cache) {
  return measures_of(build_covariance(config.modes, params, &cache),
                     config.bipartition);
}

std::vector<double> as_row(const Measures& m) {
  return {m.nu_tilde_min, m.log_neg, m.entangled, m.mi};
}

const std::vector<std::string> kLnColumns = {"nu_tilde_min", "log_neg",
                                             "entangled", "mi"};

SmearingSpec bump_template(double dimension, double delta) {
  SmearingSpec s;
  s.family = SmearingFamily::kPolyBump;
  s.dimension = static_cast<int>(dimension);
  s.radius = 1.0;
  s.delta = delta;
  return s;
}

// A hexagonal ring admits exact contact (rho = 2), where the six outer
// disks also touch each other; the ring generator itself requires rho > 2,
// so contact is served by the one-layer lattice fill, which coincides with
// the contact ring.
Configuration hex_ring_any(double rho, double delta) {
  if (rho <= 2.0 + 1e-12) return hex_layers(6, delta);
  return hex_ring_at_distance(rho, delta);
}

struct Experiment {
  std::string description;
  std::vector<std::string> axes;
  std::vector<std::string> columns;
  Params defaults;
  std::function<std::vector<std::vector<double>>(const Params&, Scale)> grid;
  std::function<std::vector<double>(const std::vector<double>&, const Params&,
                                    CorrelatorCache&)>
      eval;
};

// D = 1 sweeps default to a small mass when the caller fixes neither, since
// the massless field is infrared divergent there.
void default_mass_for_d1(Params& resolved,
                         const std::map<std::string, double>& overrides) {
  if (resolved.at("dimension") == 1.0 && overrides.find("mass") ==
                                             overrides.end() &&
      resolved.at("mass") == 0.0)
    resolved["mass"] = 0.01;
}

std::vector<std::pair<std::string, Experiment>> build_registry() {
  std::vector<std::pair<std::string, Experiment>> reg;

  {
    Experiment e;
    e.description =
        "field and momentum correlators of two equal balls vs. center "
        "distance (dimension=1 defaults mass to 0.01)";
    e.axes = {"rho"};
    e.columns = {"phiphi_self", "pipi_self", "phiphi_cross", "pipi_cross"};
    e.defaults = {{"delta", 1.0}, {"dimension", 3.0}, {"mass", 0.0},
                  {"rho_min", 2.0}, {"rho_max", 100.0}, {"n_rho", 40.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int n = scale == Scale::kFull
                        ? static_cast<int>(p.at("n_rho"))
                        : std::min(12, static_cast<int>(p.at("n_rho")));
      return one_axis(log_grid(p.at("rho_min"), p.at("rho_max"), n));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const FieldParams params = field_of(p.at("dimension"), p.at("mass"));
      const ModeSpec a =
          bump_mode(params.dimension, p.at("delta"), 0.0);
      const ModeSpec b =
          bump_mode(params.dimension, p.at("delta"), axis[0]);
      return std::vector<double>{
          mode_correlator(a, a, params, CorrelatorKind::kPhiPhi, &cache),
          mode_correlator(a, a, params, CorrelatorKind::kPiPi, &cache),
          mode_correlator(a, b, params, CorrelatorKind::kPhiPhi, &cache),
          mode_correlator(a, b, params, CorrelatorKind::kPiPi, &cache)};
    };
    reg.emplace_back("correlations_vs_rho", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "entropy of one ball mode vs. spatial dimension (massless closed "
        "form)";
    e.axes = {"dimension"};
    e.columns = {"nu", "entropy"};
    e.defaults = {{"delta", 1.0}, {"d_min", 2.0}, {"d_max", 20.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int hi = scale == Scale::kFull
                         ? static_cast<int>(p.at("d_max"))
                         : std::min(12, static_cast<int>(p.at("d_max")));
      return one_axis(int_range(static_cast<int>(p.at("d_min")), hi));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache&) {
      const double nu =
          single_mode_nu(p.at("delta"), static_cast<int>(axis[0]));
      GaussianState one;
      one.sigma = nu * Eigen::MatrixXd::Identity(2, 2);
      one.n_modes = 1;
      return std::vector<double>{nu, von_neumann_entropy(one)};
    };
    reg.emplace_back("entropy_vs_D", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "mutual information of two equal balls vs. center distance "
        "(dimension=1 defaults mass to 0.01)";
    e.axes = {"rho"};
    e.columns = {"nu_minus", "nu_plus", "s_a", "s_ab", "mi"};
    e.defaults = {{"delta", 1.0}, {"dimension", 3.0}, {"mass", 0.0},
                  {"rho_min", 2.0}, {"rho_max", 100.0}, {"n_rho", 40.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int n = scale == Scale::kFull
                        ? static_cast<int>(p.at("n_rho"))
                        : std::min(12, static_cast<int>(p.at("n_rho")));
      return one_axis(log_grid(p.at("rho_min"), p.at("rho_max"), n));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const FieldParams params = field_of(p.at("dimension"), p.at("mass"));
      const std::vector<ModeSpec> modes = {
          bump_mode(params.dimension, p.at("delta"), 0.0),
          bump_mode(params.dimension, p.at("delta"), axis[0])};
      const GaussianState state = build_covariance(modes, params, &cache);
      const Bipartition split = Bipartition::first_k(2, 1);
      const SymplecticSpectrum nu = symplectic_spectrum(state);
      const GaussianState part = reduced_state(state, {0});
      return std::vector<double>{nu.values[0], nu.values[1],
                                 von_neumann_entropy(part),
                                 von_neumann_entropy(state),
                                 mutual_information(state, split)};
    };
    reg.emplace_back("mi_vs_rho", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of two touching segments in one dimension vs. mass, "
        "swept over the smearing exponent unless delta is fixed";
    e.axes = {"delta", "mu"};
    e.columns = kLnColumns;
    e.defaults = {{"rho", 2.0}, {"mu_min", 1e-3}, {"mu_max", 30.0},
                  {"n_mu", 25.0}};
    e.grid = [](const Params& p, Scale scale) {
      std::vector<double> deltas;
      if (p.count("delta")) {
        deltas = {p.at("delta")};
      } else if (scale == Scale::kFull) {
        deltas = step_grid(1.0, 2.0, 0.05);
      } else {
        deltas = {1.0, 1.35, 1.7, 2.0};
      }
      const int n = scale == Scale::kFull ? static_cast<int>(p.at("n_mu"))
                                          : std::min(
                                                7, static_cast<int>(
                                                       p.at("n_mu")));
      const std::vector<double> mus =
          log_grid(p.at("mu_min"), p.at("mu_max"), n);
      std::vector<std::vector<double>> rows;
      for (double d : deltas)
        for (double mu : mus) rows.push_back({d, mu});
      return rows;
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const FieldParams params = field_of(1.0, axis[1]);
      const std::vector<ModeSpec> modes = {bump_mode(1, axis[0], 0.0),
                                           bump_mode(1, axis[0], p.at("rho"))};
      const GaussianState state = build_covariance(modes, params, &cache);
      return as_row(measures_of(state, Bipartition::first_k(2, 1)));
    };
    reg.emplace_back("ln_vs_mass_d1", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of two segments in one dimension vs. center distance at "
        "small fixed mass";
    e.axes = {"rho"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"mass", 0.01}, {"rho_min", 2.0},
                  {"rho_max", 3.0}};
    e.grid = [](const Params& p, Scale scale) {
      const double step = scale == Scale::kFull ? 0.025 : 0.1;
      const double hi = scale == Scale::kFull ? p.at("rho_max")
                                              : std::min(2.6, p.at("rho_max"));
      return one_axis(step_grid(p.at("rho_min"), hi, step));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const FieldParams params = field_of(1.0, p.at("mass"));
      const std::vector<ModeSpec> modes = {
          bump_mode(1, p.at("delta"), 0.0),
          bump_mode(1, p.at("delta"), axis[0])};
      const GaussianState state = build_covariance(modes, params, &cache);
      return as_row(measures_of(state, Bipartition::first_k(2, 1)));
    };
    reg.emplace_back("ln_vs_rho_d1", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of one disk against a growing hexagonal swarm of "
        "contact disks (massless, two dimensions)";
    e.axes = {"n_b"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"n_b_max", 90.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int cap = static_cast<int>(p.at("n_b_max"));
      std::vector<double> ns;
      if (scale == Scale::kFull) {
        append(ns, int_range(1, std::min(36, cap)));
        if (cap > 36) append(ns, int_range(42, cap, 6));
      } else {
        append(ns, int_range(1, std::min(10, cap)));
        for (int n : {12, 15, 18, 24, 30, 36})
          if (n <= cap && n <= 100) ns.push_back(n);
      }
      return one_axis(ns);
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          hex_layers(static_cast<int>(axis[0]), p.at("delta"));
      return as_row(measures_of(config, field_of(2.0, 0.0), cache));
    };
    reg.emplace_back("ln_vs_nb_hex", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of one disk inside a hexagonal ring of six vs. ring "
        "distance (massless, two dimensions)";
    e.axes = {"rho"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"rho_min", 2.0}, {"rho_max", 2.5}};
    e.grid = [](const Params& p, Scale scale) {
      const double step = scale == Scale::kFull ? 0.02 : 0.05;
      const double hi = scale == Scale::kFull ? p.at("rho_max")
                                              : std::min(2.3, p.at("rho_max"));
      return one_axis(step_grid(p.at("rho_min"), hi, step));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config = hex_ring_any(axis[0], p.at("delta"));
      return as_row(measures_of(config, field_of(2.0, 0.0), cache));
    };
    reg.emplace_back("ln_vs_rho_hexring", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of an alternating line of contact disks vs. modes per "
        "side (massless, two dimensions)";
    e.axes = {"n"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"n_max", 10.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int cap = static_cast<int>(p.at("n_max"));
      return one_axis(
          int_range(1, scale == Scale::kFull ? cap : std::min(6, cap)));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          alternating_line(static_cast<int>(axis[0]), p.at("delta"));
      return as_row(measures_of(config, field_of(2.0, 0.0), cache));
    };
    reg.emplace_back("ln_vs_n_line", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of two hexagonal cells of contact disks vs. the "
        "face-to-face gap (massless, two dimensions)";
    e.axes = {"rho_gap"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"n_per_cell", 19.0}, {"gap_max", 0.4}};
    e.grid = [](const Params& p, Scale scale) {
      const double step = scale == Scale::kFull ? 0.01 : 0.05;
      return one_axis(step_grid(0.0, p.at("gap_max"), step));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config = two_hex_cells(
          axis[0], static_cast<int>(p.at("n_per_cell")), p.at("delta"));
      return as_row(measures_of(config, field_of(2.0, 0.0), cache));
    };
    reg.emplace_back("ln_vs_gap_hexcells", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of one sphere against a close-packed swarm of contact "
        "spheres (massless, three dimensions)";
    e.axes = {"n_b"};
    e.columns = kLnColumns;
    e.defaults = {{"delta", 1.0}, {"n_b_max", 1088.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int cap = static_cast<int>(
          std::min(p.at("n_b_max"), scale == Scale::kFull ? 1088.0 : 100.0));
      std::vector<double> ns = int_range(1, std::min(12, cap));
      for (int n : {18, 30, 57, 100, 134, 200, 304, 458, 700, 1088})
        if (n <= cap) ns.push_back(n);
      return one_axis(ns);
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          hcp_packing(static_cast<int>(axis[0]), p.at("delta"));
      return as_row(measures_of(config, field_of(3.0, 0.0), cache));
    };
    reg.emplace_back("ln_hcp_d3", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of two oscillating modes sharing one ball vs. the "
        "second radial index (massless)";
    e.axes = {"n_b"};
    e.columns = kLnColumns;
    e.defaults = {{"n_a", 1.0}, {"dimension", 3.0}, {"n_b_max", 10.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int lo = static_cast<int>(p.at("n_a")) + 1;
      const int hi = scale == Scale::kFull
                         ? static_cast<int>(p.at("n_b_max"))
                         : std::min(6, static_cast<int>(p.at("n_b_max")));
      return one_axis(int_range(lo, hi));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          sinc_stack(static_cast<int>(p.at("n_a")),
                     static_cast<int>(axis[0]),
                     static_cast<int>(p.at("dimension")));
      return as_row(
          measures_of(config, field_of(p.at("dimension"), 0.0), cache));
    };
    reg.emplace_back("ln_sinc_stack", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of a ball and its touching shell vs. spatial dimension "
        "(massless)";
    e.axes = {"dimension"};
    e.columns = kLnColumns;
    e.defaults = {{"r_b", 1.0}, {"d_b", 0.5}, {"d_min", 2.0},
                  {"d_max", 8.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int hi = scale == Scale::kFull
                         ? static_cast<int>(p.at("d_max"))
                         : std::min(5, static_cast<int>(p.at("d_max")));
      return one_axis(int_range(static_cast<int>(p.at("d_min")), hi));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config = ball_and_shell(
          p.at("r_b"), p.at("d_b"), static_cast<int>(axis[0]));
      return as_row(measures_of(config, field_of(axis[0], 0.0), cache));
    };
    reg.emplace_back("ln_shell_vs_D", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of a ball and shell vs. the gap between them "
        "(massless)";
    e.axes = {"gap"};
    e.columns = kLnColumns;
    e.defaults = {{"d_b", 0.5}, {"dimension", 3.0}, {"gap_max", 0.5}};
    e.grid = [](const Params& p, Scale scale) {
      const double step = scale == Scale::kFull ? 0.02 : 0.1;
      return one_axis(step_grid(0.0, p.at("gap_max"), step));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config = ball_and_shell(
          1.0 + axis[0], p.at("d_b"), static_cast<int>(p.at("dimension")));
      return as_row(measures_of(config, field_of(p.at("dimension"), 0.0),
                                cache));
    };
    reg.emplace_back("ln_shell_vs_gap", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity of a ball and its touching shell vs. shell thickness "
        "(massless); reports the measured support interval";
    e.axes = {"d_b"};
    e.columns = kLnColumns;
    e.defaults = {{"r_b", 1.0}, {"dimension", 3.0}, {"db_min", 0.05},
                  {"db_max", 2.0}};
    e.grid = [](const Params& p, Scale scale) {
      if (scale == Scale::kFull)
        return one_axis(step_grid(p.at("db_min"), p.at("db_max"), 0.05));
      return one_axis(step_grid(std::max(0.1, p.at("db_min")),
                                std::min(1.2, p.at("db_max")), 0.1));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config = ball_and_shell(
          p.at("r_b"), axis[0], static_cast<int>(p.at("dimension")));
      return as_row(measures_of(config, field_of(p.at("dimension"), 0.0),
                                cache));
    };
    reg.emplace_back("ln_shell_vs_db", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity across alternating nested shells vs. layer count "
        "(massless)";
    e.axes = {"n_shells"};
    e.columns = kLnColumns;
    e.defaults = {{"dimension", 3.0}, {"thickness", 0.5},
                  {"n_shells_max", 12.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int cap = static_cast<int>(p.at("n_shells_max"));
      return one_axis(
          int_range(1, scale == Scale::kFull ? cap : std::min(6, cap)));
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          onion(static_cast<int>(axis[0]),
                static_cast<int>(p.at("dimension")), p.at("thickness"));
      return as_row(measures_of(config, field_of(p.at("dimension"), 0.0),
                                cache));
    };
    reg.emplace_back("ln_onion", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "negativity and mutual information of paired accelerated-frame "
        "modes vs. frequency over acceleration";
    e.axes = {"omega_over_a"};
    e.columns = {"nu_tilde_min", "log_neg", "mi"};
    e.defaults = {{"w_min", 0.01}, {"w_max", 10.0}, {"n_w", 40.0}};
    e.grid = [](const Params& p, Scale scale) {
      const int n = scale == Scale::kFull ? static_cast<int>(p.at("n_w"))
                                          : std::min(
                                                15, static_cast<int>(
                                                        p.at("n_w")));
      return one_axis(log_grid(p.at("w_min"), p.at("w_max"), n));
    };
    e.eval = [](const std::vector<double>& axis, const Params&,
                CorrelatorCache&) {
      const GaussianState state = rindler_two_mode(axis[0]);
      const Bipartition split = Bipartition::first_k(2, 1);
      const Measures m = measures_of(state, split);
      return std::vector<double>{m.nu_tilde_min, m.log_neg, m.mi};
    };
    reg.emplace_back("rindler_ln", std::move(e));
  }

  {
    Experiment e;
    e.description =
        "squeezing threshold that entangles two mixed ball modes vs. "
        "center distance (massless)";
    e.axes = {"rho"};
    e.columns = {"z_star"};
    e.defaults = {{"delta", 1.0}, {"dimension", 3.0}, {"rho_min", 2.05},
                  {"rho_max", 5.0}};
    e.grid = [](const Params& p, Scale scale) {
      if (scale == Scale::kFull)
        return one_axis(step_grid(p.at("rho_min"), p.at("rho_max"), 0.05));
      std::vector<double> rows;
      for (double r : {2.05, 2.1, 2.2, 2.35, 2.5, 2.75, 3.0, 3.5, 4.0, 5.0})
        if (r >= p.at("rho_min") && r <= p.at("rho_max")) rows.push_back(r);
      return one_axis(rows);
    };
    e.eval = [](const std::vector<double>& axis, const Params& p,
                CorrelatorCache& cache) {
      const Configuration config =
          two_balls(axis[0], bump_template(p.at("dimension"), p.at("delta")));
      const GaussianState state =
          build_covariance(config.modes, field_of(p.at("dimension"), 0.0),
                           &cache);
      return std::vector<double>{entanglement_threshold(state, 0, 1)};
    };
    reg.emplace_back("mixing_threshold", std::move(e));
  }

  return reg;
}

const std::vector<std::pair<std::string, Experiment>>& registry() {
  static const std::vector<std::pair<std::string, Experiment>> reg =
      build_registry();
  return reg;
}

const Experiment& find_experiment(const std::string& name) {
  for (const auto& [key, exp] : registry())
    if (key == name) return exp;
  throw UnknownExperimentError("unknown experiment '" + name + "'");
}

}  // namespace

bool ExperimentResult::has_errors() const {
  for (const std::string& e : row_errors)
    if (!e.empty()) return true;
  return false;
}

int ExperimentResult::column_index(const std::string& column) const {
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (axes[k] == column) return static_cast<int>(k);
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == column) return static_cast<int>(axes.size() + k);
  throw DomainError("ExperimentResult: no column named '" + column + "'");
}

const std::vector<std::pair<std::string, std::string>>& experiment_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [name, exp] : registry())
      out.emplace_back(name, exp.description);
    return out;
  }();
  return catalog;
}

const std::string& library_version() {
  static const std::string version = "0.1.0";
  return version;
}

ExperimentResult run_experiment(const std::string& name,
                                const std::map<std::string, double>& overrides,
                                const RunOptions& options) {
  const Experiment& exp = find_experiment(name);

  Params resolved = exp.defaults;
  // "delta" may select the single swept value of a delta axis even when it
  // has no default entry.
  const bool delta_axis =
      std::find(exp.axes.begin(), exp.axes.end(), "delta") != exp.axes.end();
  for (const auto& [key, value] : overrides) {
    if (!exp.defaults.count(key) && !(delta_axis && key == "delta"))
      throw ParseError("experiment '" + name + "' has no parameter '" + key +
                       "'");
    resolved[key] = value;
  }
  if (resolved.count("dimension") && resolved.count("mass"))
    default_mass_for_d1(resolved, overrides);

  const std::vector<std::vector<double>> grid =
      exp.grid(resolved, options.scale);

  ExperimentResult result;
  result.name = name;
  result.axes = exp.axes;
  result.columns = exp.columns;
  result.version = library_version();
  result.rows.resize(grid.size());
  result.row_errors.assign(grid.size(), "");
  for (const auto& [key, value] : resolved)
    result.config.emplace_back(key, value);
  result.config.emplace_back(
      "scale_full", options.scale == Scale::kFull ? 1.0 : 0.0);

  CorrelatorCache cache;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) break;
      std::vector<double> row = grid[i];
      try {
        const std::vector<double> outputs = exp.eval(grid[i], resolved, cache);
        row.insert(row.end(), outputs.begin(), outputs.end());
      } catch (const std::exception& err) {
        row.resize(exp.axes.size() + exp.columns.size(), kNan);
        result.row_errors[i] = err.what();
      }
      result.rows[i] = std::move(row);
    }
  };

  const int jobs = std::max(
      1, std::min(options.jobs, static_cast<int>(grid.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return result;
}

}  // namespace fieldmodes
