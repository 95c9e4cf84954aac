#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fieldmodes/correlators.hpp"
#include "fieldmodes/mode.hpp"

namespace fieldmodes {

// Gaussian state of N bosonic modes, described by its covariance matrix
// sigma_ab = <{O_a, O_b}> in the interleaved operator ordering
// (x_1, p_1, x_2, p_2, ...), the ordering in which the symplectic form is
// the direct sum of N copies of [[0, 1], [-1, 0]].
struct GaussianState {
  Eigen::MatrixXd sigma;
  int n_modes = 0;

  // Checks symmetry (<= 1e-12) and the uncertainty relation: the Hermitian
  // matrix sigma + i*Omega must have eigenvalues >= -1e-9.
  void validate() const;
};

// The symplectic form for n modes in the interleaved ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

enum class Party { kA, kB };

// A two-block split of the modes of a state.
struct Bipartition {
  std::vector<Party> labels;

  int n_modes() const { return static_cast<int>(labels.size()); }
  int n_a() const;
  int n_b() const;
  std::vector<int> modes_of(Party side) const;
  // Both blocks must be non-empty.
  void validate() const;

  // The first k modes form A, the rest form B.
  static Bipartition first_k(int n_total, int k);
};

// Williamson (symplectic) eigenvalues, sorted ascending. A physical state
// has all values >= 1.
struct SymplecticSpectrum {
  std::vector<double> values;
  double min() const;
};

// Assembles the 2N x 2N vacuum covariance matrix of the given modes from
// their field correlators (closed form where eligible, quadrature
// otherwise). Before touching any correlator it verifies that the modes are
// canonical: the symplectic Gram matrix of all 2N observables must match the
// standard form to 1e-8, else CommutatorViolationError identifying the
// offending pair.
GaussianState build_covariance(const std::vector<ModeSpec>& modes,
                               const FieldParams& params,
                               CorrelatorCache* cache = nullptr);

// Williamson values via the square-root method: sigma = L L^T (Cholesky),
// then the singular values of L^T Omega L, which come in +/- pairs equal to
// the symplectic eigenvalues. Throws DegenerateSpectrumError if sigma is not
// positive definite or the pairing is ambiguous beyond 1e-8.
SymplecticSpectrum symplectic_spectrum(const GaussianState& state);

// Von Neumann entropy in bits: sum over Williamson values of
// ((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2). Values within 1e-9
// below 1 count as exactly 1 (zero contribution); anything lower is a
// DomainError (not a state).
double von_neumann_entropy(const GaussianState& state);

// The state reduced to the listed modes (principal submatrix of sigma).
GaussianState reduced_state(const GaussianState& state,
                            const std::vector<int>& modes);

// I(A:B) = S_A + S_B - S_AB in bits; non-negative up to numerical dust.
double mutual_information(const GaussianState& state, const Bipartition& part);

// sigma -> T sigma T with T flipping the sign of every B-mode momentum.
// Involutive; the result is a valid covariance matrix of a state iff the
// A|B split is unentangled.
GaussianState partial_transpose(const GaussianState& state,
                                const Bipartition& part);

// Logarithmic negativity in bits: sum of -log2(nu) over the symplectic
// values of the partial transpose that lie below 1 - 1e-9. Zero iff the
// partially transposed state passes the uncertainty test.
double log_negativity(const GaussianState& state, const Bipartition& part);

// Entanglement verdict for the split, following the faithfulness of the
// partial-transpose criterion: when either block is a single mode a zero
// log-negativity certifies separability; for larger blocks it only bounds
// distillable entanglement.
//   log_neg > 0                  -> "entangled"
//   log_neg = 0, min block = 1   -> "separable"
//   log_neg = 0, both blocks > 1 -> "not distillable"
std::string entanglement_verdict(double log_neg, const Bipartition& part);

// Two-mode squeezing between modes i and j: sigma -> S sigma S^T with
//   x_i -> cosh z x_i + sinh z x_j,   p_i -> cosh z p_i - sinh z p_j,
//   x_j -> sinh z x_i + cosh z x_j,   p_j -> -sinh z p_i + cosh z p_j,
// an exact symplectic map for any real z.
GaussianState mix_modes(const GaussianState& state, int mode_i, int mode_j,
                        double z);

// Smallest |z| at which mixing modes i and j entangles them: bisection of
// min nu-tilde(z) - 1 on z in [0, 10] to 1e-8, on the state reduced to the
// two modes. Throws NoThresholdError if no z in the bracket entangles them.
double entanglement_threshold(const GaussianState& state, int mode_i,
                              int mode_j);

// Covariance matrix of a pair of counter-accelerated wave-packet modes in
// the two causal wedges, with the divergent delta-normalization stripped:
// X and P diagonals coth(pi omega / a), cross entries +csch for X_R X_L and
// -csch for P_R P_L. Ordering (x_R, p_R, x_L, p_L). The joint state is pure
// with min nu-tilde = tanh(pi omega / (2a)). For pi omega / a > 30 returns
// the identity matrix (the exact asymptote to double precision).
GaussianState rindler_two_mode(double omega_over_a);

}  // namespace fieldmodes
