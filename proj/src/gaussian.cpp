#include "fieldmodes/gaussian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fieldmodes/errors.hpp"

namespace fieldmodes {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUncertaintyTol = 1e-9;
constexpr double kCommutatorTol = 1e-8;
constexpr double kPairingTol = 1e-8;
// Width of the window below 1 inside which a symplectic value counts as
// exactly 1 (floating-point dust on pure and threshold states).
constexpr double kUnitClamp = 1e-9;
constexpr double kThresholdBracket = 10.0;
constexpr double kThresholdTolZ = 1e-8;
// pi*omega/a beyond which coth and csch are 1 and 0 to double precision.
constexpr double kRindlerAsymptote = 30.0;

// Entropy contribution of one symplectic value, in bits; values in
// [1 - kUnitClamp, 1] count as pure, values below that are unphysical.
double entropy_term(double nu) {
  if (nu < 1.0 - kUnitClamp)
    throw DomainError("von_neumann_entropy: symplectic value " +
                      std::to_string(nu) + " below 1: not a state");
  if (nu <= 1.0) return 0.0;
  const double p = (nu + 1.0) / 2.0;
  const double m = (nu - 1.0) / 2.0;
  return p * std::log2(p) - m * std::log2(m);
}

void check_mode_index(const GaussianState& state, int mode,
                      const char* where) {
  if (mode < 0 || mode >= state.n_modes)
    throw DomainError(std::string(where) + ": mode index " +
                      std::to_string(mode) + " out of range");
}

}  // namespace

void GaussianState::validate() const {
  if (n_modes < 1) throw DomainError("GaussianState: needs at least one mode");
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n_modes);
  if (sigma.rows() != dim || sigma.cols() != dim)
    throw DomainError("GaussianState: covariance matrix is not 2N x 2N");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale)
    throw DomainError("GaussianState: covariance matrix is not symmetric");

  // Heisenberg: sigma + i Omega must be positive semidefinite.
  Eigen::MatrixXcd h = sigma.cast<std::complex<double>>();
  const Eigen::MatrixXd omega = symplectic_form(n_modes);
  h += std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success)
    throw DegenerateSpectrumError("GaussianState: uncertainty check failed");
  if (eig.eigenvalues().minCoeff() < -kUncertaintyTol * scale)
    throw DomainError("GaussianState: uncertainty relation violated");
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) throw DomainError("symplectic_form: needs n_modes >= 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

int Bipartition::n_a() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), Party::kA));
}

int Bipartition::n_b() const { return n_modes() - n_a(); }

std::vector<int> Bipartition::modes_of(Party side) const {
  std::vector<int> out;
  for (int m = 0; m < n_modes(); ++m)
    if (labels[m] == side) out.push_back(m);
  return out;
}

void Bipartition::validate() const {
  if (n_a() < 1 || n_b() < 1)
    throw DomainError("Bipartition: both blocks need at least one mode");
}

Bipartition Bipartition::first_k(int n_total, int k) {
  if (k < 1 || k >= n_total)
    throw DomainError("Bipartition: split must leave both blocks non-empty");
  Bipartition part;
  part.labels.assign(n_total, Party::kB);
  std::fill(part.labels.begin(), part.labels.begin() + k, Party::kA);
  return part;
}

double SymplecticSpectrum::min() const {
  if (values.empty())
    throw DomainError("SymplecticSpectrum: empty spectrum");
  return values.front();
}

GaussianState build_covariance(const std::vector<ModeSpec>& modes,
                               const FieldParams& params,
                               CorrelatorCache* cache) {
  params.validate();
  if (modes.empty())
    throw DomainError("build_covariance: needs at least one mode");
  for (const ModeSpec& mode : modes) mode.validate();
  const int n = static_cast<int>(modes.size());

  // The modes must be canonical before their second moments mean anything:
  // the symplectic Gram matrix of all 2N observables has to be Omega.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double xx =
          symplectic_product(modes[i].position_op, modes[j].position_op);
      const double xp =
          symplectic_product(modes[i].position_op, modes[j].momentum_op);
      const double px =
          symplectic_product(modes[i].momentum_op, modes[j].position_op);
      const double pp =
          symplectic_product(modes[i].momentum_op, modes[j].momentum_op);
      const double want_xp = i == j ? 1.0 : 0.0;
      const double dev =
          std::max({std::abs(xx), std::abs(pp), std::abs(xp - want_xp),
                    std::abs(px + want_xp)});
      if (dev > kCommutatorTol)
        throw CommutatorViolationError(
            "build_covariance: modes " + std::to_string(i) + " and " +
            std::to_string(j) + " deviate from canonical commutators by " +
            std::to_string(dev));
    }
  }

  GaussianState state;
  state.n_modes = n;
  state.sigma.resize(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double xx =
          mode_correlator(modes[i], modes[j], params, CorrelatorKind::kPhiPhi,
                          cache);
      const double pp =
          mode_correlator(modes[i], modes[j], params, CorrelatorKind::kPiPi,
                          cache);
      const double xp =
          mode_correlator(modes[i], modes[j], params, CorrelatorKind::kPhiPi,
                          cache);
      const double px =
          mode_correlator(modes[j], modes[i], params, CorrelatorKind::kPhiPi,
                          cache);
      state.sigma(2 * i, 2 * j) = state.sigma(2 * j, 2 * i) = xx;
      state.sigma(2 * i + 1, 2 * j + 1) = state.sigma(2 * j + 1, 2 * i + 1) =
          pp;
      state.sigma(2 * i, 2 * j + 1) = state.sigma(2 * j + 1, 2 * i) = xp;
      state.sigma(2 * i + 1, 2 * j) = state.sigma(2 * j, 2 * i + 1) = px;
    }
  }
  return state;
}

SymplecticSpectrum symplectic_spectrum(const GaussianState& state) {
  if (state.n_modes < 1 || state.sigma.rows() != 2 * state.n_modes)
    throw DomainError("symplectic_spectrum: malformed state");
  Eigen::LLT<Eigen::MatrixXd> llt(state.sigma);
  if (llt.info() != Eigen::Success)
    throw DegenerateSpectrumError(
        "symplectic_spectrum: covariance matrix is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd m =
      l.transpose() * symplectic_form(state.n_modes) * l;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();  // descending

  // Singular values of the antisymmetric m come in equal +/- pairs, one pair
  // per symplectic value.
  SymplecticSpectrum spec;
  spec.values.reserve(state.n_modes);
  for (int k = 0; k < state.n_modes; ++k) {
    const double hi = sv(2 * k);
    const double lo = sv(2 * k + 1);
    if (hi - lo > kPairingTol * std::max(1.0, hi))
      throw DegenerateSpectrumError(
          "symplectic_spectrum: singular values " + std::to_string(hi) +
          " and " + std::to_string(lo) + " do not pair");
    spec.values.push_back(0.5 * (hi + lo));
  }
  std::sort(spec.values.begin(), spec.values.end());
  return spec;
}

double von_neumann_entropy(const GaussianState& state) {
  const SymplecticSpectrum spec = symplectic_spectrum(state);
  double bits = 0.0;
  for (const double nu : spec.values) bits += entropy_term(nu);
  return bits;
}

GaussianState reduced_state(const GaussianState& state,
                            const std::vector<int>& modes) {
  if (modes.empty())
    throw DomainError("reduced_state: needs at least one mode");
  std::vector<int> seen;
  Eigen::VectorXi rows(2 * modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    check_mode_index(state, modes[k], "reduced_state");
    if (std::count(seen.begin(), seen.end(), modes[k]) > 0)
      throw DomainError("reduced_state: duplicate mode index");
    seen.push_back(modes[k]);
    rows(2 * k) = 2 * modes[k];
    rows(2 * k + 1) = 2 * modes[k] + 1;
  }
  GaussianState out;
  out.n_modes = static_cast<int>(modes.size());
  out.sigma = state.sigma(rows, rows);
  return out;
}

double mutual_information(const GaussianState& state,
                          const Bipartition& part) {
  part.validate();
  if (part.n_modes() != state.n_modes)
    throw DomainError("mutual_information: bipartition size mismatch");
  const double s_a =
      von_neumann_entropy(reduced_state(state, part.modes_of(Party::kA)));
  const double s_b =
      von_neumann_entropy(reduced_state(state, part.modes_of(Party::kB)));
  return s_a + s_b - von_neumann_entropy(state);
}

GaussianState partial_transpose(const GaussianState& state,
                                const Bipartition& part) {
  part.validate();
  if (part.n_modes() != state.n_modes)
    throw DomainError("partial_transpose: bipartition size mismatch");
  Eigen::VectorXd t = Eigen::VectorXd::Ones(2 * state.n_modes);
  for (const int m : part.modes_of(Party::kB)) t(2 * m + 1) = -1.0;
  GaussianState out;
  out.n_modes = state.n_modes;
  out.sigma = t.asDiagonal() * state.sigma * t.asDiagonal();
  return out;
}

double log_negativity(const GaussianState& state, const Bipartition& part) {
  const SymplecticSpectrum spec =
      symplectic_spectrum(partial_transpose(state, part));
  double bits = 0.0;
  for (const double nu : spec.values)
    if (nu < 1.0 - kUnitClamp) bits -= std::log2(nu);
  return bits;
}

std::string entanglement_verdict(double log_neg, const Bipartition& part) {
  part.validate();
  if (log_neg > 0.0) return "entangled";
  if (part.n_a() == 1 || part.n_b() == 1) return "separable";
  return "not distillable";
}

GaussianState mix_modes(const GaussianState& state, int mode_i, int mode_j,
                        double z) {
  check_mode_index(state, mode_i, "mix_modes");
  check_mode_index(state, mode_j, "mix_modes");
  if (mode_i == mode_j)
    throw DomainError("mix_modes: needs two distinct modes");
  if (!std::isfinite(z)) throw DomainError("mix_modes: non-finite parameter");
  const double ch = std::cosh(z);
  const double sh = std::sinh(z);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.n_modes,
                                                2 * state.n_modes);
  const int xi = 2 * mode_i, pi = 2 * mode_i + 1;
  const int xj = 2 * mode_j, pj = 2 * mode_j + 1;
  s(xi, xi) = ch;
  s(xi, xj) = sh;
  s(pi, pi) = ch;
  s(pi, pj) = -sh;
  s(xj, xi) = sh;
  s(xj, xj) = ch;
  s(pj, pi) = -sh;
  s(pj, pj) = ch;
  GaussianState out;
  out.n_modes = state.n_modes;
  out.sigma = s * state.sigma * s.transpose();
  return out;
}

double entanglement_threshold(const GaussianState& state, int mode_i,
                              int mode_j) {
  check_mode_index(state, mode_i, "entanglement_threshold");
  check_mode_index(state, mode_j, "entanglement_threshold");
  if (mode_i == mode_j)
    throw DomainError("entanglement_threshold: needs two distinct modes");
  // Mixing touches only modes i and j, so the threshold of the pair equals
  // the threshold computed on the state reduced to that pair.
  const GaussianState pair = reduced_state(state, {mode_i, mode_j});
  const Bipartition split = Bipartition::first_k(2, 1);
  // min nu-tilde < 1 exactly when the transposed matrix fails the
  // uncertainty test; the Hermitian eigenvalue route stays stable at deep
  // squeezing (z near the bracket top), where the Cholesky route breaks
  // down on the e^(4z) condition number.
  const Eigen::MatrixXcd i_omega =
      std::complex<double>(0.0, 1.0) *
      symplectic_form(2).cast<std::complex<double>>();
  const auto entangled = [&pair, &split, &i_omega](double z) {
    const GaussianState pt =
        partial_transpose(mix_modes(pair, 0, 1, z), split);
    const Eigen::MatrixXcd h = pt.sigma.cast<std::complex<double>>() + i_omega;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    return eig.eigenvalues().minCoeff() <
           -kUnitClamp * std::max(1.0, pt.sigma.cwiseAbs().maxCoeff());
  };
  if (entangled(0.0)) return 0.0;
  if (!entangled(kThresholdBracket))
    throw NoThresholdError(
        "entanglement_threshold: mixing never entangles the pair within the "
        "search bracket");
  double lo = 0.0, hi = kThresholdBracket;
  while (hi - lo > kThresholdTolZ) {
    const double mid = 0.5 * (lo + hi);
    (entangled(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

GaussianState rindler_two_mode(double omega_over_a) {
  if (!std::isfinite(omega_over_a) || omega_over_a <= 0.0)
    throw DomainError("rindler_two_mode: omega/a must be positive");
  GaussianState out;
  out.n_modes = 2;
  const double x = M_PI * omega_over_a;
  if (x > kRindlerAsymptote) {
    out.sigma = Eigen::MatrixXd::Identity(4, 4);
    return out;
  }
  const double ch = 1.0 / std::tanh(x);
  const double cs = 1.0 / std::sinh(x);
  out.sigma = Eigen::MatrixXd::Zero(4, 4);
  out.sigma.diagonal().setConstant(ch);
  out.sigma(0, 2) = out.sigma(2, 0) = cs;
  out.sigma(1, 3) = out.sigma(3, 1) = -cs;
  return out;
}

}  // namespace fieldmodes
