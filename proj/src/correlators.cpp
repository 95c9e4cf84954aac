#include "fieldmodes/correlators.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "fieldmodes/errors.hpp"
#include "fieldmodes/quadrature.hpp"
#include "fieldmodes/specfun.hpp"

namespace fieldmodes {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

constexpr double kCorrelatorRelTol = 1e-8;
constexpr std::size_t kOscillatoryBudget = 100000;
// Below this center separation (in radii) the 3F2 argument is close enough
// to 1 that the quadrature route is preferred by the dispatcher.
constexpr double kAnalyticDispatchRho = 2.05;
constexpr double kGeometryTol = 1e-12;

void require_lambda(double lambda) {
  if (lambda != 1.0 && lambda != -1.0)
    throw DomainError("correlators: lambda must be -1 or +1");
}

void require_delta(double delta) {
  if (!(delta >= 1.0))
    throw DomainError("correlators: closed forms need delta >= 1");
}

// Exact vanishing of the field-momentum cross moments in the vacuum state.
bool cross_kind(CorrelatorKind kind) { return kind == CorrelatorKind::kPhiPi; }

std::string smearing_key(const SmearingSpec& s) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%d:%d:%.12e:%.12e:%d:%.12e:%.12e:%.12e",
                static_cast<int>(s.family), s.dimension, s.radius, s.delta,
                s.index_n, s.shell_inner, s.shell_thickness, s.c());
  return std::string(buf);
}

std::string pair_key(const SmearingSpec& a, const SmearingSpec& b,
                     const FieldParams& params, CorrelatorKind kind,
                     double dist) {
  std::string ka = smearing_key(a);
  std::string kb = smearing_key(b);
  if (kb < ka) std::swap(ka, kb);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d:%d:%.12e:%.12e|",
                static_cast<int>(kind), params.dimension, params.mass, dist);
  return std::string(buf) + ka + "|" + kb;
}

bool analytic_eligible(const SmearingSpec& a, const SmearingSpec& b,
                       const FieldParams& params, double dist,
                       double min_rho) {
  if (a.family != SmearingFamily::kPolyBump ||
      b.family != SmearingFamily::kPolyBump)
    return false;
  if (params.dimension <= 1 || params.mass != 0.0) return false;
  if (a.delta != b.delta || a.radius != b.radius) return false;
  if (!(a.delta >= 1.0)) return false;
  const double r = a.radius;
  return dist <= kGeometryTol * r || dist >= min_rho * r;
}

double closed_form_value(const SmearingSpec& a, const SmearingSpec& b,
                         const FieldParams& params, CorrelatorKind kind,
                         double dist) {
  if (cross_kind(kind)) return 0.0;
  const double lambda = (kind == CorrelatorKind::kPiPi) ? 1.0 : -1.0;
  const double radius = a.radius;
  const double coeff =
      (dist <= kGeometryTol * radius)
          ? j_coeff(lambda, a.delta, params.dimension)
          : l_coeff(lambda, a.delta, dist / radius, params.dimension);
  const double cgeom = std::sqrt(a.c() * b.c());
  const double scale = (kind == CorrelatorKind::kPiPi) ? cgeom / radius
                                                       : radius / cgeom;
  return 2.0 * n_sq_coeff(a.delta, params.dimension) * scale * coeff;
}

// Equality of everything the radial Fourier transform depends on.
bool same_radial_spec(const SmearingSpec& a, const SmearingSpec& b) {
  return a.family == b.family && a.dimension == b.dimension &&
         a.radius == b.radius && a.delta == b.delta &&
         a.index_n == b.index_n && a.shell_inner == b.shell_inner &&
         a.shell_thickness == b.shell_thickness && a.scale_c == b.scale_c;
}

double quadrature_value(const SmearingSpec& a, const SmearingSpec& b,
                        const FieldParams& params, CorrelatorKind kind,
                        double dist) {
  if (cross_kind(kind)) return 0.0;
  const int dim = params.dimension;
  const double mu2 = params.mass * params.mass;
  const double power = (kind == CorrelatorKind::kPiPi) ? 0.5 : -0.5;
  const bool same = same_radial_spec(a, b);

  const Integrand g = [&a, &b, dim, mu2, power, dist, same](double k) {
    const double fa = radial_ft(a, k);
    const double fb = same ? fa : radial_ft(b, k);
    const double kernel = radial_kernel(dim, k * dist);
    const double weight =
        (mu2 == 0.0) ? std::pow(k, dim - 1 + 2.0 * power)
                     : std::pow(k, dim - 1) * std::pow(k * k + mu2, power);
    return fa * fb * kernel * weight;
  };

  OscillatoryControl ctrl;
  ctrl.rel_tol = kCorrelatorRelTol;
  ctrl.osc_scale = dist + a.outer_radius() + b.outer_radius();
  ctrl.max_panels = kOscillatoryBudget;
  const QuadratureResult r = integrate_oscillatory(g, 0.0, ctrl);

  double pre = std::pow(2.0 * kPi, -dim);
  if (kind == CorrelatorKind::kPiPi) pre *= a.c() * b.c();
  return pre * r.value;
}

void check_smearing_params(const SmearingSpec& a, const SmearingSpec& b,
                           const FieldParams& params) {
  params.validate();
  a.validate(true);
  b.validate(true);
  if (a.dimension != params.dimension || b.dimension != params.dimension)
    throw DomainError("correlators: smearing dimension differs from field");
}

// Selects the observable lists entering <{U, V}> for the requested kind.
const std::vector<OperatorTerm>& left_op(const ModeSpec& m,
                                         CorrelatorKind kind) {
  return (kind == CorrelatorKind::kPiPi) ? m.momentum_op : m.position_op;
}

const std::vector<OperatorTerm>& right_op(const ModeSpec& m,
                                          CorrelatorKind kind) {
  return (kind == CorrelatorKind::kPhiPhi) ? m.position_op : m.momentum_op;
}

// <{U, V}> expanded over operator terms; Phi-Pi vacuum moments vanish.
double expand_terms(
    const ModeSpec& i, const ModeSpec& j, CorrelatorKind kind,
    const std::function<double(const SmearingSpec&, const SmearingSpec&,
                               CorrelatorKind)>& pair_value) {
  i.validate();
  j.validate();
  double acc = 0.0;
  for (const OperatorTerm& x : left_op(i, kind)) {
    for (const OperatorTerm& y : right_op(j, kind)) {
      const double cff = x.field_coeff * y.field_coeff;
      const double cpp = x.momentum_coeff * y.momentum_coeff;
      if (cff != 0.0)
        acc += cff *
               pair_value(x.smearing, y.smearing, CorrelatorKind::kPhiPhi);
      if (cpp != 0.0)
        acc += cpp *
               pair_value(x.smearing, y.smearing, CorrelatorKind::kPiPi);
    }
  }
  return acc;
}

}  // namespace

void FieldParams::validate() const {
  if (dimension < 1)
    throw DomainError("FieldParams: spatial dimension must be >= 1");
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw DomainError("FieldParams: mass must be finite and >= 0");
  if (dimension == 1 && mass <= 0.0)
    throw IrDivergenceError(
        "FieldParams: massless D=1 correlators are infrared divergent; "
        "set a positive mass");
}

double CorrelatorCache::get_or_compute(const std::string& key,
                                       const std::function<double()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = values_.find(key);
    if (it != values_.end()) return it->second;
  }
  const double value = compute();
  std::lock_guard<std::mutex> lock(mutex_);
  return values_.emplace(key, value).first->second;
}

std::size_t CorrelatorCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return values_.size();
}

double j_coeff(double lambda, double delta, int dimension) {
  require_lambda(lambda);
  require_delta(delta);
  if (dimension <= 1) throw DomainError("j_coeff: requires dimension > 1");
  const double d = dimension;
  return std::exp((lambda - 1.0 - 2.0 * delta) * kLn2 +
                  log_gamma(0.5 * (d + lambda)) +
                  log_gamma(1.0 + 2.0 * delta - lambda) -
                  2.0 * log_gamma(1.0 + delta - 0.5 * lambda) -
                  log_gamma(0.5 * (d - lambda) + 2.0 * delta + 1.0));
}

double l_coeff(double lambda, double delta, double rho, int dimension) {
  require_lambda(lambda);
  require_delta(delta);
  if (dimension <= 1) throw DomainError("l_coeff: requires dimension > 1");
  if (!(rho > 2.0)) throw DomainError("l_coeff: requires rho > 2");
  const double d = dimension;
  const double x = 4.0 / (rho * rho);
  const double f =
      hyper_3f2(1.0 + 0.5 * lambda, 0.5 * (d + lambda),
                0.5 * (d + 1.0) + delta, 0.5 * d + 1.0 + delta,
                d + 1.0 + 2.0 * delta, x);
  // Gamma(-lambda/2) for lambda = -1 / +1: sqrt(pi) / -2 sqrt(pi).
  const double gamma_neg_half = (lambda > 0.0) ? -2.0 * kSqrtPi : kSqrtPi;
  const double log_pre = -(d + lambda) * std::log(rho) +
                         log_gamma(0.5 * (d + lambda)) + log_gamma(0.5 * d) -
                         (1.0 + 2.0 * delta - lambda) * kLn2 -
                         2.0 * log_gamma(0.5 * d + 1.0 + delta);
  return std::exp(log_pre) / gamma_neg_half * f;
}

double n_sq_coeff(double delta, int dimension) {
  require_delta(delta);
  if (dimension <= 1) throw DomainError("n_sq_coeff: requires dimension > 1");
  const double d = dimension;
  return std::exp(2.0 * delta * kLn2 + log_gamma(1.0 + 0.5 * d + 2.0 * delta) +
                  2.0 * log_gamma(1.0 + delta) - log_gamma(1.0 + 2.0 * delta) -
                  log_gamma(0.5 * d));
}

UvPair asymptotic_u_v(double delta, int dimension) {
  require_delta(delta);
  if (dimension <= 1)
    throw DomainError("asymptotic_u_v: requires dimension > 1");
  const double d = dimension;
  const double log_den = log_gamma(delta + 0.5) +
                         2.0 * log_gamma(0.5 * d + delta + 1.0);
  const double log_shared = log_gamma(0.5 * (d + 4.0 * delta + 2.0)) - log_den;
  UvPair out;
  out.u = std::exp((-2.0 * delta - 1.0) * kLn2 + log_gamma(0.5 * (d - 1.0)) +
                   log_gamma(delta + 1.0) + log_shared);
  out.v = delta * std::exp(-2.0 * delta * kLn2 + log_gamma(0.5 * (d + 1.0)) +
                           log_gamma(delta) + log_shared);
  return out;
}

double single_mode_nu(double delta, int dimension) {
  return 2.0 * n_sq_coeff(delta, dimension) *
         std::sqrt(j_coeff(-1.0, delta, dimension) *
                   j_coeff(1.0, delta, dimension));
}

double single_mode_nu_limit(double delta) {
  require_delta(delta);
  const double log_nu_sq =
      log_gamma(2.0 * delta) + 4.0 * log_gamma(delta + 1.0) +
      log_gamma(2.0 * delta + 2.0) - 2.0 * log_gamma(delta + 0.5) -
      2.0 * log_gamma(delta + 1.5) - 2.0 * log_gamma(2.0 * delta + 1.0);
  return std::exp(0.5 * log_nu_sq);
}

double correlator_analytic(const ModeSpec& i, const ModeSpec& j,
                           const FieldParams& params, CorrelatorKind kind) {
  params.validate();
  i.validate();
  j.validate();
  if (!i.is_simple_pair() || !j.is_simple_pair())
    throw UnsupportedConfigurationError(
        "correlator_analytic: modes must be canonical single-smearing pairs");
  const SmearingSpec& a = i.pair_smearing();
  const SmearingSpec& b = j.pair_smearing();
  check_smearing_params(a, b, params);
  if (cross_kind(kind)) return 0.0;
  const double dist = center_distance(a, b);
  // Public closed-form entry admits the full disjoint range rho > 2.
  if (!analytic_eligible(a, b, params, dist, 2.0 * (1.0 + kGeometryTol)))
    throw UnsupportedConfigurationError(
        "correlator_analytic: closed forms cover equal massless PolyBump "
        "pairs in D > 1 with identical or disjoint supports");
  return closed_form_value(a, b, params, kind, dist);
}

double correlator_numeric(const ModeSpec& i, const ModeSpec& j,
                          const FieldParams& params, CorrelatorKind kind) {
  params.validate();
  return expand_terms(i, j, kind,
                      [&params](const SmearingSpec& a, const SmearingSpec& b,
                                CorrelatorKind k) {
                        check_smearing_params(a, b, params);
                        return quadrature_value(a, b, params, k,
                                                center_distance(a, b));
                      });
}

double smearing_correlator(const SmearingSpec& a, const SmearingSpec& b,
                           const FieldParams& params, CorrelatorKind kind,
                           CorrelatorCache* cache) {
  check_smearing_params(a, b, params);
  if (cross_kind(kind)) return 0.0;
  const double dist = center_distance(a, b);
  const auto evaluate = [&a, &b, &params, kind, dist]() {
    if (analytic_eligible(a, b, params, dist, kAnalyticDispatchRho)) {
      try {
        return closed_form_value(a, b, params, kind, dist);
      } catch (const ConvergenceError&) {
        // 3F2 stalled (possible near contact): fall through to quadrature.
      }
    }
    return quadrature_value(a, b, params, kind, dist);
  };
  if (cache == nullptr) return evaluate();
  return cache->get_or_compute(pair_key(a, b, params, kind, dist), evaluate);
}

double mode_correlator(const ModeSpec& i, const ModeSpec& j,
                       const FieldParams& params, CorrelatorKind kind,
                       CorrelatorCache* cache) {
  params.validate();
  return expand_terms(i, j, kind,
                      [&params, cache](const SmearingSpec& a,
                                       const SmearingSpec& b,
                                       CorrelatorKind k) {
                        return smearing_correlator(a, b, params, k, cache);
                      });
}

}  // namespace fieldmodes
