#include "fieldmodes/mode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fieldmodes/errors.hpp"
#include "fieldmodes/quadrature.hpp"

namespace fieldmodes {

namespace {

constexpr double kOverlapRelTol = 1e-12;
// Relative slack on |center distance| below which supports count as
// concentric, and on support sums at which they count as disjoint (closed
// supports touching on a measure-zero set contribute nothing).
constexpr double kGeometryTol = 1e-12;

struct RadialRange {
  double lo = 0.0;
  double hi = 0.0;
};

RadialRange radial_support(const SmearingSpec& s) {
  if (s.family == SmearingFamily::kShellSin2)
    return {s.shell_inner, s.shell_inner + s.shell_thickness};
  return {0.0, s.outer_radius()};
}

// Interior kinks and zeros of the radial profile, as quadrature seeds.
void append_profile_edges(const SmearingSpec& s, std::vector<double>* pts) {
  if (s.family == SmearingFamily::kTrapezoid) pts->push_back(s.radius);
  if (s.family == SmearingFamily::kSinc) {
    for (int j = 1; j < 2 * s.index_n; ++j)
      pts->push_back(s.radius * j / (2.0 * s.index_n));
  }
}

}  // namespace

bool ModeSpec::is_simple_pair() const {
  if (position_op.size() != 1 || momentum_op.size() != 1) return false;
  const OperatorTerm& x = position_op.front();
  const OperatorTerm& p = momentum_op.front();
  return x.field_coeff == 1.0 && x.momentum_coeff == 0.0 &&
         p.field_coeff == 0.0 && p.momentum_coeff == 1.0 &&
         same_smearing_spec(x.smearing, p.smearing);
}

const SmearingSpec& ModeSpec::pair_smearing() const {
  if (!is_simple_pair())
    throw DomainError("ModeSpec: not a single-smearing canonical pair");
  return position_op.front().smearing;
}

void ModeSpec::validate() const {
  if (position_op.empty() || momentum_op.empty())
    throw DomainError("ModeSpec: both observables need at least one term");
  const int dim = position_op.front().smearing.dimension;
  for (const std::vector<OperatorTerm>* op : {&position_op, &momentum_op}) {
    for (const OperatorTerm& term : *op) {
      term.smearing.validate();
      if (term.smearing.dimension != dim)
        throw DomainError("ModeSpec: terms mix spatial dimensions");
      if (!std::isfinite(term.field_coeff) ||
          !std::isfinite(term.momentum_coeff))
        throw DomainError("ModeSpec: non-finite operator coefficient");
    }
  }
}

ModeSpec make_pair_mode(const SmearingSpec& smearing) {
  smearing.validate();
  ModeSpec mode;
  mode.position_op.push_back({smearing, 1.0, 0.0});
  mode.momentum_op.push_back({smearing, 0.0, 1.0});
  return mode;
}

double center_distance(const SmearingSpec& a, const SmearingSpec& b) {
  if (a.dimension != b.dimension)
    throw DomainError("center_distance: spatial dimensions differ");
  const std::vector<double> ca = a.center_point();
  const std::vector<double> cb = b.center_point();
  double sq = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double t = ca[i] - cb[i];
    sq += t * t;
  }
  return std::sqrt(sq);
}

bool same_smearing_spec(const SmearingSpec& a, const SmearingSpec& b) {
  return a.family == b.family && a.dimension == b.dimension &&
         a.radius == b.radius && a.delta == b.delta &&
         a.index_n == b.index_n && a.shell_inner == b.shell_inner &&
         a.shell_thickness == b.shell_thickness && a.scale_c == b.scale_c &&
         a.center_point() == b.center_point();
}

double smearing_overlap(const SmearingSpec& a, const SmearingSpec& b) {
  a.validate(true);
  b.validate(true);
  if (a.dimension != b.dimension)
    throw DomainError("smearing_overlap: spatial dimensions differ");
  const double ra = a.outer_radius();
  const double rb = b.outer_radius();
  const double dist = center_distance(a, b);
  if (dist >= (ra + rb) * (1.0 - kGeometryTol)) return 0.0;
  if (dist > (ra + rb) * kGeometryTol)
    throw UnsupportedConfigurationError(
        "smearing_overlap: partially overlapping supports with distinct "
        "centers are not supported");

  const RadialRange sa = radial_support(a);
  const RadialRange sb = radial_support(b);
  const double lo = std::max(sa.lo, sb.lo);
  const double hi = std::min(sa.hi, sb.hi);
  if (hi <= lo) return 0.0;

  const double amp = normalization(a).value * normalization(b).value;
  const int dim = a.dimension;
  std::vector<double> pts;
  append_profile_edges(a, &pts);
  append_profile_edges(b, &pts);

  const Integrand g = [&a, &b, dim](double r) {
    return radial_profile(a, r) * radial_profile(b, r) *
           std::pow(r, dim - 1);
  };
  QuadratureControl ctrl;
  ctrl.rel_tol = kOverlapRelTol;
  // Cauchy-Schwarz bounds the overlap by 1/sqrt(c_a c_b); orthogonal pairs
  // integrate to zero, so an absolute floor at that scale is required.
  const double bound = 1.0 / std::sqrt(a.c() * b.c());
  ctrl.abs_tol = 1e-13 * bound / (sphere_surface(dim) * std::abs(amp));
  const QuadratureResult r = integrate(g, lo, hi, ctrl, std::move(pts));
  return sphere_surface(dim) * amp * r.value;
}

double symplectic_product(const std::vector<OperatorTerm>& u,
                          const std::vector<OperatorTerm>& v) {
  double acc = 0.0;
  for (const OperatorTerm& x : u) {
    for (const OperatorTerm& y : v) {
      const double fp = x.field_coeff * y.momentum_coeff;
      const double pf = x.momentum_coeff * y.field_coeff;
      if (fp == 0.0 && pf == 0.0) continue;
      const double ov = smearing_overlap(x.smearing, y.smearing);
      if (ov == 0.0) continue;
      acc += fp * y.smearing.c() * ov - pf * x.smearing.c() * ov;
    }
  }
  return acc;
}

double canonical_commutator(const ModeSpec& mode) {
  return symplectic_product(mode.position_op, mode.momentum_op);
}

}  // namespace fieldmodes
