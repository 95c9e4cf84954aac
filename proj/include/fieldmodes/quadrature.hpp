#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fieldmodes/errors.hpp"

namespace fieldmodes {

// Budget and stopping tolerances for adaptive integration. The run stops as
// soon as the summed panel-error estimate falls below
// max(abs_tol, rel_tol * |integral|).
struct QuadratureControl {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_subintervals = 100000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;      // estimated absolute error
  std::size_t panels = 0;  // panels in the final partition
};

using Integrand = std::function<double(double)>;

// One 15-point Gauss-Kronrod panel on [a, b], with the embedded 7-point
// Gauss rule supplying the error estimate.
QuadratureResult gk15(const Integrand& f, double a, double b);

// Globally adaptive integral of f over finite [a, b]: repeatedly bisects the
// panel with the largest error estimate. `breakpoints` seeds extra initial
// panel edges (integrand kinks, support boundaries); entries outside (a, b)
// are ignored. Throws QuadratureError when the subdivision budget is
// exhausted above tolerance.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureControl& ctrl = {},
                           std::vector<double> breakpoints = {});

// Wynn epsilon extrapolation of a sequence of partial sums: returns the
// deepest even-column estimate reached before the table degenerates, or the
// last partial sum if no extrapolation step succeeds.
double wynn_epsilon(const std::vector<double>& partial_sums);

// Levin u-transform limit of the series sum(terms): handles algebraically
// decaying (zeta-like) and alternating terms alike, including windows taken
// deep inside a tail. Degrades past ~15-20 terms in double precision, so
// keep the sequence short. Returns the deepest finite estimate.
double levin_u_limit(const std::vector<double>& terms, double beta = 1.0);

// Controls for the semi-infinite oscillatory integrator. `osc_scale` is the
// fastest angular frequency of the integrand in the integration variable;
// the axis is cut into half-period blocks of length pi / osc_scale.
struct OscillatoryControl {
  double rel_tol = 1e-8;
  double osc_scale = 1.0;
  std::size_t max_panels = 100000;
};

// Integral of f over [a, inf) for integrands that settle into a decaying
// power-law envelope times bounded oscillation. The axis is cut into
// full-period units (two adaptively integrated half-period blocks) so the
// fastest oscillation cancels within each unit; the remaining unit series
// is extrapolated to its limit with a windowed Levin u-transform, with the
// two window lengths and the previous unit's estimate required to agree
// before the limit is accepted. Reliable for envelopes x^-q with q >= 2
// (unit sums ~ K^-2 or faster); for a conditionally convergent 1/x
// envelope the result is only good to a few ppm and `error` understates
// the residual. Throws QuadratureError when the panel budget is exhausted
// before the series converges.
QuadratureResult integrate_oscillatory(const Integrand& f, double a,
                                       const OscillatoryControl& ctrl);

}  // namespace fieldmodes
