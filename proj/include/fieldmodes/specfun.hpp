#pragma once

#include <cstddef>

#include "fieldmodes/errors.hpp"

namespace fieldmodes {

// Truncation control for the hypergeometric series.
struct SeriesControl {
  double rel_tol = 1e-13;
  std::size_t max_terms = 100000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1e-3)) {
      throw DomainError("SeriesControl: rel_tol must lie in (0, 1e-3)");
    }
    if (max_terms < 100) {
      throw DomainError("SeriesControl: max_terms must be >= 100");
    }
  }
};

// ln Gamma(x) for x > 0, relative error <~ 1e-13 over [1e-3, 1e6].
double log_gamma(double x);

// Gamma(x) for x > 0 (convenience wrapper, exp(log_gamma)).
double gamma_fn(double x);

// Bessel function of the first kind J_nu(x), real order nu >= 0, x >= 0.
// Ascending series for small x; Hankel asymptotics anchored at the fractional
// order plus stable recurrence elsewhere; continued fraction when the order
// exceeds the argument. Relative error <~ 1e-10 for nu <= 30, x <= 1e4
// (away from zeros of J).
double bessel_j(double nu, double x);

// Generalized hypergeometric 3F2(a1,a2,a3; b1,b2; x) for |x| < 1.
// Terms are generated by the exact Pochhammer-ratio recurrence; summation
// stops once the geometric bound on the remaining tail drops below
// ctrl.rel_tol times the accumulated sum.
double hyper_3f2(double a1, double a2, double a3, double b1, double b2,
                 double x, const SeriesControl& ctrl = {});

}  // namespace fieldmodes
