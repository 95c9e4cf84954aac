#pragma once

// Extended-precision runtime oracles shared by the test suite. These are
// deliberately independent of the library implementations they check:
// quadrature is Gauss-Legendre with Newton-refined nodes, and the special
// functions below use only direct series/Stirling forms in long double.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct GaussRule {
  std::vector<long double> nodes;    // on (-1, 1)
  std::vector<long double> weights;
};

// Nodes/weights of the n-point Gauss-Legendre rule via Newton iteration on
// P_n computed from the three-term recurrence.
inline GaussRule gauss_legendre(std::size_t n) {
  constexpr long double kPi = 3.141592653589793238462643383279503L;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Chebyshev-like initial guess.
    long double x = std::cos(kPi * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double p2 =
            ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0L / ((1.0L - x * x) * dp * dp);
  }
  return rule;
}

// n-point Gauss-Legendre integral of f over [a, b].
template <typename F>
long double integrate_gauss(F&& f, long double a, long double b,
                            std::size_t n = 50) {
  const GaussRule rule = gauss_legendre(n);
  const long double mid = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

// Panel-composited Gauss rule for integrands with structure (oscillation,
// near-endpoint peaks): m equal panels, n points each.
template <typename F>
long double integrate_gauss_panels(F&& f, long double a, long double b,
                                   std::size_t panels, std::size_t n = 50) {
  long double sum = 0.0L;
  for (std::size_t p = 0; p < panels; ++p) {
    const long double pa = a + (b - a) * static_cast<long double>(p) / panels;
    const long double pb =
        a + (b - a) * static_cast<long double>(p + 1) / panels;
    sum += integrate_gauss(f, pa, pb, n);
  }
  return sum;
}

// ln Gamma in long double: Stirling series with argument shift. Independent
// of the library's Lanczos implementation.
inline long double log_gamma(long double x) {
  constexpr long double kHalfLog2Pi =
      0.918938533204672741780329736405617639L;
  // Bernoulli-number coefficients B_{2n} / (2n(2n-1)).
  constexpr long double kStirling[] = {
      1.0L / 12.0L,      -1.0L / 360.0L,    1.0L / 1260.0L,
      -1.0L / 1680.0L,   1.0L / 1188.0L,    -691.0L / 360360.0L,
      1.0L / 156.0L,     -3617.0L / 122400.0L,
  };
  long double shift = 0.0L;
  while (x < 20.0L) {
    shift -= std::log(x);
    x += 1.0L;
  }
  long double series = 0.0L;
  long double xp = 1.0L / x;
  const long double x2 = 1.0L / (x * x);
  for (long double c : kStirling) {
    series += c * xp;
    xp *= x2;
  }
  return shift + kHalfLog2Pi + (x - 0.5L) * std::log(x) - x + series;
}

inline long double gamma_fn(long double x) { return std::exp(log_gamma(x)); }

// Ascending-series Bessel J_nu(x) in long double; usable for x up to ~25
// before cancellation erodes the extended-precision advantage.
inline long double bessel_j_series(long double nu, long double x) {
  if (x == 0.0L) return (nu == 0.0L) ? 1.0L : 0.0L;
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= 400; ++k) {
    term *= -q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return std::exp(nu * std::log(0.5L * x) - log_gamma(nu + 1.0L)) * sum;
}

// Direct extended-precision 3F2 partial sum with a fixed term budget.
inline long double hyper_3f2_direct(long double a1, long double a2,
                                    long double a3, long double b1,
                                    long double b2, long double x,
                                    int terms = 10000) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int n = 0; n < terms; ++n) {
    term *= (a1 + n) * (a2 + n) * (a3 + n) /
            ((b1 + n) * (b2 + n) * (n + 1.0L)) * x;
    sum += term;
    if (term == 0.0L) break;
    if (std::abs(term) < 1e-25L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace oracle
