#include "fieldmodes/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace fieldmodes {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// 15-point Kronrod abscissae on [-1, 1] (QUADPACK dqk15 coefficient set);
// odd indices are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15_panel(const Integrand& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  double fv1[7];
  double fv2[7];
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);

  for (int j = 0; j < 3; ++j) {  // embedded Gauss nodes
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {  // Kronrod-only nodes
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kUflow = std::numeric_limits<double>::min();
  if (resabs > kUflow / (50.0 * kEps)) {
    abserr = std::max(kEps * 50.0 * resabs, abserr);
  }
  return {a, b, result, abserr};
}

}  // namespace

QuadratureResult gk15(const Integrand& f, double a, double b) {
  const Panel p = gk15_panel(f, a, b);
  return {p.value, p.error, 1};
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureControl& ctrl,
                           std::vector<double> breakpoints) {
  if (!(b > a)) throw DomainError("integrate: requires b > a");

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(
      std::unique(breakpoints.begin(), breakpoints.end()),
      breakpoints.end());

  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i];
    const double hi = breakpoints[i + 1];
    if (hi <= a || lo >= b) continue;  // breakpoint outside the interval
    const Panel p = gk15_panel(f, std::max(lo, a), std::min(hi, b));
    value += p.value;
    error += p.error;
    ++panels;
    heap.push(p);
  }

  while (error > std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(value))) {
    if (panels >= ctrl.max_subintervals) {
      throw QuadratureError("integrate: subdivision budget exhausted");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || worst.error == 0.0) {
      // Panel no longer splittable; the remaining error is roundoff-bound.
      heap.push(worst);
      break;
    }
    const Panel left = gk15_panel(f, worst.a, mid);
    const Panel right = gk15_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    ++panels;
    heap.push(left);
    heap.push(right);
  }
  return {value, error, panels};
}

double wynn_epsilon(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) throw DomainError("wynn_epsilon: empty sequence");
  if (n < 3) return partial_sums.back();

  // Columns of the epsilon table: em1 = eps_{k-1}, e = eps_k. Even columns
  // are estimates; odd ones are auxiliary reciprocal differences.
  std::vector<double> em1(n + 1, 0.0);
  std::vector<double> e(partial_sums);
  double best = partial_sums.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t s = 0; s + k < n; ++s) {
      const double d = e[s + 1] - e[s];
      const double scale =
          std::max({std::abs(e[s]), std::abs(e[s + 1]), 1e-300});
      if (std::abs(d) < 1e-15 * scale) {
        // Table breakdown. If e is an estimate (even) column its entries
        // have converged; otherwise fall back to the last stable estimate.
        return (k % 2 == 1) ? e[s + 1] : best;
      }
      next[s] = em1[s + 1] + 1.0 / d;
      if (!std::isfinite(next[s])) return best;
    }
    em1 = std::move(e);
    e = std::move(next);
    if (k % 2 == 0) best = e.back();
  }
  return best;
}

double levin_u_limit(const std::vector<double>& terms, double beta) {
  const std::size_t n = terms.size();
  if (n == 0) throw DomainError("levin_u_limit: empty sequence");
  if (!(beta > 0.0)) throw DomainError("levin_u_limit: beta must be positive");

  std::vector<double> numer(n), denom(n);
  double sum = 0.0;
  double best = terms[0];
  for (std::size_t j = 0; j < n; ++j) {
    sum += terms[j];
    // u-type remainder estimate omega_j = (beta + j) a_j, suited to both
    // algebraic and alternating decay.
    double omega = (beta + j) * terms[j];
    if (omega == 0.0) omega = 1e-300;
    double term = 1.0 / (beta + j);
    denom[j] = term / omega;
    numer[j] = sum * denom[j];
    if (j > 0) {
      const double ratio = (beta + j - 1.0) * term;
      for (std::size_t i = 1; i <= j; ++i) {
        const double fact = (static_cast<double>(j - i) + beta) * term;
        numer[j - i] = numer[j - i + 1] - fact * numer[j - i];
        denom[j - i] = denom[j - i + 1] - fact * denom[j - i];
        term *= ratio;
      }
    }
    if (std::abs(denom[0]) > 1e-300) {
      const double val = numer[0] / denom[0];
      if (std::isfinite(val)) best = val;
    }
  }
  return best;
}

QuadratureResult integrate_oscillatory(const Integrand& f, double a,
                                       const OscillatoryControl& ctrl) {
  if (!(ctrl.osc_scale > 0.0) || !std::isfinite(ctrl.osc_scale))
    throw DomainError("integrate_oscillatory: oscillation scale must be positive");
  if (!(ctrl.rel_tol > 0.0) || ctrl.rel_tol > 1e-2)
    throw DomainError("integrate_oscillatory: relative tolerance out of range");

  const double half_period = kPi / ctrl.osc_scale;
  // The accumulation unit is one full period of the fastest oscillation, so
  // that oscillation integrates out within a unit and the unit series keeps
  // only the decaying envelope plus slower (beat) modulations.
  constexpr std::size_t kLongWindow = 12;   // units fed to the u-transform
  constexpr std::size_t kShortWindow = 8;   // cross-check window
  constexpr std::size_t kMinUnits = 16;     // settle past the head region
  constexpr std::size_t kPanelsPerBlock = 4000;

  QuadratureControl inner;
  inner.rel_tol = std::min(1e-10, 0.01 * ctrl.rel_tol);

  double total = 0.0;
  double peak = 0.0;  // largest |partial sum|: the cancellation scale
  double prev_est = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> units;   // last kLongWindow unit integrals
  std::vector<double> bases;   // partial sum *before* each stored unit
  std::size_t panels_used = 0;

  for (std::size_t m = 0;; ++m) {
    if (panels_used >= ctrl.max_panels)
      throw QuadratureError("integrate_oscillatory: panel budget exhausted");
    double unit = 0.0;
    for (int half = 0; half < 2; ++half) {
      const double lo = a + half_period * static_cast<double>(2 * m + half);
      inner.abs_tol = 1e-3 * ctrl.rel_tol * std::max(std::abs(total), peak);
      inner.max_subintervals =
          std::min(kPanelsPerBlock, ctrl.max_panels - panels_used);
      const QuadratureResult r = integrate(f, lo, lo + half_period, inner);
      panels_used += r.panels;
      unit += r.value;
    }
    bases.push_back(total);
    units.push_back(unit);
    if (units.size() > kLongWindow) {
      units.erase(units.begin());
      bases.erase(bases.begin());
    }
    total += unit;
    peak = std::max(peak, std::abs(total));

    if (m + 1 < kMinUnits) continue;
    const double scale = std::max({std::abs(total), peak, 1e-300});

    double recent_max = 0.0;
    for (double u : units) recent_max = std::max(recent_max, std::abs(u));
    // All recent units negligible: the tail cannot matter at tolerance.
    if (recent_max <= 0.125 * ctrl.rel_tol * scale)
      return {total, recent_max, panels_used};

    // Tail-only extrapolation: limit = sum before the window + u-transform
    // limit of the windowed unit series. Two window lengths and the previous
    // unit's estimate must agree; the guard rejects degenerate transforms
    // (the true tail of a decaying series cannot dwarf its recent units).
    const std::vector<double> short_tail(units.end() - kShortWindow,
                                         units.end());
    const double est_long = bases.front() + levin_u_limit(units);
    const double est_short =
        bases[units.size() - kShortWindow] + levin_u_limit(short_tail);
    const double guard = 50.0 * static_cast<double>(kLongWindow) * recent_max;
    if (std::isfinite(est_long) && std::isfinite(est_short) &&
        std::abs(est_long - total) <= guard) {
      const double spread = std::abs(est_long - est_short);
      const double drift = std::abs(est_long - prev_est);
      if (std::isfinite(prev_est) && spread <= 0.25 * ctrl.rel_tol * scale &&
          drift <= 0.25 * ctrl.rel_tol * scale)
        return {est_long, std::max(spread, drift), panels_used};
      prev_est = est_long;
    } else {
      prev_est = std::numeric_limits<double>::quiet_NaN();
    }
  }
}

}  // namespace fieldmodes
