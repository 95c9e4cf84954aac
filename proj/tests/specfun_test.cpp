#include <doctest.h>

#include <cmath>
#include <vector>

#include "fieldmodes/errors.hpp"
#include "fieldmodes/specfun.hpp"
#include "oracle_util.hpp"

using fieldmodes::bessel_j;
using fieldmodes::hyper_3f2;
using fieldmodes::log_gamma;

namespace {

constexpr double kLogGammaTol = 1e-12;   // contract over [1e-3, 1e6]
constexpr double kBesselTol = 1e-10;     // contract for nu <= 30, x <= 1e4
constexpr double kRecurrenceTol = 1e-8;  // three-term recurrence slack
constexpr double kHyperTol = 1e-11;

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("log_gamma matches frozen high-precision values") {
  // Expected values frozen from a 40-digit Stirling/series evaluation.
  struct Row {
    double x, expect;
  };
  const std::vector<Row> rows = {
      {0.001, 6.9071788853838536825},
      {0.5, 0.57236494292470008707},  // ln sqrt(pi)
      {7.3, 7.1478925230222490328},
      {123.456, 469.60554712992946873},
      {1e6, 12815504.56914761166},
  };
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(rel_err(log_gamma(r.x), r.expect) < kLogGammaTol);
  }
  // Gamma(1) = Gamma(2) = 1 exactly.
  CHECK(std::abs(log_gamma(1.0)) < 1e-13);
  CHECK(std::abs(log_gamma(2.0)) < 1e-13);
}

TEST_CASE("log_gamma rejects the nonpositive axis") {
  CHECK_THROWS_AS(log_gamma(0.0), fieldmodes::DomainError);
  CHECK_THROWS_AS(log_gamma(-3.5), fieldmodes::DomainError);
}

TEST_CASE("log_gamma satisfies the Gamma recurrence") {
  // exp(lg(x+1)) = x exp(lg(x)) to 1e-12 relative across [0.1, 100].
  for (double x = 0.1; x <= 100.0; x *= 1.37) {
    CAPTURE(x);
    const double lhs = std::exp(log_gamma(x + 1.0));
    const double rhs = x * std::exp(log_gamma(x));
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("bessel_j matches frozen values across all evaluation regimes") {
  struct Row {
    double nu, x, expect;
  };
  const std::vector<Row> rows = {
      // ascending series (x < 12)
      {0.0, 1.5, 0.51182767173591812875},
      {2.5, 3.7, 0.45685188411295336523},
      {0.0, 11.9, 0.025049441699589563728},
      {7.5, 0.2, 2.2505826038133857087e-12},
      {1.0, 5.0, -0.32757913759146522204},
      {30.0, 11.0, 2.273538367631618429e-11},
      // asymptotic region, low order (x >= 12, nu < 2)
      {0.0, 12.0, 0.047689310796833536624},
      {0.5, 20.0, 0.16288076385502987091},
      {1.5, 100.0, -0.069207112795890604984},
      {0.0, 10000.0, -0.0070961603533888014773},
      // asymptotic anchors + upward recurrence (x >= max(12, 2 nu))
      {5.0, 30.0, -0.14324029551207707699},
      {10.25, 40.0, 0.09798760350293166823},
      {30.0, 10000.0, 0.0072530889890212511682},
      {2.0, 12.5, -0.17336146343878265726},
      // continued fraction + downward recurrence (12 <= x < 2 nu)
      {7.0, 13.0, -0.24057094958616050699},
      {12.3, 14.0, 0.28248314468074460367},
      {30.0, 59.9, 0.075565922380197163179},
      {25.0, 12.0, 4.4184178792297717459e-7},
      {30.0, 35.0, 0.1047154953284924155},
  };
  for (const auto& r : rows) {
    CAPTURE(r.nu);
    CAPTURE(r.x);
    CHECK(rel_err(bessel_j(r.nu, r.x), r.expect) < kBesselTol);
  }
}

TEST_CASE("bessel_j trivial points and domain errors") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(2.0, 0.0) == 0.0);
  // J_{1/2}(pi) = sqrt(2/pi^2) sin(pi) = 0.
  CHECK(std::abs(bessel_j(0.5, 3.14159265358979323846)) < 1e-15);
  CHECK_THROWS_AS(bessel_j(-0.5, 1.0), fieldmodes::DomainError);
  CHECK_THROWS_AS(bessel_j(1.0, -1.0), fieldmodes::DomainError);
}

TEST_CASE("bessel_j three-term recurrence holds on a nu/x grid") {
  // J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu, checked against the largest of
  // the three terms so isolated zeros of one member do not inflate the
  // relative measure.
  for (int nu = 1; nu <= 10; ++nu) {
    for (double x = 0.5; x <= 50.0; x += 4.5) {
      CAPTURE(nu);
      CAPTURE(x);
      const double jm = bessel_j(nu - 1.0, x);
      const double j0 = bessel_j(static_cast<double>(nu), x);
      const double jp = bessel_j(nu + 1.0, x);
      const double lhs = jm + jp;
      const double rhs = (2.0 * nu / x) * j0;
      const double scale =
          std::max({std::abs(jm), std::abs(jp), std::abs(rhs), 1e-280});
      CHECK(std::abs(lhs - rhs) / scale < kRecurrenceTol);
    }
  }
}

TEST_CASE("bessel_j agrees with the extended-precision series oracle") {
  // Independent long-double series, valid for moderate x.
  for (double nu : {0.0, 0.75, 3.0, 9.5}) {
    for (double x : {0.3, 2.0, 8.0, 14.0, 21.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      const double want = static_cast<double>(oracle::bessel_j_series(nu, x));
      CHECK(rel_err(bessel_j(nu, x), want) < kBesselTol);
    }
  }
}

TEST_CASE("hyper_3f2 matches frozen values and the direct-series oracle") {
  struct Row {
    double a1, a2, a3, b1, b2, x, expect;
  };
  const std::vector<Row> rows = {
      {1.5, 2.5, 3.0, 3.5, 6.0, 0.25, 1.1558332575821729919},
      {1.5, 2.5, 3.0, 3.5, 6.0, -0.75, 0.71459313188788766574},
      {0.5, 1.0, 1.5, 2.0, 2.5, 0.9, 1.2238746215185868041},
      {-3.0, 2.0, 4.0, 1.5, 2.5, 0.5, -0.15374149659863945578},  // polynomial
      {2.0, 3.0, 4.0, 5.0, 6.0, 0.999, 4.3304946542139790666},   // slow
  };
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(rel_err(hyper_3f2(r.a1, r.a2, r.a3, r.b1, r.b2, r.x), r.expect) <
          kHyperTol);
    const double ora = static_cast<double>(
        oracle::hyper_3f2_direct(r.a1, r.a2, r.a3, r.b1, r.b2, r.x, 100000));
    CHECK(rel_err(r.expect, ora) < 1e-14);  // oracle agrees with frozen value
  }
}

TEST_CASE("hyper_3f2 trivial reductions") {
  CHECK(hyper_3f2(0.3, 0.7, 2.0, 1.1, 4.4, 0.0) == 1.0);
  // a3 = b2 cancels: 3F2(1,1,c;2,c;x) = 2F1(1,1;2;x) = -ln(1-x)/x.
  for (double x : {0.5, -0.9, 0.125}) {
    CAPTURE(x);
    const double want = -std::log1p(-x) / x;
    CHECK(rel_err(hyper_3f2(1.0, 1.0, 7.5, 2.0, 7.5, x), want) < kHyperTol);
  }
}

TEST_CASE("hyper_3f2 partial sums with positive parameters stay above 1") {
  // All-positive parameters and x > 0 give a monotone series: value >= 1.
  for (double x : {0.1, 0.5, 0.95}) {
    CHECK(hyper_3f2(0.4, 1.3, 2.2, 3.1, 4.0, x) >= 1.0);
  }
}

TEST_CASE("hyper_3f2 domain and convergence errors") {
  CHECK_THROWS_AS(hyper_3f2(1, 1, 1, 2, 2, 1.0), fieldmodes::DomainError);
  CHECK_THROWS_AS(hyper_3f2(1, 1, 1, 2, 2, -1.5), fieldmodes::DomainError);
  // Nonpositive-integer lower parameter poisons the series.
  CHECK_THROWS_AS(hyper_3f2(1, 1, 1, -2.0, 2, 0.5), fieldmodes::DomainError);
  // Tiny term budget at slow convergence must surface, not extrapolate.
  fieldmodes::SeriesControl tight;
  tight.max_terms = 100;
  CHECK_THROWS_AS(hyper_3f2(2, 3, 4, 5, 6, 0.999, tight),
                  fieldmodes::ConvergenceError);
}

TEST_CASE("SeriesControl invariants are enforced") {
  fieldmodes::SeriesControl bad_tol;
  bad_tol.rel_tol = 1e-3;  // must be strictly below 1e-3
  CHECK_THROWS_AS(bad_tol.validate(), fieldmodes::DomainError);
  bad_tol.rel_tol = 0.0;
  CHECK_THROWS_AS(bad_tol.validate(), fieldmodes::DomainError);
  fieldmodes::SeriesControl bad_terms;
  bad_terms.max_terms = 99;
  CHECK_THROWS_AS(bad_terms.validate(), fieldmodes::DomainError);
  fieldmodes::SeriesControl ok;
  ok.rel_tol = 9e-4;
  ok.max_terms = 100;
  CHECK_NOTHROW(ok.validate());
}
