#include <doctest.h>

#include <cmath>
#include <vector>

#include "fieldmodes/errors.hpp"
#include "fieldmodes/quadrature.hpp"
#include "fieldmodes/smearing.hpp"
#include "oracle_util.hpp"

using fieldmodes::evaluate;
using fieldmodes::fourier_transform;
using fieldmodes::normalization;
using fieldmodes::radial_ft;
using fieldmodes::radial_kernel;
using fieldmodes::radial_profile;
using fieldmodes::SmearingFamily;
using fieldmodes::SmearingSpec;
using fieldmodes::sobolev_norm_sq;
using fieldmodes::sphere_surface;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNormTol = 1e-10;     // c * integral f^2 = 1 contract
constexpr double kCrossPathTol = 1e-8; // closed form vs quadrature agreement

SmearingSpec poly_bump(double delta, int dim, double radius = 1.0,
                       double c = 0.0) {
  SmearingSpec s;
  s.family = SmearingFamily::kPolyBump;
  s.dimension = dim;
  s.radius = radius;
  s.delta = delta;
  s.scale_c = c;
  return s;
}

SmearingSpec shell_sin2(double inner, double thickness, int dim) {
  SmearingSpec s;
  s.family = SmearingFamily::kShellSin2;
  s.dimension = dim;
  s.shell_inner = inner;
  s.shell_thickness = thickness;
  s.radius = inner + thickness;
  return s;
}

std::vector<SmearingSpec> family_zoo() {
  std::vector<SmearingSpec> zoo;
  zoo.push_back(poly_bump(1.0, 3));
  zoo.push_back(poly_bump(2.5, 2));
  SmearingSpec s;
  s.family = SmearingFamily::kCosPower;
  s.index_n = 2;
  zoo.push_back(s);
  s.family = SmearingFamily::kExpBump;
  zoo.push_back(s);
  s.family = SmearingFamily::kTrapezoid;
  s.delta = 0.8;
  zoo.push_back(s);
  s.family = SmearingFamily::kPolyCap;
  s.index_n = 3;
  zoo.push_back(s);
  s.family = SmearingFamily::kSinc;
  s.index_n = 2;
  zoo.push_back(s);
  zoo.push_back(shell_sin2(1.0, 0.5, 3));
  s = SmearingSpec{};
  s.family = SmearingFamily::kBallCos2;
  s.dimension = 2;
  zoo.push_back(s);
  return zoo;
}

// Oracle quadrature over the support, split at the plateau kink so the
// trapezoid's derivative jump never sits inside a Gauss panel.
template <typename F>
long double support_oracle_integral(const SmearingSpec& spec, F&& f) {
  const long double lo =
      spec.family == SmearingFamily::kShellSin2 ? spec.shell_inner : 0.0L;
  const long double hi = spec.outer_radius();
  if (spec.family == SmearingFamily::kTrapezoid) {
    return oracle::integrate_gauss_panels(f, lo, spec.radius, 32, 50) +
           oracle::integrate_gauss_panels(f, spec.radius, hi, 32, 50);
  }
  return oracle::integrate_gauss_panels(f, lo, hi, 32, 50);
}

// Independent check integral: c * A^2 * Omega * int fbar^2 r^{D-1} dr.
double canonical_norm_check(const SmearingSpec& spec) {
  const auto n = normalization(spec);
  const long double integral =
      support_oracle_integral(spec, [&spec](long double r) {
        const double v = radial_profile(spec, static_cast<double>(r));
        return static_cast<long double>(v) * v *
               std::pow(r, spec.dimension - 1);
      });
  return n.scale_c * n.value * n.value * sphere_surface(spec.dimension) *
         static_cast<double>(integral);
}

}  // namespace

TEST_CASE("normalization closed form and scaling for the polynomial bump") {
  // delta=1, D=3, R=1, c=1: A = pi^{-3/4} sqrt(Gamma(9/2)/Gamma(3)).
  const auto n = normalization(poly_bump(1.0, 3, 1.0, 1.0));
  CHECK(n.value == doctest::Approx(1.0219854764332823634).epsilon(1e-13));
  CHECK(n.scale_c == 1.0);
  // R doubles at fixed c: A scales by 2^{-D/2}.
  const auto n2 = normalization(poly_bump(1.0, 3, 2.0, 1.0));
  CHECK(n2.value ==
        doctest::Approx(n.value * std::pow(2.0, -1.5)).epsilon(1e-13));
}

TEST_CASE("normalization of cos^2 profile matches the Gauss oracle") {
  SmearingSpec s;
  s.family = SmearingFamily::kCosPower;
  s.index_n = 2;
  s.dimension = 3;
  s.scale_c = 1.0;
  const auto n = normalization(s);
  // Frozen from the extended-precision radial quadrature of cos^4(pi r/2) r^2.
  CHECK(n.value == doctest::Approx(1.6283659417783289905).epsilon(1e-11));
  // Runtime oracle: same integral with the 50-point Gauss rule.
  const double integral = static_cast<double>(oracle::integrate_gauss(
      [](long double r) {
        const long double u = std::cos(0.5L * 3.141592653589793238L * r);
        return u * u * u * u * r * r;
      },
      0.0L, 1.0L, 50));
  CHECK(n.value ==
        doctest::Approx(1.0 / std::sqrt(4.0 * kPi * integral)).epsilon(1e-12));
}

TEST_CASE("every family satisfies the canonical normalization invariant") {
  for (const auto& spec : family_zoo()) {
    CAPTURE(static_cast<int>(spec.family));
    CHECK(canonical_norm_check(spec) == doctest::Approx(1.0).epsilon(kNormTol));
  }
}

TEST_CASE("evaluate hits the advertised special points") {
  const auto pb = poly_bump(1.0, 3, 1.0, 1.0);
  const double amp = normalization(pb).value;
  CHECK(evaluate(pb, {0.0, 0.0, 0.0}) == doctest::Approx(amp).epsilon(1e-13));
  CHECK(evaluate(pb, {0.0, 1.0, 0.0}) == 0.0);   // support edge
  CHECK(evaluate(pb, {2.0, 0.0, 0.0}) == 0.0);   // outside
  const auto sh = shell_sin2(1.0, 0.5, 3);
  const double amp_sh = normalization(sh).value;
  CHECK(amp_sh == doctest::Approx(0.63728841507997048628).epsilon(1e-11));
  // Peak of sin^2 sits mid-shell.
  CHECK(evaluate(sh, {1.25, 0.0, 0.0}) ==
        doctest::Approx(amp_sh).epsilon(1e-13));
  CHECK(evaluate(sh, {0.5, 0.0, 0.0}) == 0.0);  // inside the cavity
}

TEST_CASE("non-negative families are non-negative everywhere") {
  for (const auto& spec : family_zoo()) {
    if (spec.family == SmearingFamily::kSinc) continue;  // sign-indefinite
    for (double r = 0.0; r <= 1.1 * spec.outer_radius(); r += 0.013) {
      CAPTURE(static_cast<int>(spec.family));
      CAPTURE(r);
      CHECK(radial_profile(spec, r) >= 0.0);
    }
  }
}

TEST_CASE("fourier transform at k = 0 is the plain integral of f") {
  for (const auto& spec : family_zoo()) {
    CAPTURE(static_cast<int>(spec.family));
    const double amp = normalization(spec).value;
    const double direct =
        amp * sphere_surface(spec.dimension) *
        static_cast<double>(
            support_oracle_integral(spec, [&spec](long double r) {
              return static_cast<long double>(radial_profile(
                         spec, static_cast<double>(r))) *
                     std::pow(r, spec.dimension - 1);
            }));
    CHECK(radial_ft(spec, 0.0) == doctest::Approx(direct).epsilon(1e-9));
    if (spec.family != SmearingFamily::kSinc) {
      CHECK(radial_ft(spec, 0.0) > 0.0);  // non-negative profile
    }
  }
}

TEST_CASE("polynomial bump transform vanishes at the Bessel zero") {
  // delta=1, D=3: F proportional to J_{5/2}(kR)/(kR)^{5/2}.
  const auto pb = poly_bump(1.0, 3, 1.0, 1.0);
  const double k0 = 5.7634591968945497914;  // first zero of J_{5/2}
  const double scale = std::abs(radial_ft(pb, 0.0));
  CHECK(std::abs(radial_ft(pb, k0)) < 1e-12 * scale);
  // Phase factor: modulus is center-independent.
  auto off = pb;
  off.center = {0.4, -1.0, 2.0};
  const auto ft = fourier_transform(off, {0.0, k0 / std::sqrt(2.0),
                                          k0 / std::sqrt(2.0)});
  CHECK(std::abs(ft) < 1e-12 * scale);
}

TEST_CASE("closed-form polynomial bump transform matches quadrature") {
  for (double delta : {1.0, 2.0}) {
    for (int dim : {2, 3, 5}) {
      const auto pb = poly_bump(delta, dim, 1.0, 1.0);
      const double amp = normalization(pb).value;
      for (double k : {0.1, 1.0, 7.7, 50.0}) {
        CAPTURE(delta);
        CAPTURE(dim);
        CAPTURE(k);
        // Generic Hankel-kernel quadrature, bypassing the closed form.
        std::vector<double> brk;
        for (double r = kPi / k; r < 1.0; r += kPi / k) brk.push_back(r);
        fieldmodes::QuadratureControl ctrl;
        ctrl.rel_tol = 1e-12;
        ctrl.abs_tol = 1e-14;
        const double generic =
            amp * fieldmodes::integrate(
                      [&pb, dim, k](double r) {
                        return radial_profile(pb, r) * radial_kernel(dim, k * r) *
                               std::pow(r, dim - 1);
                      },
                      0.0, 1.0, ctrl, brk)
                      .value;
        const double closed = radial_ft(pb, k);
        const double scale = std::max(std::abs(generic), 1e-6);
        CHECK(std::abs(closed - generic) / scale < kCrossPathTol);
      }
    }
  }
}

TEST_CASE("sinc transform closed form matches the direct radial oracle") {
  SmearingSpec s;
  s.family = SmearingFamily::kSinc;
  s.index_n = 1;
  s.dimension = 3;
  const double f1 = radial_ft(s, 1.0);
  CHECK(f1 == doctest::Approx(-0.6888453640498192795).epsilon(1e-11));
  // Runtime oracle: 4 pi int sinc(2 pi r) sinc(k r) r^2 dr times A.
  const double amp = normalization(s).value;
  CHECK(amp == doctest::Approx(2.5066282746310005024).epsilon(1e-12));
  for (double k : {0.5, 1.0, 6.0}) {
    const double direct =
        amp * 4.0 * kPi *
        static_cast<double>(oracle::integrate_gauss_panels(
            [k](long double r) {
              const long double a = 2.0L * 3.141592653589793238L * r;
              const long double s1 = (a == 0.0L) ? 1.0L : std::sin(a) / a;
              const long double kr = k * r;
              const long double s2 = (kr == 0.0L) ? 1.0L : std::sin(kr) / kr;
              return s1 * s2 * r * r;
            },
            0.0L, 1.0L, 16, 50));
    CAPTURE(k);
    CHECK(radial_ft(s, k) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("sinc family members are mutually orthogonal") {
  // int k_n k_m d^Dx = 0 for n != m (same center and radius).
  for (int n = 1; n <= 3; ++n) {
    for (int m = n; m <= 3; ++m) {
      const double overlap =
          static_cast<double>(oracle::integrate_gauss_panels(
              [n, m](long double r) {
                const long double an = 2.0L * 3.141592653589793238L * n * r;
                const long double am = 2.0L * 3.141592653589793238L * m * r;
                const long double sn = (an == 0.0L) ? 1.0L : std::sin(an) / an;
                const long double sm = (am == 0.0L) ? 1.0L : std::sin(am) / am;
                return sn * sm * r * r;
              },
              0.0L, 1.0L, 24, 50));
      CAPTURE(n);
      CAPTURE(m);
      if (n == m) {
        CHECK(overlap > 0.0);
      } else {
        const double diag = 1.0 / (8.0 * kPi * kPi * n * m);  // same-n value
        CHECK(std::abs(overlap) < 1e-8 * diag);
      }
    }
  }
}

TEST_CASE("Parseval: position and momentum space norms agree") {
  // int f^2 d^Dx = (2 pi)^{-D} Omega int k^{D-1} F(k)^2 dk; left side is
  // 1/c by the canonical normalization.
  const auto zoo = family_zoo();
  for (const SmearingSpec& spec : {zoo[0], zoo[2]}) {  // PolyBump, CosPower
    CAPTURE(static_cast<int>(spec.family));
    // The bump transform decays like k^-3, so its tail needs a deeper
    // cutoff than the C^1 cosine profile's k^-4.5.
    const double kmax =
        spec.family == SmearingFamily::kPolyBump ? 2500.0 : 300.0;
    std::vector<double> brk;
    for (double k = kPi; k < kmax; k += kPi) brk.push_back(k);
    fieldmodes::QuadratureControl ctrl;
    ctrl.rel_tol = 1e-10;
    const double momentum_side =
        sphere_surface(spec.dimension) * std::pow(2.0 * kPi, -spec.dimension) *
        fieldmodes::integrate(
            [&spec](double k) {
              const double ft = radial_ft(spec, k);
              return std::pow(k, spec.dimension - 1) * ft * ft;
            },
            0.0, kmax, ctrl, brk)
            .value;
    const double position_side = 1.0 / spec.c();
    CHECK(momentum_side ==
          doctest::Approx(position_side).epsilon(1e-8));
  }
}

TEST_CASE("sobolev +1/2 norm stabilizes for delta=1 and grows for delta=0") {
  const auto finite = poly_bump(1.0, 3, 1.0, 1.0);
  const double n1 = sobolev_norm_sq(finite, 0.5, 1000.0);
  const double n2 = sobolev_norm_sq(finite, 0.5, 2000.0);
  // Frozen from extended-precision evaluation of the truncated norm.
  CHECK(n1 == doctest::Approx(2.7852031407039).epsilon(1e-8));
  CHECK(std::abs(n2 - n1) / n1 < 1e-5);  // stabilized (measured 2.25e-6)

  auto divergent = poly_bump(0.0, 3, 1.0, 1.0);
  const double d1 = sobolev_norm_sq(divergent, 0.5, 1000.0);
  const double d2 = sobolev_norm_sq(divergent, 0.5, 2000.0);
  CHECK(d2 - d1 > 0.05 * d1);  // logarithmic growth (measured ~9.6%)
  // ... while its -1/2 norm is finite.
  const double m1 = sobolev_norm_sq(divergent, -0.5, 1000.0);
  const double m2 = sobolev_norm_sq(divergent, -0.5, 2000.0);
  CHECK(std::abs(m2 - m1) / m1 < 1e-6);
}

TEST_CASE("smearing validation rejects bad parameters") {
  CHECK_THROWS_AS(normalization(poly_bump(0.5, 3)), fieldmodes::DomainError);
  CHECK_THROWS_AS(normalization(poly_bump(0.0, 3)), fieldmodes::DomainError);
  CHECK_NOTHROW(sobolev_norm_sq(poly_bump(0.0, 3), 0.5, 10.0));
  CHECK_THROWS_AS(sobolev_norm_sq(poly_bump(1.0, 3), 0.25, 10.0),
                  fieldmodes::DomainError);
  SmearingSpec bad;
  bad.family = SmearingFamily::kCosPower;
  bad.index_n = 1;
  CHECK_THROWS_AS(bad.validate(), fieldmodes::DomainError);
  bad = SmearingSpec{};
  bad.family = SmearingFamily::kTrapezoid;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), fieldmodes::DomainError);
  bad = shell_sin2(1.0, 0.5, 3);
  bad.radius = 2.0;  // inconsistent with inner + thickness
  CHECK_THROWS_AS(bad.validate(), fieldmodes::DomainError);
  bad = SmearingSpec{};
  bad.center = {0.0, 0.0};  // dimension 3 spec with 2-vector center
  CHECK_THROWS_AS(bad.validate(), fieldmodes::DomainError);
  bad = SmearingSpec{};
  bad.radius = -1.0;
  CHECK_THROWS_AS(bad.validate(), fieldmodes::DomainError);
}

TEST_CASE("trapezoid stores the plateau radius") {
  SmearingSpec t;
  t.family = SmearingFamily::kTrapezoid;
  t.delta = 1.0;
  t.radius = 2.0;
  CHECK(t.outer_radius() == 4.0);
  CHECK(radial_profile(t, 1.9) == 1.0);                          // plateau
  CHECK(radial_profile(t, 3.0) == doctest::Approx(0.5));         // mid-ramp
  CHECK(radial_profile(t, 4.1) == 0.0);                          // outside
  CHECK(t.c() == doctest::Approx(0.25));  // default c = 1/outer_radius
}

TEST_CASE("radial kernel limits and low-dimension forms") {
  CHECK(radial_kernel(1, 0.7) == doctest::Approx(2.0 * std::cos(0.7)));
  // D=3 kernel is 4 pi sin(z)/z.
  CHECK(radial_kernel(3, 2.1) ==
        doctest::Approx(4.0 * kPi * std::sin(2.1) / 2.1).epsilon(1e-12));
  for (int d = 1; d <= 6; ++d) {
    CAPTURE(d);
    CHECK(radial_kernel(d, 0.0) ==
          doctest::Approx(sphere_surface(d)).epsilon(1e-12));
  }
  CHECK(sphere_surface(1) == doctest::Approx(2.0));
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * kPi));
}
