#include "fieldmodes/smearing.hpp"

#include <algorithm>
#include <cmath>

#include "fieldmodes/quadrature.hpp"
#include "fieldmodes/specfun.hpp"

namespace fieldmodes {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kNormRelTol = 1e-11;     // radial normalization integral
constexpr double kFtRelTol = 1e-11;       // radial Fourier integral
constexpr double kSobolevRelTol = 1e-9;   // outer momentum integral

// J_nu(z) / z^nu: finite at z = 0, series branch keeps the small-z limit
// exact instead of forming 0/0.
double bessel_j_scaled(double nu, double z) {
  if (z < 1e-5) {
    const double q = 0.25 * z * z;
    return std::exp(-nu * std::log(2.0) - log_gamma(nu + 1.0)) *
           (1.0 - q / (nu + 1.0) + 0.5 * q * q / ((nu + 1.0) * (nu + 2.0)));
  }
  return bessel_j(nu, z) / std::pow(z, nu);
}

double sinc_cardinal(double x) {  // sin(x)/x with its continuous extension
  if (std::abs(x) < 1e-5) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Support edges and interior kinks / lobe boundaries of the unnormalized
// profile, used to seed quadrature panels.
std::vector<double> profile_breakpoints(const SmearingSpec& spec) {
  std::vector<double> pts;
  switch (spec.family) {
    case SmearingFamily::kTrapezoid:
      pts.push_back(spec.radius);  // plateau edge
      break;
    case SmearingFamily::kSinc:
      for (int j = 1; j < 2 * spec.index_n; ++j) {
        pts.push_back(spec.radius * j / (2.0 * spec.index_n));
      }
      break;
    default:
      break;
  }
  return pts;
}

double support_lower(const SmearingSpec& spec) {
  return spec.family == SmearingFamily::kShellSin2 ? spec.shell_inner : 0.0;
}

// integral fbar(r)^2 r^{D-1} dr over the support.
double profile_square_integral(const SmearingSpec& spec) {
  const auto f = [&spec](double r) {
    const double v = radial_profile(spec, r);
    return v * v * std::pow(r, spec.dimension - 1);
  };
  QuadratureControl ctrl;
  ctrl.rel_tol = kNormRelTol;
  return integrate(f, support_lower(spec), spec.outer_radius(), ctrl,
                   profile_breakpoints(spec))
      .value;
}

// Normalization without the delta >= 1 gate (the Sobolev path evaluates
// delta = 0 bumps through here).
double norm_value(const SmearingSpec& spec) {
  const double c = spec.c();
  if (spec.family == SmearingFamily::kPolyBump) {
    const int d = spec.dimension;
    const double delta = spec.delta;
    return std::pow(c, -0.5) * std::pow(spec.radius, -0.5 * d) *
           std::pow(kPi, -0.25 * d) *
           std::exp(0.5 * (log_gamma(1.0 + 0.5 * d + 2.0 * delta) -
                           log_gamma(1.0 + 2.0 * delta)));
  }
  const double norm_sq =
      c * sphere_surface(spec.dimension) * profile_square_integral(spec);
  return 1.0 / std::sqrt(norm_sq);
}

// Radial Fourier factor including the normalization A.
double ft_value(const SmearingSpec& spec, double k, double amp) {
  if (k < 0.0) throw DomainError("radial_ft: requires k >= 0");
  const int d = spec.dimension;
  const double r_out = spec.outer_radius();

  if (spec.family == SmearingFamily::kPolyBump) {
    const double nu = 0.5 * d + spec.delta;
    return amp * gamma_fn(spec.delta + 1.0) * std::pow(2.0, spec.delta) *
           std::pow(kTwoPi, 0.5 * d) * std::pow(spec.radius, d) *
           bessel_j_scaled(nu, k * spec.radius);
  }
  if (spec.family == SmearingFamily::kSinc && d == 3) {
    // 4 pi / (a k) * integral sin(a r) sin(k r) dr over [0, R], a = 2 pi n/R.
    const double a = kTwoPi * spec.index_n / spec.radius;
    if (k * spec.radius < 1e-8) {  // k -> 0 limit -4 pi A R / a^2
      return -amp * std::pow(spec.radius, 3) /
             (kPi * spec.index_n * spec.index_n);
    }
    const double bracket = spec.radius * sinc_cardinal((a - k) * spec.radius) -
                           std::sin((a + k) * spec.radius) / (a + k);
    return amp * kTwoPi / (a * k) * bracket;
  }

  const auto f = [&spec, k, d](double r) {
    return radial_profile(spec, r) * radial_kernel(d, k * r) *
           std::pow(r, d - 1);
  };
  std::vector<double> brk = profile_breakpoints(spec);
  if (k > 0.0) {  // oscillation lobes of the angular kernel
    for (double r = kPi / k; r < r_out; r += kPi / k) brk.push_back(r);
  }
  QuadratureControl ctrl;
  ctrl.rel_tol = kFtRelTol;
  // |F| <= A Omega_{D-1} integral |fbar| r^{D-1} dr <= A Omega_{D-1} R^D / D
  // for the unit-bounded profiles; anchor the absolute tolerance there so
  // zeros of F do not stall the relative criterion.
  ctrl.abs_tol = 1e-12 * amp * sphere_surface(d) * std::pow(r_out, d) / d;
  return amp *
         integrate(f, support_lower(spec), r_out, ctrl, std::move(brk)).value;
}

}  // namespace

void SmearingSpec::validate(bool allow_delta_zero) const {
  if (dimension < 1) throw DomainError("SmearingSpec: dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("SmearingSpec: radius must be > 0");
  if (!center.empty() && center.size() != static_cast<std::size_t>(dimension)) {
    throw DomainError("SmearingSpec: center size must match dimension");
  }
  if (scale_c < 0.0) throw DomainError("SmearingSpec: scale_c must be >= 0");
  switch (family) {
    case SmearingFamily::kPolyBump:
      if (delta == 0.0 && allow_delta_zero) break;
      if (!(delta >= 1.0)) {
        throw DomainError("SmearingSpec: PolyBump requires delta >= 1");
      }
      break;
    case SmearingFamily::kCosPower:
    case SmearingFamily::kPolyCap:
      if (index_n <= 1) {
        throw DomainError("SmearingSpec: family requires integer n > 1");
      }
      break;
    case SmearingFamily::kSinc:
      if (index_n < 1) {
        throw DomainError("SmearingSpec: Sinc requires integer n >= 1");
      }
      break;
    case SmearingFamily::kTrapezoid:
      if (!(delta > 0.0)) {
        throw DomainError("SmearingSpec: Trapezoid requires delta > 0");
      }
      break;
    case SmearingFamily::kShellSin2:
      if (shell_inner < 0.0 || !(shell_thickness > 0.0)) {
        throw DomainError(
            "SmearingSpec: shell requires inner >= 0 and thickness > 0");
      }
      if (std::abs(radius - (shell_inner + shell_thickness)) >
          1e-9 * radius) {
        throw DomainError(
            "SmearingSpec: shell radius must equal inner + thickness");
      }
      break;
    case SmearingFamily::kExpBump:
    case SmearingFamily::kBallCos2:
      break;
  }
}

double SmearingSpec::outer_radius() const {
  if (family == SmearingFamily::kTrapezoid) return radius * (1.0 + delta);
  return radius;
}

double SmearingSpec::c() const {
  return scale_c > 0.0 ? scale_c : 1.0 / outer_radius();
}

std::vector<double> SmearingSpec::center_point() const {
  if (!center.empty()) return center;
  return std::vector<double>(dimension, 0.0);
}

double radial_profile(const SmearingSpec& spec, double r) {
  const double s = r / spec.radius;
  switch (spec.family) {
    case SmearingFamily::kPolyBump: {
      if (s > 1.0) return 0.0;
      const double t = 1.0 - s * s;
      return (t <= 0.0) ? (spec.delta == 0.0 ? 1.0 : 0.0)
                        : std::pow(t, spec.delta);
    }
    case SmearingFamily::kCosPower:
      if (s > 1.0) return 0.0;
      return std::pow(std::cos(0.5 * kPi * s), spec.index_n);
    case SmearingFamily::kExpBump: {
      if (s >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - s * s));
    }
    case SmearingFamily::kTrapezoid:
      if (s <= 1.0) return 1.0;
      if (s <= 1.0 + spec.delta) return 1.0 - (s - 1.0) / spec.delta;
      return 0.0;
    case SmearingFamily::kPolyCap:
      if (s > 1.0) return 0.0;
      return 1.0 - std::pow(s, spec.index_n);
    case SmearingFamily::kSinc:
      if (s > 1.0) return 0.0;
      return sinc_cardinal(kTwoPi * spec.index_n * s);
    case SmearingFamily::kShellSin2: {
      if (r < spec.shell_inner || r > spec.shell_inner + spec.shell_thickness)
        return 0.0;
      const double u = std::sin(kPi * (r - spec.shell_inner) / spec.shell_thickness);
      return u * u;
    }
    case SmearingFamily::kBallCos2: {
      if (s > 1.0) return 0.0;
      const double u = std::cos(0.5 * kPi * s);
      return u * u;
    }
  }
  throw DomainError("radial_profile: unknown family");
}

double evaluate(const SmearingSpec& spec, const std::vector<double>& x) {
  spec.validate();
  if (x.size() != static_cast<std::size_t>(spec.dimension)) {
    throw DomainError("evaluate: point size must match dimension");
  }
  const std::vector<double> c = spec.center_point();
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r2 += (x[i] - c[i]) * (x[i] - c[i]);
  }
  return norm_value(spec) * radial_profile(spec, std::sqrt(r2));
}

NormalizationConstant normalization(const SmearingSpec& spec) {
  spec.validate();
  return {norm_value(spec), spec.c()};
}

double radial_ft(const SmearingSpec& spec, double k) {
  spec.validate();
  return ft_value(spec, k, norm_value(spec));
}

std::complex<double> fourier_transform(const SmearingSpec& spec,
                                       const std::vector<double>& k) {
  spec.validate();
  if (k.size() != static_cast<std::size_t>(spec.dimension)) {
    throw DomainError("fourier_transform: k size must match dimension");
  }
  double k2 = 0.0;
  double phase = 0.0;
  const std::vector<double> c = spec.center_point();
  for (std::size_t i = 0; i < k.size(); ++i) {
    k2 += k[i] * k[i];
    phase += k[i] * c[i];
  }
  const double mag = ft_value(spec, std::sqrt(k2), norm_value(spec));
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

double sobolev_norm_sq(const SmearingSpec& spec, double s, double uv_cutoff) {
  spec.validate(/*allow_delta_zero=*/true);
  if (s != 0.5 && s != -0.5) {
    throw DomainError("sobolev_norm_sq: s must be -1/2 or +1/2");
  }
  if (!(uv_cutoff > 0.0)) {
    throw DomainError("sobolev_norm_sq: cutoff must be > 0");
  }
  const double amp = norm_value(spec);
  const int d = spec.dimension;
  const double expo = d - 1.0 + 2.0 * s;
  const auto f = [&spec, amp, expo](double k) {
    const double ft = ft_value(spec, k, amp);
    return std::pow(k, expo) * ft * ft;
  };
  std::vector<double> brk;
  const double spacing = kPi / spec.outer_radius();  // FT oscillation scale
  for (double k = spacing; k < uv_cutoff; k += spacing) brk.push_back(k);
  QuadratureControl ctrl;
  ctrl.rel_tol = kSobolevRelTol;
  const double value = integrate(f, 0.0, uv_cutoff, ctrl, std::move(brk)).value;
  return sphere_surface(d) * std::pow(kTwoPi, -d) * value;
}

double radial_kernel(int dimension, double z) {
  if (dimension < 1) throw DomainError("radial_kernel: dimension must be >= 1");
  if (dimension == 1) return 2.0 * std::cos(z);
  if (z < 1e-6) {
    return sphere_surface(dimension) * (1.0 - z * z / (2.0 * dimension));
  }
  const double nu = 0.5 * dimension - 1.0;
  return std::pow(kTwoPi, 0.5 * dimension) * std::pow(z, 1.0 - 0.5 * dimension) *
         bessel_j(nu, z);
}

double sphere_surface(int dimension) {
  return 2.0 * std::pow(kPi, 0.5 * dimension) / gamma_fn(0.5 * dimension);
}

}  // namespace fieldmodes
