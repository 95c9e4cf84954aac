#pragma once

#include <complex>
#include <vector>

#include "fieldmodes/errors.hpp"

namespace fieldmodes {

// Radial profile families. Every smearing is spherically symmetric about its
// center; r below is the distance from the center in units of the stored
// radius R (except ShellSin2, whose profile is parametrized by the inner
// radius and thickness directly).
enum class SmearingFamily {
  kPolyBump,   // (1 - r^2)^delta
  kCosPower,   // cos^n(pi r / 2)
  kExpBump,    // exp(-1/(1 - r^2))
  kTrapezoid,  // 1 for r <= 1, linear ramp to 0 at 1 + delta (R = plateau)
  kPolyCap,    // 1 - r^n
  kSinc,       // sin(2 pi n r) / (2 pi n r), continuous extension 1 at r = 0
  kShellSin2,  // sin^2(pi (|x| - R_B)/d_B) on the shell R_B <= |x| <= R_B+d_B
  kBallCos2,   // cos^2(pi r / 2)
};

struct SmearingSpec {
  SmearingFamily family = SmearingFamily::kPolyBump;
  int dimension = 3;               // spatial dimension D >= 1
  double radius = 1.0;             // outer support radius (Trapezoid: plateau)
  std::vector<double> center = {}; // D components; empty means the origin
  double delta = 1.0;              // PolyBump exponent / Trapezoid ramp width
  int index_n = 2;                 // CosPower / PolyCap / Sinc integer n
  double shell_inner = 1.0;        // ShellSin2 inner radius R_B
  double shell_thickness = 0.5;    // ShellSin2 thickness d_B
  double scale_c = 0.0;            // pair constant c; 0 selects 1/outer_radius

  // Throws DomainError on invalid parameters. PolyBump delta = 0 is only
  // admissible where explicitly allowed (Sobolev divergence demonstration).
  void validate(bool allow_delta_zero = false) const;

  // Radius of the support ball: R for most families, R(1 + delta) for
  // Trapezoid, R_B + d_B for ShellSin2 (== stored radius, validated).
  double outer_radius() const;

  // The conjugate-pair constant c (inverse energy); defaults to
  // 1/outer_radius so covariance entries come out dimensionless.
  double c() const;

  std::vector<double> center_point() const;  // size D, zero-filled default
};

// Normalization A with the constant c it was computed for: the normalized
// profile f = A fbar satisfies c * integral(f^2 d^Dx) = 1.
struct NormalizationConstant {
  double value = 0.0;
  double scale_c = 0.0;
};

// Unnormalized radial profile fbar(r), r the absolute distance from the
// center. Exactly zero outside the support.
double radial_profile(const SmearingSpec& spec, double r);

// Pointwise normalized smearing value f(x) = A fbar(|x - center|).
double evaluate(const SmearingSpec& spec, const std::vector<double>& x);

// Normalization constant: closed Gamma-ratio form for PolyBump, adaptive
// radial quadrature otherwise.
NormalizationConstant normalization(const SmearingSpec& spec);

// Radial factor F(k) of the Fourier transform of the normalized, centered
// smearing: fourier_transform = exp(i k.center) F(|k|). Real by spherical
// symmetry. Closed forms for PolyBump (any D) and Sinc in D = 3; adaptive
// Hankel-kernel quadrature otherwise.
double radial_ft(const SmearingSpec& spec, double k);

// Full D-dimensional Fourier transform integral(exp(i k.x) f(x) d^Dx).
std::complex<double> fourier_transform(const SmearingSpec& spec,
                                       const std::vector<double>& k);

// Truncated homogeneous Sobolev norm
//   integral_{|k|<cutoff} d^Dk/(2pi)^D |k|^{2s} |F(|k|)|^2,  s in {-1/2, +1/2}.
// Finiteness shows up as stabilization under cutoff growth. This is the one
// entry point that accepts PolyBump delta = 0 (whose s = +1/2 norm diverges).
double sobolev_norm_sq(const SmearingSpec& spec, double s, double uv_cutoff);

// Angular kernel of D-dimensional radial Fourier analysis:
//   K_D(z) = (2pi)^{D/2} z^{1-D/2} J_{D/2-1}(z),   K_1(z) = 2 cos z,
// with K_D(0) = Omega_{D-1}, the unit-sphere surface area. Shared with the
// correlator quadratures.
double radial_kernel(int dimension, double z);

// Surface area of the unit (D-1)-sphere, Omega_{D-1} = 2 pi^{D/2}/Gamma(D/2).
double sphere_surface(int dimension);

}  // namespace fieldmodes
