#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>

#include "fieldmodes/mode.hpp"
#include "fieldmodes/smearing.hpp"

namespace fieldmodes {

// Background field: spatial dimension and the dimensionless mass (mass times
// the unit length; all lengths are expressed in that unit). D = 1 requires a
// positive mass, otherwise the field correlators are infrared divergent.
struct FieldParams {
  int dimension = 3;
  double mass = 0.0;
  void validate() const;
};

enum class CorrelatorKind { kPhiPhi, kPiPi, kPhiPi };

// Memoizes smeared-pair correlators across covariance assemblies. Values
// depend only on the two smearing geometries, the center distance, the field
// parameters, and the correlator kind. Safe for concurrent use.
class CorrelatorCache {
 public:
  double get_or_compute(const std::string& key,
                        const std::function<double()>& compute);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> values_;
};

// Coefficient J(lambda, delta, D) of the equal-support massless correlators.
double j_coeff(double lambda, double delta, int dimension);

// Coefficient L(lambda, delta, rho, D) of the disjoint-support massless
// correlators at center separation rho in units of the common radius; the
// embedded 3F2 runs at argument 4 / rho^2.
double l_coeff(double lambda, double delta, double rho, int dimension);

// Squared normalization prefactor N^2 of the closed-form correlators.
double n_sq_coeff(double delta, int dimension);

// Large-rho tail coefficients: <{Phi,Phi}> -> (R/c) u rho^{1-D} and
// <{Pi,Pi}> -> -(c/R) v rho^{-1-D}.
struct UvPair {
  double u = 0.0;
  double v = 0.0;
};
UvPair asymptotic_u_v(double delta, int dimension);

// Symplectic eigenvalue of one reduced massless PolyBump mode, D > 1.
double single_mode_nu(double delta, int dimension);

// Its limit as the spatial dimension grows without bound.
double single_mode_nu_limit(double delta);

// Closed-form path. Preconditions: both modes are canonical single-smearing
// PolyBump pairs with equal delta >= 1 and equal radius, massless, D > 1,
// and supports either identical or disjoint (rho > 2). Throws
// UnsupportedConfigurationError otherwise.
double correlator_analytic(const ModeSpec& i, const ModeSpec& j,
                           const FieldParams& params, CorrelatorKind kind);

// Quadrature path: any families, any D >= 1 (D = 1 needs mass > 0). The
// D-dimensional Fourier inversion is reduced over angles to a single radial
// axis via the Bessel kernel and handed to the oscillatory integrator
// (full-period units, windowed tail extrapolation); relative tolerance 1e-8.
double correlator_numeric(const ModeSpec& i, const ModeSpec& j,
                          const FieldParams& params, CorrelatorKind kind);

// Dispatching evaluator: closed form when eligible (with a quadrature
// fallback if the 3F2 stalls near contact), quadrature otherwise.
double mode_correlator(const ModeSpec& i, const ModeSpec& j,
                       const FieldParams& params, CorrelatorKind kind,
                       CorrelatorCache* cache = nullptr);

// Same dispatch for one smearing pair (the building block of
// mode_correlator); kPhiPhi and kPiPi refer to the pair (Phi[f_a], Phi[f_b])
// and (Pi[f_a], Pi[f_b]); kPhiPi vanishes identically in the vacuum.
double smearing_correlator(const SmearingSpec& a, const SmearingSpec& b,
                           const FieldParams& params, CorrelatorKind kind,
                           CorrelatorCache* cache = nullptr);

}  // namespace fieldmodes
