#pragma once

#include <vector>

#include "fieldmodes/smearing.hpp"

namespace fieldmodes {

// One term of a smeared observable: field_coeff * Phi[f] + momentum_coeff *
// Pi[f], where Phi[f] = integral of f * phi and Pi[f] = c * integral of
// f * pi, with the canonical normalization c * integral(f^2) = 1 baked into
// the smearing amplitude.
struct OperatorTerm {
  SmearingSpec smearing;
  double field_coeff = 0.0;
  double momentum_coeff = 0.0;
};

// A single bosonic mode: a canonically conjugate pair of smeared observables
// with symplectic product 1. The common case is one smearing supplying both
// members; mixed modes combine several smearings per observable.
struct ModeSpec {
  std::vector<OperatorTerm> position_op;
  std::vector<OperatorTerm> momentum_op;

  // True when the mode is exactly (Phi[f], Pi[f]) for a single smearing f.
  bool is_simple_pair() const;
  // The shared smearing of a simple pair; throws DomainError otherwise.
  const SmearingSpec& pair_smearing() const;
  void validate() const;
};

// Mode whose observables are (Phi[f], Pi[f]) for one smearing f.
ModeSpec make_pair_mode(const SmearingSpec& smearing);

// Euclidean distance between the two smearing centers.
double center_distance(const SmearingSpec& a, const SmearingSpec& b);

// Exact equality of every defining field of two smearing specs.
bool same_smearing_spec(const SmearingSpec& a, const SmearingSpec& b);

// integral of f_a * f_b over space, normalization amplitudes included.
// Supported geometries: disjoint supports (zero) and concentric supports
// (radial quadrature); partially overlapping off-center supports throw
// UnsupportedConfigurationError.
double smearing_overlap(const SmearingSpec& a, const SmearingSpec& b);

// Symplectic form s(U, V) = -i[U, V] of two smeared observables, using
// [Phi[f], Pi[g]] = i c_g * integral(f g).
double symplectic_product(const std::vector<OperatorTerm>& u,
                          const std::vector<OperatorTerm>& v);

// s(position_op, momentum_op) of one mode; equals 1 for a canonical mode.
double canonical_commutator(const ModeSpec& mode);

}  // namespace fieldmodes
