#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fieldmodes/gaussian.hpp"
#include "fieldmodes/mode.hpp"
#include "fieldmodes/smearing.hpp"

namespace fieldmodes {

// A named spatial arrangement of modes with its A|B split. Generators fill
// `name` and `params` so a configuration can be reproduced from its
// metadata alone.
struct Configuration {
  std::vector<ModeSpec> modes;
  Bipartition bipartition;
  std::string name;
  std::vector<std::pair<std::string, double>> params;

  // Every pair of modes must either have disjoint supports (annuli treated
  // as radial intervals about their centers; touching at a measure-zero set
  // is allowed) or overlap with an exactly orthogonal profile (normalized
  // cross integral <= 1e-8), as the stacked oscillating modes do. Overlap
  // without orthogonality is a CommutatorViolationError naming the pair;
  // partially overlapping off-center supports are unsupported. The
  // bipartition must label exactly the generated modes, both blocks
  // non-empty.
  void validate() const;
};

// Two identical smearings with centers separated by rho times the template
// radius along the first axis. Strictly disjoint only: rho > 2.
Configuration two_balls(double rho, const SmearingSpec& tmpl);

// One central disk plus n_modes_b disks on the triangular lattice of
// contact-spaced disks around it (D = 2), filled ring by ring, nearest
// center first within a ring, counterclockwise from the positive x axis.
Configuration hex_layers(int n_modes_b, double delta);

// One central disk plus six disks at center distance rho * R in the six
// hexagonal directions (D = 2). Requires rho > 2.
Configuration hex_ring_at_distance(double rho, double delta);

// 2 n contact-spaced collinear disks (D = 2) labeled A, B, A, B, ...
Configuration alternating_line(int n_per_side, double delta);

// Two identical hexagonal clusters of n_per_cell contact-spaced disks
// (D = 2, same fill order as hex_layers), the second offset by the
// hexagonal-cell tiling vector so that at rho_gap = 0 the clusters mesh
// like adjacent patches of one triangular lattice, then slid along the
// center line so the smallest surface-to-surface distance between the
// clusters equals rho_gap * R exactly. rho_gap >= 0 (contact allowed).
Configuration two_hex_cells(double rho_gap, int n_per_cell, double delta);

// One central sphere plus n_modes_b spheres of the hexagonal close packing
// at contact spacing (D = 3), filled nearest center first.
Configuration hcp_packing(int n_modes_b, double delta);

// Mode A: raised-cosine ball of radius 1; mode B: oscillating shell with
// inner radius r_b >= 1 and thickness d_b > 0, in dimension >= 2.
Configuration ball_and_shell(double r_b, double d_b, int dimension);

// Central raised-cosine ball plus n_shells nested shells of the given
// thickness at contact (each inner radius = previous outer), labels
// alternating A, B outward from the ball.
Configuration onion(int n_shells, int dimension, double thickness = 0.5);

// Two concentric oscillating radial modes with indices n_a != n_b sharing
// one support ball; exactly orthogonal in three dimensions.
Configuration sinc_stack(int n_a, int n_b, int dimension);

}  // namespace fieldmodes
