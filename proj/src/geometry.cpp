#include "fieldmodes/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "fieldmodes/errors.hpp"

namespace fieldmodes {

namespace {

// Additive slack for contact decisions: closed supports touching on a
// measure-zero set count as disjoint.
constexpr double kContactTol = 1e-12;
// Normalized cross integral below which an overlapping pair counts as
// exactly orthogonal.
constexpr double kOrthogonalityTol = 1e-8;
constexpr double kContactSpacing = 2.0;  // center distance in units of R

double inner_radius(const SmearingSpec& s) {
  return s.family == SmearingFamily::kShellSin2 ? s.shell_inner : 0.0;
}

// Supports are spherical annuli; two of them have disjoint interiors when
// they are farther apart than the outer radii allow, or when one sits
// entirely inside the other's hole.
bool disjoint_supports(const SmearingSpec& a, const SmearingSpec& b) {
  const double d = center_distance(a, b);
  const double oa = a.outer_radius(), ob = b.outer_radius();
  const double tol = kContactTol * std::max(1.0, oa + ob);
  if (d >= oa + ob - tol) return true;
  if (d + ob <= inner_radius(a) + tol) return true;
  if (d + oa <= inner_radius(b) + tol) return true;
  return false;
}

std::vector<SmearingSpec> unique_smearings(const ModeSpec& mode) {
  std::vector<SmearingSpec> out;
  for (const std::vector<OperatorTerm>* op :
       {&mode.position_op, &mode.momentum_op}) {
    for (const OperatorTerm& term : *op) {
      const auto dup = std::find_if(
          out.begin(), out.end(), [&term](const SmearingSpec& s) {
            return same_smearing_spec(s, term.smearing);
          });
      if (dup == out.end()) out.push_back(term.smearing);
    }
  }
  return out;
}

SmearingSpec disk(double delta, int dim, double x, double y = 0.0,
                  double z = 0.0) {
  SmearingSpec s;
  s.family = SmearingFamily::kPolyBump;
  s.dimension = dim;
  s.radius = 1.0;
  s.delta = delta;
  s.center.assign({x, y, z});
  s.center.resize(dim);
  return s;
}

struct Site {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  // Sort rank: (ring or distance, then layer/angle, then lattice indices).
  std::tuple<double, double, double, int, int> rank;
};

double ccw_angle(double x, double y) {
  double a = std::atan2(y, x);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

// Triangular-lattice sites around the origin at contact spacing, ring by
// ring, nearest first within a ring, counterclockwise from the +x axis.
std::vector<Site> hex_sites(int count) {
  int max_ring = 1;
  while (3 * max_ring * (max_ring + 1) < count) ++max_ring;
  std::vector<Site> sites;
  for (int m = -max_ring; m <= max_ring; ++m) {
    for (int n = -max_ring; n <= max_ring; ++n) {
      const int ring = (std::abs(m) + std::abs(n) + std::abs(m + n)) / 2;
      if (ring < 1 || ring > max_ring) continue;
      Site s;
      s.x = kContactSpacing * (m + 0.5 * n);
      s.y = kContactSpacing * n * (std::sqrt(3.0) / 2.0);
      const double dist_sq =
          static_cast<double>(m) * m + static_cast<double>(m) * n +
          static_cast<double>(n) * n;
      s.rank = {static_cast<double>(ring), dist_sq, ccw_angle(s.x, s.y), m,
                n};
      sites.push_back(s);
    }
  }
  std::sort(sites.begin(), sites.end(),
            [](const Site& a, const Site& b) { return a.rank < b.rank; });
  sites.resize(count);
  return sites;
}

// Hexagonal close packing at contact spacing: triangular layers stacked
// ABAB with the odd layers shifted into the pockets of the even ones.
std::vector<Site> hcp_sites(int count) {
  const double a = kContactSpacing;
  const double layer_gap = a * std::sqrt(6.0) / 3.0;
  int bound =
      static_cast<int>(std::ceil(std::cbrt(static_cast<double>(count)))) + 3;
  for (;;) {
    std::vector<Site> sites;
    for (int l = -bound; l <= bound; ++l) {
      const double off = (l % 2 + 2) % 2;  // 1 on odd layers
      for (int m = -2 * bound; m <= 2 * bound; ++m) {
        for (int n = -2 * bound; n <= 2 * bound; ++n) {
          if (l == 0 && m == 0 && n == 0) continue;  // origin hosts mode A
          Site s;
          s.x = a * (m + 0.5 * n + 0.5 * off);
          s.y = a * (n * std::sqrt(3.0) / 2.0 + off * std::sqrt(3.0) / 6.0);
          s.z = layer_gap * l;
          const double dist_sq = s.x * s.x + s.y * s.y + s.z * s.z;
          s.rank = {dist_sq, static_cast<double>(l), ccw_angle(s.x, s.y), n,
                    m};
          sites.push_back(s);
        }
      }
    }
    std::sort(sites.begin(), sites.end(),
              [](const Site& u, const Site& v) { return u.rank < v.rank; });
    // The enumeration box must extend past the last used site, or farther
    // sites outside the box could be missed. The box covers a ball whose
    // radius is set by the layer range (the tightest of the three axes).
    const double safe_radius = layer_gap * (bound - 1);
    if (static_cast<int>(sites.size()) >= count &&
        std::get<0>(sites[count - 1].rank) <= safe_radius * safe_radius) {
      sites.resize(count);
      return sites;
    }
    ++bound;
  }
}

SmearingSpec ball_cos2_mode(int dim) {
  SmearingSpec s;
  s.family = SmearingFamily::kBallCos2;
  s.dimension = dim;
  s.radius = 1.0;
  return s;
}

SmearingSpec shell_sin2_mode(int dim, double inner, double thickness) {
  SmearingSpec s;
  s.family = SmearingFamily::kShellSin2;
  s.dimension = dim;
  s.shell_inner = inner;
  s.shell_thickness = thickness;
  s.radius = inner + thickness;
  return s;
}

}  // namespace

void Configuration::validate() const {
  if (modes.empty())
    throw DomainError("Configuration: needs at least one mode");
  if (bipartition.n_modes() != static_cast<int>(modes.size()))
    throw DomainError("Configuration: bipartition does not cover the modes");
  bipartition.validate();
  for (const ModeSpec& mode : modes) mode.validate();

  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::vector<SmearingSpec> left = unique_smearings(modes[i]);
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      for (const SmearingSpec& sa : left) {
        for (const SmearingSpec& sb : unique_smearings(modes[j])) {
          if (disjoint_supports(sa, sb)) continue;
          const double normalized = smearing_overlap(sa, sb) *
                                    std::sqrt(sa.c() * sb.c());
          if (std::abs(normalized) > kOrthogonalityTol)
            throw CommutatorViolationError(
                "Configuration: modes " + std::to_string(i) + " and " +
                std::to_string(j) + " overlap without orthogonality");
        }
      }
    }
  }
}

Configuration two_balls(double rho, const SmearingSpec& tmpl) {
  tmpl.validate();
  if (!(rho > 2.0))
    throw DomainError("two_balls: needs center distance rho > 2");
  SmearingSpec a = tmpl;
  SmearingSpec b = tmpl;
  std::vector<double> center = a.center_point();
  center[0] += rho * tmpl.radius;
  b.center = center;
  Configuration config;
  config.modes = {make_pair_mode(a), make_pair_mode(b)};
  config.bipartition = Bipartition::first_k(2, 1);
  config.name = "two_balls";
  config.params = {{"rho", rho},
                   {"delta", tmpl.delta},
                   {"dimension", static_cast<double>(tmpl.dimension)},
                   {"radius", tmpl.radius}};
  config.validate();
  return config;
}

Configuration hex_layers(int n_modes_b, double delta) {
  if (n_modes_b < 1) throw DomainError("hex_layers: needs n_modes_b >= 1");
  Configuration config;
  config.modes.push_back(make_pair_mode(disk(delta, 2, 0.0)));
  for (const Site& s : hex_sites(n_modes_b))
    config.modes.push_back(make_pair_mode(disk(delta, 2, s.x, s.y)));
  config.bipartition = Bipartition::first_k(n_modes_b + 1, 1);
  config.name = "hex_layers";
  config.params = {{"n_modes_b", static_cast<double>(n_modes_b)},
                   {"delta", delta}};
  config.validate();
  return config;
}

Configuration hex_ring_at_distance(double rho, double delta) {
  if (!(rho > 2.0))
    throw DomainError("hex_ring_at_distance: needs rho > 2");
  Configuration config;
  config.modes.push_back(make_pair_mode(disk(delta, 2, 0.0)));
  for (int k = 0; k < 6; ++k) {
    const double angle = k * M_PI / 3.0;
    config.modes.push_back(make_pair_mode(
        disk(delta, 2, rho * std::cos(angle), rho * std::sin(angle))));
  }
  config.bipartition = Bipartition::first_k(7, 1);
  config.name = "hex_ring_at_distance";
  config.params = {{"rho", rho}, {"delta", delta}};
  config.validate();
  return config;
}

Configuration alternating_line(int n_per_side, double delta) {
  if (n_per_side < 1)
    throw DomainError("alternating_line: needs n_per_side >= 1");
  Configuration config;
  config.bipartition.labels.reserve(2 * n_per_side);
  for (int k = 0; k < 2 * n_per_side; ++k) {
    config.modes.push_back(
        make_pair_mode(disk(delta, 2, kContactSpacing * k)));
    config.bipartition.labels.push_back(k % 2 == 0 ? Party::kA : Party::kB);
  }
  config.name = "alternating_line";
  config.params = {{"n_per_side", static_cast<double>(n_per_side)},
                   {"delta", delta}};
  config.validate();
  return config;
}

Configuration two_hex_cells(double rho_gap, int n_per_cell, double delta) {
  if (n_per_cell < 1)
    throw DomainError("two_hex_cells: needs n_per_cell >= 1");
  if (!(rho_gap >= 0.0))
    throw DomainError("two_hex_cells: needs a non-negative gap");
  std::vector<Site> cell = {Site{}};
  if (n_per_cell > 1) {
    const std::vector<Site> ring = hex_sites(n_per_cell - 1);
    cell.insert(cell.end(), ring.begin(), ring.end());
  }
  // Place the B cell at the hexagonal-cell tiling offset, so that at zero
  // gap the two clusters mesh like adjacent patches of one triangular
  // lattice (staggered facing rows in contact).  rings = smallest ring
  // count whose filled hexagon holds the cell; the tiling offset for
  // hexagonal cells of that size is (rings+1)*e1 + rings*e2 with lattice
  // basis e1 = (2, 0), e2 = (1, sqrt(3)).
  int rings = 0;
  while (3 * rings * (rings + 1) + 1 < n_per_cell) ++rings;
  const double tx = 3.0 * rings + 2.0;
  const double ty = rings * std::sqrt(3.0);
  const double tnorm = std::hypot(tx, ty);
  const double ux = tx / tnorm;
  const double uy = ty / tnorm;
  // Slide the B cell along the center line until the smallest center
  // distance between the clusters is exactly the contact distance plus
  // the gap.  Each cross pair constrains the slide g through
  // |p + g*u| >= target; the binding pair meets it with equality.
  const double target = kContactSpacing + rho_gap;
  double slide = -std::numeric_limits<double>::infinity();
  for (const Site& a : cell) {
    for (const Site& b : cell) {
      const double px = b.x + tx - a.x;
      const double py = b.y + ty - a.y;
      const double along = px * ux + py * uy;
      const double perp2 = px * px + py * py - along * along;
      if (perp2 >= target * target) continue;
      slide = std::max(slide, std::sqrt(target * target - perp2) - along);
    }
  }
  Configuration config;
  for (const Site& s : cell)
    config.modes.push_back(make_pair_mode(disk(delta, 2, s.x, s.y)));
  for (const Site& s : cell)
    config.modes.push_back(make_pair_mode(
        disk(delta, 2, s.x + tx + ux * slide, s.y + ty + uy * slide)));
  config.bipartition = Bipartition::first_k(2 * n_per_cell, n_per_cell);
  config.name = "two_hex_cells";
  config.params = {{"rho_gap", rho_gap},
                   {"n_per_cell", static_cast<double>(n_per_cell)},
                   {"delta", delta}};
  config.validate();
  return config;
}

Configuration hcp_packing(int n_modes_b, double delta) {
  if (n_modes_b < 1) throw DomainError("hcp_packing: needs n_modes_b >= 1");
  Configuration config;
  config.modes.push_back(make_pair_mode(disk(delta, 3, 0.0)));
  for (const Site& s : hcp_sites(n_modes_b))
    config.modes.push_back(make_pair_mode(disk(delta, 3, s.x, s.y, s.z)));
  config.bipartition = Bipartition::first_k(n_modes_b + 1, 1);
  config.name = "hcp_packing";
  config.params = {{"n_modes_b", static_cast<double>(n_modes_b)},
                   {"delta", delta}};
  config.validate();
  return config;
}

Configuration ball_and_shell(double r_b, double d_b, int dimension) {
  if (dimension < 2) throw DomainError("ball_and_shell: needs dimension >= 2");
  if (!(r_b >= 1.0))
    throw DomainError("ball_and_shell: shell must start at the ball surface "
                      "or beyond (r_b >= 1)");
  if (!(d_b > 0.0))
    throw DomainError("ball_and_shell: needs a positive shell thickness");
  Configuration config;
  config.modes = {make_pair_mode(ball_cos2_mode(dimension)),
                  make_pair_mode(shell_sin2_mode(dimension, r_b, d_b))};
  config.bipartition = Bipartition::first_k(2, 1);
  config.name = "ball_and_shell";
  config.params = {{"r_b", r_b},
                   {"d_b", d_b},
                   {"dimension", static_cast<double>(dimension)}};
  config.validate();
  return config;
}

Configuration onion(int n_shells, int dimension, double thickness) {
  if (n_shells < 1) throw DomainError("onion: needs n_shells >= 1");
  if (dimension < 2) throw DomainError("onion: needs dimension >= 2");
  if (!(thickness > 0.0))
    throw DomainError("onion: needs a positive shell thickness");
  Configuration config;
  config.modes.push_back(make_pair_mode(ball_cos2_mode(dimension)));
  config.bipartition.labels.push_back(Party::kA);
  for (int k = 0; k < n_shells; ++k) {
    config.modes.push_back(make_pair_mode(
        shell_sin2_mode(dimension, 1.0 + k * thickness, thickness)));
    config.bipartition.labels.push_back(k % 2 == 0 ? Party::kB : Party::kA);
  }
  config.name = "onion";
  config.params = {{"n_shells", static_cast<double>(n_shells)},
                   {"dimension", static_cast<double>(dimension)},
                   {"thickness", thickness}};
  config.validate();
  return config;
}

Configuration sinc_stack(int n_a, int n_b, int dimension) {
  if (n_a < 1 || n_b < 1)
    throw DomainError("sinc_stack: mode indices must be positive");
  if (n_a == n_b)
    throw DomainError("sinc_stack: the two modes must have distinct indices");
  auto sinc = [dimension](int index) {
    SmearingSpec s;
    s.family = SmearingFamily::kSinc;
    s.dimension = dimension;
    s.radius = 1.0;
    s.index_n = index;
    return s;
  };
  Configuration config;
  config.modes = {make_pair_mode(sinc(n_a)), make_pair_mode(sinc(n_b))};
  config.bipartition = Bipartition::first_k(2, 1);
  config.name = "sinc_stack";
  config.params = {{"n_a", static_cast<double>(n_a)},
                   {"n_b", static_cast<double>(n_b)},
                   {"dimension", static_cast<double>(dimension)}};
  config.validate();
  return config;
}

}  // namespace fieldmodes
