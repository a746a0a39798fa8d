#include <cmath>
#include <set>

#include "cellwave/whitney.hpp"
#include "doctest.h"

using namespace cellwave;

namespace {

// Independent oracle: the selection predicate checked directly on every
// dyadic cube (double precision distances, cube geometry from first
// principles).
bool predicate(const DomainDescriptor& dom, int level, const std::vector<std::int64_t>& k) {
  const int n = dom.n;
  std::vector<double> lo(n), hi(n), c(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = std::ldexp(double(k[i]), -level);
    hi[i] = std::ldexp(double(k[i] + 1), -level);
    c[i] = 0.5 * (lo[i] + hi[i]);
  }
  if (!dom.contains(c)) return false;
  // Box-to-boundary distance by dense corner/face sampling is unreliable;
  // use the analytic forms per kind instead.
  double dist = 0.0;
  if (dom.kind == DomainKind::OpenUnitCube) {
    double m = 1e300;
    for (int i = 0; i < n; ++i) m = std::min({m, lo[i], 1.0 - hi[i]});
    dist = std::max(0.0, m);
  } else if (dom.kind == DomainKind::PlaneComplement) {
    double d2 = 0.0;
    for (int i = dom.plane_dim; i < n; ++i) {
      double g = std::max({0.0, lo[i], -hi[i]});
      d2 += g * g;
    }
    dist = std::sqrt(d2);
  } else {
    return false;
  }
  double diam = std::ldexp(std::sqrt(double(n)), -level);
  return diam <= dist + 1e-12 && dist <= 4.0 * diam + 1e-12;
}

}  // namespace

TEST_CASE("whitney interval matches the exhaustive dyadic scan") {
  auto dom = DomainDescriptor::open_unit_cube(1);
  auto dec = whitney_decompose(dom, 6);

  // Oracle: scan all intervals level by level, honoring selected ancestors.
  std::set<std::pair<int, std::int64_t>> expected;
  for (int level = 0; level <= 6; ++level) {
    for (std::int64_t k = 0; k < (std::int64_t(1) << level); ++k) {
      bool covered = false;
      for (int a = 0; a < level && !covered; ++a)
        covered = expected.count({a, k >> (level - a)}) > 0;
      if (!covered && predicate(dom, level, {k})) expected.insert({level, k});
    }
  }
  std::set<std::pair<int, std::int64_t>> got;
  for (const auto& c : dec.cubes) got.insert({c.level, c.k[0]});
  CHECK(got == expected);

  // Coarsest cubes sit at the midpoint; per-level counts symmetric about 1/2.
  int coarsest = dec.cubes.front().level;
  CHECK(coarsest == 2);
  for (const auto& c : dec.cubes)
    if (c.level == coarsest) CHECK((c.hi(0) == 0.5 || c.lo(0) == 0.5));
  for (int level = 2; level <= 6; ++level) {
    std::int64_t left = 0, right = 0;
    for (const auto& c : dec.cubes)
      if (c.level == level) (c.hi(0) <= 0.5 ? left : right)++;
    CHECK(left == right);
  }
}

TEST_CASE("whitney full-space box degenerates to a level-0 tiling") {
  auto dom = DomainDescriptor::full_space_box(2, Box::cube(2, 0, 1));
  auto dec = whitney_decompose(dom, 3);
  CHECK(dec.degenerate);
  CHECK(dec.cubes.size() == 1);
  CHECK(dec.cubes[0].degenerate);
}

TEST_CASE("whitney plane complement selects dyadic stripes") {
  auto dom = DomainDescriptor::plane_complement(2, 1);
  auto dec = whitney_decompose(dom, 6);
  CHECK(!dec.cubes.empty());
  for (const auto& c : dec.cubes) {
    // predicate oracle re-check
    CHECK(predicate(dom, c.level, c.k));
    // stripe bounds: distance of the cube to the plane is comparable to its side
    double dlo = std::min(std::abs(c.lo(1)), std::abs(c.hi(1)));
    CHECK(dlo >= c.side() - 1e-12);
    CHECK(dlo <= 4.0 * c.diam() + 1e-12);
  }
  // symmetric about the plane
  std::int64_t above = 0, below = 0;
  for (const auto& c : dec.cubes) (c.lo(1) >= 0 ? above : below)++;
  CHECK(above == below);
}

TEST_CASE("whitney unit square geometry invariants") {
  auto dom = DomainDescriptor::open_unit_cube(2);
  auto dec = whitney_decompose(dom, 8);

  // disjoint interiors, exact integer arithmetic at the finest scale
  const int S = 9;
  std::set<std::vector<std::int64_t>> occupied;  // finest-scale cells
  for (const auto& c : dec.cubes) {
    std::int64_t cells = std::int64_t(1) << (S - c.level);
    for (std::int64_t a = 0; a < cells; ++a)
      for (std::int64_t b = 0; b < cells; ++b) {
        std::vector<std::int64_t> cell{c.k[0] * cells + a, c.k[1] * cells + b};
        CHECK(occupied.insert(cell).second);
      }
  }

  // sandwich + neighbor levels
  for (const auto& c : dec.cubes) {
    CHECK(c.dist >= c.diam() - 1e-12);
    CHECK(c.dist <= 4.0 * c.diam() + 1e-12);
  }
  for (size_t i = 0; i < dec.cubes.size(); ++i)
    for (size_t j = i + 1; j < dec.cubes.size(); ++j) {
      const auto& a = dec.cubes[i];
      const auto& b = dec.cubes[j];
      bool touch = true;
      for (int d = 0; d < 2 && touch; ++d)
        touch = a.lo(d) <= b.hi(d) + 1e-12 && b.lo(d) <= a.hi(d) + 1e-12;
      if (touch) CHECK(std::abs(a.level - b.level) <= 1);
    }

  // coverage of interior-safe midpoints at resolution Jmax = 8
  GridFunction probe(Box::unit(2), 8);
  std::vector<std::int64_t> idx(2);
  std::vector<double> x(2);
  double safe = std::ldexp(std::sqrt(2.0), -8 + 2);
  for (std::int64_t flat = 0; flat < probe.size(); ++flat) {
    probe.unflatten(flat, idx);
    probe.midpoints(idx, x);
    if (dom.boundary_distance(x) <= safe) continue;
    bool covered = false;
    for (const auto& c : dec.cubes) {
      if (x[0] >= c.lo(0) && x[0] <= c.hi(0) && x[1] >= c.lo(1) && x[1] <= c.hi(1)) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("interior lattice counts and margins") {
  // Degenerate full-space case: 1 + 4 + 16 points for n = 2, Jmax = 2.
  auto dom = DomainDescriptor::full_space_box(2, Box::cube(2, 0, 1));
  auto dec = whitney_decompose(dom, 1);
  auto lat = interior_lattice(dec, 2);
  CHECK(lat.levels[0].size() == 1);
  CHECK(lat.levels[1].size() == 4);
  CHECK(lat.levels[2].size() == 16);
  CHECK(lat.c1 == doctest::Approx(1.0));

  // Interval: every point keeps a positive scaled margin from {0,1}.
  auto idom = DomainDescriptor::open_unit_cube(1);
  auto idec = whitney_decompose(idom, 6);
  auto ilat = interior_lattice(idec, 6);
  CHECK(ilat.c3 > 0.0);
  for (int j = 0; j <= 6; ++j)
    for (const auto& p : ilat.levels[j]) {
      double d = idom.boundary_distance(p.x);
      CHECK(d * std::ldexp(1.0, j) - ilat.c2 >= ilat.c3 - 1e-12);
    }

  // Unit square: separation constant c1 = 1 (subcube centers of a tiling).
  auto sdom = DomainDescriptor::open_unit_cube(2);
  auto sdec = whitney_decompose(sdom, 5);
  auto slat = interior_lattice(sdec, 5);
  CHECK(slat.c1 == doctest::Approx(1.0));
}

TEST_CASE("closure lattice boundary counts and inclusion") {
  auto dom = DomainDescriptor::open_unit_cube(2);
  auto closure = closure_lattice(dom, 3);
  auto dec = whitney_decompose(dom, 3);
  auto interior = interior_lattice(dec, 3);

  for (int j = 0; j <= 3; ++j) {
    std::int64_t boundary = 0;
    for (const auto& p : closure.levels[j])
      if (p.on_boundary) ++boundary;
    CHECK(boundary == 4 * ((std::int64_t(1) << j) - 1) + 4);

    // interior points present with identical coordinates
    std::set<std::vector<std::int64_t>> got;
    for (const auto& p : closure.levels[j])
      if (!p.on_boundary) got.insert(p.num);
    for (const auto& p : interior.levels[j]) CHECK(got.count(p.num) == 1);
  }

  // n = 1, Jmax = 0: endpoints only (no Whitney cube exists at level 0).
  auto d1 = DomainDescriptor::open_unit_cube(1);
  auto c1 = closure_lattice(d1, 0);
  CHECK(c1.levels[0].size() == 2);
  CHECK(c1.levels[0][0].on_boundary);
}
