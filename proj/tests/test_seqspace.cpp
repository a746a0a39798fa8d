#include <cmath>

#include "cellwave/seqspace.hpp"
#include "doctest.h"

using namespace cellwave;

namespace {

SeqGeometry unit_cube_geometry(int levels) {
  // Z^1 convention on [0,1]: level j holds the 2^j cubes Q_{j,m} inside.
  std::vector<std::vector<std::vector<std::int64_t>>> m_by_level(levels + 1);
  for (int j = 0; j <= levels; ++j)
    for (std::int64_t m = 0; m <= (std::int64_t(1) << j); ++m) m_by_level[j].push_back({m});
  return SeqGeometry::from_cubes(1, m_by_level, Box::unit(1));
}

}  // namespace

TEST_CASE("b_norm single entry and p = q identity") {
  CoefficientField lam;
  lam.set(0, 3, -2.5);
  CHECK(b_norm(lam, 2.0, 2.0) == doctest::Approx(2.5));

  lam.set(1, 0, 1.5);
  lam.set(1, 7, -0.5);
  lam.set(4, 2, 0.25);
  // p = q: the s-weighted flat l_p norm of all entries.
  double s = 0.7, p = 1.5;
  double direct = 0.0;
  for (const auto& [key, v] : lam.entries())
    direct += std::pow(std::pow(2.0, key.first * s) * std::abs(v), p);
  direct = std::pow(direct, 1.0 / p);
  CHECK(b_norm(lam, p, p, s) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("b_norm two-level hand value") {
  // unit coefficients at j = 0 and j = 1, p = q = 2, s = 1: (1 + 4)^{1/2}.
  CoefficientField lam;
  lam.set(0, 0, 1.0);
  lam.set(1, 5, 1.0);
  CHECK(b_norm(lam, 2.0, 2.0, 1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("f_norm with L_p-normalized cube characteristic functions") {
  auto geom = unit_cube_geometry(4);
  // single entry: the normalization makes the norm equal |lambda| exactly.
  CoefficientField lam;
  lam.set(3, 2, 0.75);
  CHECK(f_norm(lam, geom, 2.0, 2.0, std::nullopt, 8) == doctest::Approx(0.75).epsilon(1e-12));

  CoefficientField zero;
  CHECK(f_norm(zero, geom, 2.0, 2.0) == 0.0);
}

TEST_CASE("f_norm disjoint same-level supports add in l_p") {
  auto geom = unit_cube_geometry(4);
  CoefficientField lam;
  lam.set(2, 1, 0.5);   // Q_{2,1}
  lam.set(2, 3, -1.25); // Q_{2,3}, disjoint interior
  double p = 2.0;
  double expect = std::pow(std::pow(0.5, p) + std::pow(1.25, p), 1.0 / p);
  CHECK(f_norm(lam, geom, p, p, std::nullopt, 8) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("f_norm equals b_norm on disjoint diagonal fields") {
  auto geom = unit_cube_geometry(3);
  // p = q makes the square function collapse: the identity needs only the
  // L_p normalization of chi, as long as every cube lies inside the hull.
  CoefficientField lam;
  lam.set(1, 1, 0.3);
  lam.set(2, 2, -0.7);
  lam.set(3, 3, 0.11);
  double p = 1.5;
  CHECK(f_norm(lam, geom, p, p, std::nullopt, 8) ==
        doctest::Approx(b_norm(lam, p, p)).epsilon(1e-9));
}

TEST_CASE("f_norm and b_norm scale linearly") {
  auto geom = unit_cube_geometry(3);
  CoefficientField lam;
  lam.set(1, 1, 0.4);
  lam.set(2, 2, 0.9);
  CoefficientField scaled = lam;
  scaled *= -3.0;
  CHECK(b_norm(scaled, 2.0, 1.0, 0.5) == doctest::Approx(3.0 * b_norm(lam, 2.0, 1.0, 0.5)));
  CHECK(f_norm(scaled, geom, 2.0, 2.0, 0.5, 7) ==
        doctest::Approx(3.0 * f_norm(lam, geom, 2.0, 2.0, 0.5, 7)).epsilon(1e-12));
}

TEST_CASE("f_norm is non-increasing in q") {
  auto geom = unit_cube_geometry(3);
  CoefficientField lam;
  lam.set(0, 0, 1.0);
  lam.set(1, 1, 0.8);
  lam.set(2, 2, 0.6);
  lam.set(2, 1, -0.7);
  double inf = std::numeric_limits<double>::infinity();
  double v1 = f_norm(lam, geom, 2.0, 1.0, std::nullopt, 8);
  double v2 = f_norm(lam, geom, 2.0, 2.0, std::nullopt, 8);
  double vi = f_norm(lam, geom, 2.0, inf, std::nullopt, 8);
  CHECK(v1 >= v2 - 1e-12);
  CHECK(v2 >= vi - 1e-12);
}

TEST_CASE("f_norm rejects too-coarse quadrature") {
  auto geom = unit_cube_geometry(4);
  CoefficientField lam;
  lam.set(4, 1, 1.0);
  CHECK_THROWS_WITH_AS(f_norm(lam, geom, 2.0, 2.0, std::nullopt, 5),
                       "resolution below finest level", std::invalid_argument);
}
