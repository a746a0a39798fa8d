#ifndef CELLWAVE_SEQSPACE_HPP
#define CELLWAVE_SEQSPACE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cellwave/grid.hpp"
#include "cellwave/whitney.hpp"

namespace cellwave {

// Wavelet/atom coefficients indexed by (level j, location r). Location
// indices refer to the attached geometry.
class CoefficientField {
 public:
  using Key = std::pair<int, std::int64_t>;

  void set(int j, std::int64_t r, double value);
  void add(int j, std::int64_t r, double value);
  double get(int j, std::int64_t r) const;
  const std::map<Key, double>& entries() const { return entries_; }
  std::map<Key, double>& entries() { return entries_; }
  int finest_level() const;
  std::size_t size() const { return entries_.size(); }
  bool all_finite() const;

  CoefficientField& operator*=(double a);
  CoefficientField& operator+=(const CoefficientField& o);

 private:
  std::map<Key, double> entries_;
};

// Geometry behind the characteristic functions chi_j^r of a coefficient
// field. Two conventions:
//  - BallIndicator: chi = indicator of B(x_r^j, c 2^{-j})   (domain spaces)
//  - CubeLpNormalized: chi = 2^{jn/p} indicator of Q_{j,m}  (Z^n spaces)
struct SeqGeometry {
  enum class Chi { BallIndicator, CubeLpNormalized };

  Chi chi = Chi::BallIndicator;
  int n = 1;
  double radius_c = 0.5;  // ball radius constant c
  std::vector<std::vector<std::vector<double>>> centers;  // [level][r] -> x
  Box hull;  // integration region for f_norm quadrature

  static SeqGeometry from_lattice(const PointLattice& lat, Box hull);
  // Z^n convention at the given levels: centers 2^{-j} m for the listed m.
  static SeqGeometry from_cubes(int n, const std::vector<std::vector<std::vector<std::int64_t>>>& m_by_level,
                                Box hull);

  std::int64_t level_size(int j) const {
    return j < static_cast<int>(centers.size()) ? static_cast<std::int64_t>(centers[j].size()) : 0;
  }
};

// || lambda | b_{p,q} || = ( sum_j [2^{js}]^q ( sum_r |lambda_j^r|^p )^{q/p} )^{1/q};
// the weight 2^{js} is included only when s is given. p or q = infinity give
// the usual sup modifications.
double b_norm(const CoefficientField& lambda, double p, double q,
              std::optional<double> s = std::nullopt);

// L_p quadrature at resolution Jquad of ( sum_{j,r} [2^{js}]^q |lambda_j^r chi_j^r(x)|^q )^{1/q}.
double f_norm(const CoefficientField& lambda, const SeqGeometry& geom, double p, double q,
              std::optional<double> s = std::nullopt, int Jquad = -1);

}  // namespace cellwave

#endif
