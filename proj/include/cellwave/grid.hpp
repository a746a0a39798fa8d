#ifndef CELLWAVE_GRID_HPP
#define CELLWAVE_GRID_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cellwave {

// Axis-aligned box. Degenerate (n = 0) boxes are allowed and carry a single
// sample; they show up as the domain of corner trace data.
struct Box {
  std::vector<double> lo, hi;

  Box() = default;
  Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box corner dimension mismatch");
  }
  static Box cube(int n, double a, double b) {
    return Box(std::vector<double>(n, a), std::vector<double>(n, b));
  }
  static Box unit(int n) { return cube(n, 0.0, 1.0); }

  int dim() const { return static_cast<int>(lo.size()); }
  double width(int i) const { return hi[i] - lo[i]; }
  double diameter() const;
  bool contains(const std::vector<double>& x) const;
};

// The closed cube Q_{nu,m} with center 2^{-nu} m and side length 2^{-nu}.
struct DyadicCube {
  int nu = 0;
  std::vector<std::int64_t> m;

  DyadicCube() = default;
  DyadicCube(int level, std::vector<std::int64_t> index) : nu(level), m(std::move(index)) {
    if (nu < 0) throw std::invalid_argument("dyadic cube level must be nonnegative");
  }

  int dim() const { return static_cast<int>(m.size()); }
  double side() const { return std::ldexp(1.0, -nu); }
  double center(int i) const { return std::ldexp(static_cast<double>(m[i]), -nu); }
  // Corners of the dilate d*Q (concentric, side d*2^{-nu}).
  double lower(int i, double d = 1.0) const { return center(i) - 0.5 * d * side(); }
  double upper(int i, double d = 1.0) const { return center(i) + 0.5 * d * side(); }
  bool contains(const std::vector<double>& x, double d = 1.0) const;
  Box box(double d = 1.0) const;
};

// Parameter triple of F^s_{p,q}(R^n) plus the dimension.
struct SpaceParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  int n = 1;

  SpaceParams() = default;
  SpaceParams(double s_, double p_, double q_, int n_) : s(s_), p(p_), q(q_), n(n_) { validate(); }

  void validate() const {
    if (!(p >= 1.0)) throw std::invalid_argument("p must satisfy p >= 1");
    if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  }
  double sigma_p() const { return n * std::max(1.0 / p - 1.0, 0.0); }
  double sigma_pq() const { return n * std::max(1.0 / std::min(p, q) - 1.0, 0.0); }
};

// Real-valued function sampled at the midpoints of a uniform dyadic grid:
// cell k of axis i has midpoint lo_i + (k + 1/2) h with h = 2^{-J}.
// Values are stored dense, row-major (last axis fastest).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Box bbox, int J);

  static GridFunction sample(const Box& bbox, int J,
                             const std::function<double(const std::vector<double>&)>& f);

  int dim() const { return bbox_.dim(); }
  int resolution() const { return J_; }
  double h() const { return std::ldexp(1.0, -J_); }
  const Box& bbox() const { return bbox_; }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  double operator[](std::int64_t flat) const { return values_[flat]; }
  double& operator[](std::int64_t flat) { return values_[flat]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  std::int64_t flat_index(const std::vector<std::int64_t>& idx) const;
  void unflatten(std::int64_t flat, std::vector<std::int64_t>& idx) const;
  double midpoint(int axis, std::int64_t k) const { return bbox_.lo[axis] + (k + 0.5) * h(); }
  void midpoints(const std::vector<std::int64_t>& idx, std::vector<double>& x) const;

  // Index of the grid cell containing x (clamped to the box).
  std::int64_t cell_of(const std::vector<double>& x) const;
  double eval_nearest(const std::vector<double>& x) const { return values_[cell_of(x)]; }

  double max_abs() const;
  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double a);

  // Exact crop to a cell-aligned sub-box.
  GridFunction restrict_to(const Box& sub) const;
  // One level coarser by 2^n block averaging.
  GridFunction coarsen() const;

 private:
  Box bbox_;
  int J_ = 0;
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> strides_;
  std::vector<double> values_;
};

using Weight = std::function<double(const std::vector<double>&)>;

// Midpoint quadrature of the L_p norm; p = infinity means max over samples.
double integrate_lp(const GridFunction& f, double p, const Weight* weight = nullptr);

// D^alpha by alpha_i-fold application of the second-order first-derivative
// stencil per axis; one-sided second-order stencils at the box edges.
GridFunction finite_diff(const GridFunction& f, const std::vector<int>& alpha);

// Discrete Hoelder norm ||f | C^sigma|| with sigma = k + {sigma}, {sigma} in (0,1]:
// sup norms of D^beta f for |beta| <= k plus the Lip^{sigma-k} seminorm of the
// top-order derivatives over grid pairs with |x-y| <= cutoff_factor * diam(bbox).
double hoelder_norm(const GridFunction& f, double sigma, double cutoff_factor = 0.25);

double lip_seminorm(const GridFunction& g, double gamma, double cutoff_factor = 0.25);

// Samples of f(lambda (x - center) + center) for dyadic lambda = 2^k.
// Stretches (lambda <= 1) are exact sample relocations onto the rescaled box
// at resolution J - log2(1/lambda); shrinks average the 2^n cells meeting the
// preimage point. Non-dyadic lambda is rejected.
GridFunction dilate(const GridFunction& f, double lambda, const std::vector<double>& center);

int multi_abs(const std::vector<int>& alpha);
// All multi-indices over n axes with |alpha| <= order (graded lexicographic).
std::vector<std::vector<int>> multi_indices_upto(int n, int order);
std::vector<std::vector<int>> multi_indices_exact(int n, int order);

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

}  // namespace cellwave

#endif
