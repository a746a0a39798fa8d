#include "cellwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cellwave {

double Box::diameter() const {
  double d2 = 0.0;
  for (int i = 0; i < dim(); ++i) d2 += width(i) * width(i);
  return std::sqrt(d2);
}

bool Box::contains(const std::vector<double>& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

bool DyadicCube::contains(const std::vector<double>& x, double d) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lower(i, d) || x[i] > upper(i, d)) return false;
  return true;
}

Box DyadicCube::box(double d) const {
  std::vector<double> lo(dim()), hi(dim());
  for (int i = 0; i < dim(); ++i) {
    lo[i] = lower(i, d);
    hi[i] = upper(i, d);
  }
  return Box(std::move(lo), std::move(hi));
}

GridFunction::GridFunction(Box bbox, int J) : bbox_(std::move(bbox)), J_(J) {
  if (J < 0) throw std::invalid_argument("resolution level must be nonnegative");
  const int n = bbox_.dim();
  dims_.resize(n);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    double cells = bbox_.width(i) * std::ldexp(1.0, J);
    dims_[i] = static_cast<std::int64_t>(std::llround(cells));
    if (dims_[i] < 1 || std::abs(cells - double(dims_[i])) > 1e-9)
      throw std::invalid_argument("bbox width must be a positive multiple of the grid spacing");
    total *= dims_[i];
  }
  strides_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * dims_[i + 1];
  values_.assign(static_cast<size_t>(total), 0.0);
}

GridFunction GridFunction::sample(const Box& bbox, int J,
                                  const std::function<double(const std::vector<double>&)>& f) {
  GridFunction g(bbox, J);
  const int n = g.dim();
  std::vector<std::int64_t> idx(n, 0);
  std::vector<double> x(n);
  for (std::int64_t flat = 0; flat < g.size(); ++flat) {
    g.unflatten(flat, idx);
    g.midpoints(idx, x);
    g[flat] = f(x);
  }
  return g;
}

std::int64_t GridFunction::flat_index(const std::vector<std::int64_t>& idx) const {
  std::int64_t flat = 0;
  for (int i = 0; i < dim(); ++i) flat += idx[i] * strides_[i];
  return flat;
}

void GridFunction::unflatten(std::int64_t flat, std::vector<std::int64_t>& idx) const {
  idx.resize(dim());
  for (int i = 0; i < dim(); ++i) {
    idx[i] = flat / strides_[i];
    flat -= idx[i] * strides_[i];
  }
}

void GridFunction::midpoints(const std::vector<std::int64_t>& idx, std::vector<double>& x) const {
  x.resize(dim());
  for (int i = 0; i < dim(); ++i) x[i] = midpoint(i, idx[i]);
}

std::int64_t GridFunction::cell_of(const std::vector<double>& x) const {
  std::int64_t flat = 0;
  for (int i = 0; i < dim(); ++i) {
    auto k = static_cast<std::int64_t>(std::floor((x[i] - bbox_.lo[i]) / h()));
    k = std::clamp<std::int64_t>(k, 0, dims_[i] - 1);
    flat += k * strides_[i];
  }
  return flat;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

static void check_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.dim() != b.dim() || a.resolution() != b.resolution() || a.size() != b.size())
    throw std::invalid_argument("grid mismatch");
  for (int i = 0; i < a.dim(); ++i)
    if (std::abs(a.bbox().lo[i] - b.bbox().lo[i]) > 1e-12 ||
        std::abs(a.bbox().hi[i] - b.bbox().hi[i]) > 1e-12)
      throw std::invalid_argument("grid mismatch");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  check_same_grid(*this, o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  check_same_grid(*this, o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

GridFunction GridFunction::restrict_to(const Box& sub) const {
  const int n = dim();
  if (sub.dim() != n) throw std::invalid_argument("restrict_to: dimension mismatch");
  std::vector<std::int64_t> offset(n);
  for (int i = 0; i < n; ++i) {
    double cells = (sub.lo[i] - bbox_.lo[i]) / h();
    offset[i] = static_cast<std::int64_t>(std::llround(cells));
    if (std::abs(cells - double(offset[i])) > 1e-9 || offset[i] < 0)
      throw std::invalid_argument("restrict_to: sub-box not cell aligned");
  }
  GridFunction out(sub, J_);
  std::vector<std::int64_t> idx(n);
  for (std::int64_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    std::int64_t src = 0;
    for (int i = 0; i < n; ++i) {
      std::int64_t k = idx[i] + offset[i];
      if (k >= dims_[i]) throw std::invalid_argument("restrict_to: sub-box not contained");
      src += k * strides_[i];
    }
    out[flat] = values_[src];
  }
  return out;
}

GridFunction GridFunction::coarsen() const {
  const int n = dim();
  if (J_ < 1) throw std::invalid_argument("cannot coarsen below level 0");
  for (int i = 0; i < n; ++i)
    if (dims_[i] % 2 != 0) throw std::invalid_argument("coarsen: odd cell count");
  GridFunction out(bbox_, J_ - 1);
  std::vector<std::int64_t> idx(n), fine(n);
  const std::int64_t corners = std::int64_t(1) << n;
  for (std::int64_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    double sum = 0.0;
    for (std::int64_t c = 0; c < corners; ++c) {
      for (int i = 0; i < n; ++i) fine[i] = 2 * idx[i] + ((c >> i) & 1);
      sum += values_[flat_index(fine)];
    }
    out[flat] = sum / double(corners);
  }
  return out;
}

double integrate_lp(const GridFunction& f, double p, const Weight* weight) {
  if (!(p >= 1.0) && !std::isinf(p)) throw std::invalid_argument("integrate_lp requires p >= 1");
  const int n = f.dim();
  const double cell = std::pow(f.h(), n);
  std::vector<std::int64_t> idx(n);
  std::vector<double> x(n);
  double acc = 0.0, sup = 0.0;
  for (std::int64_t flat = 0; flat < f.size(); ++flat) {
    double v = f[flat];
    double w = 1.0;
    if (weight && *weight) {
      f.unflatten(flat, idx);
      f.midpoints(idx, x);
      w = (*weight)(x);
    }
    if (!std::isfinite(v) || !std::isfinite(w))
      throw std::runtime_error("non-finite integrand");
    if (std::isinf(p))
      sup = std::max(sup, w * std::abs(v));
    else
      acc += w * std::pow(std::abs(v), p) * cell;
  }
  return std::isinf(p) ? sup : std::pow(acc, 1.0 / p);
}

// One application of d/dx_axis, second order, one-sided at the edges.
static GridFunction diff_axis(const GridFunction& f, int axis) {
  const auto K = f.dims()[axis];
  if (K < 3) throw std::invalid_argument("grid too coarse");
  GridFunction out(f.bbox(), f.resolution());
  const double inv2h = 1.0 / (2.0 * f.h());
  const int n = f.dim();
  std::vector<std::int64_t> idx(n);
  for (std::int64_t flat = 0; flat < f.size(); ++flat) {
    f.unflatten(flat, idx);
    const std::int64_t k = idx[axis];
    auto at = [&](std::int64_t kk) {
      auto j = idx;
      j[axis] = kk;
      return f[f.flat_index(j)];
    };
    double d;
    if (k == 0)
      d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
    else if (k == K - 1)
      d = (3.0 * at(K - 1) - 4.0 * at(K - 2) + at(K - 3)) * inv2h;
    else
      d = (at(k + 1) - at(k - 1)) * inv2h;
    out[flat] = d;
  }
  return out;
}

GridFunction finite_diff(const GridFunction& f, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != f.dim())
    throw std::invalid_argument("multi-index dimension mismatch");
  if (multi_abs(alpha) < 1) throw std::invalid_argument("finite_diff requires |alpha| >= 1");
  GridFunction g = f;
  for (int axis = 0; axis < f.dim(); ++axis)
    for (int r = 0; r < alpha[axis]; ++r) g = diff_axis(g, axis);
  return g;
}

double lip_seminorm(const GridFunction& g, double gamma, double cutoff_factor) {
  const double cutoff = g.bbox().diameter() * cutoff_factor;
  const int n = g.dim();
  const std::int64_t N = g.size();
  std::vector<std::int64_t> ia(n), ib(n);
  std::vector<double> xa(n), xb(n);
  auto ratio = [&](std::int64_t a, std::int64_t b) -> double {
    g.unflatten(a, ia);
    g.unflatten(b, ib);
    g.midpoints(ia, xa);
    g.midpoints(ib, xb);
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (xa[i] - xb[i]) * (xa[i] - xb[i]);
    double d = std::sqrt(d2);
    if (d <= 0.0 || d > cutoff) return 0.0;
    return std::abs(g[a] - g[b]) / std::pow(d, gamma);
  };
  double sup = 0.0;
  if (N <= (std::int64_t(1) << 12)) {
    for (std::int64_t a = 0; a < N; ++a)
      for (std::int64_t b = a + 1; b < N; ++b) sup = std::max(sup, ratio(a, b));
  } else {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<std::int64_t> draw(0, N - 1);
    for (int k = 0; k < (1 << 16); ++k) sup = std::max(sup, ratio(draw(rng), draw(rng)));
  }
  return sup;
}

double hoelder_norm(const GridFunction& f, double sigma, double cutoff_factor) {
  if (!(sigma > 0.0)) throw std::invalid_argument("use sup-norm instead");
  // sigma = k + frac with frac in (0,1].
  int k = static_cast<int>(std::ceil(sigma)) - 1;
  double frac = sigma - k;
  double total = 0.0;
  for (const auto& beta : multi_indices_upto(f.dim(), k)) {
    GridFunction d = multi_abs(beta) == 0 ? f : finite_diff(f, beta);
    total += integrate_lp(d, std::numeric_limits<double>::infinity());
    if (multi_abs(beta) == k) total += lip_seminorm(d, frac, cutoff_factor);
  }
  return total;
}

GridFunction dilate(const GridFunction& f, double lambda, const std::vector<double>& center) {
  if (!(lambda > 0.0)) throw std::invalid_argument("non-dyadic dilation");
  int k = static_cast<int>(std::llround(std::log2(lambda)));
  if (std::abs(std::ldexp(1.0, k) - lambda) > 1e-12 * lambda)
    throw std::runtime_error("non-dyadic dilation");
  const int n = f.dim();
  if (static_cast<int>(center.size()) != n) throw std::invalid_argument("center dimension mismatch");

  Box out_box;
  out_box.lo.resize(n);
  out_box.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    out_box.lo[i] = center[i] + (f.bbox().lo[i] - center[i]) * std::ldexp(1.0, -k);
    out_box.hi[i] = center[i] + (f.bbox().hi[i] - center[i]) * std::ldexp(1.0, -k);
  }
  if (k <= 0) {
    // Stretch: same sample array over the rescaled box, J drops by |k|.
    GridFunction out(out_box, f.resolution() + k);
    out.values() = f.values();
    return out;
  }
  // Shrink: preimages of output midpoints land on cell corners of the source
  // grid; average the adjacent cells (symmetric, deterministic).
  GridFunction out(out_box, f.resolution() + k);
  std::vector<std::int64_t> idx(n);
  std::vector<double> x(n), y(n), probe(n);
  const std::int64_t corners = std::int64_t(1) << n;
  for (std::int64_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    out.midpoints(idx, x);
    for (int i = 0; i < n; ++i) y[i] = lambda * (x[i] - center[i]) + center[i];
    double sum = 0.0;
    for (std::int64_t c = 0; c < corners; ++c) {
      for (int i = 0; i < n; ++i) probe[i] = y[i] + (((c >> i) & 1) ? 0.5 : -0.5) * f.h();
      sum += f.eval_nearest(probe);
    }
    out[flat] = sum / double(corners);
  }
  return out;
}

int multi_abs(const std::vector<int>& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

static void enumerate_rec(int n, int axis, int remaining, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out, bool exact) {
  if (axis == n) {
    if (!exact || remaining == 0) out.push_back(cur);
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    cur[axis] = a;
    enumerate_rec(n, axis + 1, remaining - a, cur, out, exact);
  }
  cur[axis] = 0;
}

std::vector<std::vector<int>> multi_indices_upto(int n, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  for (int total = 0; total <= order; ++total) enumerate_rec(n, 0, total, cur, out, true);
  return out;
}

std::vector<std::vector<int>> multi_indices_exact(int n, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  enumerate_rec(n, 0, order, cur, out, true);
  return out;
}

}  // namespace cellwave
