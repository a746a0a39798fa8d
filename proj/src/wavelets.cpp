#include "cellwave/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cellwave {

namespace {

// Orthonormal Daubechies low-pass filters, sum h_k = sqrt(2).
const std::vector<double>& db_filter(int g) {
  static const std::vector<double> db2 = [] {
    const double r3 = std::sqrt(3.0), c = 1.0 / (4.0 * std::sqrt(2.0));
    return std::vector<double>{(1 + r3) * c, (3 + r3) * c, (3 - r3) * c, (1 - r3) * c};
  }();
  static const std::vector<double> db3 = {0.3326705529509569,   0.8068915093133388,
                                          0.4598775021193313,   -0.13501102001039084,
                                          -0.08544127388224149, 0.035226291882100656};
  static const std::vector<double> db4 = {0.23037781330885523,  0.7148465705525415,
                                          0.6308807679295904,   -0.02798376941698385,
                                          -0.18703481171888114, 0.030841381835986965,
                                          0.032883011666982945, -0.010597401784997278};
  switch (g) {
    case 2: return db2;
    case 3: return db3;
    case 4: return db4;
    default: throw std::invalid_argument("unsupported Daubechies order");
  }
}

constexpr int kCascadeIterations = 8;
constexpr int kTableDepth = 12;  // two-scale extension of the cascade output

}  // namespace

const Wavelet1D& Wavelet1D::haar() {
  static Wavelet1D w;
  return w;
}

const Wavelet1D& Wavelet1D::daubechies(int g) {
  static std::map<int, Wavelet1D> cache;
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;

  Wavelet1D w;
  w.haar_ = false;
  w.g_ = g;
  w.h_ = db_filter(g);
  const double sq2 = std::sqrt(2.0);
  const std::int64_t L = 2 * g - 1;

  // Cascade from the box indicator: eight passes of the two-scale relation,
  // each doubling the grid.
  std::vector<double> cur(L + 1, 0.0);
  cur[0] = 1.0;
  int depth = 0;
  for (int pass = 0; pass < kCascadeIterations; ++pass) {
    const int fine = depth + 1;
    std::vector<double> next(std::size_t(L << fine) + 1, 0.0);
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(next.size()); ++i) {
      double acc = 0.0;
      for (int k = 0; k < 2 * g; ++k) {
        std::int64_t ci = i - (std::int64_t(k) << depth);  // index of 2x - k at the coarse step
        if (ci < 0 || ci > (L << depth)) continue;
        acc += w.h_[k] * cur[static_cast<std::size_t>(ci)];
      }
      next[static_cast<std::size_t>(i)] = sq2 * acc;
    }
    cur.swap(next);
    ++depth;
  }
  // Extend to finer dyadic arguments through the two-scale relation, keeping
  // the coarse values anchored (memoized form of the evaluation recursion).
  while (depth < kTableDepth) {
    const int fine = depth + 1;
    std::vector<double> next(std::size_t(L << fine) + 1, 0.0);
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(next.size()); ++i) {
      if (i % 2 == 0) {
        next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i / 2)];
        continue;
      }
      double acc = 0.0;
      for (int k = 0; k < 2 * g; ++k) {
        std::int64_t ci = i - (std::int64_t(k) << depth);
        if (ci < 0 || ci > (L << depth)) continue;
        acc += w.h_[k] * cur[static_cast<std::size_t>(ci)];
      }
      next[static_cast<std::size_t>(i)] = sq2 * acc;
    }
    cur.swap(next);
    ++depth;
  }
  w.phi_ = std::move(cur);
  w.depth_ = depth;
  it = cache.emplace(g, std::move(w)).first;
  return it->second;
}

double Wavelet1D::table(double x) const {
  const double L = support_len();
  if (x <= 0.0 || x >= L) return 0.0;
  double t = std::ldexp(x, depth_);
  double r = std::round(t);
  if (std::abs(t - r) < 1e-9) return phi_[static_cast<std::size_t>(r)];
  // Argument finer than the table: one step of the two-scale relation.
  double acc = 0.0;
  for (int k = 0; k < 2 * g_; ++k) acc += h_[k] * table(2.0 * x - k);
  return std::sqrt(2.0) * acc;
}

double Wavelet1D::scaling(double x) const {
  if (haar_) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  return table(x);
}

double Wavelet1D::wavelet(double x) const {
  if (haar_) {
    if (x >= 0.0 && x < 0.5) return 1.0;
    if (x >= 0.5 && x < 1.0) return -1.0;
    return 0.0;
  }
  // psi(x) = sqrt(2) sum_k (-1)^k h_{2g-1-k} phi(2x - k), support [0, 2g-1].
  double acc = 0.0;
  for (int k = 0; k < 2 * g_; ++k) {
    double c = ((k & 1) ? -1.0 : 1.0) * h_[2 * g_ - 1 - k];
    acc += c * table(2.0 * x - k);
  }
  return std::sqrt(2.0) * acc;
}

std::int64_t WaveletSystem::block_count() const {
  std::int64_t total = 0;
  for (const auto& lv : blocks) total += static_cast<std::int64_t>(lv.size());
  return total;
}

const WaveletBlock& WaveletSystem::at(int j, std::int64_t r) const {
  if (j < 0 || j >= static_cast<int>(blocks.size()) ||
      r < 0 || r >= static_cast<std::int64_t>(blocks[j].size()))
    throw std::invalid_argument("block key outside the system");
  return blocks[j][static_cast<std::size_t>(r)];
}

SeqGeometry WaveletSystem::geometry(double radius_c) const {
  SeqGeometry g;
  g.chi = SeqGeometry::Chi::BallIndicator;
  g.n = n;
  g.radius_c = radius_c;
  g.hull = box;
  g.centers.resize(blocks.size());
  for (size_t j = 0; j < blocks.size(); ++j) {
    g.centers[j].reserve(blocks[j].size());
    for (const auto& b : blocks[j]) g.centers[j].push_back(b.center);
  }
  return g;
}

void WaveletSystem::axis_values(const WaveletBlock& b, int axis, const GridFunction& grid,
                                std::vector<std::int64_t>& cells, std::vector<double>& vals) const {
  cells.clear();
  vals.clear();
  const double scale = std::ldexp(1.0, b.level);
  const double slen = basis->support_len();
  const bool wavelet_factor = (b.pattern >> axis) & 1u;
  const std::int64_t period_cells = grid.dims()[axis];
  const double lo = grid.bbox().lo[axis];

  const double supp_lo = double(b.k[axis]) / scale;
  const double supp_hi = (double(b.k[axis]) + slen) / scale;
  auto first_cell = static_cast<std::int64_t>(std::floor((supp_lo - lo) / grid.h()));
  auto last_cell = static_cast<std::int64_t>(std::ceil((supp_hi - lo) / grid.h()));

  for (std::int64_t c = first_cell; c < last_cell; ++c) {
    std::int64_t cc = c;
    if (periodize) {
      cc = c % period_cells;
      if (cc < 0) cc += period_cells;
    } else if (c < 0 || c >= period_cells) {
      continue;
    }
    double x = lo + (double(c) + 0.5) * grid.h();
    double arg = scale * x - double(b.k[axis]);
    double v = wavelet_factor ? basis->wavelet(arg) : basis->scaling(arg);
    if (v == 0.0) continue;
    v *= std::sqrt(scale);
    bool merged = false;
    if (periodize)
      for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == cc) {
          vals[i] += v;
          merged = true;
          break;
        }
    if (!merged) {
      cells.push_back(cc);
      vals.push_back(v);
    }
  }
}

namespace {

// Visits every nonzero (cell, tensor weight) pair of a block on the grid.
template <class Visit>
void for_each_block_cell(const WaveletSystem& sys, const GridFunction& grid,
                         const WaveletBlock& b, Visit&& visit) {
  const int n = sys.n;
  std::vector<std::vector<std::int64_t>> cells(n);
  std::vector<std::vector<double>> vals(n);
  for (int i = 0; i < n; ++i) {
    sys.axis_values(b, i, grid, cells[i], vals[i]);
    if (cells[i].empty()) return;
  }
  std::vector<std::int64_t> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * grid.dims()[i + 1];

  std::function<void(int, std::int64_t, double)> rec = [&](int axis, std::int64_t flat, double w) {
    if (axis == n) {
      visit(flat, w);
      return;
    }
    for (size_t t = 0; t < cells[axis].size(); ++t)
      rec(axis + 1, flat + cells[axis][t] * strides[axis], w * vals[axis][t]);
  };
  rec(0, 0, 1.0);
}

void append_level_blocks(WaveletSystem& sys, int j, const std::vector<std::int64_t>& klo,
                         const std::vector<std::int64_t>& khi, bool include_scaling) {
  const int n = sys.n;
  const double slen = sys.basis->support_len();
  std::vector<std::int64_t> k(n);
  for (unsigned pattern = include_scaling ? 0u : 1u; pattern < (1u << n); ++pattern) {
    std::function<void(int)> emit = [&](int axis) {
      if (axis == n) {
        WaveletBlock b;
        b.level = j;
        b.pattern = pattern;
        b.k = k;
        b.center.resize(n);
        for (int i = 0; i < n; ++i)
          b.center[i] = (double(k[i]) + 0.5 * slen) * std::ldexp(1.0, -j);
        b.flag = pattern == 0 ? BlockFlag::NonOscillating : BlockFlag::Oscillating;
        sys.blocks[j].push_back(std::move(b));
        return;
      }
      for (k[axis] = klo[axis]; k[axis] < khi[axis]; ++k[axis]) emit(axis + 1);
    };
    emit(0);
  }
}

}  // namespace

GridFunction WaveletSystem::render(const WaveletBlock& b, const GridFunction& like) const {
  GridFunction out(like.bbox(), like.resolution());
  for_each_block_cell(*this, out, b, [&](std::int64_t flat, double w) { out[flat] += w; });
  return out;
}

WaveletSystem build_box_system(int n, int u, int Jmax, const Box& box) {
  if (u < 0 || u > 3) throw std::invalid_argument("unsupported wavelet order u");
  if (Jmax < 0 || Jmax > 14) throw std::invalid_argument("Jmax out of desk-scale range");
  WaveletSystem sys;
  sys.n = n;
  sys.u = u;
  sys.Jmax = Jmax;
  sys.box = box;
  sys.periodize = u > 0;
  sys.basis = u == 0 ? &Wavelet1D::haar() : &Wavelet1D::daubechies(u + 1);
  sys.blocks.resize(Jmax + 1);

  std::vector<std::int64_t> klo(n), khi(n);
  for (int j = 0; j <= Jmax; ++j) {
    for (int i = 0; i < n; ++i) {
      double a = box.lo[i] * std::ldexp(1.0, j);
      double b = box.hi[i] * std::ldexp(1.0, j);
      klo[i] = static_cast<std::int64_t>(std::llround(a));
      khi[i] = static_cast<std::int64_t>(std::llround(b));
      if (klo[i] != a || khi[i] != b)
        throw std::invalid_argument("box corners must be dyadic at every system level");
    }
    append_level_blocks(sys, j, klo, khi, j == 0);
  }
  return sys;
}

WaveletSystem build_domain_system(const WhitneyDecomposition& dec, int u, int Jmax) {
  if (dec.degenerate) throw std::invalid_argument("degenerate decomposition has no interior system");
  if (u < 0 || u > 3) throw std::invalid_argument("unsupported wavelet order u");
  const int n = dec.domain.n;
  WaveletSystem sys;
  sys.n = n;
  sys.u = u;
  sys.Jmax = Jmax;
  sys.box = dec.domain.kind == DomainKind::OpenUnitCube ? Box::unit(n) : dec.domain.bbox;
  sys.periodize = false;
  sys.basis = u == 0 ? &Wavelet1D::haar() : &Wavelet1D::daubechies(u + 1);
  sys.blocks.resize(Jmax + 1);

  const int g = u == 0 ? 1 : u + 1;
  const std::int64_t slen_cells = 2 * g - 1;
  std::vector<std::int64_t> klo(n), khi(n);

  for (const auto& cube : dec.cubes) {
    int jb = cube.level;
    if (u > 0)
      while ((std::int64_t(1) << (jb - cube.level)) < slen_cells + 2) ++jb;
    if (jb > Jmax) continue;

    for (int j = jb; j <= Jmax; ++j) {
      const std::int64_t cells = std::int64_t(1) << (j - cube.level);
      for (int i = 0; i < n; ++i) {
        if (u == 0) {
          klo[i] = cube.k[i] * cells;
          khi[i] = (cube.k[i] + 1) * cells;
        } else {
          // One-cell margin keeps supports strictly inside the open cube.
          klo[i] = cube.k[i] * cells + 1;
          khi[i] = (cube.k[i] + 1) * cells - slen_cells;
        }
      }
      append_level_blocks(sys, j, klo, khi, j == jb);
    }
  }
  if (sys.block_count() == 0) throw std::invalid_argument("domain system is empty at this Jmax");
  return sys;
}

static void check_grid_matches(const WaveletSystem& sys, const GridFunction& f) {
  if (f.dim() != sys.n) throw std::invalid_argument("resolution mismatch");
  for (int i = 0; i < sys.n; ++i)
    if (std::abs(f.bbox().lo[i] - sys.box.lo[i]) > 1e-12 ||
        std::abs(f.bbox().hi[i] - sys.box.hi[i]) > 1e-12)
      throw std::invalid_argument("resolution mismatch");
}

CoefficientField analyze(const GridFunction& f, const WaveletSystem& sys) {
  check_grid_matches(sys, f);
  CoefficientField out;
  const double cell = std::pow(f.h(), sys.n);
  for (int j = 0; j < static_cast<int>(sys.blocks.size()); ++j) {
    const double norm = std::pow(2.0, 0.5 * double(j) * sys.n) * cell;
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(sys.blocks[j].size()); ++r) {
      double acc = 0.0;
      for_each_block_cell(sys, f, sys.blocks[j][static_cast<std::size_t>(r)],
                          [&](std::int64_t flat, double w) { acc += w * f[flat]; });
      if (acc != 0.0) out.set(j, r, norm * acc);
    }
  }
  return out;
}

GridFunction synthesize(const CoefficientField& lambda, const WaveletSystem& sys,
                        const GridFunction& like) {
  if (sys.periodize) check_grid_matches(sys, like);
  GridFunction out(like.bbox(), like.resolution());
  for (const auto& [key, v] : lambda.entries()) {
    const auto& b = sys.at(key.first, key.second);  // throws on missing key
    const double scale = v * std::pow(2.0, -0.5 * double(key.first) * sys.n);
    for_each_block_cell(sys, out, b,
                        [&](std::int64_t flat, double w) { out[flat] += scale * w; });
  }
  return out;
}

GridFunction synthesize(const CoefficientField& lambda, const WaveletSystem& sys) {
  int finest = std::max(lambda.finest_level(), 0);
  int J = std::min(14, std::max(finest + 2, 6));
  return synthesize(lambda, sys, GridFunction(sys.box, J));
}

double wavelet_norm(const GridFunction& f, const SpaceParams& params, const WaveletSystem& sys) {
  // Haar (u = 0) is valid exactly for 0 < s < min(1/p, 1/q); otherwise u > s.
  const bool ok = sys.u == 0 ? params.s < std::min(1.0 / params.p, 1.0 / params.q)
                             : double(sys.u) > params.s;
  if (!ok) throw std::invalid_argument("wavelet order too low");
  CoefficientField lam = analyze(f, sys);
  return f_norm(lam, sys.geometry(), params.p, params.q, params.s, f.resolution());
}

WaveletSystem default_norm_system(const SpaceParams& params, const Box& box, int J) {
  int u = params.s < std::min(1.0 / params.p, 1.0 / params.q)
              ? 0
              : std::min(3, static_cast<int>(std::floor(params.s)) + 1);
  return build_box_system(params.n, u, std::max(0, J - 2), box);
}

double default_wavelet_norm(const GridFunction& f, const SpaceParams& params) {
  WaveletSystem sys = default_norm_system(params, f.bbox(), f.resolution());
  return wavelet_norm(f, params, sys);
}

double fubini_norm(const GridFunction& f, const SpaceParams& params, int l) {
  const int n = f.dim();
  if (l < 1 || l >= n) throw std::invalid_argument("fubini requires 1 <= l < n");
  if (!(params.s > params.sigma_pq())) throw std::invalid_argument("fubini requires s > sigma_pq");

  SpaceParams slice_params(params.s, params.p, params.q, l);
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == l) {
        subsets.push_back(pick);
        return;
      }
      for (int i = start; i < n; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }

  double total = 0.0;
  std::vector<std::int64_t> idx(n);
  for (const auto& tangent : subsets) {
    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
      if (std::find(tangent.begin(), tangent.end(), i) == tangent.end()) comp.push_back(i);

    Box slice_box;
    for (int axis : tangent) {
      slice_box.lo.push_back(f.bbox().lo[axis]);
      slice_box.hi.push_back(f.bbox().hi[axis]);
    }
    WaveletSystem sys = default_norm_system(slice_params, slice_box, f.resolution());

    double acc = 0.0;
    std::vector<std::int64_t> cidx(comp.size(), 0);
    const double cell = std::pow(f.h(), static_cast<int>(comp.size()));
    std::function<void(size_t)> outer = [&](size_t ci) {
      if (ci < comp.size()) {
        for (cidx[ci] = 0; cidx[ci] < f.dims()[comp[ci]]; ++cidx[ci]) outer(ci + 1);
        return;
      }
      GridFunction slice(slice_box, f.resolution());
      std::vector<std::int64_t> sidx(l);
      for (std::int64_t flat = 0; flat < slice.size(); ++flat) {
        slice.unflatten(flat, sidx);
        for (int i = 0; i < l; ++i) idx[tangent[i]] = sidx[i];
        for (size_t i = 0; i < comp.size(); ++i) idx[comp[i]] = cidx[i];
        slice[flat] = f[f.flat_index(idx)];
      }
      acc += std::pow(wavelet_norm(slice, slice_params, sys), params.p) * cell;
    };
    outer(0);
    total += std::pow(acc, 1.0 / params.p);
  }
  return total;
}

}  // namespace cellwave
