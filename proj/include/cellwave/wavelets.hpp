#ifndef CELLWAVE_WAVELETS_HPP
#define CELLWAVE_WAVELETS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "cellwave/grid.hpp"
#include "cellwave/seqspace.hpp"
#include "cellwave/whitney.hpp"

namespace cellwave {

// 1-D orthonormal scaling/wavelet pair on the line. u = 0 is the analytic
// Haar pair; u >= 1 uses the Daubechies DB(u+1) filter, rendered by cascade
// iteration on a dyadic grid and refined on demand through the two-scale
// relation for finer dyadic arguments.
class Wavelet1D {
 public:
  static const Wavelet1D& haar();
  static const Wavelet1D& daubechies(int taps_pairs);  // DB_g, support [0, 2g-1]

  bool is_haar() const { return haar_; }
  int order() const { return g_; }           // vanishing moments of psi
  double support_len() const { return haar_ ? 1.0 : double(2 * g_ - 1); }
  double scaling(double x) const;
  double wavelet(double x) const;

 private:
  Wavelet1D() = default;
  bool haar_ = true;
  int g_ = 1;
  int depth_ = 8;
  std::vector<double> h_;    // low-pass filter
  std::vector<double> phi_;  // cascade table on [0, 2g-1], step 2^{-depth}

  double table(double x) const;
};

enum class BlockFlag { NonOscillating, Oscillating };

struct WaveletBlock {
  int level = 0;
  unsigned pattern = 0;            // bit i set: wavelet factor on axis i
  std::vector<std::int64_t> k;     // translation index per axis at this level
  std::vector<double> center;      // lattice point x_r^j
  BlockFlag flag = BlockFlag::Oscillating;
  bool boundary = false;           // reserved for extension-built blocks
};

// Finite u-wavelet system: per (j, r) a tensor block
//   Phi_r^j(x) = prod_i 2^{j/2} w_{eps_i}(2^j x_i - k_i),
// orthonormal within its span. Box systems periodize over the bbox; domain
// systems place blocks inside Whitney cubes and never wrap.
class WaveletSystem {
 public:
  int n = 1;
  int u = 0;
  int Jmax = 0;
  Box box;                    // bounding box (domain hull for domain systems)
  bool periodize = false;
  const Wavelet1D* basis = nullptr;
  std::vector<std::vector<WaveletBlock>> blocks;  // by level

  std::int64_t block_count() const;
  const WaveletBlock& at(int j, std::int64_t r) const;
  // Sequence-space geometry of the block lattice (balls of radius c 2^{-j}).
  SeqGeometry geometry(double radius_c = 0.5) const;
  // Per-axis nonzero samples of a block on the given grid.
  void axis_values(const WaveletBlock& b, int axis, const GridFunction& grid,
                   std::vector<std::int64_t>& cells, std::vector<double>& vals) const;
  // Dense render of one block (tests and small grids only).
  GridFunction render(const WaveletBlock& b, const GridFunction& like) const;
};

// Tensor wavelet system on a box: u = 0 exact Haar, u in {1,2,3} Daubechies
// DB(u+1), periodized. Wavelet levels run from 0 to Jmax.
WaveletSystem build_box_system(int n, int u, int Jmax, const Box& box);

// Interior system on a Whitney-decomposed domain: each cube carries the part
// of a tensor basis supported strictly inside it; coarsest-scale blocks are
// non-oscillating, finer blocks oscillate.
WaveletSystem build_domain_system(const WhitneyDecomposition& dec, int u, int Jmax);

// lambda_r^j(f) = 2^{jn/2} (f, Phi_r^j), by midpoint quadrature.
CoefficientField analyze(const GridFunction& f, const WaveletSystem& sys);

// f = sum lambda_r^j 2^{-jn/2} Phi_r^j on the grid of `like`.
GridFunction synthesize(const CoefficientField& lambda, const WaveletSystem& sys,
                        const GridFunction& like);
GridFunction synthesize(const CoefficientField& lambda, const WaveletSystem& sys);

// f_norm of the analysis coefficients in the system's sequence-space
// geometry; requires u > s, and s < min(1/p, 1/q) when u = 0.
double wavelet_norm(const GridFunction& f, const SpaceParams& params, const WaveletSystem& sys);

// Norm estimator choice used throughout: Haar inside its validity range,
// else the lowest Daubechies order above s.
WaveletSystem default_norm_system(const SpaceParams& params, const Box& box, int J);

double default_wavelet_norm(const GridFunction& f, const SpaceParams& params);

// Fubini-style cross-check: sum over l-dimensional coordinate slices of the
// L_p aggregate of inner slice norms.
double fubini_norm(const GridFunction& f, const SpaceParams& params, int l);

}  // namespace cellwave

#endif
