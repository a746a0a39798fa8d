#ifndef CELLWAVE_WHITNEY_HPP
#define CELLWAVE_WHITNEY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cellwave/grid.hpp"

namespace cellwave {

enum class DomainKind { FullSpaceBox, OpenUnitCube, PlaneComplement, FaceComplement };

// Domain with a piecewise-flat boundary. Unbounded domains (plane and face
// complements) are truncated to bbox; the open unit cube carries its own hull.
struct DomainDescriptor {
  DomainKind kind = DomainKind::OpenUnitCube;
  int n = 1;
  int plane_dim = 0;  // l: plane dimension, or the top face dimension for FaceComplement
  Box bbox;

  static DomainDescriptor full_space_box(int n, Box bbox);
  static DomainDescriptor open_unit_cube(int n);
  static DomainDescriptor plane_complement(int n, int l);
  static DomainDescriptor plane_complement(int n, int l, Box bbox);
  // R^n minus the union of the closed faces of dimension <= lmax of the unit cube.
  static DomainDescriptor face_complement(int n, int lmax, Box bbox);

  bool has_boundary() const { return kind != DomainKind::FullSpaceBox; }
  bool contains(const std::vector<double>& x) const;
  double boundary_distance(const std::vector<double>& x) const;
  std::string describe() const;
};

// Cube [k 2^{-level}, (k+1) 2^{-level}] of the nested dyadic family. Whitney
// selection needs the refinement hierarchy, so corners (not centers) index
// these cubes; the centered Q_{nu,m} convention stays with atoms.
struct WhitneyCube {
  int level = 0;
  std::vector<std::int64_t> k;
  double dist = 0.0;  // dist(Q^0, boundary)
  bool degenerate = false;
  bool rim = false;  // touches the truncation bbox

  int dim() const { return static_cast<int>(k.size()); }
  double side() const { return std::ldexp(1.0, -level); }
  double lo(int i) const { return std::ldexp(static_cast<double>(k[i]), -level); }
  double hi(int i) const { return std::ldexp(static_cast<double>(k[i] + 1), -level); }
  double center(int i) const { return std::ldexp(static_cast<double>(2 * k[i] + 1), -(level + 1)); }
  double diam() const { return side() * std::sqrt(static_cast<double>(dim())); }
  Box q0() const;
  Box q1() const;  // concentric double
};

struct WhitneyDecomposition {
  DomainDescriptor domain;
  int max_level = 0;
  std::vector<WhitneyCube> cubes;  // level ascending, index lexicographic
  std::int64_t truncated_cells = 0;  // finest-level cells left unresolved
  bool degenerate = false;           // full-space tiling

  int max_cube_level() const;
};

struct LatticePoint {
  int level = 0;
  std::vector<double> x;
  std::vector<std::int64_t> num;  // x = num * 2^{-(level+1)}, exact
  std::int64_t cube = -1;         // owning Whitney cube, -1 for boundary points
  bool on_boundary = false;
};

enum class LatticeKind { Interior, Closure };

// Points x_r^j, grouped by level; r is the index inside levels[j].
struct PointLattice {
  LatticeKind kind = LatticeKind::Interior;
  int n = 1;
  int Jmax = 0;
  std::vector<std::vector<LatticePoint>> levels;
  double c1 = 0.0;          // achieved separation constant
  double c2 = 0.5;          // ball radius convention
  double c3 = 0.0;          // achieved interior margin (Interior kind)
  double chi_radius = 0.5;  // c with chi_j^r = indicator of B(x_r^j, c 2^{-j})

  std::int64_t total_points() const;
};

// Greedy dyadic Whitney decomposition: a cube at level nu is selected iff
// diam(Q) <= dist(Q, Gamma) <= 4 diam(Q) and no selected ancestor contains it.
// All geometric predicates are evaluated in exact integer arithmetic.
WhitneyDecomposition whitney_decompose(const DomainDescriptor& domain, int max_level);

// Subcube-center lattice: every Whitney cube at level l contributes its
// 2^{(j-l)n} subcube centers at each level j in {l..Jmax}.
PointLattice interior_lattice(const WhitneyDecomposition& dec, int Jmax);

// Interior lattice plus 2^{-j}-spaced lattices on every face of the cube.
PointLattice closure_lattice(const DomainDescriptor& domain, int Jmax);

}  // namespace cellwave

#endif
