#include "cellwave/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cellwave {

DomainDescriptor DomainDescriptor::full_space_box(int n, Box bbox) {
  DomainDescriptor d;
  d.kind = DomainKind::FullSpaceBox;
  d.n = n;
  d.bbox = std::move(bbox);
  return d;
}

DomainDescriptor DomainDescriptor::open_unit_cube(int n) {
  DomainDescriptor d;
  d.kind = DomainKind::OpenUnitCube;
  d.n = n;
  d.bbox = Box::unit(n);
  return d;
}

DomainDescriptor DomainDescriptor::plane_complement(int n, int l) {
  return plane_complement(n, l, Box::cube(n, -1.0, 1.0));
}

DomainDescriptor DomainDescriptor::plane_complement(int n, int l, Box bbox) {
  if (l < 0 || l >= n) throw std::invalid_argument("plane dimension must satisfy 0 <= l < n");
  DomainDescriptor d;
  d.kind = DomainKind::PlaneComplement;
  d.n = n;
  d.plane_dim = l;
  d.bbox = std::move(bbox);
  return d;
}

DomainDescriptor DomainDescriptor::face_complement(int n, int lmax, Box bbox) {
  if (lmax < 0 || lmax >= n) throw std::invalid_argument("face dimension must satisfy 0 <= lmax < n");
  DomainDescriptor d;
  d.kind = DomainKind::FaceComplement;
  d.n = n;
  d.plane_dim = lmax;
  d.bbox = std::move(bbox);
  return d;
}

std::string DomainDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DomainKind::FullSpaceBox: os << "box"; break;
    case DomainKind::OpenUnitCube: os << "cube"; break;
    case DomainKind::PlaneComplement: os << "plane:" << plane_dim; break;
    case DomainKind::FaceComplement: os << "faces:" << plane_dim; break;
  }
  os << " n=" << n;
  return os.str();
}

// Tangent-axis subsets of size l, lexicographic.
static std::vector<std::vector<int>> axis_subsets(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == l) {
      out.push_back(pick);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// Closed faces of the unit cube of dimension d, in integer coordinates at a
// given scale: tangent axes span [0, scale], perpendicular axes are pinned.
struct IntFace {
  std::vector<int> tangent;         // sorted axis list
  std::vector<std::int64_t> side;   // per perpendicular axis (aligned with perp order)
  std::vector<int> perp;
};

std::vector<IntFace> unit_cube_faces(int n, int d) {
  std::vector<IntFace> out;
  for (const auto& tset : axis_subsets(n, d)) {
    std::vector<int> perp;
    for (int i = 0; i < n; ++i)
      if (std::find(tset.begin(), tset.end(), i) == tset.end()) perp.push_back(i);
    const int m = static_cast<int>(perp.size());
    for (std::int64_t mask = 0; mask < (std::int64_t(1) << m); ++mask) {
      IntFace f;
      f.tangent = tset;
      f.perp = perp;
      f.side.resize(m);
      for (int i = 0; i < m; ++i) f.side[i] = (mask >> i) & 1;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::int64_t sq(std::int64_t v) { return v * v; }

// Squared distance, at integer scale, from the box [lo, hi] to a face.
std::int64_t face_box_dist2(const IntFace& f, const std::vector<std::int64_t>& lo,
                            const std::vector<std::int64_t>& hi, std::int64_t scale) {
  std::int64_t d2 = 0;
  for (int axis : f.tangent) {
    std::int64_t gap = std::max<std::int64_t>({0, lo[axis] - scale, -hi[axis]});
    d2 += sq(gap);
  }
  for (size_t i = 0; i < f.perp.size(); ++i) {
    std::int64_t b = f.side[i] * scale;
    std::int64_t gap = std::max<std::int64_t>({0, lo[f.perp[i]] - b, b - hi[f.perp[i]]});
    d2 += sq(gap);
  }
  return d2;
}

struct ExactBoundary {
  DomainKind kind;
  int n;
  int plane_dim;
  std::int64_t scale;
  std::vector<IntFace> faces;  // for cube / face-complement kinds

  std::int64_t dist2(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) const {
    if (kind == DomainKind::PlaneComplement) {
      std::int64_t d2 = 0;
      for (int i = plane_dim; i < n; ++i) {
        std::int64_t gap = std::max<std::int64_t>({0, lo[i], -hi[i]});
        d2 += sq(gap);
      }
      return d2;
    }
    std::int64_t best = -1;
    for (const auto& f : faces) {
      std::int64_t d2 = face_box_dist2(f, lo, hi, scale);
      if (best < 0 || d2 < best) best = d2;
    }
    return best;
  }
};

ExactBoundary make_boundary(const DomainDescriptor& dom, std::int64_t scale) {
  ExactBoundary b;
  b.kind = dom.kind;
  b.n = dom.n;
  b.plane_dim = dom.plane_dim;
  b.scale = scale;
  if (dom.kind == DomainKind::OpenUnitCube)
    b.faces = unit_cube_faces(dom.n, dom.n - 1);
  else if (dom.kind == DomainKind::FaceComplement)
    b.faces = unit_cube_faces(dom.n, dom.plane_dim);
  return b;
}

}  // namespace

bool DomainDescriptor::contains(const std::vector<double>& x) const {
  switch (kind) {
    case DomainKind::FullSpaceBox:
      for (int i = 0; i < n; ++i)
        if (x[i] <= bbox.lo[i] || x[i] >= bbox.hi[i]) return false;
      return true;
    case DomainKind::OpenUnitCube:
      for (int i = 0; i < n; ++i)
        if (x[i] <= 0.0 || x[i] >= 1.0) return false;
      return true;
    case DomainKind::PlaneComplement: {
      if (!bbox.contains(x)) return false;
      for (int i = plane_dim; i < n; ++i)
        if (x[i] != 0.0) return true;
      return false;
    }
    case DomainKind::FaceComplement:
      return bbox.contains(x) && boundary_distance(x) > 0.0;
  }
  return false;
}

double DomainDescriptor::boundary_distance(const std::vector<double>& x) const {
  switch (kind) {
    case DomainKind::FullSpaceBox:
      return std::numeric_limits<double>::infinity();
    case DomainKind::OpenUnitCube: {
      double d = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) d = std::min({d, std::abs(x[i]), std::abs(1.0 - x[i])});
      return d;
    }
    case DomainKind::PlaneComplement: {
      double d2 = 0.0;
      for (int i = plane_dim; i < n; ++i) d2 += x[i] * x[i];
      return std::sqrt(d2);
    }
    case DomainKind::FaceComplement: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : unit_cube_faces(n, plane_dim)) {
        double d2 = 0.0;
        for (int axis : f.tangent) {
          double g = std::max({0.0, x[axis] - 1.0, -x[axis]});
          d2 += g * g;
        }
        for (size_t i = 0; i < f.perp.size(); ++i) {
          double g = x[f.perp[i]] - static_cast<double>(f.side[i]);
          d2 += g * g;
        }
        best = std::min(best, d2);
      }
      return std::sqrt(best);
    }
  }
  return 0.0;
}

Box WhitneyCube::q0() const {
  std::vector<double> a(dim()), b(dim());
  for (int i = 0; i < dim(); ++i) {
    a[i] = lo(i);
    b[i] = hi(i);
  }
  return Box(std::move(a), std::move(b));
}

Box WhitneyCube::q1() const {
  std::vector<double> a(dim()), b(dim());
  for (int i = 0; i < dim(); ++i) {
    a[i] = center(i) - side();
    b[i] = center(i) + side();
  }
  return Box(std::move(a), std::move(b));
}

int WhitneyDecomposition::max_cube_level() const {
  int m = 0;
  for (const auto& c : cubes) m = std::max(m, c.level);
  return m;
}

static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

WhitneyDecomposition whitney_decompose(const DomainDescriptor& domain, int max_level) {
  if (max_level < 1) throw std::invalid_argument("max_level must be >= 1");
  const int n = domain.n;

  WhitneyDecomposition dec;
  dec.domain = domain;
  dec.max_level = max_level;

  // Integer bbox corners keep every predicate exact.
  std::vector<std::int64_t> blo(n), bhi(n);
  for (int i = 0; i < n; ++i) {
    blo[i] = static_cast<std::int64_t>(std::llround(domain.bbox.lo[i]));
    bhi[i] = static_cast<std::int64_t>(std::llround(domain.bbox.hi[i]));
    if (blo[i] != domain.bbox.lo[i] || bhi[i] != domain.bbox.hi[i] || blo[i] >= bhi[i])
      throw std::invalid_argument("whitney bbox corners must be integers");
  }

  if (!domain.has_boundary()) {
    dec.degenerate = true;
    std::vector<std::int64_t> k(n);
    std::function<void(int)> emit = [&](int axis) {
      if (axis == n) {
        WhitneyCube c;
        c.level = 0;
        c.k = k;
        c.dist = std::numeric_limits<double>::infinity();
        c.degenerate = true;
        dec.cubes.push_back(std::move(c));
        return;
      }
      for (k[axis] = blo[axis]; k[axis] < bhi[axis]; ++k[axis]) emit(axis + 1);
    };
    emit(0);
    return dec;
  }

  const int S = max_level + 1;  // scale: coordinate unit 2^{-S}, centers are integers
  const std::int64_t scale = std::int64_t(1) << S;
  ExactBoundary boundary = make_boundary(domain, scale);

  std::vector<std::set<std::vector<std::int64_t>>> selected(max_level + 1);
  std::vector<double> xc(n);
  std::vector<std::int64_t> clo(n), chi(n), anc(n);

  for (int nu = 0; nu <= max_level; ++nu) {
    const std::int64_t side = std::int64_t(1) << (S - nu);
    const std::int64_t diam2 = std::int64_t(n) * side * side;
    std::vector<std::int64_t> k(n), kstart(n), kstop(n);
    for (int i = 0; i < n; ++i) {
      kstart[i] = blo[i] << nu;
      kstop[i] = bhi[i] << nu;
    }
    std::function<void(int)> visit = [&](int axis) {
      if (axis < n) {
        for (k[axis] = kstart[axis]; k[axis] < kstop[axis]; ++k[axis]) visit(axis + 1);
        return;
      }
      for (int i = 0; i < n; ++i) {
        clo[i] = k[i] * side;
        chi[i] = clo[i] + side;
        xc[i] = std::ldexp(static_cast<double>(clo[i] + chi[i]), -(S + 1));
      }
      if (!domain.contains(xc)) return;
      for (int anu = 0; anu < nu; ++anu) {
        if (selected[anu].empty()) continue;
        for (int i = 0; i < n; ++i) anc[i] = floor_div(k[i], std::int64_t(1) << (nu - anu));
        if (selected[anu].count(anc)) return;
      }
      const std::int64_t d2 = boundary.dist2(clo, chi);
      if (diam2 <= d2 && d2 <= 16 * diam2) {
        WhitneyCube c;
        c.level = nu;
        c.k = k;
        c.dist = std::sqrt(static_cast<double>(d2)) / static_cast<double>(scale);
        for (int i = 0; i < n; ++i)
          if (clo[i] == blo[i] * scale || chi[i] == bhi[i] * scale) c.rim = true;
        selected[nu].insert(k);
        dec.cubes.push_back(std::move(c));
      } else if (nu == max_level && d2 < diam2) {
        ++dec.truncated_cells;
      }
    };
    visit(0);
  }
  return dec;
}

static void measure_separation(PointLattice& lat) {
  double c1 = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= lat.Jmax; ++j) {
    const auto& pts = lat.levels[j];
    if (pts.size() < 2) continue;
    double best2 = std::numeric_limits<double>::infinity();
    if (pts.size() <= 4096) {
      for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b) {
          double d2 = 0.0;
          for (int i = 0; i < lat.n; ++i) {
            double d = static_cast<double>(pts[a].num[i] - pts[b].num[i]);
            d2 += d * d;
          }
          best2 = std::min(best2, d2);
        }
    } else {
      std::set<std::vector<std::int64_t>> index;
      for (const auto& p : pts) index.insert(p.num);
      std::vector<std::int64_t> probe(lat.n);
      std::vector<std::int64_t> offsets = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
      for (const auto& p : pts) {
        std::function<void(int, std::int64_t)> rec = [&](int axis, std::int64_t acc2) {
          if (acc2 >= best2) return;
          if (axis == lat.n) {
            if (acc2 > 0 && index.count(probe)) best2 = std::min(best2, double(acc2));
            return;
          }
          for (auto off : offsets) {
            probe[axis] = p.num[axis] + off;
            rec(axis + 1, acc2 + off * off);
          }
        };
        rec(0, 0);
      }
    }
    if (std::isfinite(best2))
      c1 = std::min(c1, std::sqrt(best2) / 2.0);  // num scale is 2^{-(j+1)}
  }
  lat.c1 = std::isfinite(c1) ? c1 : 1.0;
}

PointLattice interior_lattice(const WhitneyDecomposition& dec, int Jmax) {
  if (Jmax < dec.max_cube_level())
    throw std::invalid_argument("Jmax must cover the finest Whitney level");
  const int n = dec.domain.n;
  PointLattice lat;
  lat.kind = LatticeKind::Interior;
  lat.n = n;
  lat.Jmax = Jmax;
  lat.levels.resize(Jmax + 1);

  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(dec.cubes.size()); ++ci) {
    const auto& cube = dec.cubes[ci];
    for (int j = cube.level; j <= Jmax; ++j) {
      const std::int64_t per_axis = std::int64_t(1) << (j - cube.level);
      std::vector<std::int64_t> t(n, 0);
      std::function<void(int)> emit = [&](int axis) {
        if (axis == n) {
          LatticePoint p;
          p.level = j;
          p.cube = ci;
          p.num.resize(n);
          p.x.resize(n);
          for (int i = 0; i < n; ++i) {
            p.num[i] = 2 * (cube.k[i] * per_axis + t[i]) + 1;
            p.x[i] = std::ldexp(static_cast<double>(p.num[i]), -(j + 1));
          }
          lat.levels[j].push_back(std::move(p));
          return;
        }
        for (t[axis] = 0; t[axis] < per_axis; ++t[axis]) emit(axis + 1);
      };
      emit(0);
    }
  }

  measure_separation(lat);
  lat.c2 = 0.5;
  if (dec.domain.has_boundary()) {
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= Jmax; ++j)
      for (const auto& p : lat.levels[j])
        margin = std::min(margin, dec.domain.boundary_distance(p.x) * std::ldexp(1.0, j));
    lat.c3 = std::isfinite(margin) ? margin - lat.c2 : 0.5;
    lat.chi_radius = lat.c3 > 0.0 ? lat.c3 : 0.5;
  } else {
    lat.c3 = 0.5;
    lat.chi_radius = 0.5;
  }
  return lat;
}

PointLattice closure_lattice(const DomainDescriptor& domain, int Jmax) {
  if (domain.kind != DomainKind::OpenUnitCube)
    throw std::invalid_argument("closure lattice is only defined for the open unit cube");
  const int n = domain.n;

  WhitneyDecomposition dec = whitney_decompose(domain, std::max(1, Jmax));
  PointLattice lat = interior_lattice(dec, Jmax);
  lat.kind = LatticeKind::Closure;
  lat.chi_radius = lat.c2;

  for (int j = 0; j <= Jmax; ++j) {
    const std::int64_t cells = std::int64_t(1) << j;
    for (int l = 0; l < n; ++l) {
      for (const auto& face : unit_cube_faces(n, l)) {
        std::vector<std::int64_t> t(l, 1);
        std::function<void(int)> emit = [&](int axis) {
          if (axis == l) {
            LatticePoint p;
            p.level = j;
            p.on_boundary = true;
            p.num.assign(n, 0);
            p.x.assign(n, 0.0);
            for (int i = 0; i < l; ++i) {
              p.num[face.tangent[i]] = 2 * t[i];
              p.x[face.tangent[i]] = std::ldexp(static_cast<double>(t[i]), -j);
            }
            for (size_t i = 0; i < face.perp.size(); ++i) {
              p.num[face.perp[i]] = face.side[i] * (std::int64_t(1) << (j + 1));
              p.x[face.perp[i]] = static_cast<double>(face.side[i]);
            }
            lat.levels[j].push_back(std::move(p));
            return;
          }
          for (t[axis] = 1; t[axis] < cells; ++t[axis]) emit(axis + 1);
        };
        if (l == 0 || cells > 1) emit(0);
      }
    }
  }
  measure_separation(lat);
  return lat;
}

std::int64_t PointLattice::total_points() const {
  std::int64_t total = 0;
  for (const auto& lv : levels) total += static_cast<std::int64_t>(lv.size());
  return total;
}

}  // namespace cellwave
