#include "cellwave/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cellwave {

void CoefficientField::set(int j, std::int64_t r, double value) { entries_[{j, r}] = value; }

void CoefficientField::add(int j, std::int64_t r, double value) { entries_[{j, r}] += value; }

double CoefficientField::get(int j, std::int64_t r) const {
  auto it = entries_.find({j, r});
  return it == entries_.end() ? 0.0 : it->second;
}

int CoefficientField::finest_level() const {
  int finest = -1;
  for (const auto& [key, v] : entries_) {
    (void)v;
    finest = std::max(finest, key.first);
  }
  return finest;
}

bool CoefficientField::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return std::isfinite(kv.second); });
}

CoefficientField& CoefficientField::operator*=(double a) {
  for (auto& [k, v] : entries_) {
    (void)k;
    v *= a;
  }
  return *this;
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& o) {
  for (const auto& [k, v] : o.entries_) entries_[k] += v;
  return *this;
}

SeqGeometry SeqGeometry::from_lattice(const PointLattice& lat, Box hull) {
  SeqGeometry g;
  g.chi = Chi::BallIndicator;
  g.n = lat.n;
  g.radius_c = lat.chi_radius;
  g.hull = std::move(hull);
  g.centers.resize(lat.levels.size());
  for (size_t j = 0; j < lat.levels.size(); ++j) {
    g.centers[j].reserve(lat.levels[j].size());
    for (const auto& p : lat.levels[j]) g.centers[j].push_back(p.x);
  }
  return g;
}

SeqGeometry SeqGeometry::from_cubes(int n,
                                    const std::vector<std::vector<std::vector<std::int64_t>>>& m_by_level,
                                    Box hull) {
  SeqGeometry g;
  g.chi = Chi::CubeLpNormalized;
  g.n = n;
  g.radius_c = 0.5;
  g.hull = std::move(hull);
  g.centers.resize(m_by_level.size());
  for (size_t j = 0; j < m_by_level.size(); ++j) {
    g.centers[j].reserve(m_by_level[j].size());
    for (const auto& m : m_by_level[j]) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = std::ldexp(static_cast<double>(m[i]), -static_cast<int>(j));
      g.centers[j].push_back(std::move(x));
    }
  }
  return g;
}

double b_norm(const CoefficientField& lambda, double p, double q, std::optional<double> s) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("b_norm requires positive p, q");
  // Per-level inner l_p norms in key order (entries are sorted by level).
  std::map<int, double> inner;  // level -> sum |.|^p (or sup for p = inf)
  const bool pinf = std::isinf(p);
  for (const auto& [key, v] : lambda.entries()) {
    double& acc = inner[key.first];
    if (pinf)
      acc = std::max(acc, std::abs(v));
    else
      acc += std::pow(std::abs(v), p);
  }
  const bool qinf = std::isinf(q);
  double outer = 0.0;
  for (const auto& [j, acc] : inner) {
    double level_lp = pinf ? acc : std::pow(acc, 1.0 / p);
    double w = s ? std::pow(2.0, double(j) * (*s)) : 1.0;
    double term = w * level_lp;
    if (qinf)
      outer = std::max(outer, term);
    else
      outer += std::pow(term, q);
  }
  return qinf ? outer : std::pow(outer, 1.0 / q);
}

double f_norm(const CoefficientField& lambda, const SeqGeometry& geom, double p, double q,
              std::optional<double> s, int Jquad) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("f_norm requires positive p, q");
  const int finest = lambda.finest_level();
  if (finest < 0) return 0.0;
  if (Jquad < 0) Jquad = finest + 2;
  if (Jquad < finest + 2) throw std::invalid_argument("resolution below finest level");
  const bool qinf = std::isinf(q);

  GridFunction acc(geom.hull, Jquad);
  const int n = geom.n;
  const double h = acc.h();
  std::vector<std::int64_t> klo(n), khi(n), idx(n);

  for (const auto& [key, v] : lambda.entries()) {
    const auto [j, r] = key;
    if (j >= static_cast<int>(geom.centers.size()) ||
        r >= static_cast<std::int64_t>(geom.centers[j].size()))
      throw std::invalid_argument("coefficient key outside attached geometry");
    if (v == 0.0) continue;
    const auto& c = geom.centers[j][r];
    const double radius = geom.radius_c * std::ldexp(1.0, -j);
    double amp = std::abs(v);
    if (geom.chi == SeqGeometry::Chi::CubeLpNormalized && std::isfinite(p))
      amp *= std::pow(2.0, double(j) * n / p);
    if (s) amp *= std::pow(2.0, double(j) * (*s));
    const double term = qinf ? amp : std::pow(amp, q);

    bool empty = false;
    for (int i = 0; i < n; ++i) {
      klo[i] = static_cast<std::int64_t>(std::floor((c[i] - radius - geom.hull.lo[i]) / h));
      khi[i] = static_cast<std::int64_t>(std::ceil((c[i] + radius - geom.hull.lo[i]) / h));
      klo[i] = std::max<std::int64_t>(klo[i], 0);
      khi[i] = std::min<std::int64_t>(khi[i], acc.dims()[i]);
      if (klo[i] >= khi[i]) empty = true;
    }
    if (empty) continue;

    std::function<void(int)> rast = [&](int axis) {
      if (axis < n) {
        for (idx[axis] = klo[axis]; idx[axis] < khi[axis]; ++idx[axis]) rast(axis + 1);
        return;
      }
      if (geom.chi == SeqGeometry::Chi::BallIndicator) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
          double d = acc.midpoint(i, idx[i]) - c[i];
          d2 += d * d;
        }
        if (d2 > radius * radius) return;
      } else {
        for (int i = 0; i < n; ++i)
          if (std::abs(acc.midpoint(i, idx[i]) - c[i]) > radius) return;
      }
      auto flat = acc.flat_index(idx);
      if (qinf)
        acc[flat] = std::max(acc[flat], term);
      else
        acc[flat] += term;
    };
    rast(0);
  }

  if (!qinf)
    for (auto& v : acc.values()) v = std::pow(v, 1.0 / q);
  return integrate_lp(acc, p);
}

}  // namespace cellwave
