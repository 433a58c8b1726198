#pragma once

// Independent reference computations used only by the tests. They share the
// exact scalar type and the Isometry algebra with the library but none of the
// enumeration, character-sum or conjugacy machinery.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>
#include <vector>

#include "platycosm/euclid_group.hpp"

namespace oracle {

using namespace platycosm;

struct Freq {
  long a, b, c2;  // (a, b, c2 / 2)
  auto operator<=>(const Freq&) const = default;
};

// Every (a, b, c2) with 4a^2 + 4b^2 + c2^2 = key, by scanning a box.
inline std::vector<Freq> shell(long key) {
  std::vector<Freq> out;
  const long r = static_cast<long>(std::sqrt(static_cast<double>(key))) + 1;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long c2 = -2 * r; c2 <= 2 * r; ++c2)
        if (4 * a * a + 4 * b * b + c2 * c2 == key) out.push_back({a, b, c2});
  std::sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

// Rank of a complex matrix (columns as vectors) by Gaussian elimination.
inline std::size_t numerical_rank(std::vector<std::vector<std::complex<double>>> cols) {
  if (cols.empty()) return 0;
  const std::size_t n = cols[0].size();
  std::size_t rank = 0;
  for (std::size_t row = 0; row < n && rank < cols.size(); ++row) {
    std::size_t best = rank;
    for (std::size_t c = rank; c < cols.size(); ++c)
      if (std::abs(cols[c][row]) > std::abs(cols[best][row])) best = c;
    if (std::abs(cols[best][row]) < 1e-9) continue;
    std::swap(cols[rank], cols[best]);
    for (std::size_t c = rank + 1; c < cols.size(); ++c) {
      const auto f = cols[c][row] / cols[rank][row];
      for (std::size_t r = 0; r < n; ++r) cols[c][r] -= f * cols[rank][r];
    }
    ++rank;
  }
  return rank;
}

// Dimension of the span of the symmetrized modes sum_g phi_v o g, v over a
// set of frequencies closed under the holonomy. phi_v o (B, b) equals
// e^{2 pi i v.b} phi_{B^T v}.
inline std::size_t symmetrized_dimension(const PlatycosmPresentation& p, const std::vector<Freq>& modes) {
  std::map<Freq, std::size_t> index;
  for (std::size_t i = 0; i < modes.size(); ++i) index[modes[i]] = i;
  std::vector<std::vector<std::complex<double>>> cols;
  for (const auto& v : modes) {
    std::vector<std::complex<double>> col(modes.size());
    const double vx = static_cast<double>(v.a), vy = static_cast<double>(v.b), vz = static_cast<double>(v.c2) / 2;
    for (const auto& g : p.reps) {
      double w[3];
      for (int j = 0; j < 3; ++j)
        w[j] = to_double(g.rot[0][j]) * vx + to_double(g.rot[1][j]) * vy + to_double(g.rot[2][j]) * vz;
      const Freq image{std::lround(w[0]), std::lround(w[1]), std::lround(2 * w[2])};
      const double phase =
          2 * std::numbers::pi * (vx * to_double(g.trans[0]) + vy * to_double(g.trans[1]) + vz * to_double(g.trans[2]));
      col.at(index.at(image)) += std::polar(1.0, phase);
    }
    cols.push_back(col);
  }
  return numerical_rank(cols);
}

inline std::size_t multiplicity(const PlatycosmPresentation& p, long key) {
  return symmetrized_dimension(p, shell(key));
}

// Lattice vectors with |v| <= s, scanning a box (floating point, for
// non-boundary radii).
inline long lattice_count(const Lattice& lattice, double s) {
  const long r = static_cast<long>(std::ceil(s)) + 3;
  long count = 0;
  for (long i = -r; i <= r; ++i)
    for (long j = -r; j <= r; ++j)
      for (long k = -r; k <= r; ++k) {
        const Vec3 v = lattice.from_coordinates(IVec3{i, j, k});
        const double n2 = to_double(dot(v, v));
        if (n2 <= s * s + 1e-12) ++count;
      }
  return count;
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int depth) {
        const double mid = (lo + hi) / 2;
        const double lm = (lo + mid) / 2, rm = (mid + hi) / 2;
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps) return left + right + (left + right - whole) / 15;
        return rec(lo, mid, flo, flm, fmid, left, eps / 2, depth - 1) +
               rec(mid, hi, fmid, frm, fhi, right, eps / 2, depth - 1);
      };
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 50);
}

// (4 pi t)^{-3/2} sum_{m in Z^3} e^{-|m|^2 / 4t}, by direct summation.
inline double cubic_image_sum(double t) {
  const long r = static_cast<long>(std::ceil(std::sqrt(4 * t * 60))) + 1;
  std::vector<double> terms;
  for (long i = -r; i <= r; ++i)
    for (long j = -r; j <= r; ++j)
      for (long k = -r; k <= r; ++k) terms.push_back(std::exp(-static_cast<double>(i * i + j * j + k * k) / (4 * t)));
  std::sort(terms.begin(), terms.end());
  return std::pow(4 * std::numbers::pi * t, -1.5) * std::accumulate(terms.begin(), terms.end(), 0.0);
}

// sum_{m in Z^3} e^{-4 pi^2 |m|^2 t}.
inline double cubic_frequency_sum(double t) {
  double one = 0;
  for (long n = 40; n >= 1; --n) one += 2 * std::exp(-4 * std::numbers::pi * std::numbers::pi * double(n * n) * t);
  one += 1;
  return one * one * one;
}

// ---------------------------------------------------------------------------
// Twisted conjugacy classes by brute force inside a box of lattice shifts.

struct Signature {
  Rational length;
  Rational twist_over_pi;
  long imprimitivity;
  bool operator<(const Signature& o) const {
    return std::tie(length, twist_over_pi, imprimitivity) < std::tie(o.length, o.twist_over_pi, o.imprimitivity);
  }
  bool operator==(const Signature&) const = default;
};

inline Rational trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

inline Rational twist_of(const Mat3& rot) {
  const Rational c = (trace(rot) - 1) / 2;  // cos theta
  if (c == Rational(1, 2)) return Rational(1, 3);
  if (c == 0) return Rational(1, 2);
  if (c == Rational(-1, 2)) return Rational(2, 3);
  if (c == -1) return Rational(1);
  throw std::logic_error("unexpected rotation");
}

// Fixed direction of a rotation among small integer vectors.
inline Vec3 fixed_direction(const Mat3& rot) {
  for (long i = -1; i <= 1; ++i)
    for (long j = -1; j <= 1; ++j)
      for (long k = 0; k <= 1; ++k) {
        const Vec3 u{Rational(i), Rational(j), Rational(k)};
        if (is_zero(u)) continue;
        if (rot * u == u) return u;
      }
  throw std::logic_error("no small fixed direction");
}

inline Rational length_squared(const Isometry& g) {
  const Vec3 u = fixed_direction(g.rot);
  const Rational d = dot(u, g.trans);
  return d * d / dot(u, u);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Less {
  bool operator()(const Isometry& a, const Isometry& b) const {
    return std::tie(a.rot, a.trans) < std::tie(b.rot, b.trans);
  }
};

inline long brute_imprimitivity(const PlatycosmPresentation& p, const Isometry& g, long box) {
  long best = 1;
  for (const auto& rep : p.reps) {
    if (rep.is_translation()) continue;
    for (long i = -box; i <= box; ++i)
      for (long j = -box; j <= box; ++j)
        for (long k = -box; k <= box; ++k) {
          const Isometry d = compose(Isometry::translation(p.lattice.from_coordinates(IVec3{i, j, k})), rep);
          Isometry pw = d;
          for (long n = 2; n <= 12; ++n) {
            pw = compose(d, pw);
            if (pw == g) best = std::max(best, n);
          }
        }
  }
  return best;
}

// Unoriented classes of twisted elements of length <= max_length, counted by
// signature. `box` bounds the lattice coordinates scanned.
inline std::map<Signature, long> twisted_census(const PlatycosmPresentation& p, const Rational& max_length,
                                                long box = 3) {
  std::map<Isometry, std::size_t, Less> index;
  std::vector<Isometry> elements;
  const long axial_box = 2 * static_cast<long>(std::ceil(to_double(max_length))) + 2;
  for (const auto& rep : p.reps) {
    if (rep.is_translation()) continue;
    for (long i = -axial_box; i <= axial_box; ++i)
      for (long j = -axial_box; j <= axial_box; ++j)
        for (long k = -axial_box; k <= axial_box; ++k) {
          const Isometry g = compose(Isometry::translation(p.lattice.from_coordinates(IVec3{i, j, k})), rep);
          // Perpendicular part bounded by the box, axial part by the length.
          const Vec3 u = fixed_direction(g.rot);
          const Vec3 perp = g.trans - (dot(u, g.trans) / dot(u, u)) * u;
          bool inside = true;
          for (int c = 0; c < 3; ++c)
            if (perp[c] > box || perp[c] < -box) inside = false;
          if (!inside || length_squared(g) > max_length * max_length) continue;
          index.emplace(g, elements.size());
          elements.push_back(g);
        }
  }
  UnionFind uf(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const Isometry& g = elements[e];
    if (auto it = index.find(inverse(g)); it != index.end()) uf.unite(e, it->second);
    for (const auto& rep : p.reps)
      for (long i = -1; i <= 1; ++i)
        for (long j = -1; j <= 1; ++j)
          for (long k = -1; k <= 1; ++k) {
            const Isometry h = compose(Isometry::translation(p.lattice.from_coordinates(IVec3{i, j, k})), rep);
            const Isometry c = compose(compose(h, g), inverse(h));
            if (auto it = index.find(c); it != index.end()) uf.unite(e, it->second);
          }
  }
  std::map<std::size_t, std::size_t> representative;
  for (std::size_t e = 0; e < elements.size(); ++e) representative.emplace(uf.find(e), e);
  std::map<Signature, long> census;
  for (const auto& [root, e] : representative) {
    const Isometry& g = elements[e];
    const Rational l2 = length_squared(g);
    Rational l(static_cast<std::int64_t>(std::llround(std::sqrt(to_double(l2)) * 720)), 720);
    if (l * l != l2) throw std::logic_error("irrational length in census");
    ++census[{l, twist_of(g.rot), brute_imprimitivity(p, g, 3)}];
  }
  return census;
}

}  // namespace oracle
