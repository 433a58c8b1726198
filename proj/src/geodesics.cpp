#include "platycosm/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace platycosm {

namespace {

Rational trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

// Nonnegative generator of the additive group spanned by the values.
Rational rational_gcd(const Vec3& values) {
  std::int64_t den = 1;
  for (const auto& v : values) den = std::lcm(den, v.denominator());
  std::int64_t g = 0;
  for (const auto& v : values) g = std::gcd(g, (v * Rational(den)).numerator());
  return Rational(std::abs(g), den);
}

// Disjoint-set forest over dense indices.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t root(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Keeps the smaller index as root so roots are the minimal members.
  void join(std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

ScrewAxis screw_axis(const Mat3& rot) {
  if (rot == identity_matrix()) throw UnsupportedError("identity has no screw axis");
  if (determinant(rot) != 1) throw UnsupportedError("orientation-reversing holonomy is not supported");
  const auto fixed = kernel(rot - identity_matrix());
  if (fixed.size() != 1) throw UnsupportedError("rotation does not fix exactly a line");
  const Rational cos_theta = (trace(rot) - 1) / 2;
  Rational twist;
  if (cos_theta == Rational(-1)) twist = 1;
  else if (cos_theta == Rational(-1, 2)) twist = Rational(2, 3);
  else if (cos_theta == 0) twist = Rational(1, 2);
  else if (cos_theta == Rational(1, 2)) twist = Rational(1, 3);
  else throw UnsupportedError("non-crystallographic rotation angle");
  return {fixed.front(), dot(fixed.front(), fixed.front()), twist};
}

Rational axial_length_squared(const Isometry& g) {
  const ScrewAxis s = screw_axis(g.rot);
  const Rational along = dot(s.axis, g.trans);
  return along * along / s.axis_norm2;
}

Rational axial_length(const Isometry& g) {
  const auto l = exact_sqrt(axial_length_squared(g));
  if (!l) throw UnsupportedError("screw translation length is irrational");
  return *l;
}

Rational twist_factor(const Rational& twist_over_pi) {
  if (twist_over_pi == 1) return 1;
  if (twist_over_pi == Rational(1, 2)) return 2;
  if (twist_over_pi == Rational(2, 3)) return Rational(4, 3);
  if (twist_over_pi == Rational(1, 3)) return 4;
  throw UnsupportedError("twist " + to_string(twist_over_pi) + " pi has no rational 1/sin^2(theta/2)");
}

Rational weight(const GeodesicClass& c) {
  return Rational(c.count) * twist_factor(c.twist_over_pi) / Rational(c.imprimitivity);
}

std::int64_t imprimitivity(const Isometry& g, const PlatycosmPresentation& p) {
  const Rational length2 = axial_length_squared(g);
  const Mat3 basis_t = transpose(p.lattice.basis());
  std::int64_t best = 1;
  for (const auto& rep : p.reps) {
    if (rep.is_translation() || determinant(rep.rot) != 1) continue;
    const ScrewAxis s = screw_axis(rep.rot);
    // Shortest screw in this coset bounds how many times it can divide g.
    Vec3 per_coord{};
    for (int i = 0; i < 3; ++i) per_coord[i] = dot(s.axis, p.lattice.vector(i));
    const Rational step = rational_gcd(per_coord);
    const Rational offset = dot(s.axis, rep.trans);
    Rational r = offset - step * Rational(floor(offset / step));
    const Rational dist = std::min(r, step - r);
    if (dist == 0) continue;  // would have a fixed point; excluded by validation
    const Rational min_length2 = dist * dist / s.axis_norm2;
    std::int64_t kmax = static_cast<std::int64_t>(std::floor(std::sqrt(to_double(length2 / min_length2)))) + 1;
    while (Rational(kmax * kmax) * min_length2 > length2) --kmax;

    Mat3 c_power = rep.rot;  // C^k
    Mat3 partial = identity_matrix() + rep.rot;  // sum_{r<k} C^r
    for (std::int64_t k = 2; k <= kmax; ++k) {
      c_power = c_power * rep.rot;
      const Mat3 sum = partial;
      partial = partial + c_power;
      if (c_power != g.rot || k <= best) continue;
      const Mat3 system = sum * basis_t;
      if (determinant(system) == 0) continue;
      const Vec3 n = inverse(system) * (g.trans - sum * rep.trans);
      if (!is_integral(n)) continue;
      const Isometry root{rep.rot, rep.trans + basis_t * n};
      if (power(root, k) != g) throw std::logic_error("imprimitivity root check failed");
      best = k;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

GeodesicCatalog::GeodesicCatalog(const PlatycosmPresentation& p, const Rational& max_length) : p_(p) {
  if (max_length <= 0) throw std::invalid_argument("maximum length must be positive");
  const Rational max2 = max_length * max_length;
  const Lattice& lat = p_.lattice;

  axes_.resize(p_.reps.size());
  for (std::size_t j = 0; j < p_.reps.size(); ++j) {
    const Isometry& rep = p_.reps[j];
    if (rep.is_translation()) continue;
    RepAxis ax;
    ax.screw = screw_axis(rep.rot);
    const IMat3 m = to_integer(lat.in_coordinates(identity_matrix() - rep.rot));
    std::vector<IVec3> columns;
    for (int i = 0; i < 3; ++i) columns.push_back({m[0][i], m[1][i], m[2][i]});
    ax.conjugation = hermite_basis(columns);
    if (ax.conjugation.rank() != 2) throw std::logic_error("screw conjugation lattice is not of rank 2");
    for (int c = 0; c < 3; ++c)
      if (std::find(ax.conjugation.pivots.begin(), ax.conjugation.pivots.end(), c) == ax.conjugation.pivots.end())
        ax.free_coordinate = c;
    for (int i = 0; i < 3; ++i) ax.axial_per_coordinate[i] = dot(ax.screw.axis, lat.vector(i));
    ax.axial_offset = dot(ax.screw.axis, rep.trans);
    if (ax.axial_per_coordinate[ax.free_coordinate] == 0)
      throw std::logic_error("axial position does not depend on the free coordinate");
    axes_[j] = std::move(ax);
  }

  // Enumerate canonical residues (one per lattice-conjugacy class).
  std::vector<Key> keys;
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    if (!axes_[j]) continue;
    const RepAxis& ax = *axes_[j];
    const auto& h = ax.conjugation;
    const std::int64_t p0 = h.rows[0][h.pivots[0]];
    const std::int64_t p1 = h.rows[1][h.pivots[1]];
    const int f = ax.free_coordinate;
    const Rational slope = ax.axial_per_coordinate[f];
    const double reach = to_double(max_length) * std::sqrt(to_double(ax.screw.axis_norm2));
    for (std::int64_t x0 = 0; x0 < p0; ++x0)
      for (std::int64_t x1 = 0; x1 < p1; ++x1) {
        IVec3 n{};
        n[h.pivots[0]] = x0;
        n[h.pivots[1]] = x1;
        const Rational rest = ax.axial_offset + ax.axial_per_coordinate[h.pivots[0]] * Rational(x0) +
                              ax.axial_per_coordinate[h.pivots[1]] * Rational(x1);
        const double a = (-reach - to_double(rest)) / to_double(slope);
        const double b = (reach - to_double(rest)) / to_double(slope);
        const auto lo = static_cast<std::int64_t>(std::floor(std::min(a, b))) - 1;
        const auto hi = static_cast<std::int64_t>(std::ceil(std::max(a, b))) + 1;
        for (std::int64_t t = lo; t <= hi; ++t) {
          const Rational along = rest + slope * Rational(t);
          if (along == 0) throw std::logic_error("twisted element with a fixed point");
          if (along * along > max2 * ax.screw.axis_norm2) continue;
          n[f] = t;
          if (h.reduce(n) != n) throw std::logic_error("non-canonical conjugation residue");
          keys.emplace_back(j, n);
        }
      }
  }
  std::sort(keys.begin(), keys.end());
  std::map<Key, std::size_t> position;
  for (std::size_t i = 0; i < keys.size(); ++i) position.emplace(keys[i], i);

  // Conjugation by coset representatives (lattice conjugation is already
  // quotiented out), then inversion for unoriented classes.
  UnionFind oriented(keys.size());
  UnionFind unoriented(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Isometry g = element(keys[i]);
    for (const auto& h : p_.reps) {
      const auto k = key_of(compose(h, compose(g, inverse(h))));
      if (!k || !position.contains(*k)) throw std::logic_error("conjugate escaped the enumeration");
      oriented.join(i, position.at(*k));
      unoriented.join(i, position.at(*k));
    }
    const auto inv = key_of(inverse(g));
    if (!inv || !position.contains(*inv)) throw std::logic_error("inverse escaped the enumeration");
    unoriented.join(i, position.at(*inv));
  }

  std::set<std::size_t> oriented_roots;
  for (std::size_t i = 0; i < keys.size(); ++i) oriented_roots.insert(oriented.root(i));
  oriented_classes_ = oriented_roots.size();

  std::map<std::size_t, std::size_t> root_to_geodesic;
  std::vector<std::size_t> geodesic_of(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::size_t r = unoriented.root(i);
    auto [it, inserted] = root_to_geodesic.emplace(r, geodesics_.size());
    if (inserted) {
      const Isometry witness = element(keys[r]);
      geodesics_.push_back({axial_length(witness), axes_[keys[r].first]->screw.twist_over_pi,
                            imprimitivity(witness, p_), witness});
    }
    geodesic_of[i] = it->second;
  }
  if (oriented_classes_ != 2 * geodesics_.size())
    throw std::logic_error("a twisted class is conjugate to its own inverse");

  // Stable order by signature; keys were sorted so ties keep key order.
  std::vector<std::size_t> order(geodesics_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = geodesics_[a];
    const auto& y = geodesics_[b];
    if (x.length != y.length) return x.length < y.length;
    if (x.twist_over_pi != y.twist_over_pi) return x.twist_over_pi < y.twist_over_pi;
    return x.imprimitivity < y.imprimitivity;
  });
  std::vector<std::size_t> new_index(order.size());
  std::vector<TwistedGeodesic> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    sorted.push_back(geodesics_[order[i]]);
  }
  geodesics_ = std::move(sorted);
  for (std::size_t i = 0; i < keys.size(); ++i) index_.emplace(keys[i], new_index[geodesic_of[i]]);
}

std::optional<GeodesicCatalog::Key> GeodesicCatalog::key_of(const Isometry& g) const {
  const int j = find_coset(p_, g);
  if (j < 0 || !axes_[static_cast<std::size_t>(j)]) return std::nullopt;
  const IVec3 n = to_integer(p_.lattice.coordinates(g.trans - p_.reps[static_cast<std::size_t>(j)].trans));
  return Key{static_cast<std::size_t>(j), axes_[static_cast<std::size_t>(j)]->conjugation.reduce(n)};
}

Isometry GeodesicCatalog::element(const Key& key) const {
  const Isometry& rep = p_.reps[key.first];
  return {rep.rot, rep.trans + p_.lattice.from_coordinates(key.second)};
}

std::optional<std::size_t> GeodesicCatalog::find(const Isometry& g) const {
  const auto k = key_of(g);
  if (!k) return std::nullopt;
  auto it = index_.find(*k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<GeodesicClass> GeodesicCatalog::classes() const {
  std::vector<GeodesicClass> out;
  for (const auto& g : geodesics_) {
    if (!out.empty() && out.back().length == g.length && out.back().twist_over_pi == g.twist_over_pi &&
        out.back().imprimitivity == g.imprimitivity) {
      ++out.back().count;
      continue;
    }
    out.push_back({g.length, g.twist_over_pi, g.imprimitivity, 1, g.witness});
  }
  return out;
}

std::vector<GeodesicClass> twisted_classes(const PlatycosmPresentation& p, const Rational& max_length) {
  return GeodesicCatalog(p, max_length).classes();
}

std::vector<TwistedProgression> twisted_progressions(const PlatycosmPresentation& p) {
  std::vector<TwistedProgression> out;
  for (std::size_t j = 0; j < p.reps.size(); ++j) {
    const Isometry& rep = p.reps[j];
    if (rep.is_translation()) continue;
    const ScrewAxis s = screw_axis(rep.rot);
    const IMat3 m = to_integer(p.lattice.in_coordinates(identity_matrix() - rep.rot));
    std::vector<IVec3> columns;
    for (int i = 0; i < 3; ++i) columns.push_back({m[0][i], m[1][i], m[2][i]});
    const HermiteBasis h = hermite_basis(columns);
    int f = 0;
    for (int c = 0; c < 3; ++c)
      if (std::find(h.pivots.begin(), h.pivots.end(), c) == h.pivots.end()) f = c;
    const Rational slope = dot(s.axis, p.lattice.vector(f));
    TwistedProgression prog;
    prog.rep = j;
    prog.residues_per_step = h.rows[0][h.pivots[0]] * h.rows[1][h.pivots[1]];
    prog.step = std::abs(to_double(slope)) / std::sqrt(to_double(s.axis_norm2));
    prog.twist_factor = twist_factor(s.twist_over_pi);
    out.push_back(prog);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

BalanceRow balance_row(const std::vector<GeodesicClass>& classes, const Rational& length) {
  BalanceRow row;
  row.total = 0;
  for (const auto& c : classes) {
    if (c.length != length) continue;
    const Rational w = weight(c);
    row.entries.push_back({c.count, c.twist_over_pi / 2, c.imprimitivity, w});
    row.total += w;
  }
  std::sort(row.entries.begin(), row.entries.end(), [](const BalanceEntry& a, const BalanceEntry& b) {
    if (a.imprimitivity != b.imprimitivity) return a.imprimitivity > b.imprimitivity;
    return a.twist_turns < b.twist_turns;
  });
  return row;
}

}  // namespace

std::vector<BalancePair> balance_table(const PlatycosmPresentation& left, const PlatycosmPresentation& right,
                                       const Rational& max_length) {
  const auto lc = twisted_classes(left, max_length);
  const auto rc = twisted_classes(right, max_length);
  std::set<Rational> lengths;
  for (std::int64_t h = 1; Rational(h, 2) <= max_length; ++h) lengths.insert(Rational(h, 2));
  for (const auto& c : lc) lengths.insert(c.length);
  for (const auto& c : rc) lengths.insert(c.length);
  std::vector<BalancePair> out;
  for (const auto& l : lengths) out.push_back({l, balance_row(lc, l), balance_row(rc, l)});
  return out;
}

}  // namespace platycosm
