#include "platycosm/euclid_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace platycosm {

Isometry compose(const Isometry& g, const Isometry& h) {
  return {g.rot * h.rot, g.rot * h.trans + g.trans};
}

Isometry inverse(const Isometry& g) {
  const Mat3 inv = inverse(g.rot);
  return {inv, -(inv * g.trans)};
}

Isometry power(const Isometry& g, std::int64_t n) {
  Isometry base = n < 0 ? inverse(g) : g;
  if (n < 0) n = -n;
  Isometry out;
  while (n > 0) {
    if (n & 1) out = compose(out, base);
    base = compose(base, base);
    n >>= 1;
  }
  return out;
}

bool is_orthogonal(const Mat3& m) { return transpose(m) * m == identity_matrix(); }

int rotation_order(const Mat3& m) {
  Mat3 p = m;
  for (int n = 1; n <= 12; ++n) {
    if (p == identity_matrix()) return n;
    p = p * m;
  }
  throw UnsupportedError("rotational part has infinite or excessive order");
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(const Mat3& basis) : basis_(basis) {
  if (determinant(basis_) == 0) throw InvalidPresentation("lattice basis is degenerate");
  basis_t_inv_ = inverse(transpose(basis_));
}

Lattice Lattice::spanned_by(const std::vector<Vec3>& generators) {
  std::int64_t den = 1;
  for (const auto& g : generators)
    for (const auto& x : g) den = std::lcm(den, x.denominator());
  std::vector<IVec3> scaled;
  scaled.reserve(generators.size());
  for (const auto& g : generators) scaled.push_back(to_integer(Rational(den) * g));
  const HermiteBasis h = hermite_basis(scaled);
  if (h.rank() != 3) throw InvalidPresentation("generators do not span a full-rank lattice");
  Mat3 basis{};
  for (int i = 0; i < 3; ++i) basis[i] = Rational(1, den) * to_rational(h.rows[i]);
  return Lattice(basis);
}

Vec3 Lattice::coordinates(const Vec3& v) const { return basis_t_inv_ * v; }

Vec3 Lattice::from_coordinates(const Vec3& c) const { return transpose(basis_) * c; }

Vec3 Lattice::reduce(const Vec3& v) const {
  Vec3 c = coordinates(v);
  for (auto& x : c) x -= Rational(platycosm::floor(x));
  return from_coordinates(c);
}

Rational Lattice::covolume() const { return abs(determinant(basis_)); }

Mat3 Lattice::gram() const { return basis_ * transpose(basis_); }

Mat3 Lattice::in_coordinates(const Mat3& m_cart) const {
  return basis_t_inv_ * m_cart * transpose(basis_);
}

bool operator==(const Lattice& a, const Lattice& b) {
  // Every basis vector of each lies in the other.
  for (int i = 0; i < 3; ++i)
    if (!a.contains(b.vector(i)) || !b.contains(a.vector(i))) return false;
  return true;
}

Lattice cubic_lattice() { return Lattice(identity_matrix()); }

Lattice two_tall_lattice() {
  Mat3 b = identity_matrix();
  b[2][2] = 2;
  return Lattice(b);
}

// ---------------------------------------------------------------------------
// Presentations

int find_coset(const PlatycosmPresentation& p, const Isometry& g) {
  for (std::size_t i = 0; i < p.reps.size(); ++i)
    if (p.reps[i].rot == g.rot && p.lattice.contains(g.trans - p.reps[i].trans))
      return static_cast<int>(i);
  return -1;
}

bool coset_is_fixed_point_free(const Lattice& lattice, const Isometry& rep) {
  // (B, b + l) fixes a point iff the projection of b + l onto the B-fixed
  // subspace vanishes; the projections of lattice vectors form a lattice
  // inside that subspace, so this is a membership test.
  const auto fixed = kernel(rep.rot - identity_matrix());
  if (fixed.empty()) return false;  // no fixed directions: always a fixed point
  const std::size_t d = fixed.size();
  // Orthogonal projection coordinates: solve Gram(fixed) y = fixed . x.
  auto project = [&](const Vec3& x) {
    std::vector<Rational> rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = dot(fixed[i], x);
    // d <= 3; embed Gram into a 3x3 with identity padding.
    Mat3 g = identity_matrix();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g[i][j] = dot(fixed[i], fixed[j]);
    Vec3 r{};
    for (std::size_t i = 0; i < d; ++i) r[i] = rhs[i];
    return inverse(g) * r;
  };
  std::vector<Vec3> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(project(lattice.vector(i)));
  const Vec3 target = project(rep.trans);

  std::int64_t den = 1;
  for (const auto& g : gens)
    for (const auto& x : g) den = std::lcm(den, x.denominator());
  const Vec3 scaled_target = Rational(den) * target;
  if (!is_integral(scaled_target)) return true;
  std::vector<IVec3> scaled;
  for (const auto& g : gens) scaled.push_back(to_integer(Rational(den) * g));
  return !hermite_basis(scaled).contains(to_integer(scaled_target));
}

void validate(const PlatycosmPresentation& p) {
  if (p.reps.empty()) throw InvalidPresentation("presentation has no representatives");
  if (!p.reps.front().is_translation() || !p.lattice.contains(p.reps.front().trans))
    throw InvalidPresentation("first representative must be the identity");

  for (const auto& r : p.reps) {
    if (!is_orthogonal(r.rot)) throw InvalidPresentation("rotational part is not orthogonal");
    const Rational det = determinant(r.rot);
    if (det != 1 && det != -1) throw InvalidPresentation("rotational part has det other than +-1");
    if (!p.lattice.preserved_by(r.rot))
      throw InvalidPresentation("rotational part does not preserve the lattice");
  }

  for (std::size_t i = 0; i < p.reps.size(); ++i)
    for (std::size_t j = i + 1; j < p.reps.size(); ++j)
      if (find_coset(PlatycosmPresentation{p.name, p.lattice, {p.reps[i]}}, p.reps[j]) == 0)
        throw InvalidPresentation("two representatives lie in the same coset");

  for (const auto& g : p.reps)
    for (const auto& h : p.reps)
      if (find_coset(p, compose(g, h)) < 0)
        throw InvalidPresentation("representatives are not closed under composition");

  for (std::size_t i = 1; i < p.reps.size(); ++i)
    if (!coset_is_fixed_point_free(p.lattice, p.reps[i]))
      throw InvalidPresentation("representative " + std::to_string(i) + " has a fixed point");
}

PlatycosmPresentation make_presentation(std::string name, const Lattice& lattice,
                                        std::vector<Isometry> reps) {
  for (auto& r : reps) r.trans = lattice.reduce(r.trans);
  PlatycosmPresentation p{std::move(name), lattice, std::move(reps)};
  validate(p);
  return p;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

Mat3 diag(int a, int b, int c) {
  Mat3 m{};
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  return m;
}

}  // namespace

Isometry quarter_turn_screw() {
  Mat3 r{};
  r[0][1] = -1;
  r[1][0] = 1;
  r[2][2] = 1;
  return {r, {Rational(0), Rational(0), Rational(1, 2)}};
}

Isometry half_turn_screw_x() { return {diag(1, -1, -1), {Rational(1, 2), Rational(0), Rational(0)}}; }

Isometry half_turn_screw_y() { return {diag(-1, 1, -1), {Rational(0), Rational(1, 2), Rational(1)}}; }

Isometry half_turn_screw_z() {
  return {diag(-1, -1, 1), {Rational(1, 2), Rational(1, 2), Rational(1)}};
}

std::vector<std::string> preset_names() { return {"cubical_torocosm", "two_tall", "tetra", "didi"}; }

PlatycosmPresentation preset(std::string_view name) {
  if (name == "cubical_torocosm") return make_presentation("cubical_torocosm", cubic_lattice(), {Isometry{}});
  if (name == "two_tall") return make_presentation("two_tall", two_tall_lattice(), {Isometry{}});
  if (name == "tetra") {
    const Isometry tau = quarter_turn_screw();
    return make_presentation("tetra", two_tall_lattice(),
                             {Isometry{}, tau, power(tau, 2), power(tau, 3)});
  }
  if (name == "didi")
    return make_presentation("didi", two_tall_lattice(),
                             {Isometry{}, half_turn_screw_x(), half_turn_screw_y(), half_turn_screw_z()});
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw UnsupportedError("unsupported preset '" + std::string(name) + "' (valid: " + valid + ")");
}

// ---------------------------------------------------------------------------

Lattice translation_lattice(const PlatycosmPresentation& p) {
  // Pure translations of Gamma come from products of cosets with trivial
  // rotational part. With closure of the reps modulo the lattice, single reps
  // and pairwise products exhaust the new translation classes.
  std::vector<Vec3> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(p.lattice.vector(i));
  for (const auto& g : p.reps) {
    if (g.is_translation()) gens.push_back(g.trans);
    for (const auto& h : p.reps) {
      const Isometry gh = compose(g, h);
      if (gh.is_translation()) gens.push_back(gh.trans);
    }
  }
  Lattice out = Lattice::spanned_by(gens);

  // Closure re-check: conjugating by any rep must keep the lattice.
  for (const auto& g : p.reps)
    if (!out.preserved_by(g.rot)) throw InvalidPresentation("translation lattice not normalized by holonomy");
  return out;
}

std::size_t holonomy_order(const PlatycosmPresentation& p) {
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& r : p.reps) {
    std::vector<std::int64_t> key;
    for (const auto& row : r.rot)
      for (const auto& x : row) {
        key.push_back(x.numerator());
        key.push_back(x.denominator());
      }
    seen.insert(key);
  }
  return seen.size();
}

Rational volume(const PlatycosmPresentation& p) {
  return translation_lattice(p).covolume() / Rational(static_cast<std::int64_t>(holonomy_order(p)));
}

int betti_one(const PlatycosmPresentation& p) {
  std::vector<Vec3> rows;
  for (const auto& r : p.reps) {
    const Mat3 d = r.rot - identity_matrix();
    rows.insert(rows.end(), d.begin(), d.end());
  }
  return 3 - static_cast<int>(rank(rows));
}

int fixed_sublattice_rank(const PlatycosmPresentation& p) {
  // Works in lattice coordinates, where every (M_j - I) is an integer matrix;
  // the integer kernel of the stack has the rank of its rational kernel.
  const Lattice lat = translation_lattice(p);
  std::vector<Vec3> rows;
  for (const auto& r : p.reps) {
    const Mat3 d = lat.in_coordinates(r.rot) - identity_matrix();
    if (!is_integral(d)) throw InvalidPresentation("holonomy does not preserve the translation lattice");
    rows.insert(rows.end(), d.begin(), d.end());
  }
  return 3 - static_cast<int>(rank(rows));
}

}  // namespace platycosm
