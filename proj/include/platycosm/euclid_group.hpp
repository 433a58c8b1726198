#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "platycosm/rational.hpp"

namespace platycosm {

/// Raised for inputs outside what this library supports (unknown preset
/// names, lattices or holonomy whose data is not exactly representable).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a presentation violates a structural invariant.
class InvalidPresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An affine isometry x -> rot * x + trans with exact rational data.
struct Isometry {
  Mat3 rot = identity_matrix();
  Vec3 trans{};

  static Isometry identity() { return {}; }
  static Isometry translation(const Vec3& v) { return {identity_matrix(), v}; }

  Vec3 apply(const Vec3& x) const { return rot * x + trans; }
  bool is_translation() const { return rot == identity_matrix(); }

  friend bool operator==(const Isometry&, const Isometry&) = default;
};

/// x -> g(h(x)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);
/// g^n for any integer n (negative powers go through the inverse).
Isometry power(const Isometry& g, std::int64_t n);

bool is_orthogonal(const Mat3& m);
/// Smallest n >= 1 with m^n = I; throws if none up to 12.
int rotation_order(const Mat3& m);

/// A full-rank lattice in R^3. basis[i] is the i-th basis vector.
class Lattice {
 public:
  explicit Lattice(const Mat3& basis);

  /// Lattice spanned by (possibly redundant) rational generators. Throws
  /// InvalidPresentation if they do not span R^3.
  static Lattice spanned_by(const std::vector<Vec3>& generators);

  const Mat3& basis() const { return basis_; }
  Vec3 vector(int i) const { return basis_[i]; }

  /// Coefficients of v in the basis (exact).
  Vec3 coordinates(const Vec3& v) const;
  Vec3 from_coordinates(const Vec3& c) const;
  Vec3 from_coordinates(const IVec3& c) const { return from_coordinates(to_rational(c)); }
  bool contains(const Vec3& v) const { return is_integral(coordinates(v)); }

  /// Representative of v modulo the lattice with coordinates in [0, 1).
  Vec3 reduce(const Vec3& v) const;

  Rational covolume() const;
  /// Gram matrix basis[i] . basis[j].
  Mat3 gram() const;

  /// Matrix of a linear map (given in Cartesian coordinates) in lattice
  /// coordinates: m_cart * from_coordinates(c) = from_coordinates(M c).
  Mat3 in_coordinates(const Mat3& m_cart) const;
  bool preserved_by(const Mat3& m_cart) const { return is_integral(in_coordinates(m_cart)); }

  /// Same set of points (bases may differ by a unimodular change).
  friend bool operator==(const Lattice& a, const Lattice& b);

 private:
  Mat3 basis_;
  Mat3 basis_t_inv_;  // (basis^T)^{-1}
};

Lattice cubic_lattice();
/// Z x Z x 2Z.
Lattice two_tall_lattice();

/// Gamma presented as a lattice of translations plus coset representatives
/// of Gamma / lattice. The first representative is the identity.
struct PlatycosmPresentation {
  std::string name;
  Lattice lattice = cubic_lattice();
  std::vector<Isometry> reps;

  std::size_t order() const { return reps.size(); }
};

/// Builds a presentation, reducing every translation part modulo the lattice,
/// and checks all structural invariants (see validate()).
PlatycosmPresentation make_presentation(std::string name, const Lattice& lattice,
                                        std::vector<Isometry> reps);

/// Throws InvalidPresentation on the first violated invariant:
/// orthogonal rotational parts with det +-1 that preserve the lattice,
/// identity first, closure of the reps modulo the lattice, and
/// fixed-point-freeness of every non-identity coset.
void validate(const PlatycosmPresentation& p);

/// Index of the representative in the same coset as g, or -1.
int find_coset(const PlatycosmPresentation& p, const Isometry& g);

/// True when no element of the coset (B, b + lattice) has a fixed point.
bool coset_is_fixed_point_free(const Lattice& lattice, const Isometry& rep);

std::vector<std::string> preset_names();
/// One of cubical_torocosm, two_tall, tetra, didi. Throws UnsupportedError.
PlatycosmPresentation preset(std::string_view name);

/// The generators that appear in the construction of the presets.
Isometry quarter_turn_screw();   // (x,y,z) -> (-y, x, z+1/2)
Isometry half_turn_screw_x();    // (x,y,z) -> (x+1/2, -y, -z)
Isometry half_turn_screw_y();    // (x,y,z) -> (-x, y+1/2, 1-z)
Isometry half_turn_screw_z();    // (x,y,z) -> (1/2-x, 1/2-y, z+1)

/// The maximal lattice of pure translations in Gamma.
Lattice translation_lattice(const PlatycosmPresentation& p);

/// |Gamma / Lambda| where Lambda is the maximal translation lattice.
std::size_t holonomy_order(const PlatycosmPresentation& p);

/// Covolume of the translation lattice over the holonomy order.
Rational volume(const PlatycosmPresentation& p);

/// Dimension of the subspace fixed by every rotational part, which is the
/// first Betti number of a platycosm.
int betti_one(const PlatycosmPresentation& p);

/// Rank of the sublattice of translations fixed by every rotational part.
int fixed_sublattice_rank(const PlatycosmPresentation& p);

}  // namespace platycosm
