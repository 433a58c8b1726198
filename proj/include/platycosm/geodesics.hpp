#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "platycosm/euclid_group.hpp"

namespace platycosm {

/// Screw data of a nontrivial rotational part: the rotation axis and the
/// unoriented rotation angle as a fraction of pi in (0, 1].
struct ScrewAxis {
  Vec3 axis;           // spans the fixed line of the rotation
  Rational axis_norm2;  // axis . axis
  Rational twist_over_pi;
};

/// Throws UnsupportedError for the identity, for orientation-reversing
/// parts, and for non-crystallographic angles.
ScrewAxis screw_axis(const Mat3& rot);

/// Square of the translation distance along the screw axis.
Rational axial_length_squared(const Isometry& g);
/// Exact axial length; throws UnsupportedError when it is irrational.
Rational axial_length(const Isometry& g);

/// 1 / sin^2(theta / 2) for the crystallographic twists pi/3, pi/2, 2pi/3, pi.
Rational twist_factor(const Rational& twist_over_pi);

/// Largest k such that g = d^k for some d in Gamma.
std::int64_t imprimitivity(const Isometry& g, const PlatycosmPresentation& p);

/// One unoriented closed geodesic with nontrivial twist.
struct TwistedGeodesic {
  Rational length;
  Rational twist_over_pi;
  std::int64_t imprimitivity = 1;
  Isometry witness;  // one group element translating along it
};

/// Geodesics with the same (length, twist, imprimitivity) signature.
struct GeodesicClass {
  Rational length;
  Rational twist_over_pi;
  std::int64_t imprimitivity = 1;
  std::int64_t count = 0;
  Isometry witness;
};

/// Count times twist factor over imprimitivity.
Rational weight(const GeodesicClass& c);

/// All twisted closed geodesics of length <= max_length. Group elements
/// (B, b + lambda) with B != I are grouped into Gamma-conjugacy classes, and
/// a class is identified with the class of its inverse.
class GeodesicCatalog {
 public:
  GeodesicCatalog(const PlatycosmPresentation& p, const Rational& max_length);

  const std::vector<TwistedGeodesic>& geodesics() const { return geodesics_; }
  /// Index of the geodesic of g, if g is twisted and short enough.
  std::optional<std::size_t> find(const Isometry& g) const;
  /// Number of oriented conjugacy classes (twice the number of geodesics).
  std::size_t oriented_class_count() const { return oriented_classes_; }
  /// Aggregated by signature, ordered by (length, twist, imprimitivity).
  std::vector<GeodesicClass> classes() const;

 private:
  // Lattice-conjugation data of one coset with nontrivial rotational part.
  struct RepAxis {
    ScrewAxis screw;
    HermiteBasis conjugation;  // (I - B) Lambda, in lattice coordinates
    int free_coordinate = 0;
    Vec3 axial_per_coordinate;  // u . basis_i
    Rational axial_offset;      // u . b
  };
  using Key = std::pair<std::size_t, IVec3>;

  std::optional<Key> key_of(const Isometry& g) const;
  Isometry element(const Key& key) const;

  PlatycosmPresentation p_;
  std::vector<std::optional<RepAxis>> axes_;  // indexed by rep
  std::map<Key, std::size_t> index_;          // key -> geodesic
  std::vector<TwistedGeodesic> geodesics_;
  std::size_t oriented_classes_ = 0;
};

std::vector<GeodesicClass> twisted_classes(const PlatycosmPresentation& p, const Rational& max_length);

/// Per non-identity coset: twisted elements up to lattice conjugation sit in
/// `residues_per_step` arithmetic progressions of axial position with common
/// difference `step`. Used for certified tail bounds.
struct TwistedProgression {
  std::size_t rep = 0;
  std::int64_t residues_per_step = 0;
  double step = 0;
  Rational twist_factor;
};
std::vector<TwistedProgression> twisted_progressions(const PlatycosmPresentation& p);

/// One line of a balance row: n geodesics with twist t (fraction of a full
/// turn), imprimitivity k and aggregate weight w = n f / k.
struct BalanceEntry {
  std::int64_t count = 0;
  Rational twist_turns;
  std::int64_t imprimitivity = 1;
  Rational weight;

  friend bool operator==(const BalanceEntry&, const BalanceEntry&) = default;
};

struct BalanceRow {
  std::vector<BalanceEntry> entries;
  Rational total;
};

struct BalancePair {
  Rational length;
  BalanceRow left;
  BalanceRow right;
  bool balanced() const { return left.total == right.total; }
};

/// Rows for every half-integer length <= max_length (plus any other length
/// at which either space has a twisted geodesic).
std::vector<BalancePair> balance_table(const PlatycosmPresentation& left, const PlatycosmPresentation& right,
                                       const Rational& max_length);

}  // namespace platycosm
