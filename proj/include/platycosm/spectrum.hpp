#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "platycosm/euclid_group.hpp"

namespace platycosm {

/// Eigenvalue label: key = 4|v|^2 for a dual-lattice frequency v, so the
/// Laplace eigenvalue 4 pi^2 |v|^2 is exactly pi^2 * key.
using NormKey = std::int64_t;

/// A frequency (a, b, c) with a, b integral and c half-integral, stored as
/// c2 = 2c. Covers every dual lattice inside Z x Z x (1/2)Z.
struct DualVector {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c2 = 0;

  NormKey key() const { return 4 * a * a + 4 * b * b + c2 * c2; }
  Vec3 cartesian() const { return {Rational(a), Rational(b), Rational(c2, 2)}; }

  friend auto operator<=>(const DualVector&, const DualVector&) = default;
};

/// Label of the span V_{a,b,c} of the modes (+-a, +-b, +-c) and
/// (+-b, +-a, +-c). Canonical form has a >= b >= 0 and c2 >= 0.
struct OrbitSpec {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c2 = 0;

  static OrbitSpec canonical(std::int64_t a, std::int64_t b, std::int64_t c2);
  static OrbitSpec of(const DualVector& v) { return canonical(v.a, v.b, v.c2); }
  bool is_canonical() const { return a >= b && b >= 0 && c2 >= 0; }
  /// The distinct frequencies spanning V.
  std::vector<DualVector> modes() const;

  friend auto operator<=>(const OrbitSpec&, const OrbitSpec&) = default;
};

/// Multiplicities of the Laplace eigenvalues pi^2 * key for key <= max_key.
/// Zero multiplicities are not stored.
struct SpectrumTable {
  NormKey max_key = 0;
  std::map<NormKey, std::int64_t> entries;

  std::int64_t multiplicity(NormKey key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second;
  }
  std::int64_t total() const;

  friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;
};

/// A character sum that should have been a nonnegative integer was not.
class CharacterSumError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Lattice dual_lattice(const Lattice& lattice);

/// All v in `dual` with 4|v|^2 = key, sorted in descending lexicographic
/// order of (a, b, c2). Throws UnsupportedError if `dual` is not inside
/// Z x Z x (1/2)Z.
std::vector<DualVector> shell(const Lattice& dual, NormKey key);

/// Dimension of the Gamma-invariant part of the span of the modes with
/// 4|v|^2 = key, by averaging the character of the holonomy action:
///   (1/m) sum_j sum_{v : B_j^T v = v} exp(2 pi i v . b_j).
std::int64_t multiplicity(const PlatycosmPresentation& p, NormKey key);

/// Dimension of the symmetrized image of V_{a,b,c}. Throws UnsupportedError
/// when V is not invariant under the holonomy or its modes are not
/// frequencies of the lattice.
std::int64_t orbit_dims(const PlatycosmPresentation& p, const OrbitSpec& orbit);

/// Multiplicities for every key in [0, max_key] from a single enumeration of
/// the dual lattice ball. `workers` > 1 splits the enumeration across threads;
/// the result does not depend on it.
SpectrumTable spectrum_table(const PlatycosmPresentation& p, NormKey max_key, unsigned workers = 1);

struct IsospectralVerdict {
  bool equal = true;
  NormKey max_key = 0;
  std::optional<NormKey> first_differing_key;
  std::int64_t left_multiplicity = 0;
  std::int64_t right_multiplicity = 0;
};

IsospectralVerdict compare_spectra(const SpectrumTable& left, const SpectrumTable& right);
IsospectralVerdict is_isospectral(const PlatycosmPresentation& left, const PlatycosmPresentation& right,
                                  NormKey max_key, unsigned workers = 1);

/// Spectrum of the circle R / cZ in the same pi^2 * key normalization:
/// key 4 n^2 / c^2 with multiplicity 2 (n > 0) or 1 (n = 0). Throws
/// UnsupportedError unless 4 / c^2 is an integer.
SpectrumTable circle_spectrum(const Rational& circumference, NormKey max_key);

/// 4 / c^2, the key of the first nonzero circle mode.
std::int64_t circle_key_unit(const Rational& circumference);

}  // namespace platycosm
