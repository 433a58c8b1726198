#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "platycosm/euclid_group.hpp"

namespace platycosm {

/// Positive definite form n -> n^T Q n / divisor on Z^3 with integer Q.
struct IntegerForm {
  IMat3 q{};
  std::int64_t divisor = 1;

  /// Exactly scaled Gram form of a lattice times `scale`, i.e. the form
  /// n -> scale * |from_coordinates(n)|^2. Throws UnsupportedError when that
  /// does not have the shape n^T Q n / divisor with small integers.
  static IntegerForm from_gram(const Mat3& gram, const Rational& scale);

  std::int64_t numerator(const IVec3& n) const;
  Rational value(const IVec3& n) const { return Rational(numerator(n), divisor); }

  /// Calls visit(n, numerator(n)) for every n with numerator(n) <= bound, in
  /// lexicographic order of n. The first coordinate may be restricted to
  /// [first_lo, first_hi] for partitioned enumeration.
  void for_each_up_to(std::int64_t bound,
                      const std::function<void(const IVec3&, std::int64_t)>& visit) const;
  void for_each_up_to(std::int64_t bound, std::int64_t first_lo, std::int64_t first_hi,
                      const std::function<void(const IVec3&, std::int64_t)>& visit) const;
  /// Largest |n_0| that can satisfy numerator(n) <= bound.
  std::int64_t first_coordinate_bound(std::int64_t bound) const;
};

/// Certified upper bound on sum_{v in L, |v| > radius} exp(-a |v|^2), using
/// #{v : |v| <= r} <= (4 pi / 3) (r + rho)^3 / covolume with rho the sum of
/// the basis vector lengths, integrated by parts against the Gaussian.
double gaussian_lattice_tail(double a, double radius, double covolume, double rho);

/// rho for the counting bound above (slightly rounded up).
double basis_length_sum(const Lattice& lattice);

/// Sum with a fixed pairwise tree; the result depends only on the order of
/// the input values.
double pairwise_sum(std::span<const double> values);

}  // namespace platycosm
