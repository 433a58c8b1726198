#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace boost {
// Under C++20 rewritten comparisons, Boost's (integer, rational) equality
// template selects its own reversed form and recurses. Exact non-template
// overloads take precedence.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.operator==(static_cast<std::int64_t>(b)); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.operator==(static_cast<std::int64_t>(b)); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a.operator==(static_cast<std::int64_t>(b)); }
}  // namespace boost

namespace platycosm {

using Rational = boost::rational<std::int64_t>;

using Vec3 = std::array<Rational, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major: m[row][col]

using IVec3 = std::array<std::int64_t, 3>;
using IMat3 = std::array<IVec3, 3>;

// ---------------------------------------------------------------------------
// Scalars

/// Renders "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q", and finite decimals such as "-4.5" or "0.125".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);
inline bool is_integer(const Rational& r) { return r.denominator() == 1; }
inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Exact square root, if r is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);

// ---------------------------------------------------------------------------
// Vectors and matrices over the rationals

Mat3 identity_matrix();
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& m, const Vec3& v);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(const Rational& s, const Vec3& v);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Rational dot(const Vec3& a, const Vec3& b);
Mat3 transpose(const Mat3& m);
Rational determinant(const Mat3& m);
/// Throws std::domain_error when m is singular.
Mat3 inverse(const Mat3& m);
bool is_zero(const Vec3& v);
bool is_integral(const Vec3& v);
bool is_integral(const Mat3& m);

/// Rank of the row space of an arbitrary stack of rational rows.
std::size_t rank(std::vector<Vec3> rows);

/// Basis of {x : m x = 0}, computed by exact elimination.
std::vector<Vec3> kernel(const Mat3& m);

IVec3 to_integer(const Vec3& v);  // requires integral entries
IMat3 to_integer(const Mat3& m);
Vec3 to_rational(const IVec3& v);

// ---------------------------------------------------------------------------
// Integer lattices in Z^3

/// Row-style Hermite normal form of the Z-span of `generators`: rows are in
/// echelon form with strictly increasing pivot columns, positive pivots, and
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
struct HermiteBasis {
  std::vector<IVec3> rows;
  std::vector<int> pivots;  // pivot column of each row

  /// Canonical representative of v modulo the span: every pivot coordinate
  /// lands in [0, pivot).
  IVec3 reduce(IVec3 v) const;
  bool contains(const IVec3& v) const;
  std::size_t rank() const { return rows.size(); }
};

HermiteBasis hermite_basis(const std::vector<IVec3>& generators);

}  // namespace platycosm
