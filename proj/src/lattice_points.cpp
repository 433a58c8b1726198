#include "platycosm/lattice_points.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace platycosm {

IntegerForm IntegerForm::from_gram(const Mat3& gram, const Rational& scale) {
  std::int64_t den = 1;
  for (const auto& row : gram)
    for (const auto& x : row) den = std::lcm(den, (scale * x).denominator());
  IntegerForm f;
  f.divisor = den;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Rational v = Rational(den) * scale * gram[i][j];
      f.q[i][j] = v.numerator();
    }
  if (den > (std::int64_t{1} << 20)) throw UnsupportedError("lattice Gram matrix has unwieldy denominators");
  return f;
}

std::int64_t IntegerForm::numerator(const IVec3& n) const {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += n[i] * q[i][j] * n[j];
  return s;
}

namespace {

// Diagonal of Q^{-1} in floating point, for box bounds.
std::array<double, 3> inverse_diagonal(const IMat3& q) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = q[i][j];
  const Mat3 inv = inverse(m);
  return {to_double(inv[0][0]), to_double(inv[1][1]), to_double(inv[2][2])};
}

}  // namespace

std::int64_t IntegerForm::first_coordinate_bound(std::int64_t bound) const {
  const auto d = inverse_diagonal(q);
  return static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(bound) * d[0]) + 1e-9)) + 1;
}

void IntegerForm::for_each_up_to(std::int64_t bound,
                                 const std::function<void(const IVec3&, std::int64_t)>& visit) const {
  const std::int64_t b0 = first_coordinate_bound(bound);
  for_each_up_to(bound, -b0, b0, visit);
}

void IntegerForm::for_each_up_to(std::int64_t bound, std::int64_t first_lo, std::int64_t first_hi,
                                 const std::function<void(const IVec3&, std::int64_t)>& visit) const {
  if (bound < 0) return;
  // Box |n_i| <= sqrt(bound * (Q^{-1})_ii) contains the ellipsoid; one extra
  // unit absorbs rounding, and the exact test below filters.
  const auto d = inverse_diagonal(q);
  std::array<std::int64_t, 3> box{};
  for (int i = 0; i < 3; ++i)
    box[i] = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(bound) * d[i]) + 1e-9)) + 1;
  const std::int64_t lo0 = std::max(first_lo, -box[0]);
  const std::int64_t hi0 = std::min(first_hi, box[0]);
  IVec3 n{};
  for (n[0] = lo0; n[0] <= hi0; ++n[0])
    for (n[1] = -box[1]; n[1] <= box[1]; ++n[1])
      for (n[2] = -box[2]; n[2] <= box[2]; ++n[2]) {
        const std::int64_t v = numerator(n);
        if (v <= bound) visit(n, v);
      }
}

double gaussian_lattice_tail(double a, double radius, double covolume, double rho) {
  // I_n = int_R^inf r^n e^{-a r^2} dr via I_n = R^{n-1} e^{-aR^2}/(2a) + (n-1)/(2a) I_{n-2}.
  const double R = std::max(radius, 0.0);
  const double e = std::exp(-a * R * R);
  std::array<double, 5> I{};
  I[0] = 0.5 * std::sqrt(std::numbers::pi / a) * std::erfc(std::sqrt(a) * R);
  I[1] = e / (2 * a);
  for (int n = 2; n <= 4; ++n) I[n] = std::pow(R, n - 1) * e / (2 * a) + (n - 1) / (2 * a) * I[n - 2];
  // (r + rho)^3 r = r^4 + 3 rho r^3 + 3 rho^2 r^2 + rho^3 r
  const double poly = I[4] + 3 * rho * I[3] + 3 * rho * rho * I[2] + rho * rho * rho * I[1];
  const double bound = (4 * std::numbers::pi / 3) / covolume * 2 * a * poly;
  return bound * (1 + 1e-12);
}

double basis_length_sum(const Lattice& lattice) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += std::sqrt(to_double(dot(lattice.vector(i), lattice.vector(i))));
  return s * (1 + 1e-12);
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace platycosm
