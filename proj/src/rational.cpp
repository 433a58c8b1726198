#include "platycosm/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace platycosm {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), whole);
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative || (!int_part.empty() && int_part.front() == '+')) int_part.remove_prefix(1);
    if (frac_part.size() > 15)
      throw std::invalid_argument("too many decimal digits in '" + std::string(whole) + "'");
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    std::int64_t fp = 0;
    std::int64_t scale = 1;
    for (char c : frac_part) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
      fp = fp * 10 + (c - '0');
      scale *= 10;
    }
    Rational r = Rational(ip) + Rational(fp, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, whole));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }

std::int64_t ceil(const Rational& r) { return -floor_div(-r.numerator(), r.denominator()); }

namespace {

std::optional<std::int64_t> exact_isqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(n))));
  for (std::int64_t c = std::max<std::int64_t>(0, root - 2); c <= root + 2; ++c)
    if (c * c == n) return c;
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& r) {
  auto p = exact_isqrt(r.numerator());
  auto q = exact_isqrt(r.denominator());
  if (!p || !q) return std::nullopt;
  return Rational(*p, *q);
}

// ---------------------------------------------------------------------------

Mat3 identity_matrix() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  return out;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) out[i] = a[i] + b[i];
  return out;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) out[i] = a[i] - b[i];
  return out;
}

Rational dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  return out;
}

Rational determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse(const Mat3& m) {
  const Rational det = determinant(m);
  if (det == 0) throw std::domain_error("singular matrix");
  Mat3 adj{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  for (auto& row : adj)
    for (auto& x : row) x /= det;
  return adj;
}

bool is_zero(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

bool is_integral(const Vec3& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

bool is_integral(const Mat3& m) {
  return std::all_of(m.begin(), m.end(), [](const Vec3& row) { return is_integral(row); });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(std::vector<Vec3>& rows) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational lead = rows[r][c];
    rows[r] = Rational(1) / lead * rows[r];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      rows[i] = rows[i] - rows[i][c] * rows[r];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::size_t rank(std::vector<Vec3> rows) { return row_reduce(rows).size(); }

std::vector<Vec3> kernel(const Mat3& m) {
  std::vector<Vec3> rows(m.begin(), m.end());
  const auto pivots = row_reduce(rows);
  std::vector<Vec3> basis;
  for (int free = 0; free < 3; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vec3 x{};
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][free];
    basis.push_back(x);
  }
  return basis;
}

IVec3 to_integer(const Vec3& v) {
  IVec3 out{};
  for (int i = 0; i < 3; ++i) {
    if (!is_integer(v[i])) throw std::domain_error("expected an integral vector");
    out[i] = v[i].numerator();
  }
  return out;
}

IMat3 to_integer(const Mat3& m) {
  IMat3 out{};
  for (int i = 0; i < 3; ++i) out[i] = to_integer(m[i]);
  return out;
}

Vec3 to_rational(const IVec3& v) { return {Rational(v[0]), Rational(v[1]), Rational(v[2])}; }

// ---------------------------------------------------------------------------

HermiteBasis hermite_basis(const std::vector<IVec3>& generators) {
  std::vector<IVec3> rows;
  for (const auto& g : generators)
    if (g[0] != 0 || g[1] != 0 || g[2] != 0) rows.push_back(g);

  HermiteBasis out;
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero entry remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = floor_div(rows[i][c], rows[r][c]);
        for (int k = 0; k < 3; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t q = floor_div(rows[i][c], rows[r][c]);
      for (int k = 0; k < 3; ++k) rows[i][k] -= q * rows[r][k];
    }
    out.rows.push_back(rows[r]);
    out.pivots.push_back(c);
    ++r;
    // Drop rows that became zero.
    rows.erase(std::remove_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                              [](const IVec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }),
               rows.end());
  }
  return out;
}

IVec3 HermiteBasis::reduce(IVec3 v) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int c = pivots[i];
    const std::int64_t q = floor_div(v[c], rows[i][c]);
    for (int k = 0; k < 3; ++k) v[k] -= q * rows[i][k];
  }
  return v;
}

bool HermiteBasis::contains(const IVec3& v) const {
  const IVec3 r = reduce(v);
  return r[0] == 0 && r[1] == 0 && r[2] == 0;
}

}  // namespace platycosm
