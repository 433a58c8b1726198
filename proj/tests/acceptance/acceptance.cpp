// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "platycosm/selberg.hpp"

using namespace platycosm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

HeatTraceConfig config(double t, double eps) {
  HeatTraceConfig c;
  c.t = t;
  c.eps = eps;
  return c;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome exact_isospectrality() {
  Outcome o;
  const SpectrumTable a = spectrum_table(preset("tetra"), 400);
  const SpectrumTable b = spectrum_table(preset("didi"), 400);
  o.require(a == b, "tables differ");
  o.require(a.multiplicity(0) == 1, "constant mode missing");
  if (o.pass) o.detail = std::to_string(a.entries.size()) + " nonzero keys, " + std::to_string(a.total()) + " eigenvalues";
  return o;
}

Outcome non_isometry() {
  Outcome o;
  const auto tetra = preset("tetra");
  const auto didi = preset("didi");
  o.require(betti_one(tetra) == 1, "betti_one(tetra) != 1");
  o.require(betti_one(didi) == 0, "betti_one(didi) != 0");
  const auto t = twisted_classes(tetra, Rational(1, 2));
  const auto d = twisted_classes(didi, Rational(1, 2));
  o.require(t.size() == 1 && t[0].twist_over_pi == Rational(1, 2) && t[0].count == 2 && t[0].length == Rational(1, 2),
            "tetra shortest geodesics");
  o.require(d.size() == 1 && d[0].twist_over_pi == 1 && d[0].count == 4 && d[0].length == Rational(1, 2),
            "didi shortest geodesics");
  if (o.pass) o.detail = "b1 = 1 vs 0; length 1/2: 2 quarter-twisters vs 4 half-twisters";
  return o;
}

Outcome table_reproduction() {
  Outcome o;
  const auto rows = balance_table(preset("tetra"), preset("didi"), Rational(9, 2));
  using E = BalanceEntry;
  const Rational q(1, 4), h(1, 2);
  struct Expected {
    Rational w;
    std::vector<E> left, right;
  };
  auto odd = [&](std::int64_t k) {
    return Expected{Rational(4, k), {{2, q, k, Rational(4, k)}}, {{4, h, k, Rational(4, k)}}};
  };
  const std::vector<Expected> table{
      odd(1),
      {2, {{2, h, 2, 1}, {1, h, 1, 1}}, {{2, h, 1, 2}}},
      odd(3),
      {0, {}, {}},
      odd(5),
      {Rational(2, 3), {{2, h, 6, Rational(1, 3)}, {1, h, 3, Rational(1, 3)}}, {{2, h, 3, Rational(2, 3)}}},
      odd(7),
      {0, {}, {}},
      odd(9),
  };
  o.require(rows.size() == table.size(), "row count");
  for (std::size_t i = 0; o.pass && i < table.size(); ++i) {
    const std::string at = "row l=" + to_string(rows[i].length);
    o.require(rows[i].length == Rational(static_cast<std::int64_t>(i) + 1, 2), at + ": length");
    o.require(rows[i].left.total == table[i].w && rows[i].right.total == table[i].w, at + ": w_l");
    o.require(rows[i].left.entries == table[i].left, at + ": tetra breakdown");
    o.require(rows[i].right.entries == table[i].right, at + ": didi breakdown");
  }
  if (o.pass) o.detail = "9 rows, w_l = 4, 2, 4/3, 0, 4/5, 2/3, 4/7, 0, 4/9";
  return o;
}

Outcome primitive_census() {
  Outcome o;
  auto primitive = [](const char* name) {
    std::vector<Rational> lengths;
    for (const auto& c : twisted_classes(preset(name), Rational(2)))
      if (c.imprimitivity == 1)
        for (std::int64_t i = 0; i < c.count; ++i) lengths.push_back(c.length);
    return lengths;
  };
  const Rational h(1, 2), one(1);
  o.require(primitive("tetra") == std::vector<Rational>{h, h, one}, "tetra primitive lengths");
  o.require(primitive("didi") == std::vector<Rational>{h, h, h, h, one, one}, "didi primitive lengths");
  if (o.pass) o.detail = "3 and 6 primitive twisted geodesics";
  return o;
}

Outcome trace_cross_check() {
  Outcome o;
  double worst = 0;
  for (const char* name : {"two_tall", "tetra", "didi"})
    for (double t : {0.05, 0.1, 0.2, 0.5, 1.0}) {
      const auto p = preset(name);
      const double d = std::abs(spectral_heat_trace(p, config(t, 1e-10)).value -
                                geometric_heat_trace(p, config(t, 1e-10)).value);
      worst = std::max(worst, d);
      o.require(d < 4e-10, std::string(name) + " t=" + fmt("%g", t) + " diff " + fmt("%.3g", d));
    }
  if (o.pass) o.detail = "max |spectral - geometric| = " + fmt("%.3g", worst);
  return o;
}

Outcome exercise_identity() {
  Outcome o;
  double worst = 0;
  for (double t : {0.05, 0.1, 0.5, 1.0}) {
    const double r = std::abs(exercise_identity_residual(t, 1e-12));
    worst = std::max(worst, r);
    o.require(r < 5e-12, "t=" + fmt("%g", t) + " residual " + fmt("%.3g", r));
  }
  if (o.pass) o.detail = "max |residual| = " + fmt("%.3g", worst);
  return o;
}

Outcome poisson_oracle() {
  Outcome o;
  double worst = 0;
  for (double t : {0.05, 0.2, 1.0}) {
    const double d =
        std::abs(spectral_heat_trace(preset("cubical_torocosm"), config(t, 1e-10)).value - oracle::cubic_image_sum(t));
    worst = std::max(worst, d);
    o.require(d < 1e-10, "t=" + fmt("%g", t) + " diff " + fmt("%.3g", d));
  }
  if (o.pass) o.detail = "max |spectral - image sum| = " + fmt("%.3g", worst);
  return o;
}

Outcome cylinder_law() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.01, 5);
  double worst_ratio = 0;
  for (int i = 0; i < 100; ++i) {
    const double h = u(rng), s = h + u(rng);
    const double quarter = twisted_cylinder_volume(h, kPi / 2, s);
    const double half = twisted_cylinder_volume(h, kPi, s);
    const double rel = std::abs(quarter - 2 * half) / quarter;
    worst_ratio = std::max(worst_ratio, rel);
    o.require(rel <= 1e-15, "volume ratio at h=" + fmt("%g", h));
  }
  double worst_quad = 0;
  for (double t : {0.05, 0.2, 1.0})
    for (double l : {0.5, 1.0, 1.5})
      for (double theta : {kPi / 2, kPi}) {
        const double upper = l + 12 * std::sqrt(t) + 1;
        const double closed = cylinder_heat_term(l, theta, 1, t, upper);
        const double chord = 2 * std::sin(theta / 2);
        const double quad = oracle::adaptive_simpson(
            [&](double x) {
              return 2.0 * std::pow(4 * kPi * t, -1.5) * std::exp(-x * x / (4 * t)) * 2 * kPi * l * x / (chord * chord);
            },
            l, upper, 1e-14 * closed);
        const double rel = std::abs(closed - quad) / closed;
        worst_quad = std::max(worst_quad, rel);
        o.require(rel <= 1e-12, "quadrature at t=" + fmt("%g", t));
      }
  if (o.pass) o.detail = "ratio rel err " + fmt("%.2g", worst_ratio) + ", quadrature rel err " + fmt("%.2g", worst_quad);
  return o;
}

Outcome exceptional_ledger() {
  Outcome o;
  for (const char* name : {"tetra", "didi"}) {
    const auto p = preset(name);
    for (std::int64_t n = 1; n <= 10; ++n) {
      const auto sum = orbit_dims(p, OrbitSpec::canonical(n, 0, 0)) + orbit_dims(p, OrbitSpec::canonical(0, 0, 2 * n));
      o.require(sum == (n % 2 ? 1 : 3), std::string(name) + " n=" + std::to_string(n) + " gives " + std::to_string(sum));
    }
  }
  if (o.pass) o.detail = "n odd -> 1, n even -> 3 for both spaces";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact isospectrality to key 400", exact_isospectrality},
      {"non-isometry evidence", non_isometry},
      {"balancing table reproduction", table_reproduction},
      {"primitive twisted census", primitive_census},
      {"trace formula cross-check", trace_cross_check},
      {"circle identity", exercise_identity},
      {"poisson summation oracle", poisson_oracle},
      {"cylinder volume law", cylinder_law},
      {"exceptional orbit ledger", exceptional_ledger},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("AC%zu %s  %s (%.2fs): %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
