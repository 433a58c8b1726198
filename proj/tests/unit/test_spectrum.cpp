#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "platycosm/spectrum.hpp"

using namespace platycosm;

namespace {

std::vector<oracle::Freq> as_freqs(const std::vector<DualVector>& v) {
  std::vector<oracle::Freq> out;
  for (const auto& d : v) out.push_back({d.a, d.b, d.c2});
  return out;
}

const Lattice two_tall_dual = dual_lattice(two_tall_lattice());

}  // namespace

TEST_CASE("dual lattices") {
  const Lattice expected(Mat3{{{Rational(1), 0, 0}, {0, Rational(1), 0}, {0, 0, Rational(1, 2)}}});
  CHECK(two_tall_dual == expected);
  CHECK(dual_lattice(cubic_lattice()) == cubic_lattice());
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Mat3 m;
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    if (determinant(m) == 0) continue;
    const Lattice l(m);
    CHECK(dual_lattice(dual_lattice(l)) == l);
    const Lattice dl = dual_lattice(l);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(is_integer(dot(l.vector(i), dl.vector(j))));
  }
}

TEST_CASE("shells match a brute-force scan") {
  CHECK(shell(two_tall_dual, 0) == std::vector<DualVector>{{0, 0, 0}});
  CHECK(shell(two_tall_dual, 1) == std::vector<DualVector>{{0, 0, 1}, {0, 0, -1}});
  CHECK(shell(two_tall_dual, 4).size() == 6);
  for (NormKey key = 0; key <= 120; ++key) {
    const auto s = shell(two_tall_dual, key);
    CHECK(as_freqs(s) == oracle::shell(key));
    std::set<DualVector> set(s.begin(), s.end());
    for (const auto& v : s) CHECK(set.count({-v.a, -v.b, -v.c2}) == 1);
  }
  CHECK(shell(two_tall_dual, 3).empty());
}

TEST_CASE("multiplicity examples") {
  const auto tetra = preset("tetra");
  const auto didi = preset("didi");
  CHECK(multiplicity(tetra, 0) == 1);
  CHECK(multiplicity(tetra, 1) == 0);
  CHECK(multiplicity(didi, 1) == 0);
  CHECK(multiplicity(tetra, 4) == 1);
  CHECK(multiplicity(didi, 4) == 1);
  CHECK(multiplicity(tetra, 5) == 2);
  CHECK(multiplicity(didi, 5) == 2);
}

TEST_CASE("character sums agree with the symmetrized-span rank") {
  for (const auto& name : {"tetra", "didi", "two_tall"}) {
    const auto p = preset(name);
    for (NormKey key = 0; key <= 60; ++key) {
      INFO(name << " key " << key);
      CHECK(multiplicity(p, key) == static_cast<std::int64_t>(oracle::multiplicity(p, key)));
    }
  }
}

TEST_CASE("spectrum tables") {
  const auto tetra = preset("tetra");
  const SpectrumTable t5 = spectrum_table(tetra, 5);
  CHECK(t5.entries == std::map<NormKey, std::int64_t>{{0, 1}, {4, 1}, {5, 2}});
  CHECK(spectrum_table(preset("two_tall"), 1).entries == std::map<NormKey, std::int64_t>{{0, 1}, {1, 2}});
  for (const auto& name : preset_names())
    CHECK(spectrum_table(preset(name), 0).entries == std::map<NormKey, std::int64_t>{{0, 1}});

  const SpectrumTable big = spectrum_table(tetra, 80);
  for (NormKey key = 0; key <= 80; ++key) CHECK(big.multiplicity(key) == multiplicity(tetra, key));
  for (const auto& [k, m] : big.entries) CHECK(m > 0);
}

TEST_CASE("worker count does not change the table") {
  for (const auto& name : {"tetra", "didi"}) {
    const auto p = preset(name);
    const SpectrumTable one = spectrum_table(p, 150, 1);
    CHECK(spectrum_table(p, 150, 2) == one);
    CHECK(spectrum_table(p, 150, 5) == one);
  }
}

TEST_CASE("isospectrality verdicts") {
  const auto tetra = preset("tetra");
  const auto v = is_isospectral(tetra, preset("two_tall"), 4);
  CHECK_FALSE(v.equal);
  REQUIRE(v.first_differing_key.has_value());
  CHECK(*v.first_differing_key == 1);
  CHECK(v.left_multiplicity == 0);
  CHECK(v.right_multiplicity == 2);
  for (const auto& name : preset_names()) CHECK(is_isospectral(preset(name), preset(name), 50).equal);
  CHECK(is_isospectral(tetra, preset("didi"), 120).equal);
}

TEST_CASE("orbit dimensions") {
  const auto tetra = preset("tetra");
  const auto didi = preset("didi");
  for (std::int64_t n = 1; n <= 9; n += 2) {
    CHECK(orbit_dims(tetra, OrbitSpec::canonical(n, 0, 0)) == 1);
    CHECK(orbit_dims(didi, OrbitSpec::canonical(n, 0, 0)) == 0);
  }
  for (std::int64_t n = 2; n <= 10; n += 2) {
    CHECK(orbit_dims(tetra, OrbitSpec::canonical(0, 0, 2 * n)) == 2);
    CHECK(orbit_dims(didi, OrbitSpec::canonical(n, 0, 0)) == 2);
  }
  CHECK(orbit_dims(tetra, OrbitSpec::canonical(3, 1, 5)) == 4);
  CHECK(orbit_dims(didi, OrbitSpec::canonical(3, 1, 5)) == 4);
  CHECK(OrbitSpec::canonical(-1, 3, -5) == OrbitSpec{3, 1, 5});
  CHECK(OrbitSpec{3, 1, 5}.modes().size() == 16);
}

TEST_CASE("orbit dimensions match the symmetrized-span oracle") {
  for (const auto& name : {"tetra", "didi"}) {
    const auto p = preset(name);
    for (std::int64_t a = 0; a <= 4; ++a)
      for (std::int64_t b = 0; b <= a; ++b)
        for (std::int64_t c2 = 0; c2 <= 6; ++c2) {
          const OrbitSpec o{a, b, c2};
          CHECK(orbit_dims(p, o) == static_cast<std::int64_t>(oracle::symmetrized_dimension(p, as_freqs(o.modes()))));
        }
  }
}

TEST_CASE("shells partition into orbits whose dimensions add up") {
  for (const auto& name : {"tetra", "didi"}) {
    const auto p = preset(name);
    for (NormKey key = 0; key <= 100; ++key) {
      std::set<OrbitSpec> orbits;
      for (const auto& v : shell(two_tall_dual, key)) orbits.insert(OrbitSpec::of(v));
      std::int64_t sum = 0;
      std::size_t covered = 0;
      for (const auto& o : orbits) {
        CHECK(o.is_canonical());
        sum += orbit_dims(p, o);
        covered += o.modes().size();
      }
      CHECK(covered == shell(two_tall_dual, key).size());
      CHECK(sum == multiplicity(p, key));
    }
  }
}

TEST_CASE("tetra and didi agree on every orbit with at most one vanishing parameter") {
  const auto tetra = preset("tetra");
  const auto didi = preset("didi");
  for (std::int64_t a = 0; a <= 6; ++a)
    for (std::int64_t b = 0; b <= a; ++b)
      for (std::int64_t c2 = 0; c2 <= 12; ++c2) {
        const int zeros = (a == 0) + (b == 0) + (c2 == 0);
        if (zeros >= 2) continue;
        const OrbitSpec o{a, b, c2};
        CHECK(orbit_dims(tetra, o) == orbit_dims(didi, o));
        CHECK(orbit_dims(tetra, o) <= static_cast<std::int64_t>(o.modes().size()));
        if (o.modes().size() == 16) CHECK(orbit_dims(tetra, o) == 4);
      }
}

TEST_CASE("exceptional orbits") {
  for (const auto& name : {"tetra", "didi"}) {
    const auto p = preset(name);
    for (std::int64_t n = 1; n <= 10; ++n) {
      const auto total = orbit_dims(p, OrbitSpec::canonical(n, 0, 0)) + orbit_dims(p, OrbitSpec::canonical(0, 0, 2 * n));
      CHECK(total == (n % 2 == 1 ? 1 : 3));
    }
  }
}

TEST_CASE("circle spectra") {
  CHECK(circle_spectrum(Rational(1, 2), 16).entries == std::map<NormKey, std::int64_t>{{0, 1}, {16, 2}});
  CHECK(circle_spectrum(Rational(2), 4).entries == std::map<NormKey, std::int64_t>{{0, 1}, {1, 2}, {4, 2}});
  CHECK(circle_spectrum(Rational(2), 0).entries == std::map<NormKey, std::int64_t>{{0, 1}});
  CHECK_THROWS_AS(circle_spectrum(Rational(3), 10), UnsupportedError);
  CHECK_THROWS_AS(circle_spectrum(Rational(0), 10), UnsupportedError);
}
