#include "platycosm/spectrum.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

#include "platycosm/lattice_points.hpp"

namespace platycosm {

namespace {

// Holonomy action on dual-lattice coordinates: mode m goes to action * m and
// picks up the phase i^(m . phase_quarters).
struct DualAction {
  IMat3 action{};
  IVec3 phase_quarters{};
};

struct CharacterData {
  IntegerForm key_form;  // key = numerator / divisor
  std::vector<DualAction> reps;
};

IntegerForm key_form_of(const Lattice& dual) {
  IntegerForm f = IntegerForm::from_gram(dual.gram(), Rational(4));
  for (int i = 0; i < 3; ++i) {
    if (f.q[i][i] % f.divisor != 0) throw UnsupportedError("norm keys 4|v|^2 are not integral on this lattice");
    for (int j = 0; j < 3; ++j)
      if ((2 * f.q[i][j]) % f.divisor != 0)
        throw UnsupportedError("norm keys 4|v|^2 are not integral on this lattice");
  }
  return f;
}

CharacterData character_data(const PlatycosmPresentation& p) {
  const Lattice dual = dual_lattice(p.lattice);
  CharacterData data{key_form_of(dual), {}};
  for (const auto& rep : p.reps) {
    const Mat3 action = dual.in_coordinates(transpose(rep.rot));
    if (!is_integral(action)) throw InvalidPresentation("holonomy does not preserve the dual lattice");
    // v . b = m . coordinates(b) for v with dual coordinates m.
    const Vec3 quarters = Rational(4) * p.lattice.coordinates(rep.trans);
    if (!is_integral(quarters))
      throw UnsupportedError("holonomy translation gives phases outside {1, i, -1, -i}");
    data.reps.push_back({to_integer(action), to_integer(quarters)});
  }
  return data;
}

IVec3 apply(const IMat3& m, const IVec3& v) {
  IVec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

int phase_index(std::int64_t quarters) { return static_cast<int>(((quarters % 4) + 4) % 4); }

// Counts of i^0, i^1, i^2, i^3 accumulated by the character sum.
using PhaseCounts = std::array<std::int64_t, 4>;

void accumulate(const CharacterData& data, const IVec3& m, PhaseCounts& counts) {
  for (const auto& rep : data.reps) {
    if (apply(rep.action, m) != m) continue;
    const std::int64_t q = m[0] * rep.phase_quarters[0] + m[1] * rep.phase_quarters[1] +
                           m[2] * rep.phase_quarters[2];
    ++counts[phase_index(q)];
  }
}

std::int64_t averaged(const PhaseCounts& c, std::size_t order, NormKey key) {
  const std::int64_t re = c[0] - c[2];
  const std::int64_t im = c[1] - c[3];
  const auto m = static_cast<std::int64_t>(order);
  if (im != 0 || re < 0 || re % m != 0)
    throw CharacterSumError("character sum at key " + std::to_string(key) + " is " + std::to_string(re) +
                            (im >= 0 ? "+" : "") + std::to_string(im) + "i, not a multiple of " +
                            std::to_string(m));
  return re / m;
}

}  // namespace

std::int64_t SpectrumTable::total() const {
  std::int64_t s = 0;
  for (const auto& [k, m] : entries) s += m;
  return s;
}

OrbitSpec OrbitSpec::canonical(std::int64_t a, std::int64_t b, std::int64_t c2) {
  a = std::abs(a);
  b = std::abs(b);
  if (a < b) std::swap(a, b);
  return {a, b, std::abs(c2)};
}

std::vector<DualVector> OrbitSpec::modes() const {
  std::set<DualVector> out;
  for (int sa : {1, -1})
    for (int sb : {1, -1})
      for (int sc : {1, -1}) {
        out.insert({sa * a, sb * b, sc * c2});
        out.insert({sb * b, sa * a, sc * c2});
      }
  return {out.begin(), out.end()};
}

Lattice dual_lattice(const Lattice& lattice) { return Lattice(inverse(transpose(lattice.basis()))); }

std::vector<DualVector> shell(const Lattice& dual, NormKey key) {
  if (key < 0) return {};
  const IntegerForm form = key_form_of(dual);
  std::vector<DualVector> out;
  const std::int64_t target = key * form.divisor;
  form.for_each_up_to(target, [&](const IVec3& m, std::int64_t value) {
    if (value != target) return;
    const Vec3 v = dual.from_coordinates(m);
    const Rational c2 = Rational(2) * v[2];
    if (!is_integer(v[0]) || !is_integer(v[1]) || !is_integer(c2))
      throw UnsupportedError("dual lattice is not contained in Z x Z x (1/2)Z");
    out.push_back({v[0].numerator(), v[1].numerator(), c2.numerator()});
  });
  std::sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

std::int64_t multiplicity(const PlatycosmPresentation& p, NormKey key) {
  if (key < 0) return 0;
  const CharacterData data = character_data(p);
  const std::int64_t target = key * data.key_form.divisor;
  PhaseCounts counts{};
  data.key_form.for_each_up_to(target, [&](const IVec3& m, std::int64_t value) {
    if (value == target) accumulate(data, m, counts);
  });
  return averaged(counts, p.order(), key);
}

std::int64_t orbit_dims(const PlatycosmPresentation& p, const OrbitSpec& orbit) {
  const auto modes = orbit.modes();
  const std::set<DualVector> span(modes.begin(), modes.end());
  const Lattice dual = dual_lattice(p.lattice);
  PhaseCounts counts{};
  for (const auto& v : modes) {
    const Vec3 w = v.cartesian();
    if (!dual.contains(w)) throw UnsupportedError("orbit modes are not frequencies of this lattice");
    for (const auto& rep : p.reps) {
      const Vec3 image = transpose(rep.rot) * w;
      const Rational c2 = Rational(2) * image[2];
      if (!is_integer(image[0]) || !is_integer(image[1]) || !is_integer(c2) ||
          !span.contains({image[0].numerator(), image[1].numerator(), c2.numerator()}))
        throw UnsupportedError("orbit span is not invariant under the holonomy");
      if (image != w) continue;
      const Rational quarters = Rational(4) * dot(w, rep.trans);
      if (!is_integer(quarters)) throw UnsupportedError("phase outside {1, i, -1, -i}");
      ++counts[phase_index(quarters.numerator())];
    }
  }
  return averaged(counts, p.order(), 4 * orbit.a * orbit.a + 4 * orbit.b * orbit.b + orbit.c2 * orbit.c2);
}

SpectrumTable spectrum_table(const PlatycosmPresentation& p, NormKey max_key, unsigned workers) {
  SpectrumTable table;
  table.max_key = max_key;
  if (max_key < 0) return table;
  const CharacterData data = character_data(p);
  const std::int64_t div = data.key_form.divisor;
  const std::int64_t bound = max_key * div;
  const std::int64_t b0 = data.key_form.first_coordinate_bound(bound);

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(2 * b0 + 1)));
  std::vector<std::vector<PhaseCounts>> partial(workers,
                                                std::vector<PhaseCounts>(static_cast<std::size_t>(max_key) + 1));
  auto run = [&](unsigned w) {
    const std::int64_t span = 2 * b0 + 1;
    const std::int64_t lo = -b0 + span * w / workers;
    const std::int64_t hi = -b0 + span * (w + 1) / workers - 1;
    auto& acc = partial[w];
    data.key_form.for_each_up_to(bound, lo, hi, [&](const IVec3& m, std::int64_t value) {
      accumulate(data, m, acc[static_cast<std::size_t>(value / div)]);
    });
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }

  for (NormKey key = 0; key <= max_key; ++key) {
    PhaseCounts c{};
    for (const auto& part : partial)
      for (int i = 0; i < 4; ++i) c[i] += part[static_cast<std::size_t>(key)][i];
    const std::int64_t mult = averaged(c, p.order(), key);
    if (mult != 0) table.entries.emplace(key, mult);
  }
  return table;
}

IsospectralVerdict compare_spectra(const SpectrumTable& left, const SpectrumTable& right) {
  IsospectralVerdict v;
  v.max_key = std::min(left.max_key, right.max_key);
  std::set<NormKey> keys;
  for (const auto& [k, m] : left.entries) keys.insert(k);
  for (const auto& [k, m] : right.entries) keys.insert(k);
  for (NormKey k : keys) {
    if (k > v.max_key) break;
    const auto l = left.multiplicity(k);
    const auto r = right.multiplicity(k);
    if (l != r) {
      v.equal = false;
      v.first_differing_key = k;
      v.left_multiplicity = l;
      v.right_multiplicity = r;
      break;
    }
  }
  return v;
}

IsospectralVerdict is_isospectral(const PlatycosmPresentation& left, const PlatycosmPresentation& right,
                                  NormKey max_key, unsigned workers) {
  return compare_spectra(spectrum_table(left, max_key, workers), spectrum_table(right, max_key, workers));
}

std::int64_t circle_key_unit(const Rational& circumference) {
  if (circumference <= 0) throw UnsupportedError("circle circumference must be positive");
  const Rational unit = Rational(4) / (circumference * circumference);
  if (!is_integer(unit))
    throw UnsupportedError("circumference " + to_string(circumference) + " gives non-integral keys 4n^2/c^2");
  return unit.numerator();
}

SpectrumTable circle_spectrum(const Rational& circumference, NormKey max_key) {
  const std::int64_t unit = circle_key_unit(circumference);
  SpectrumTable table;
  table.max_key = max_key;
  if (max_key < 0) return table;
  for (std::int64_t n = 0; unit * n * n <= max_key; ++n) table.entries.emplace(unit * n * n, n == 0 ? 1 : 2);
  return table;
}

}  // namespace platycosm
