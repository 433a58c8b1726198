#include "platycosm/selberg.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "platycosm/lattice_points.hpp"

namespace platycosm {

namespace {

constexpr double kPi = std::numbers::pi;

double heat_prefactor(double t) { return std::pow(4 * kPi * t, -1.5); }

void require_time(double t, double eps) {
  if (!(t > 0) || !std::isfinite(t)) throw std::invalid_argument("heat time must be positive");
  if (!(eps > 0)) throw std::invalid_argument("accuracy target must be positive");
}

// Bound on sum over twisted geodesics longer than S of their cylinder terms.
// Each lattice-conjugacy class is one term at most f * 2 pi t (4 pi t)^{-3/2}
// |x| e^{-x^2/4t} with x its signed axial position; the classes of one coset
// lie in `residues_per_step` progressions of spacing `step`, and for
// S >= sqrt(2t) the summand is decreasing, so each one-sided progression
// tail is at most h(S) + (1/step) int_S^inf h.
double twisted_tail(const std::vector<TwistedProgression>& progs, double t, double S) {
  const double h = S * std::exp(-S * S / (4 * t));
  const double integral = 2 * t * std::exp(-S * S / (4 * t));
  double total = 0;
  for (const auto& pr : progs) {
    const double one_sided = h + integral / pr.step;
    total += static_cast<double>(pr.residues_per_step) * to_double(pr.twist_factor) * 2 * one_sided;
  }
  return total * 2 * kPi * t * heat_prefactor(t);
}

double image_tail(const Lattice& lattice, double vol, double t, double S) {
  return vol * heat_prefactor(t) *
         gaussian_lattice_tail(1 / (4 * t), S, to_double(lattice.covolume()), basis_length_sum(lattice));
}

}  // namespace

double twisted_cylinder_volume(double h, double theta, double s) {
  if (!(h > 0)) throw std::invalid_argument("cylinder height must be positive");
  if (!(theta > 0) || theta > kPi) throw std::invalid_argument("twist must lie in (0, pi]");
  if (s < h) return 0.0;
  const double chord = 2 * std::sin(theta / 2);
  return h * kPi * (s * s - h * h) / (chord * chord);
}

std::int64_t lattice_count(const Lattice& lattice, const Rational& s) {
  if (s < 0) return 0;
  const IntegerForm form = IntegerForm::from_gram(lattice.gram(), Rational(1));
  const std::int64_t bound = floor(s * s * Rational(form.divisor));
  std::int64_t count = 0;
  form.for_each_up_to(bound, [&](const IVec3&, std::int64_t) { ++count; });
  return count;
}

std::int64_t lattice_count(const Lattice& lattice, double s) {
  if (s < 0) return 0;
  const IntegerForm form = IntegerForm::from_gram(lattice.gram(), Rational(1));
  const long double scaled = static_cast<long double>(s) * s * static_cast<long double>(form.divisor);
  const auto bound = static_cast<std::int64_t>(std::floor(scaled));
  std::int64_t count = 0;
  form.for_each_up_to(bound, [&](const IVec3&, std::int64_t) { ++count; });
  return count;
}

double cylinder_heat_term(double length, double theta, std::int64_t imprimitivity, double t, double upper) {
  if (!(theta > 0) || theta > kPi) throw std::invalid_argument("twist must lie in (0, pi]");
  const double chord = 2 * std::sin(theta / 2);
  // dV/ds = 2 pi l s / chord^2 and int_l^U s e^{-s^2/4t} ds = 2t (e^{-l^2/4t} - e^{-U^2/4t}).
  const double gaussian_mass =
      2 * t * (std::exp(-length * length / (4 * t)) - (std::isinf(upper) ? 0.0 : std::exp(-upper * upper / (4 * t))));
  return 2.0 / static_cast<double>(imprimitivity) * heat_prefactor(t) * 2 * kPi * length / (chord * chord) *
         gaussian_mass;
}

NormKey spectral_key_cutoff(const PlatycosmPresentation& p, double t, double eps) {
  require_time(t, eps);
  const Lattice dual = dual_lattice(p.lattice);
  const double a = 4 * kPi * kPi * t;
  const double covol = to_double(dual.covolume());
  const double rho = basis_length_sum(dual);
  double R = 0;
  while (gaussian_lattice_tail(a, R, covol, rho) >= eps / 2) {
    R += 0.125;
    if (R > 1e4) throw BudgetError("spectral cutoff diverged");
  }
  // keys > K means |v| > sqrt(K)/2 >= R.
  return static_cast<NormKey>(std::ceil(4 * R * R));
}

double geometric_radius_cutoff(const PlatycosmPresentation& p, double t, double eps) {
  require_time(t, eps);
  const Lattice lattice = translation_lattice(p);
  const double vol = to_double(volume(p));
  const auto progs = twisted_progressions(p);
  double S = std::max(0.5, std::sqrt(2 * t));
  while (image_tail(lattice, vol, t, S) + twisted_tail(progs, t, S) >= eps / 2) {
    S += 0.125;
    if (S > 1e4) throw BudgetError("geometric cutoff diverged");
  }
  return S;
}

TraceValue spectral_heat_trace(const PlatycosmPresentation& p, const HeatTraceConfig& cfg) {
  const NormKey K = spectral_key_cutoff(p, cfg.t, cfg.eps);
  if (K > cfg.max_key_budget)
    throw BudgetError("spectral cutoff " + std::to_string(K) + " exceeds the key budget; use a larger t or eps");
  const SpectrumTable table = spectrum_table(p, K);
  std::vector<double> terms;
  terms.reserve(table.entries.size());
  for (const auto& [key, mult] : table.entries)
    terms.push_back(static_cast<double>(mult) * std::exp(-kPi * kPi * static_cast<double>(key) * cfg.t));
  const Lattice dual = dual_lattice(p.lattice);
  const double R = std::sqrt(static_cast<double>(K)) / 2;
  TraceValue out;
  out.value = pairwise_sum(terms);
  out.tail_bound = gaussian_lattice_tail(4 * kPi * kPi * cfg.t, R, to_double(dual.covolume()), basis_length_sum(dual));
  out.key_cutoff = K;
  return out;
}

TraceValue geometric_heat_trace(const PlatycosmPresentation& p, const HeatTraceConfig& cfg) {
  const double S = geometric_radius_cutoff(p, cfg.t, cfg.eps);
  if (S > cfg.max_radius_budget)
    throw BudgetError("geometric cutoff exceeds the radius budget; use a larger t or eps");
  const double t = cfg.t;
  const Lattice lattice = translation_lattice(p);
  const double vol = to_double(volume(p));

  const IntegerForm form = IntegerForm::from_gram(lattice.gram(), Rational(1));
  const auto bound = static_cast<std::int64_t>(std::floor(S * S * static_cast<double>(form.divisor)));
  std::vector<double> images;
  form.for_each_up_to(bound, [&](const IVec3&, std::int64_t num) {
    const double norm2 = static_cast<double>(num) / static_cast<double>(form.divisor);
    images.push_back(std::exp(-norm2 / (4 * t)));
  });
  const double jump = vol * heat_prefactor(t) * pairwise_sum(images);

  // Cylinder terms for every twisted geodesic up to the (rounded-up) cutoff.
  const Rational max_length(static_cast<std::int64_t>(std::ceil(S * 8)), 8);
  std::vector<double> cylinders;
  for (const auto& c : twisted_classes(p, max_length)) {
    const double l = to_double(c.length);
    const double coefficient = to_double(weight(c));  // count * f / k
    cylinders.push_back(coefficient * 2 * kPi * l * t * heat_prefactor(t) * std::exp(-l * l / (4 * t)));
  }

  TraceValue out;
  const std::vector<double> parts{jump, pairwise_sum(cylinders)};
  out.value = pairwise_sum(parts);
  out.tail_bound = image_tail(lattice, vol, t, S) + twisted_tail(twisted_progressions(p), t, S);
  out.radius_cutoff = S;
  return out;
}

TraceValue circle_heat_trace(const Rational& circumference, double t, double eps) {
  require_time(t, eps);
  const auto unit = static_cast<double>(circle_key_unit(circumference));
  const double a = kPi * kPi * unit * t;
  // sum_{|n| > N} e^{-a n^2} <= 2 int_N^inf e^{-a x^2} dx.
  auto tail = [&](double N) { return std::sqrt(kPi / a) * std::erfc(std::sqrt(a) * N); };
  std::int64_t N = 0;
  while (tail(static_cast<double>(N)) >= eps / 2) ++N;
  std::vector<double> terms{1.0};
  for (std::int64_t n = 1; n <= N; ++n) terms.push_back(2 * std::exp(-a * static_cast<double>(n * n)));
  TraceValue out;
  out.value = pairwise_sum(terms);
  out.tail_bound = tail(static_cast<double>(N));
  out.key_cutoff = static_cast<NormKey>(unit) * N * N;
  return out;
}

double CountingValue::total() const { return to_double(jump) + kPi * to_double(cylinder_over_pi); }

CountingValue counting_function(const PlatycosmPresentation& p, const Rational& s) {
  CountingValue out;
  out.jump = volume(p) * Rational(lattice_count(translation_lattice(p), s));
  out.cylinder_over_pi = 0;
  if (s <= 0) return out;
  // 2 V_{l,theta}(s) / k = 2 (count / k) l (s^2 - l^2) f / 4, times pi.
  for (const auto& c : twisted_classes(p, s)) {
    if (c.length > s) continue;
    out.cylinder_over_pi += weight(c) * c.length * (s * s - c.length * c.length) / 2;
  }
  return out;
}

ExerciseTerms exercise_identity_terms(double t, double eps) {
  HeatTraceConfig cfg;
  cfg.t = t;
  cfg.eps = eps;
  const TraceValue tetra = spectral_heat_trace(preset("tetra"), cfg);
  const TraceValue two_tall = spectral_heat_trace(preset("two_tall"), cfg);
  const TraceValue half = circle_heat_trace(Rational(1, 2), t, eps);
  const TraceValue two = circle_heat_trace(Rational(2), t, eps);
  ExerciseTerms out;
  out.lhs = tetra.value - 0.25 * two_tall.value;
  out.rhs = half.value - 0.25 * two.value;
  out.bound = tetra.tail_bound + 0.25 * two_tall.tail_bound + half.tail_bound + 0.25 * two.tail_bound;
  return out;
}

double exercise_identity_residual(double t, double eps) {
  const ExerciseTerms terms = exercise_identity_terms(t, eps);
  return terms.lhs - terms.rhs;
}

}  // namespace platycosm
