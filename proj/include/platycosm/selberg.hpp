#pragma once

#include <limits>
#include <stdexcept>

#include "platycosm/euclid_group.hpp"
#include "platycosm/geodesics.hpp"
#include "platycosm/spectrum.hpp"

namespace platycosm {

/// A truncation needed more terms than the configured budget allows.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Heat time, target absolute accuracy, and the enumeration budgets that the
/// derived cutoffs must respect.
struct HeatTraceConfig {
  double t = 0.1;
  double eps = 1e-10;
  NormKey max_key_budget = 400000;
  double max_radius_budget = 200.0;
};

/// A truncated series value. `tail_bound` certifies |exact - value| up to
/// floating-point rounding; the cutoff that was used is reported alongside.
struct TraceValue {
  double value = 0;
  double tail_bound = 0;
  NormKey key_cutoff = 0;    // spectral side
  double radius_cutoff = 0;  // geometric side
};

/// Volume of a cylinder of height h whose theta-twisted height is s:
/// 0 for s < h, otherwise h pi (s^2 - h^2) / (2 sin(theta/2))^2.
double twisted_cylinder_volume(double h, double theta, double s);

/// Lattice vectors of length <= s.
std::int64_t lattice_count(const Lattice& lattice, const Rational& s);
std::int64_t lattice_count(const Lattice& lattice, double s);

/// Contribution of one unoriented twisted geodesic to the geometric side,
///   (2/k) int_l^upper (4 pi t)^{-3/2} e^{-s^2/4t} dV_{l,theta}(s),
/// in closed form.
double cylinder_heat_term(double length, double theta, std::int64_t imprimitivity, double t,
                          double upper = std::numeric_limits<double>::infinity());

/// Smallest key cutoff K whose discarded spectral tail is below eps / 2.
NormKey spectral_key_cutoff(const PlatycosmPresentation& p, double t, double eps);
/// Radius S whose discarded image and cylinder tails are below eps / 2.
double geometric_radius_cutoff(const PlatycosmPresentation& p, double t, double eps);

/// sum_n exp(-lambda_n t) from the exact spectrum.
TraceValue spectral_heat_trace(const PlatycosmPresentation& p, const HeatTraceConfig& cfg);

/// int (4 pi t)^{-3/2} e^{-s^2/4t} dN(s): lattice images weighted by the
/// volume plus one closed-form cylinder term per twisted geodesic.
TraceValue geometric_heat_trace(const PlatycosmPresentation& p, const HeatTraceConfig& cfg);

/// Heat trace of the circle R / cZ.
TraceValue circle_heat_trace(const Rational& circumference, double t, double eps);

/// N(s) = Vol |{lambda : |lambda| <= s}| + 2 sum_g V_{l(g),theta(g)}(s) / k(g),
/// exactly: the cylinder part is pi times a rational.
struct CountingValue {
  Rational jump;
  Rational cylinder_over_pi;
  double total() const;
  friend bool operator==(const CountingValue&, const CountingValue&) = default;
};
CountingValue counting_function(const PlatycosmPresentation& p, const Rational& s);

/// Both sides of K_Tetra - K_TwoTall / 4 = K_{R/(1/2)Z} - K_{R/2Z} / 4.
struct ExerciseTerms {
  double lhs = 0;
  double rhs = 0;
  double bound = 0;  // combined truncation bound of the four traces
};
ExerciseTerms exercise_identity_terms(double t, double eps);
double exercise_identity_residual(double t, double eps);

}  // namespace platycosm
