#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "platycosm/geodesics.hpp"
#include "platycosm/selberg.hpp"
#include "platycosm/spectrum.hpp"

namespace platycosm {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip a double.
std::string format_real(double x);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"name", "lattice": 3x3, "reps": [{"rot": 3x3, "trans": [3]}]}, rationals as "p/q".
Json presentation_to_json(const PlatycosmPresentation& p);
/// Parses and validates; throws InvalidPresentation on malformed or invalid input.
PlatycosmPresentation presentation_from_json(const Json& j);
PlatycosmPresentation load_presentation(const std::string& path);

Json spectrum_to_json(const SpectrumTable& table);
std::string spectrum_to_csv(const SpectrumTable& table);

Json verdict_to_json(const IsospectralVerdict& v, const std::string& left, const std::string& right);
std::string verdict_to_csv(const IsospectralVerdict& v, const std::string& left, const std::string& right);

Json geodesics_to_json(const std::vector<GeodesicClass>& classes, const std::string& space,
                       const Rational& max_length);
std::string geodesics_to_csv(const std::vector<GeodesicClass>& classes);

Json balance_to_json(const std::vector<BalancePair>& rows, const std::string& left, const std::string& right);
std::string balance_to_csv(const std::vector<BalancePair>& rows);

struct HeatTraceSample {
  double t = 0;
  TraceValue spectral;
  TraceValue geometric;
  double abs_diff() const;
  double bound() const;  // sum of both certified tail bounds
};
Json heat_trace_to_json(const std::string& space, double eps, const std::vector<HeatTraceSample>& samples);
std::string heat_trace_to_csv(const std::vector<HeatTraceSample>& samples);

struct CountingSample {
  Rational s;
  CountingValue value;
};
Json counting_to_json(const std::string& space, const std::vector<CountingSample>& samples);
std::string counting_to_csv(const std::vector<CountingSample>& samples);

struct ExerciseSample {
  double t = 0;
  ExerciseTerms terms;
};
Json exercise_to_json(double eps, const std::vector<ExerciseSample>& samples);
std::string exercise_to_csv(const std::vector<ExerciseSample>& samples);

}  // namespace platycosm
