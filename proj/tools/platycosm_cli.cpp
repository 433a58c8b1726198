// Command-line front end: spectra, twisted geodesics, balance tables, heat
// traces and the circle identity, as JSON or CSV on stdout.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "platycosm/io.hpp"

namespace {

using namespace platycosm;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

unsigned worker_count() {
  const char* env = std::getenv("PLATYCOSM_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 256) throw UsageError("PLATYCOSM_WORKERS must be an integer in [1, 256]");
  return static_cast<unsigned>(n);
}

// A space given either as a preset name or as a presentation file.
struct SpaceArg {
  std::string name;
  std::string file;

  void add(CLI::App* cmd, const std::string& flag, const std::string& what) {
    auto* n = cmd->add_option("--" + flag, name, what + " preset (" + preset_list() + ")");
    auto* f = cmd->add_option("--" + flag + "-file", file, what + " presentation JSON file");
    n->excludes(f);
  }

  bool given() const { return !name.empty() || !file.empty(); }

  PlatycosmPresentation load(const std::string& flag) const {
    if (!file.empty()) return load_presentation(file);
    if (name.empty()) throw UsageError("one of --" + flag + " or --" + flag + "-file is required");
    return preset(name);
  }

  std::string label() const { return file.empty() ? name : file; }

  static std::string preset_list() {
    std::string out;
    for (const auto& n : preset_names()) out += (out.empty() ? "" : ", ") + n;
    return out;
  }
};

struct Output {
  std::string format = "json";

  void add(CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }
  bool csv() const { return format == "csv"; }
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Rational positive_rational(const std::string& text, const std::string& flag) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (r <= 0) throw UsageError(flag + " must be positive");
  return r;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_times(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(v > 0) || !std::isfinite(v))
      throw UsageError(flag + ": '" + item + "' is not a positive number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, twisted geodesics and heat traces of flat 3-manifolds"};
  app.require_subcommand(1);

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Laplace spectrum as (key, multiplicity); eigenvalue = pi^2 key");
  SpaceArg spectrum_space;
  spectrum_space.add(spectrum_cmd, "space", "space");
  std::string circle;
  spectrum_cmd->add_option("--circle", circle, "circle circumference c (4/c^2 must be an integer)");
  NormKey spectrum_max_key = 0;
  spectrum_cmd->add_option("--max-key", spectrum_max_key, "largest key 4|v|^2")->required()->check(CLI::NonNegativeNumber);
  Output spectrum_out;
  spectrum_out.add(spectrum_cmd);

  // geodesics
  auto* geodesics_cmd = app.add_subcommand("geodesics", "Twisted closed geodesics up to a length");
  SpaceArg geodesics_space;
  geodesics_space.add(geodesics_cmd, "space", "space");
  std::string geodesics_max_length;
  geodesics_cmd->add_option("--max-length", geodesics_max_length, "length bound (rational)")->required();
  Output geodesics_out;
  geodesics_out.add(geodesics_cmd);

  // balance
  auto* balance_cmd = app.add_subcommand("balance", "Side-by-side twisted weights per length; exit 1 if unbalanced");
  SpaceArg balance_left, balance_right;
  balance_left.add(balance_cmd, "left", "left");
  balance_right.add(balance_cmd, "right", "right");
  std::string balance_max_length;
  balance_cmd->add_option("--max-length", balance_max_length, "length bound (rational)")->required();
  Output balance_out;
  balance_out.add(balance_cmd);

  // heat-trace
  auto* heat_cmd = app.add_subcommand("heat-trace", "Spectral and geometric heat traces, or N(s) samples");
  SpaceArg heat_space;
  heat_space.add(heat_cmd, "space", "space");
  std::string heat_t, heat_t_grid, heat_s_grid;
  auto* t_opt = heat_cmd->add_option("--t", heat_t, "heat time");
  auto* grid_opt = heat_cmd->add_option("--t-grid", heat_t_grid, "comma-separated heat times");
  auto* s_opt = heat_cmd->add_option("--s-grid", heat_s_grid, "comma-separated rational radii for N(s)");
  t_opt->excludes(grid_opt);
  s_opt->excludes(t_opt);
  s_opt->excludes(grid_opt);
  double heat_eps = 1e-10;
  heat_cmd->add_option("--eps", heat_eps, "target absolute accuracy")->check(CLI::PositiveNumber)->capture_default_str();
  Output heat_out;
  heat_out.add(heat_cmd);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Compare two spectra key by key; exit 1 on mismatch");
  SpaceArg verify_left, verify_right;
  verify_left.add(verify_cmd, "left", "left");
  verify_right.add(verify_cmd, "right", "right");
  NormKey verify_max_key = 400;
  verify_cmd->add_option("--max-key", verify_max_key, "largest key")->check(CLI::NonNegativeNumber)->capture_default_str();
  Output verify_out;
  verify_out.add(verify_cmd);

  // exercise
  auto* exercise_cmd =
      app.add_subcommand("exercise", "Residual of K_tetra - K_two_tall/4 = K_circle(1/2) - K_circle(2)/4");
  std::string exercise_grid = "0.05,0.1,0.5,1";
  exercise_cmd->add_option("--t-grid", exercise_grid, "comma-separated heat times")->capture_default_str();
  double exercise_eps = 1e-12;
  exercise_cmd->add_option("--eps", exercise_eps, "accuracy per trace")->check(CLI::PositiveNumber)->capture_default_str();
  Output exercise_out;
  exercise_out.add(exercise_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const unsigned workers = worker_count();

    if (*spectrum_cmd) {
      SpectrumTable table;
      if (!circle.empty()) {
        if (spectrum_space.given()) throw UsageError("--circle cannot be combined with --space");
        table = circle_spectrum(positive_rational(circle, "--circle"), spectrum_max_key);
      } else {
        table = spectrum_table(spectrum_space.load("space"), spectrum_max_key, workers);
      }
      if (spectrum_out.csv())
        std::cout << spectrum_to_csv(table);
      else
        emit(spectrum_to_json(table));
      return 0;
    }

    if (*geodesics_cmd) {
      const auto p = geodesics_space.load("space");
      const Rational max_length = positive_rational(geodesics_max_length, "--max-length");
      const auto classes = twisted_classes(p, max_length);
      if (geodesics_out.csv())
        std::cout << geodesics_to_csv(classes);
      else
        emit(geodesics_to_json(classes, p.name, max_length));
      return 0;
    }

    if (*balance_cmd) {
      const auto left = balance_left.load("left");
      const auto right = balance_right.load("right");
      const auto rows = balance_table(left, right, positive_rational(balance_max_length, "--max-length"));
      if (balance_out.csv())
        std::cout << balance_to_csv(rows);
      else
        emit(balance_to_json(rows, left.name, right.name));
      for (const auto& r : rows)
        if (!r.balanced()) return kExitMismatch;
      return 0;
    }

    if (*heat_cmd) {
      const auto p = heat_space.load("space");
      if (!heat_s_grid.empty()) {
        std::vector<CountingSample> samples;
        for (const auto& item : split_list(heat_s_grid)) {
          Rational s;
          try {
            s = parse_rational(item);
          } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--s-grid: ") + e.what());
          }
          if (s < 0) throw UsageError("--s-grid values must be nonnegative");
          samples.push_back({s, counting_function(p, s)});
        }
        if (heat_out.csv())
          std::cout << counting_to_csv(samples);
        else
          emit(counting_to_json(p.name, samples));
        return 0;
      }
      if (heat_t.empty() && heat_t_grid.empty()) throw UsageError("heat-trace needs --t, --t-grid or --s-grid");
      const auto times = heat_t.empty() ? parse_times(heat_t_grid, "--t-grid") : parse_times(heat_t, "--t");
      std::vector<HeatTraceSample> samples;
      for (double t : times) {
        HeatTraceConfig cfg;
        cfg.t = t;
        cfg.eps = heat_eps;
        samples.push_back({t, spectral_heat_trace(p, cfg), geometric_heat_trace(p, cfg)});
      }
      if (heat_out.csv())
        std::cout << heat_trace_to_csv(samples);
      else
        emit(heat_trace_to_json(p.name, heat_eps, samples));
      return 0;
    }

    if (*verify_cmd) {
      const auto left = verify_left.load("left");
      const auto right = verify_right.load("right");
      const auto verdict = is_isospectral(left, right, verify_max_key, workers);
      if (verify_out.csv())
        std::cout << verdict_to_csv(verdict, left.name, right.name);
      else
        emit(verdict_to_json(verdict, left.name, right.name));
      return verdict.equal ? 0 : kExitMismatch;
    }

    if (*exercise_cmd) {
      std::vector<ExerciseSample> samples;
      bool ok = true;
      for (double t : parse_times(exercise_grid, "--t-grid")) {
        samples.push_back({t, exercise_identity_terms(t, exercise_eps)});
        ok = ok && std::abs(samples.back().terms.lhs - samples.back().terms.rhs) < 5 * exercise_eps;
      }
      if (exercise_out.csv())
        std::cout << exercise_to_csv(samples);
      else
        emit(exercise_to_json(exercise_eps, samples));
      return ok ? 0 : kExitMismatch;
    }
  } catch (const CharacterSumError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
