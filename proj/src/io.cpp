#include "platycosm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace platycosm {

namespace {

Json vec_json(const Vec3& v) { return Json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

Json mat_json(const Mat3& m) { return Json::array({vec_json(m[0]), vec_json(m[1]), vec_json(m[2])}); }

Vec3 vec_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw InvalidPresentation(std::string(what) + " must be an array of 3 rationals");
  return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

Mat3 mat_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw InvalidPresentation(std::string(what) + " must be a 3x3 array");
  return {vec_from(j[0], what), vec_from(j[1], what), vec_from(j[2], what)};
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  out += '\n';
  return out;
}

std::string int_str(std::int64_t v) { return std::to_string(v); }

Json entry_json(const BalanceEntry& e) {
  return Json{{"count", e.count}, {"twist_turns", to_json(e.twist_turns)},
              {"imprimitivity", e.imprimitivity}, {"weight", to_json(e.weight)}};
}

Json row_json(const BalanceRow& row) {
  Json entries = Json::array();
  for (const auto& e : row.entries) entries.push_back(entry_json(e));
  return Json{{"entries", entries}, {"total", to_json(row.total)}};
}

Json trace_json(const TraceValue& v) {
  Json j{{"value", v.value}, {"tail_bound", v.tail_bound}};
  if (v.key_cutoff > 0) j["key_cutoff"] = v.key_cutoff;
  if (v.radius_cutoff > 0) j["radius_cutoff"] = v.radius_cutoff;
  return j;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InvalidPresentation(e.what());
    }
  }
  throw InvalidPresentation("expected a rational as a \"p/q\" string, got " + j.dump());
}

Json presentation_to_json(const PlatycosmPresentation& p) {
  Json reps = Json::array();
  for (const auto& g : p.reps) reps.push_back(Json{{"rot", mat_json(g.rot)}, {"trans", vec_json(g.trans)}});
  return Json{{"name", p.name}, {"lattice", mat_json(p.lattice.basis())}, {"reps", reps}};
}

PlatycosmPresentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidPresentation("presentation must be a JSON object");
  for (const char* key : {"lattice", "reps"})
    if (!j.contains(key)) throw InvalidPresentation(std::string("presentation is missing \"") + key + "\"");
  const std::string name = j.value("name", std::string("custom"));
  const Mat3 basis = mat_from(j.at("lattice"), "lattice");
  if (determinant(basis) == 0) throw InvalidPresentation("lattice basis is degenerate");
  if (!j.at("reps").is_array() || j.at("reps").empty()) throw InvalidPresentation("reps must be a non-empty array");
  std::vector<Isometry> reps;
  for (const auto& r : j.at("reps")) {
    if (!r.is_object() || !r.contains("rot") || !r.contains("trans"))
      throw InvalidPresentation("each rep needs \"rot\" and \"trans\"");
    reps.push_back({mat_from(r.at("rot"), "rot"), vec_from(r.at("trans"), "trans")});
  }
  return make_presentation(name, Lattice(basis), std::move(reps));
}

PlatycosmPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidPresentation("cannot open space file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidPresentation("space file '" + path + "' is not valid JSON: " + e.what());
  }
  return presentation_from_json(j);
}

Json spectrum_to_json(const SpectrumTable& table) {
  Json entries = Json::array();
  for (const auto& [k, m] : table.entries) entries.push_back(Json::array({k, m}));
  return Json{{"max_key", table.max_key}, {"entries", entries}};
}

std::string spectrum_to_csv(const SpectrumTable& table) {
  std::string out = "key,eigenvalue_over_pi2,multiplicity\n";
  for (const auto& [k, m] : table.entries) out += csv_line({int_str(k), int_str(k), int_str(m)});
  return out;
}

Json verdict_to_json(const IsospectralVerdict& v, const std::string& left, const std::string& right) {
  Json j{{"left", left}, {"right", right}, {"max_key", v.max_key}, {"verdict", v.equal ? "equal" : "different"}};
  if (v.first_differing_key) {
    j["first_differing_key"] = *v.first_differing_key;
    j["left_multiplicity"] = v.left_multiplicity;
    j["right_multiplicity"] = v.right_multiplicity;
  }
  return j;
}

std::string verdict_to_csv(const IsospectralVerdict& v, const std::string& left, const std::string& right) {
  std::string out = "left,right,max_key,verdict,first_differing_key,left_multiplicity,right_multiplicity\n";
  if (v.first_differing_key)
    return out + csv_line({left, right, int_str(v.max_key), "different", int_str(*v.first_differing_key),
                           int_str(v.left_multiplicity), int_str(v.right_multiplicity)});
  return out + csv_line({left, right, int_str(v.max_key), "equal", "", "", ""});
}

Json geodesics_to_json(const std::vector<GeodesicClass>& classes, const std::string& space,
                       const Rational& max_length) {
  Json list = Json::array();
  for (const auto& c : classes) {
    list.push_back(Json{{"length", to_json(c.length)},
                        {"twist_over_pi", to_json(c.twist_over_pi)},
                        {"imprimitivity", c.imprimitivity},
                        {"count", c.count},
                        {"weight", to_json(weight(c))},
                        {"witness", Json{{"rot", mat_json(c.witness.rot)}, {"trans", vec_json(c.witness.trans)}}}});
  }
  return Json{{"space", space}, {"max_length", to_json(max_length)}, {"classes", list}};
}

std::string geodesics_to_csv(const std::vector<GeodesicClass>& classes) {
  std::string out = "length,twist_over_pi,imprimitivity,count,weight\n";
  for (const auto& c : classes)
    out += csv_line({to_string(c.length), to_string(c.twist_over_pi), int_str(c.imprimitivity), int_str(c.count),
                     to_string(weight(c))});
  return out;
}

Json balance_to_json(const std::vector<BalancePair>& rows, const std::string& left, const std::string& right) {
  Json list = Json::array();
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.balanced();
    list.push_back(Json{{"length", to_json(r.length)},
                        {"balanced", r.balanced()},
                        {"left", row_json(r.left)},
                        {"right", row_json(r.right)}});
  }
  return Json{{"left", left}, {"right", right}, {"balanced", all}, {"rows", list}};
}

std::string balance_to_csv(const std::vector<BalancePair>& rows) {
  std::string out = "l,left_w_l,right_w_l,left_n,left_t,left_k,left_w,right_n,right_t,right_k,right_w\n";
  for (const auto& r : rows) {
    const std::size_t lines = std::max<std::size_t>({1, r.left.entries.size(), r.right.entries.size()});
    for (std::size_t i = 0; i < lines; ++i) {
      std::string line = to_string(r.length) + ',' + to_string(r.left.total) + ',' + to_string(r.right.total);
      for (const BalanceRow* side : {&r.left, &r.right}) {
        if (i < side->entries.size()) {
          const auto& e = side->entries[i];
          line += ',' + int_str(e.count) + ',' + to_string(e.twist_turns) + ',' + int_str(e.imprimitivity) + ',' +
                  to_string(e.weight);
        } else {
          line += ",,,,";
        }
      }
      out += line + '\n';
    }
  }
  return out;
}

double HeatTraceSample::abs_diff() const { return std::abs(spectral.value - geometric.value); }
double HeatTraceSample::bound() const { return spectral.tail_bound + geometric.tail_bound; }

Json heat_trace_to_json(const std::string& space, double eps, const std::vector<HeatTraceSample>& samples) {
  Json list = Json::array();
  for (const auto& s : samples)
    list.push_back(Json{{"t", s.t},
                        {"spectral", trace_json(s.spectral)},
                        {"geometric", trace_json(s.geometric)},
                        {"abs_diff", s.abs_diff()},
                        {"bound", s.bound()}});
  return Json{{"space", space}, {"eps", eps}, {"samples", list}};
}

std::string heat_trace_to_csv(const std::vector<HeatTraceSample>& samples) {
  std::string out = "t,spectral,geometric,abs_diff,bound\n";
  for (const auto& s : samples)
    out += csv_line({format_real(s.t), format_real(s.spectral.value), format_real(s.geometric.value),
                     format_real(s.abs_diff()), format_real(s.bound())});
  return out;
}

Json counting_to_json(const std::string& space, const std::vector<CountingSample>& samples) {
  Json list = Json::array();
  for (const auto& s : samples)
    list.push_back(Json{{"s", to_json(s.s)},
                        {"N_jump", to_json(s.value.jump)},
                        {"N_cylinder_over_pi", to_json(s.value.cylinder_over_pi)},
                        {"N_cylinder", std::numbers::pi * to_double(s.value.cylinder_over_pi)},
                        {"N_total", s.value.total()}});
  return Json{{"space", space}, {"samples", list}};
}

std::string counting_to_csv(const std::vector<CountingSample>& samples) {
  std::string out = "s,N_jump,N_cylinder,N_total\n";
  for (const auto& s : samples)
    out += csv_line({to_string(s.s), to_string(s.value.jump),
                     format_real(std::numbers::pi * to_double(s.value.cylinder_over_pi)),
                     format_real(s.value.total())});
  return out;
}

Json exercise_to_json(double eps, const std::vector<ExerciseSample>& samples) {
  Json list = Json::array();
  for (const auto& s : samples)
    list.push_back(Json{{"t", s.t},
                        {"lhs", s.terms.lhs},
                        {"rhs", s.terms.rhs},
                        {"residual", s.terms.lhs - s.terms.rhs},
                        {"bound", s.terms.bound}});
  return Json{{"eps", eps}, {"samples", list}};
}

std::string exercise_to_csv(const std::vector<ExerciseSample>& samples) {
  std::string out = "t,lhs,rhs,residual,bound\n";
  for (const auto& s : samples)
    out += csv_line({format_real(s.t), format_real(s.terms.lhs), format_real(s.terms.rhs),
                     format_real(s.terms.lhs - s.terms.rhs), format_real(s.terms.bound)});
  return out;
}

}  // namespace platycosm
