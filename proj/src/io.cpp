#include "tilekit/io.hpp"
#include "tilekit/errors.hpp"

#include <cstdio>
#include <fstream>

namespace tilekit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConstraintViolation, what); }

long get_long(const json& obj, const char* key) {
  if (!obj.contains(key)) bad(std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

long get_long_or(const json& obj, const char* key, long dflt) { return obj.contains(key) ? get_long(obj, key) : dflt; }

std::vector<long> get_list(const json& obj, const char* key) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array()) bad(std::string("field '") + key + "' must be a list of integers");
  std::vector<long> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) bad(std::string("field '") + key + "' must be a list of integers");
    out.push_back(e.get<long>());
  }
  return out;
}

json long_list(const std::vector<long>& v) {
  json a = json::array();
  for (long x : v) a.push_back(x);
  return a;
}

}  // namespace

LoadedSpec load_spec(const json& doc) {
  if (!doc.is_object()) bad("spec document must be a JSON object");
  LoadedSpec s;
  if (doc.contains("two_cut")) {
    const json& t = doc.at("two_cut");
    TwoCutSpec tc{get_long(t, "n1"), get_long(t, "n2"), get_long(t, "m1"), get_long(t, "m2"),
                  get_long(t, "b"),  get_long(t, "c"),  get_long(t, "d")};
    s.kind = "two_cut";
    s.two_cut = tc;
    s.polygon = PolygonSpec::from_two_cut(tc);
    s.bd = validate(tc);
  } else if (doc.contains("multi_cut")) {
    const json& t = doc.at("multi_cut");
    PolygonSpec p;
    p.upper_cuts = get_list(t, "upper_cuts");
    p.lower_cuts = get_list(t, "lower_cuts");
    p.upper_gaps = get_list(t, "upper_gaps");
    p.lower_gaps = get_list(t, "lower_gaps");
    p.b0 = get_long_or(t, "b0", 0);
    p.bu = get_long_or(t, "bu", 0);
    p.d0 = get_long_or(t, "d0", 0);
    s.kind = "multi_cut";
    s.polygon = p;
    s.bd = validate(p);
  } else if (doc.contains("hexagon")) {
    const json& t = doc.at("hexagon");
    s.kind = "hexagon";
    s.polygon = PolygonSpec::hexagon(get_long(t, "a"), get_long(t, "b"), get_long(t, "c"));
    s.bd = validate(s.polygon);
  } else {
    bad("spec needs one of 'two_cut', 'multi_cut', 'hexagon'");
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

LoadedSpec load_spec_file(const std::string& path) { return load_spec(read_json_file(path)); }

json exact_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

json float_json(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

json number_json(const Rational& q, bool exact) { return exact ? exact_json(q) : float_json(q.get_d()); }

json spec_json(const LoadedSpec& s) {
  json j;
  j["kind"] = s.kind;
  if (s.two_cut) {
    const TwoCutSpec& t = *s.two_cut;
    j["two_cut"] = {{"n1", t.n1}, {"n2", t.n2}, {"m1", t.m1}, {"m2", t.m2}, {"b", t.b}, {"c", t.c}, {"d", t.d}};
  }
  const PolygonSpec& p = s.polygon;
  j["polygon"] = {{"upper_cuts", long_list(p.upper_cuts)}, {"lower_cuts", long_list(p.lower_cuts)},
                  {"upper_gaps", long_list(p.upper_gaps)}, {"lower_gaps", long_list(p.lower_gaps)},
                  {"b0", p.b0}, {"bu", p.bu}, {"d0", p.d0}};
  return j;
}

json boundary_json(const BoundaryData& bd) {
  json j;
  j["N"] = bd.N;
  j["d"] = bd.d;
  j["S"] = bd.S;
  j["x"] = long_list(bd.x);
  j["y"] = long_list(bd.y);
  j["R_multi"] = long_list(bd.R_multi);
  if (bd.two_cut) {
    const TwoCutData& t = *bd.two_cut;
    j["r"] = t.r;
    j["rho"] = t.rho;
    j["sigma"] = t.sigma;
    j["L"] = long_list(t.L);
    j["C"] = long_list(t.C);
    j["R"] = long_list(t.R);
    j["rho_bar"] = {t.rho_bar.lo, t.rho_bar.hi};
    j["sigma_bar"] = {t.sigma_bar.lo, t.sigma_bar.hi};
  }
  return j;
}

json tiling_json(const TilingConfig& t) {
  json j;
  json levels = json::array();
  for (const Level& l : t.dots.levels) levels.push_back(long_list(l));
  j["levels"] = levels;
  json blue = json::array();
  for (const auto& [eta, xi] : t.blue_dots) blue.push_back({eta, xi});
  j["blue_dots"] = blue;
  return j;
}

RedDotConfig levels_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("levels") || !doc.at("levels").is_array()) bad("tiling needs a 'levels' array");
  RedDotConfig cfg;
  for (const json& l : doc.at("levels")) {
    if (!l.is_array()) bad("each level must be a list of integers");
    Level lv;
    for (const json& e : l) {
      if (!e.is_number_integer()) bad("each level must be a list of integers");
      lv.push_back(e.get<long>());
    }
    cfg.levels.push_back(std::move(lv));
  }
  return cfg;
}

}  // namespace tilekit
