#pragma once

#include "tilekit/enumerator.hpp"
#include "tilekit/exact.hpp"
#include "tilekit/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace tilekit {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "tilekit.report/1";

struct LoadedSpec {
  std::string kind;  // two_cut | multi_cut | hexagon
  std::optional<TwoCutSpec> two_cut;
  PolygonSpec polygon;
  BoundaryData bd;
};

// {"two_cut": {...}}, {"multi_cut": {...}} or {"hexagon": {"a","b","c"}}; malformed input is a ConstraintViolation
LoadedSpec load_spec(const json& doc);
LoadedSpec load_spec_file(const std::string& path);

// exact: "num/den" (always with the denominator); float: "%.17g" string
json exact_json(const Rational& q);
json float_json(double v);
json number_json(const Rational& q, bool exact);

json spec_json(const LoadedSpec& s);
json boundary_json(const BoundaryData& bd);

// {levels: [[x, ...], ...], blue_dots: [[eta, xi], ...]}
json tiling_json(const TilingConfig& t);
RedDotConfig levels_from_json(const json& doc);

json read_json_file(const std::string& path);

}  // namespace tilekit
