#pragma once

#include "pwldyn/construct.hpp"
#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/sharkovsky.hpp"
#include "pwldyn/towers.hpp"

#include <json.hpp>

#include <string>

namespace pwldyn {

using json = nlohmann::json;

json map_to_json(const PwlMap& f);
PwlMap map_from_json(const json& j);

json rootset_to_json(const RootSet& rs);
json orbit_to_json(const Orbit& o);
json closure_report_to_json(const ClosureReport& rep);
json nested_report_to_json(const NestedReport& rep);
json labeled_point_to_json(const LabeledPoint& p);
json context_to_json(const ConstructionContext& ctx);
json layer1_to_json(const Layer1& L);
json compartment_to_json(const Compartment& c);
json tower_to_json(const Tower& t);
json nonexistence_to_json(const NonexistenceReport& rep);

/// Resolves a CLI map argument: a catalog name ("tent", "example_g",
/// "tent_scaled:2/3", "tent_trunc:6/7", "tent_clamp:2/7,6/7") or a path to a
/// map JSON file.
PwlMap parse_map_spec(const std::string& spec);

/// Comma-separated rationals, e.g. "0,1/2,1".
std::vector<Rational> parse_rational_list(const std::string& s);

}  // namespace pwldyn
