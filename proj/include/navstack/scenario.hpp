#ifndef NAVSTACK_SCENARIO_HPP_
#define NAVSTACK_SCENARIO_HPP_

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "navstack/simulator.hpp"

namespace navstack {

/// Parses the JSON scenario document. Throws std::invalid_argument naming the
/// offending field on type or range errors. Angle-valued keys carry a _deg
/// suffix and are given in degrees; everything else is SI.
Scenario scenario_from_json(const nlohmann::json& j);

/// Round-trip serialization of a resolved scenario (all defaults filled in).
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);

}  // namespace navstack

#endif  // NAVSTACK_SCENARIO_HPP_
