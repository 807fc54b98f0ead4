#pragma once

#include "salmagundy/game.hpp"

#include <filesystem>

namespace salmagundy {

using nlohmann::json;

json to_json(const Board& b);
BoardPtr board_from_json(const json& j);

// With include_board = false the "board" key is omitted and the scenario is
// rebuilt on the board passed to scenario_from_json.
json to_json(const Scenario& c, bool include_board = true);
Scenario scenario_from_json(const json& j, BoardPtr board = nullptr);

json to_json(const MonomialFactor& m);
MonomialFactor factor_from_json(const json& j);

json to_json(const QuestRelation& r);
QuestRelation relation_from_json(const json& j);

json to_json(const Move& m);
Move move_from_json(const json& j);

// The transform source is not serialized; it is the board the bundle
// answers to.
json to_json(const BoardTransform& t);
BoardTransform transform_from_json(const json& j, BoardPtr source);

json to_json(const ResponseBundle& b);
ResponseBundle bundle_from_json(const json& j, BoardPtr source);

json to_json(const Violation& v);
json to_json(const Violations& vs);

// Board and quests (without trace); bit-exact comparison of states goes
// through this form.
json state_to_json(const GameState& s);

json to_json(const Event& e);
Event event_from_json(const json& j);

// Scenario files may carry the board inline or as a path (relative to the
// scenario file) in "board".
Scenario load_scenario(const std::filesystem::path& p);
BoardPtr load_board(const std::filesystem::path& p);
json load_json(const std::filesystem::path& p);

}  // namespace salmagundy
