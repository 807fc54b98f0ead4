#pragma once

#include "salmagundy/transform.hpp"

#include "json.hpp"

#include <stdexcept>

namespace salmagundy {

using QuestId = int;
constexpr QuestId kMainQuest = 1;

enum class QuestStatus { Open, Won, Discarded };
const char* to_string(QuestStatus s);

struct Quest {
    QuestId id = kMainQuest;
    std::optional<QuestRelation> relation;  // absent for the main quest
    Scenario scenario;
    QuestStatus status = QuestStatus::Open;

    bool operator==(const Quest&) const = default;
};

// Dido's move. For a call, `call.parent` names the quest the call is placed
// on; `call.child` is assigned by the umpire.
struct Move {
    enum class Kind { Blowup, Call };
    Kind kind = Kind::Blowup;
    NodeId center;
    QuestRelation call;

    static Move blowup(NodeId z) { return {Kind::Blowup, std::move(z), {}}; }
    static Move make_call(QuestRelation r) { return {Kind::Call, {}, std::move(r)}; }
    bool operator==(const Move&) const = default;
};

struct ResponseBundle {
    BoardTransform transform;
    std::map<QuestId, Scenario> responses;
    std::set<QuestId> discarded;
};

struct Event {
    int round = 0;
    int seq = 0;
    std::string actor;  // Dido, Mephisto or Umpire
    nlohmann::json payload;
};

struct GameState {
    BoardPtr board;
    std::map<QuestId, Quest> quests;
    int round = 0;
    QuestId next_quest_id = kMainQuest + 1;
    bool over = false;
    std::vector<Event> trace;

    const Quest& main() const { return quests.at(kMainQuest); }
    const Quest& quest(QuestId id) const { return quests.at(id); }
    bool is_open(QuestId id) const;
    std::vector<QuestId> open_quests() const;
    // Open quests strictly below `id` in the quest tree.
    std::vector<QuestId> open_descendants(QuestId id) const;
};

struct InvalidBundle : std::runtime_error {
    Violations violations;
    explicit InvalidBundle(Violations vs);
};

// Rejects invalid scenarios, factor sets other than <0> (unless
// require_zero_factor is false) and finite orders below 1. A resolved c0
// yields a finished game.
GameState new_game(const Scenario& c0, bool require_zero_factor = true);

// Call preconditions and the admissibility of a blowup center for the main
// quest, as GAME violations.
Violations validate_move(const GameState& state, const Move& move);

// Quests that must be discarded under a blowup at z: those for which z is not
// admissible, quotient quests whose lifted factor would be negative, and
// every open descendant of either.
std::set<QuestId> forced_discards(const GameState& state, const NodeId& z);

Violations validate_bundle(const GameState& state, const Move& move, const ResponseBundle& bundle);

// Throws InvalidBundle (state untouched) when validate_bundle is non-empty.
GameState apply_round(GameState state, const Move& move, const ResponseBundle& bundle);
// The state change of apply_round for a bundle validate_bundle accepted.
GameState commit_round(GameState state, const Move& move, const ResponseBundle& bundle);

// The state without its trace.
GameState snapshot(const GameState& s);

}  // namespace salmagundy
