#pragma once

#include "salmagundy/dido.hpp"
#include "salmagundy/mephisto.hpp"

namespace salmagundy {

enum class Outcome { Won, CapReached, PolicyFailure, StrategyFailure };
const char* to_string(Outcome o);

struct PlayResult {
    Outcome outcome = Outcome::CapReached;
    GameState state;
    std::string message;
    Violations blocking;  // policy failures and rejected bundles
    Dido dido;

    int rounds() const { return state.round; }
};

// Dido against `policy` until the main quest is won or round_cap rounds
// have been played.
PlayResult play(const Scenario& c0, const Policy& policy, int round_cap,
                std::optional<MonomialFactor> initial_factor = std::nullopt);
PlayResult play_from(GameState st, Dido dido, const Policy& policy, int round_cap);

// Re-applies the recorded moves and bundles from the start event.
GameState replay(const std::vector<Event>& trace);

// Every blowup center lay in the main quest's singular set.
bool strictness_certificate(const GameState& st);

}  // namespace salmagundy
