#pragma once

#include "salmagundy/play.hpp"

#include <cstdint>

namespace salmagundy {

struct BoardParams {
    int max_nodes = 8;
    int n = 2;
};

// Random board with a unique top "v0" of dim n; other nodes v1, v2, ...
BoardPtr gen_board(std::uint64_t seed, const BoardParams& params);

struct ScenarioParams {
    int d = 1;
    std::int64_t B = 1;
    int jib_count = 0;
    bool nonempty = false;  // retry until S is non-empty
    int attempts = 200;
};

// Valid scenario with M = <0>, S contained in T, finite orders >= 1 on the
// 1/B grid and pairwise remote infinity nodes of dim d. Throws
// std::runtime_error when no valid scenario turns up within the attempts.
Scenario gen_scenario(std::uint64_t seed, const BoardPtr& b, const ScenarioParams& params);

// A board plus a scenario drawn together: the board is redrawn until the
// scenario generator succeeds with a non-empty singular set.
Scenario gen_game_start(std::uint64_t seed, int max_nodes, int max_n, int max_d, std::int64_t B = 1);

struct MonomialParams {
    int max_nodes = 12;
    int max_jibs = 5;
    std::int64_t max_B = 12;
};

// Scenario whose only generator of M is complete: jibs over a top, one
// singular node s_K below each heavy jib set K (multiplicity >= 1) with
// ord(s_K) = m(K).
Scenario gen_monomial(std::uint64_t seed, const MonomialParams& params);

struct ExploreReport {
    bool all_won = true;
    std::int64_t branch_count = 0;  // leaves of the game tree
    int max_depth = 0;
    std::int64_t won = 0, capped = 0, stuck = 0, failed = 0;
    std::optional<std::vector<Event>> counterexample;
};

// Dido against every bundle of the capped choice space, branching at each
// Mephisto move. Leaves: won, depth cap, no valid bundle (stuck), strategy
// failure.
ExploreReport explore(const Scenario& c0, const Caps& caps, int depth_cap);

std::string export_dot(const Scenario& c);
std::string export_dot(const GameState& st);

}  // namespace salmagundy
