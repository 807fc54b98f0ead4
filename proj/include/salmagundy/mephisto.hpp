#pragma once

#include "salmagundy/game.hpp"

#include <cstdint>

namespace salmagundy {

struct Caps {
    int max_new_nodes = 0;    // optional fiber nodes per blowup
    int max_order_steps = 0;  // order raises (in units of 1/B) above the forced minimum
};

struct Policy {
    enum class Kind { Canonical, Random, Adversarial };
    Kind kind = Kind::Canonical;
    std::uint64_t seed = 0;
    Caps caps;

    // "canonical", "random:<seed>" or "adversarial".
    static Policy parse(const std::string& text, Caps caps = {});
    std::string name() const;
};

// No rule-conforming bundle was found; `blocking` holds the violations of
// the last attempt.
struct PolicyFailure : std::runtime_error {
    Violations blocking;
    PolicyFailure(const std::string& what, Violations vs);
};

// One point of Mephisto's capped choice space for a blowup.
struct BlowupChoice {
    std::vector<int> extra_fiber_dims;
    bool include_exceptional = true;  // put e into S' where item 9 allows
    int order_step = 0;               // uniform raise of free orders
    std::map<NodeId, int> node_steps; // per-node overrides of order_step
};

// The structural blowup plus the optional fiber nodes of `extras`.
BoardTransform canonical_blowup_board(const BoardPtr& b, const NodeId& z, const std::vector<int>& extras = {});

// Builds the bundle for one choice, dropping singular nodes that block a
// validator until every response passes. Throws PolicyFailure when no node
// is left to drop.
ResponseBundle build_blowup_bundle(const GameState& st, const NodeId& z, const BlowupChoice& choice);

// Every choice within the caps, in a fixed order.
std::vector<BlowupChoice> blowup_choices(const GameState& st, const NodeId& z, const Caps& caps);

// The descent child's order function with every free order raised by
// `step` units of 1/B.
Scenario descent_child(const Scenario& parent, int step = 0);

ResponseBundle respond_blowup(const GameState& st, const NodeId& z, const Policy& policy);
ResponseBundle respond_call(const GameState& st, const QuestRelation& call, const Policy& policy);
ResponseBundle respond(const GameState& st, const Move& move, const Policy& policy);

// All distinct validated bundles of the capped choice space (the explorer's
// branching set). Order is the enumeration order of the choices.
std::vector<ResponseBundle> candidate_bundles(const GameState& st, const Move& move, const Caps& caps);

}  // namespace salmagundy
