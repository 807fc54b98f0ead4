#pragma once

#include "salmagundy/game.hpp"

namespace salmagundy {

// All K in H with some singular node below every member of K. Sorted by
// size (descending), then by ids.
std::vector<NodeSet> critical_sets(const Scenario& c);
Rational multiplicity(const NodeSet& K, const MonomialFactor& m);

// The inclusion-minimal critical set with multiplicity >= 1 (ties: smaller
// size, then ids). Throws PreconditionError if m is not complete or there
// is none.
NodeSet minimal_heavy_set(const Scenario& c, const MonomialFactor& m);
// N_K for that set: maximal singular nodes below all of K, by id.
std::vector<NodeId> elementary_step(const Scenario& c, const MonomialFactor& m);

// Multiplicities (>= 1) of all critical sets, sorted descending.
std::vector<Rational> monomial_measure(const Scenario& c, const MonomialFactor& m);
// Dershowitz-Manna: a < b iff a != b and every element of a - b is
// dominated by some element of b - a.
bool multiset_less(const std::vector<Rational>& a, const std::vector<Rational>& b);

enum class Phase { Monomial, QuotientLoop, DescentDriver, Dim0 };
const char* to_string(Phase p);

struct StrategyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StrategyFrame {
    struct Triple {
        NodeSet K;
        QuestId P = -1, R = -1, Q = -1;
    };

    QuestId quest = kMainQuest;
    Phase phase = Phase::QuotientLoop;

    // QuotientLoop and Monomial
    MonomialFactor tracked;
    std::optional<QuestId> active_child;
    Rational active_scale{0};
    std::optional<OrderValue> last_q;
    bool infinity_blowup = false;

    // Monomial
    std::vector<NodeId> pending;
    std::optional<std::vector<Rational>> last_measure;

    // DescentDriver
    bool started = false;
    std::vector<Triple> triples;
    NodeSet released;  // L
    std::size_t opened = 0;  // triples fully opened
    int stage = 0;           // next call of the triple being opened
    std::size_t current = 0; // triple being driven
};

struct DidoStats {
    int elementary_steps = 0;
    int quotient_calls = 0;
    int infinity_blowups = 0;
    int blowups = 0;
};

// The strict winning strategy. Frames persist between rounds; copy the
// object to branch a game.
class Dido {
public:
    // `initial_factor` starts the main quest's quotient loop from a given
    // member of M (a complete one switches straight to the monomial phase).
    explicit Dido(std::optional<MonomialFactor> initial_factor = std::nullopt);

    Move next(const GameState& st);
    // Bookkeeping after a round: relifts tracked factors, records new
    // children, checks the termination measures.
    void observe(const GameState& before, const Move& move, const ResponseBundle& bundle, const GameState& after);

    const std::vector<std::string>& assertion_failures() const { return failures_; }
    const std::vector<nlohmann::json>& audit() const { return audit_; }
    const DidoStats& stats() const { return stats_; }
    const std::map<QuestId, StrategyFrame>& frames() const { return frames_; }

private:
    StrategyFrame& frame(const GameState& st, QuestId id);
    Move drive(const GameState& st, QuestId id);
    Move quotient_loop(const GameState& st, StrategyFrame& f);
    Move monomial(const GameState& st, StrategyFrame& f);
    Move descent_driver(const GameState& st, StrategyFrame& f);
    Move dim0(const GameState& st, StrategyFrame& f);
    void fail(std::string what) { failures_.push_back(std::move(what)); }
    void log(const GameState& st, const StrategyFrame& f, const Move& m, nlohmann::json measure);

    std::optional<MonomialFactor> initial_factor_;
    std::map<QuestId, StrategyFrame> frames_;
    QuestId caller_ = -1;  // frame whose call is awaiting its child id
    std::vector<std::string> failures_;
    std::vector<nlohmann::json> audit_;
    DidoStats stats_;
};

}  // namespace salmagundy
