#include "salmagundy/play.hpp"

#include "salmagundy/io.hpp"

namespace salmagundy {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Won: return "won";
        case Outcome::CapReached: return "cap_reached";
        case Outcome::PolicyFailure: return "policy_failure";
        case Outcome::StrategyFailure: return "strategy_failure";
    }
    return "?";
}

PlayResult play(const Scenario& c0, const Policy& policy, int round_cap, std::optional<MonomialFactor> initial_factor) {
    bool zero = !initial_factor.has_value();
    return play_from(new_game(c0, zero), Dido(std::move(initial_factor)), policy, round_cap);
}

PlayResult play_from(GameState st, Dido dido, const Policy& policy, int round_cap) {
    PlayResult r;
    while (!st.over && st.round < round_cap) {
        Move move;
        try {
            move = dido.next(st);
        } catch (const StrategyFailure& e) {
            r.outcome = Outcome::StrategyFailure;
            r.message = e.what();
            break;
        }
        ResponseBundle bundle;
        try {
            bundle = respond(st, move, policy);
        } catch (const PolicyFailure& e) {
            r.outcome = Outcome::PolicyFailure;
            r.message = e.what();
            r.blocking = e.blocking;
            break;
        } catch (const PreconditionError& e) {
            r.outcome = Outcome::StrategyFailure;
            r.message = std::string("illegal move: ") + e.what();
            break;
        }
        auto vs = validate_bundle(st, move, bundle);
        if (!vs.empty()) {
            InvalidBundle e(vs);
            r.outcome = Outcome::PolicyFailure;
            r.message = e.what();
            r.blocking = std::move(vs);
            break;
        }
        GameState before = snapshot(st);
        st = commit_round(std::move(st), move, bundle);
        dido.observe(before, move, bundle, st);
    }
    if (st.over) r.outcome = Outcome::Won;
    r.state = std::move(st);
    r.dido = std::move(dido);
    return r;
}

GameState replay(const std::vector<Event>& trace) {
    std::optional<GameState> st;
    std::optional<Move> move;
    for (const auto& e : trace) {
        const auto& p = e.payload;
        auto type = p.at("type").get<std::string>();
        if (type == "start") {
            st = new_game(scenario_from_json(p.at("scenario")), p.value("zero_factor", true));
        } else if (type == "move") {
            move = move_from_json(p.at("move"));
        } else if (type == "bundle") {
            if (!st || !move) throw std::invalid_argument("bundle without a preceding move");
            auto bundle = bundle_from_json(p.at("bundle"), st->board);
            st = apply_round(std::move(*st), *move, bundle);
            move.reset();
        }
    }
    if (!st) throw std::invalid_argument("trace has no start event");
    return *st;
}

bool strictness_certificate(const GameState& st) {
    for (const auto& e : st.trace)
        if (e.payload.at("type") == "strictness" && !e.payload.at("in_main_singular").get<bool>()) return false;
    return true;
}

}  // namespace salmagundy
