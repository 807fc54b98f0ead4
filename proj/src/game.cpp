#include "salmagundy/game.hpp"

#include "salmagundy/io.hpp"

namespace salmagundy {

const char* to_string(QuestStatus s) {
    switch (s) {
        case QuestStatus::Open: return "open";
        case QuestStatus::Won: return "won";
        case QuestStatus::Discarded: return "discarded";
    }
    return "?";
}

bool GameState::is_open(QuestId id) const {
    auto it = quests.find(id);
    return it != quests.end() && it->second.status == QuestStatus::Open;
}

std::vector<QuestId> GameState::open_quests() const {
    std::vector<QuestId> out;
    for (const auto& [id, q] : quests)
        if (q.status == QuestStatus::Open) out.push_back(id);
    return out;
}

std::vector<QuestId> GameState::open_descendants(QuestId id) const {
    std::set<QuestId> below{id};
    std::vector<QuestId> out;
    // Children always carry larger ids than their parents.
    for (const auto& [qid, q] : quests) {
        if (!q.relation || !below.count(q.relation->parent)) continue;
        below.insert(qid);
        if (q.status == QuestStatus::Open) out.push_back(qid);
    }
    return out;
}

namespace {

std::string violations_summary(const Violations& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += "; ";
        out += v.rule + "." + std::to_string(v.issue) + ": " + v.detail;
        if (out.size() > 400) break;
    }
    return out;
}

void push_event(GameState& s, int round, const char* actor, json payload) {
    s.trace.push_back({round, static_cast<int>(s.trace.size()), actor, std::move(payload)});
}

Violation game_violation(int issue, std::string detail, std::vector<NodeId> w = {}) {
    return {"GAME", issue, std::move(w), std::move(detail)};
}

// Prefixes quest ids to violations coming from per-quest validators.
void append_for(Violations& out, const Violations& more, const std::string& who) {
    for (auto v : more) {
        v.detail = who + ": " + v.detail;
        out.push_back(std::move(v));
    }
}

std::string quest_name(QuestId id) { return "quest " + std::to_string(id); }

}  // namespace

InvalidBundle::InvalidBundle(Violations vs)
    : std::runtime_error("invalid bundle: " + violations_summary(vs)), violations(std::move(vs)) {}

GameState new_game(const Scenario& c0, bool require_zero_factor) {
    auto vs = validate_scenario(c0);
    append(vs, grid_violations(c0));
    if (!vs.empty()) throw std::invalid_argument("invalid initial scenario: " + violations_summary(vs));
    if (require_zero_factor && !(c0.M == FactorSet::zero(c0.H))) throw std::invalid_argument("initial scenario must have M = <0>");
    for (const auto& [s, o] : c0.ord)
        if (o < OrderValue(1)) throw std::invalid_argument("initial order at " + s + " is below 1");
    GameState st;
    st.board = c0.board;
    st.quests[kMainQuest] = Quest{kMainQuest, std::nullopt, c0, QuestStatus::Open};
    push_event(st, 0, "Umpire", {{"type", "start"}, {"scenario", to_json(c0)}, {"zero_factor", require_zero_factor}});
    if (is_resolved(c0)) {
        st.quests[kMainQuest].status = QuestStatus::Won;
        st.over = true;
        push_event(st, 0, "Umpire", {{"type", "game_won"}, {"rounds", 0}});
    }
    return st;
}

Violations validate_move(const GameState& st, const Move& move) {
    Violations out;
    if (st.over) {
        out.push_back(game_violation(1, "the game is over"));
        return out;
    }
    if (move.kind == Move::Kind::Blowup) {
        if (!st.board->contains(move.center))
            out.push_back(game_violation(2, "unknown center " + move.center, {move.center}));
        else if (!is_admissible(st.main().scenario, move.center))
            out.push_back(game_violation(2, "center " + move.center + " is not admissible for the main quest", {move.center}));
        return out;
    }
    const auto& r = move.call;
    if (!st.is_open(r.parent)) {
        out.push_back(game_violation(3, "call on quest " + std::to_string(r.parent) + ", which is not open"));
        return out;
    }
    const Scenario& p = st.quest(r.parent).scenario;
    auto jibs_ok = [&] {
        for (const auto& h : r.jibs)
            if (!p.H.count(h)) out.push_back(game_violation(3, h + " is not a jib of the parent", {h}));
    };
    switch (r.kind) {
        case QuestKind::Main: out.push_back(game_violation(3, "the main quest cannot be called")); break;
        case QuestKind::Relaxation:
        case QuestKind::Transversality: jibs_ok(); break;
        case QuestKind::Quotient: {
            if (r.scale <= 0) out.push_back(game_violation(3, "quotient scale must be positive"));
            NodeSet dom;
            for (const auto& [h, w] : r.factor.weights) {
                dom.insert(h);
                if (w.is_infinite()) out.push_back(game_violation(3, "quotient factor must be finite", {h}));
            }
            if (dom != p.H) out.push_back(game_violation(3, "quotient factor domain differs from H"));
            else if (!p.M.contains(r.factor)) out.push_back(game_violation(3, "quotient factor is not in M"));
            break;
        }
        case QuestKind::Descent:
            if (!is_tight(p)) out.push_back(game_violation(3, "descent requires a tight scenario"));
            if (!p.H.empty()) out.push_back(game_violation(3, "descent requires an empty handicap"));
            if (p.d < 1) out.push_back(game_violation(3, "descent requires d >= 1"));
            break;
    }
    return out;
}

std::set<QuestId> forced_discards(const GameState& st, const NodeId& z) {
    std::set<QuestId> out;
    BoardTransform bt;
    bool have_bt = false;
    for (QuestId id : st.open_quests()) {
        const Quest& q = st.quest(id);
        bool drop = !is_admissible(q.scenario, z);
        if (!drop && q.relation) {
            if (out.count(q.relation->parent)) drop = true;
            else if (q.relation->kind == QuestKind::Quotient) {
                if (!have_bt) {
                    bt = blowup_board(st.board, z);
                    have_bt = true;
                }
                try {
                    quotient_lifted_factor(q.relation->factor, z, q.relation->scale,
                                           st.quest(q.relation->parent).scenario, bt);
                } catch (const PreconditionError&) {
                    drop = true;
                }
            }
        }
        if (drop) out.insert(id);
    }
    return out;
}

Violations validate_bundle(const GameState& st, const Move& move, const ResponseBundle& bundle) {
    Violations out = validate_move(st, move);
    if (!out.empty()) return out;
    const BoardTransform& bt = bundle.transform;
    if (!bt.source || !bt.target || !(*bt.source == *st.board)) {
        out.push_back(game_violation(4, "board transform does not start from the current board"));
        return out;
    }
    const bool blowup = move.kind == Move::Kind::Blowup;
    if ((bt.kind == TransformKind::Blowup) != blowup) {
        out.push_back(game_violation(4, blowup ? "a blowup move needs a blowup transform" : "a call needs a refinement"));
        return out;
    }
    if (blowup && (bt.center != move.center)) {
        out.push_back(game_violation(4, "transform center differs from the move", {move.center}));
        return out;
    }
    append(out, validate_board_transform(bt));
    if (!out.empty()) return out;

    std::set<QuestId> expected;
    for (QuestId id : st.open_quests()) expected.insert(id);
    if (blowup) {
        auto drop = forced_discards(st, move.center);
        if (bundle.discarded != drop) out.push_back(game_violation(5, "discarded quests differ from those the center forces"));
        for (QuestId id : drop) expected.erase(id);
    } else {
        if (!bundle.discarded.empty()) out.push_back(game_violation(5, "a call discards no quest"));
        expected.insert(st.next_quest_id);
    }
    std::set<QuestId> got;
    for (const auto& [id, c] : bundle.responses) got.insert(id);
    if (got != expected) {
        out.push_back(game_violation(6, "responses do not cover exactly the surviving quests"));
        return out;
    }
    for (const auto& [id, c] : bundle.responses)
        if (!c.board || !(*c.board == *bt.target)) {
            out.push_back(game_violation(6, quest_name(id) + " response is not on the new board"));
            return out;
        }

    try {
        for (QuestId id : st.open_quests()) {
            if (!got.count(id)) continue;
            const Quest& q = st.quest(id);
            const Scenario& now = bundle.responses.at(id);
            append_for(out, validate_transform(q.scenario, bt, now), quest_name(id));
            if (!q.relation || !got.count(q.relation->parent)) continue;
            const auto& rel = *q.relation;
            const Scenario& parent_old = st.quest(rel.parent).scenario;
            const Scenario& parent_now = bundle.responses.at(rel.parent);
            if (blowup)
                append_for(out, commutes(rel, parent_old, q.scenario, parent_now, now, bt), quest_name(id));
            else
                append_for(out, relation_holds(transport_relation(rel, parent_old, bt), parent_now, now), quest_name(id));
        }
        if (!blowup) {
            const auto& r = move.call;
            const Scenario& child = bundle.responses.at(st.next_quest_id);
            const Scenario& parent_old = st.quest(r.parent).scenario;
            const Scenario& parent_now = bundle.responses.at(r.parent);
            auto moved = transport_relation(r, parent_old, bt);
            Violations vs;
            switch (r.kind) {
                case QuestKind::Relaxation: vs = relaxation_check(parent_now, moved.jibs, child); break;
                case QuestKind::Descent: vs = descent_check(parent_old, bt, child); break;
                case QuestKind::Transversality:
                    vs = compare_scenarios(transversality_response(parent_now, moved.jibs), child, "JIB", 0);
                    break;
                case QuestKind::Quotient:
                    vs = compare_scenarios(quotient_response(parent_now, moved.factor, moved.scale), child, "QUOT", 0);
                    break;
                case QuestKind::Main: break;
            }
            append_for(out, vs, "new " + quest_name(st.next_quest_id));
        }
    } catch (const std::exception& e) {
        out.push_back(game_violation(7, std::string("bundle could not be checked: ") + e.what()));
    }
    return out;
}

GameState snapshot(const GameState& s) {
    GameState out;
    out.board = s.board;
    out.quests = s.quests;
    out.round = s.round;
    out.next_quest_id = s.next_quest_id;
    out.over = s.over;
    return out;
}

GameState apply_round(GameState st, const Move& move, const ResponseBundle& bundle) {
    auto vs = validate_bundle(st, move, bundle);
    if (!vs.empty()) throw InvalidBundle(std::move(vs));
    return commit_round(std::move(st), move, bundle);
}

GameState commit_round(GameState st, const Move& move, const ResponseBundle& bundle) {
    const BoardTransform& bt = bundle.transform;
    const int round = st.round + 1;
    push_event(st, round, "Dido", {{"type", "move"}, {"move", to_json(move)}});
    push_event(st, round, "Mephisto", {{"type", "bundle"}, {"bundle", to_json(bundle)}});
    if (move.kind == Move::Kind::Blowup) {
        bool strict = st.main().scenario.S.count(move.center) != 0;
        push_event(st, round, "Umpire", {{"type", "strictness"}, {"center", move.center}, {"in_main_singular", strict}});
    }

    // Relations move with the old parent scenarios, so compute them first.
    std::map<QuestId, QuestRelation> moved;
    for (QuestId id : st.open_quests()) {
        const Quest& q = st.quest(id);
        if (q.relation && bundle.responses.count(id) && bundle.responses.count(q.relation->parent))
            moved[id] = transport_relation(*q.relation, st.quest(q.relation->parent).scenario, bt);
    }
    std::optional<QuestRelation> call_rel;
    if (move.kind == Move::Kind::Call)
        call_rel = transport_relation(move.call, st.quest(move.call.parent).scenario, bt);
    st.board = bt.target;
    for (QuestId id : bundle.discarded) {
        st.quests.at(id).status = QuestStatus::Discarded;
        push_event(st, round, "Umpire", {{"type", "closed"}, {"quest", id}, {"status", "discarded"}});
    }
    for (const auto& [id, c] : bundle.responses) {
        if (id == st.next_quest_id && move.kind == Move::Kind::Call) continue;
        Quest& q = st.quests.at(id);
        q.scenario = c;
        q.scenario.board = st.board;
        if (moved.count(id)) q.relation = moved.at(id);
    }
    if (move.kind == Move::Kind::Call) {
        QuestId id = st.next_quest_id++;
        QuestRelation rel = *call_rel;
        rel.child = id;
        Quest q{id, rel, bundle.responses.at(id), QuestStatus::Open};
        q.scenario.board = st.board;
        st.quests[id] = std::move(q);
        push_event(st, round, "Umpire", {{"type", "opened"}, {"quest", id}, {"relation", to_json(rel)}});
    }
    for (QuestId id : st.open_quests()) {
        Quest& q = st.quests.at(id);
        if (q.status != QuestStatus::Open || !is_resolved(q.scenario)) continue;
        q.status = QuestStatus::Won;
        push_event(st, round, "Umpire", {{"type", "closed"}, {"quest", id}, {"status", "won"}});
        for (QuestId sub : st.open_descendants(id)) {
            st.quests.at(sub).status = QuestStatus::Discarded;
            push_event(st, round, "Umpire", {{"type", "closed"}, {"quest", sub}, {"status", "discarded"}});
        }
    }
    st.round = round;
    if (st.main().status == QuestStatus::Won) {
        st.over = true;
        push_event(st, round, "Umpire", {{"type", "game_won"}, {"rounds", round}});
    }
    return st;
}

}  // namespace salmagundy
