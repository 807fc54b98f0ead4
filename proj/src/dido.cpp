#include "salmagundy/dido.hpp"

#include "salmagundy/io.hpp"

#include <algorithm>

namespace salmagundy {

namespace {

bool set_order(const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

std::vector<NodeSet> subsets(const NodeSet& s) {
    std::vector<NodeId> v(s.begin(), s.end());
    std::vector<NodeSet> out;
    for (std::uint32_t mask = 0; mask < (1u << v.size()); ++mask) {
        NodeSet k;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask & (1u << i)) k.insert(v[i]);
        out.push_back(std::move(k));
    }
    return out;
}

bool below_all(const Scenario& c, const NodeId& s, const NodeSet& K) {
    for (const auto& h : K)
        if (!c.b().leq(s, h)) return false;
    return true;
}

json measure_json(const std::vector<Rational>& m) {
    json out = json::array();
    for (const auto& r : m) out.push_back(to_string(r));
    return out;
}

OrderValue max_excess(const Scenario& c, const MonomialFactor& m) {
    OrderValue q(0);
    for (const auto& s : c.S) q = std::max(q, excess(c, m, s));
    return q;
}

int infinity_count(const Scenario& c) {
    int k = 0;
    for (const auto& [s, o] : c.ord)
        if (o.is_infinite() && c.b().dim(s) == c.d) ++k;
    return k;
}

}  // namespace

std::vector<NodeSet> critical_sets(const Scenario& c) {
    std::set<NodeSet> all;
    for (const auto& s : c.S)
        for (auto& K : subsets(jibs_above(c, s))) all.insert(std::move(K));
    std::vector<NodeSet> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), set_order);
    return out;
}

Rational multiplicity(const NodeSet& K, const MonomialFactor& m) {
    Rational sum(0);
    for (const auto& h : K) {
        auto w = m.at(h);
        if (w.is_infinite()) throw PreconditionError("infinite weight in multiplicity");
        sum += w.value();
    }
    return sum;
}

NodeSet minimal_heavy_set(const Scenario& c, const MonomialFactor& m) {
    if (!is_complete(c, m)) throw PreconditionError("factor is not complete");
    std::vector<NodeSet> heavy;
    for (const auto& K : critical_sets(c))
        if (multiplicity(K, m) >= 1) heavy.push_back(K);
    if (heavy.empty()) throw PreconditionError("no critical set of multiplicity >= 1");
    std::sort(heavy.begin(), heavy.end(), [](const NodeSet& a, const NodeSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& K : heavy) {
        bool minimal = true;
        for (const auto& L : heavy)
            if (L.size() < K.size() && std::includes(K.begin(), K.end(), L.begin(), L.end())) minimal = false;
        if (minimal) return K;
    }
    return heavy.front();
}

std::vector<NodeId> elementary_step(const Scenario& c, const MonomialFactor& m) {
    auto K = minimal_heavy_set(c, m);
    std::vector<NodeId> out;
    for (const auto& s : c.S) {
        if (!below_all(c, s, K)) continue;
        bool maximal = true;
        for (const auto& t : c.S)
            if (c.b().less(s, t) && below_all(c, t, K)) maximal = false;
        if (maximal) out.push_back(s);
    }
    return out;
}

std::vector<Rational> monomial_measure(const Scenario& c, const MonomialFactor& m) {
    std::vector<Rational> out;
    for (const auto& K : critical_sets(c)) {
        auto w = multiplicity(K, m);
        if (w >= 1) out.push_back(w);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

bool multiset_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> x = a, y = b;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<Rational> only_a, only_b;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(only_a));
    std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(only_b));
    if (only_a.empty() && only_b.empty()) return false;
    for (const auto& v : only_a) {
        bool dominated = false;
        for (const auto& w : only_b) dominated = dominated || v < w;
        if (!dominated) return false;
    }
    return true;
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::Monomial: return "monomial";
        case Phase::QuotientLoop: return "quotient_loop";
        case Phase::DescentDriver: return "descent_driver";
        case Phase::Dim0: return "dim0";
    }
    return "?";
}

Dido::Dido(std::optional<MonomialFactor> initial_factor) : initial_factor_(std::move(initial_factor)) {}

StrategyFrame& Dido::frame(const GameState& st, QuestId id) {
    auto it = frames_.find(id);
    if (it != frames_.end()) return it->second;
    const Quest& q = st.quest(id);
    StrategyFrame f;
    f.quest = id;
    const Scenario& c = q.scenario;
    if (!q.relation) {
        f.phase = c.d == 0 ? Phase::Dim0 : Phase::QuotientLoop;
        f.tracked = initial_factor_ ? *initial_factor_ : zero_factor(c.H);
    } else if (q.relation->kind == QuestKind::Quotient) {
        f.phase = c.d == 0 ? Phase::Dim0 : Phase::DescentDriver;
    } else if (q.relation->kind == QuestKind::Descent) {
        f.phase = c.d == 0 ? Phase::Dim0 : Phase::QuotientLoop;
        f.tracked = zero_factor(c.H);
    } else {
        throw StrategyFailure(std::string("no strategy drives a ") + to_string(q.relation->kind) + " quest");
    }
    return frames_.emplace(id, std::move(f)).first->second;
}

void Dido::log(const GameState& st, const StrategyFrame& f, const Move& m, json measure) {
    audit_.push_back({{"round", st.round + 1},
                      {"quest", f.quest},
                      {"phase", to_string(f.phase)},
                      {"move", to_json(m)},
                      {"measure", std::move(measure)}});
}

Move Dido::next(const GameState& st) {
    if (st.over) throw std::logic_error("the game is over");
    caller_ = -1;
    return drive(st, kMainQuest);
}

Move Dido::drive(const GameState& st, QuestId id) {
    if (!st.is_open(id)) throw StrategyFailure("asked to drive closed quest " + std::to_string(id));
    StrategyFrame& f = frame(st, id);
    switch (f.phase) {
        case Phase::QuotientLoop: return quotient_loop(st, f);
        case Phase::Monomial: return monomial(st, f);
        case Phase::DescentDriver: return descent_driver(st, f);
        case Phase::Dim0: return dim0(st, f);
    }
    throw std::logic_error("unknown phase");
}

Move Dido::quotient_loop(const GameState& st, StrategyFrame& f) {
    const Scenario& c = st.quest(f.quest).scenario;
    if (f.active_child) {
        if (st.is_open(*f.active_child)) return drive(st, *f.active_child);
        if (st.quest(*f.active_child).status != QuestStatus::Won)
            fail("quotient child " + std::to_string(*f.active_child) + " of quest " + std::to_string(f.quest) +
                 " was discarded");
        f.active_child.reset();
        auto q = max_excess(c, f.tracked);
        if (f.last_q && !(q < *f.last_q))
            fail("quest " + std::to_string(f.quest) + ": max(ord - m) did not drop: " + q.str() + " after " +
                 f.last_q->str());
        if (q.is_finite() && !on_grid(q.value(), c.B))
            fail("quest " + std::to_string(f.quest) + ": max(ord - m) = " + q.str() + " is off the 1/B grid");
    }
    if (!c.M.contains(f.tracked)) fail("quest " + std::to_string(f.quest) + ": tracked factor left M");
    if (is_complete(c, f.tracked)) {
        f.phase = Phase::Monomial;
        return monomial(st, f);
    }
    auto q = max_excess(c, f.tracked);
    if (q.is_infinite()) {
        std::optional<NodeId> pick;
        for (const auto& s : c.S) {
            if (!c.ord.at(s).is_infinite() || c.b().dim(s) != c.d) continue;
            bool maximal = true;
            for (const auto& t : c.S)
                if (c.b().less(s, t) && c.ord.at(t).is_infinite()) maximal = false;
            if (maximal) {
                pick = s;
                break;
            }
        }
        if (!pick) throw StrategyFailure("no maximal infinity node of dimension d in quest " + std::to_string(f.quest));
        f.infinity_blowup = true;
        auto m = Move::blowup(*pick);
        log(st, f, m, {{"q", "inf"}, {"infinity_nodes", infinity_count(c)}});
        return m;
    }
    QuestRelation call;
    call.kind = QuestKind::Quotient;
    call.parent = f.quest;
    call.factor = f.tracked;
    call.scale = q.value();
    f.last_q = q;
    f.active_scale = q.value();
    caller_ = f.quest;
    auto m = Move::make_call(call);
    log(st, f, m, {{"q", q.str()}});
    return m;
}

Move Dido::monomial(const GameState& st, StrategyFrame& f) {
    const Scenario& c = st.quest(f.quest).scenario;
    while (!f.pending.empty() && !(c.S.count(f.pending.front()) && is_admissible(c, f.pending.front())))
        f.pending.erase(f.pending.begin());
    json measure;
    if (f.pending.empty()) {
        if (!is_complete(c, f.tracked) || !c.M.contains(f.tracked))
            throw StrategyFailure("monomial phase lost its complete factor in quest " + std::to_string(f.quest));
        auto mu = monomial_measure(c, f.tracked);
        if (f.last_measure && !multiset_less(mu, *f.last_measure))
            fail("quest " + std::to_string(f.quest) + ": monomial measure did not decrease");
        f.last_measure = mu;
        try {
            f.pending = elementary_step(c, f.tracked);
        } catch (const PreconditionError& e) {
            throw StrategyFailure(std::string("elementary step impossible: ") + e.what());
        }
        if (f.pending.empty()) throw StrategyFailure("elementary step found no center");
        ++stats_.elementary_steps;
        measure = {{"multiplicities", measure_json(mu)}, {"step", stats_.elementary_steps}};
    }
    auto m = Move::blowup(f.pending.front());
    f.pending.erase(f.pending.begin());
    log(st, f, m, measure);
    return m;
}

Move Dido::descent_driver(const GameState& st, StrategyFrame& f) {
    const Scenario& c = st.quest(f.quest).scenario;
    if (!f.started) {
        if (!is_tight(c)) throw StrategyFailure("descent driver on a non-tight quest " + std::to_string(f.quest));
        for (auto& K : critical_sets(c)) f.triples.push_back({std::move(K)});
        f.released = c.H;
        f.started = true;
    }
    while (f.opened < f.triples.size()) {
        auto& t = f.triples[f.opened];
        QuestRelation call;
        switch (f.stage) {
            case 0:
                call.kind = QuestKind::Transversality;
                call.parent = f.quest;
                call.jibs = t.K;
                break;
            case 1:
                call.kind = QuestKind::Relaxation;
                call.parent = t.P;
                call.jibs = f.released;
                break;
            default:
                call.kind = QuestKind::Descent;
                call.parent = t.R;
                break;
        }
        if (!st.is_open(call.parent)) {
            // The branch closed while opening (its singular set emptied).
            ++f.opened;
            f.stage = 0;
            continue;
        }
        caller_ = f.quest;
        auto m = Move::make_call(call);
        log(st, f, m, {{"triple", f.opened}, {"stage", f.stage}, {"critical_sets", f.triples.size()}});
        return m;
    }
    while (f.current < f.triples.size()) {
        auto& t = f.triples[f.current];
        if (t.Q >= 0 && st.is_open(t.Q)) return drive(st, t.Q);
        ++f.current;
    }
    throw StrategyFailure("descent driver exhausted its critical sets but quest " + std::to_string(f.quest) +
                          " is unresolved");
}

Move Dido::dim0(const GameState& st, StrategyFrame& f) {
    const Scenario& c = st.quest(f.quest).scenario;
    for (const auto& s : c.S) {
        bool maximal = true;
        for (const auto& t : c.S)
            if (c.b().less(s, t)) maximal = false;
        if (maximal) {
            auto m = Move::blowup(s);
            log(st, f, m, {{"singular", c.S.size()}});
            return m;
        }
    }
    throw StrategyFailure("dimension-0 quest without singular nodes");
}

void Dido::observe(const GameState& before, const Move& move, const ResponseBundle& bundle, const GameState& after) {
    if (move.kind == Move::Kind::Call) {
        QuestId child = before.next_quest_id;
        auto it = frames_.find(caller_);
        if (it != frames_.end()) {
            StrategyFrame& f = it->second;
            if (f.phase == Phase::QuotientLoop) {
                f.active_child = child;
                ++stats_.quotient_calls;
            } else if (f.phase == Phase::DescentDriver && f.opened < f.triples.size()) {
                auto& t = f.triples[f.opened];
                if (f.stage == 0) t.P = child;
                else if (f.stage == 1) t.R = child;
                else t.Q = child;
                if (++f.stage == 3) {
                    f.stage = 0;
                    ++f.opened;
                }
            }
        }
    } else {
        const NodeId& z = move.center;
        const BoardTransform& bt = bundle.transform;
        ++stats_.blowups;
        if (!before.main().scenario.S.count(z)) fail("center " + z + " is not singular in the main quest");
        for (QuestId id : before.open_quests())
            if (!bundle.discarded.count(id) && !is_admissible(before.quest(id).scenario, z))
                fail("center " + z + " is not admissible for surviving quest " + std::to_string(id));
        for (auto& [id, f] : frames_) {
            if (!before.is_open(id) || !after.quests.count(id) || after.quest(id).status != QuestStatus::Open) continue;
            const Scenario& old = before.quest(id).scenario;
            const Scenario& now = after.quest(id).scenario;
            if (f.phase == Phase::QuotientLoop) {
                bool child_active = f.active_child && before.is_open(*f.active_child);
                if (child_active) {
                    try {
                        f.tracked = quotient_lifted_factor(f.tracked, z, f.active_scale, old, bt);
                    } catch (const PreconditionError& e) {
                        fail("quest " + std::to_string(id) + ": " + e.what());
                    }
                } else {
                    MonomialFactor t;
                    for (const auto& h : old.H) t.weights[bt.i(h)] = f.tracked.at(h);
                    t.weights[*bt.exceptional] = OrderValue(0);
                    f.tracked = t;
                }
                if (f.infinity_blowup) {
                    ++stats_.infinity_blowups;
                    if (!(infinity_count(now) < infinity_count(old)))
                        fail("quest " + std::to_string(id) + ": infinity blowup did not reduce the infinity nodes");
                    f.infinity_blowup = false;
                }
            } else if (f.phase == Phase::Monomial) {
                try {
                    f.tracked = transported_complete_factor(old, z, bt, f.tracked);
                } catch (const PreconditionError& e) {
                    fail("quest " + std::to_string(id) + ": " + e.what());
                }
                if (!is_complete(now, f.tracked))
                    fail("quest " + std::to_string(id) + ": transported factor is not complete");
            }
            if ((f.phase == Phase::QuotientLoop || f.phase == Phase::Monomial) && !now.M.contains(f.tracked))
                fail("quest " + std::to_string(id) + ": tracked factor is not in M after the blowup");
        }
    }
    for (auto it = frames_.begin(); it != frames_.end();) {
        if (after.is_open(it->first)) ++it;
        else it = frames_.erase(it);
    }
    caller_ = -1;
}

}  // namespace salmagundy
