#include "salmagundy/mephisto.hpp"

#include "salmagundy/io.hpp"

#include <algorithm>
#include <memory>
#include <random>

namespace salmagundy {

Policy Policy::parse(const std::string& text, Caps caps) {
    Policy p;
    p.caps = caps;
    if (text == "canonical") p.kind = Kind::Canonical;
    else if (text == "adversarial") p.kind = Kind::Adversarial;
    else if (text.rfind("random:", 0) == 0) {
        p.kind = Kind::Random;
        try {
            p.seed = std::stoull(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad random seed in '" + text + "'");
        }
    } else
        throw std::invalid_argument("unknown policy '" + text + "'");
    if (caps.max_new_nodes < 0 || caps.max_order_steps < 0) throw std::invalid_argument("caps must be >= 0");
    return p;
}

std::string Policy::name() const {
    switch (kind) {
        case Kind::Canonical: return "canonical";
        case Kind::Random: return "random:" + std::to_string(seed);
        case Kind::Adversarial: return "adversarial";
    }
    return "?";
}

PolicyFailure::PolicyFailure(const std::string& what, Violations vs)
    : std::runtime_error(what), blocking(std::move(vs)) {}

BoardTransform canonical_blowup_board(const BoardPtr& b, const NodeId& z, const std::vector<int>& extras) {
    return blowup_board(b, z, extras);
}

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, int round) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(round)};
    return std::mt19937_64(seq);
}

// Nodes of S' sorted top-down, so orders above a node are known first.
std::vector<NodeId> top_down(const Board& b, const NodeSet& S) {
    std::vector<NodeId> v(S.begin(), S.end());
    std::stable_sort(v.begin(), v.end(), [&](const NodeId& x, const NodeId& y) { return b.dim(x) > b.dim(y); });
    return v;
}

// Smallest order at x compatible with issues 6 and 8 given the orders
// already fixed above it.
OrderValue order_floor(const Scenario& c, const NodeId& x) {
    OrderValue lb(1);
    for (const auto& g : c.M.generators()) {
        auto gx = extend_factor(c, g, x);
        lb = std::max(lb, gx);
        for (const auto& [t, o] : c.ord) {
            if (!c.b().less(x, t)) continue;
            auto gt = extend_factor(c, g, t);
            if (o.is_infinite()) {
                lb = OrderValue::infinity();
                continue;
            }
            if (gt.is_infinite()) continue;  // issue 6 fails at t already
            lb = std::max(lb, o - gt + gx);
        }
    }
    if (lb.is_finite()) lb = OrderValue(ceil_to_grid(lb.value(), c.B));
    return lb;
}

struct Builder {
    const GameState& st;
    const BoardTransform& bt;
    NodeId z, e;
    NodeSet fresh;
    bool include_e;
    std::map<NodeId, int> steps;
    NodeSet banned;

    int step_of(const NodeId& x) const {
        auto it = steps.find(x);
        return it == steps.end() ? 0 : it->second;
    }

    NodeSet common_transversal(const Scenario& old) const {
        NodeSet T = bt.image(old.T);
        T.insert(fresh.begin(), fresh.end());
        return T;
    }

    // Keyed by the quest's scenario in st, which outlives the builder.
    mutable std::map<const Scenario*, Scenario> skeletons;

    Scenario skeleton(const Scenario& old) const {
        auto it = skeletons.find(&old);
        if (it != skeletons.end()) return it->second;
        Scenario c;
        c.board = bt.target;
        c.d = old.d;
        c.B = old.B;
        c.H = bt.image(old.H);
        c.H.insert(e);
        c.M = blowup_factor_set(old, bt);
        c.T = common_transversal(old);
        return skeletons.emplace(&old, std::move(c)).first->second;
    }

    // Main and descent quests: Mephisto picks S' and the orders below e.
    Scenario free_transform(const Scenario& old, const Scenario* descent_parent) const {
        const Board& b1 = *bt.target;
        Scenario c = skeleton(old);
        if (descent_parent) {
            c.S = descent_parent->S;
        } else {
            for (const auto& s : bt.preimage(old.S)) {
                bool blocked = false;
                for (const auto& x : banned) blocked = blocked || b1.leq(x, s);
                if (!blocked) c.S.insert(s);
            }
            bool e_allowed = include_e && old.S.count(z) && old.ord.at(z) >= OrderValue(2);
            if (!e_allowed && c.S.count(e)) {
                for (const auto& t : b1.above(e)) c.S.erase(t);
            }
        }
        const bool tight = is_tight(old);
        for (const auto& x : top_down(b1, c.S)) {
            if (x == e) {
                c.ord[x] = old.S.count(z) ? old.ord.at(z) - OrderValue(1) : OrderValue(1);
            } else if (!b1.leq(x, e)) {
                c.ord[x] = old.S.count(bt.u(x)) ? old.ord.at(bt.u(x)) : OrderValue(1);
            } else if (tight) {
                c.ord[x] = OrderValue(1);
            } else {
                auto o = order_floor(c, x);
                if (!fresh.count(x) && old.S.count(x)) o = std::max(o, old.ord.at(x));
                if (o.is_finite()) o = o + OrderValue(Rational(step_of(x), c.B));
                c.ord[x] = o;
            }
        }
        return c;
    }

    // Relaxation quests carry the parent's singular data.
    Scenario relaxation_transform(const Scenario& old, const Scenario& parent_now) const {
        Scenario c = skeleton(old);
        c.S = parent_now.S;
        c.ord = parent_now.ord;
        return c;
    }
};

std::string blame_summary(const Violations& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += "; ";
        out += v.rule + "." + std::to_string(v.issue) + ": " + v.detail;
        if (out.size() > 300) break;
    }
    return out;
}

}  // namespace

namespace {

// Responses that passed the checks, per target board and quest. The checks
// depend only on the response and its parent's, so searches on the same
// board may share them.
using PassCache = std::map<std::pair<const Board*, QuestId>, std::vector<std::pair<Scenario, Scenario>>>;

// One blowup choice under construction: build all responses, validate, and
// on failure ban (or un-raise) the first blamed node of S' and rebuild.
// Repairs only shrink S' or lower orders.
class BundleSearch {
public:
    BundleSearch(const GameState& st, const NodeId& z, const BlowupChoice& choice, BoardTransform bt,
                 PassCache* shared = nullptr)
        : st_(st),
          bl_{st, bundle_.transform, z, *bt.exceptional, {}, choice.include_exceptional, {}, {}, {}},
          passed_(shared ? *shared : own_) {
        bundle_.transform = std::move(bt);
        bundle_.discarded = forced_discards(st, z);
        for (const auto& x : bundle_.transform.target->nodes()) {
            if (!st.board->contains(x)) bl_.fresh.insert(x);
            auto it = choice.node_steps.find(x);
            int s = it == choice.node_steps.end() ? choice.order_step : it->second;
            if (s > 0) bl_.steps[x] = s;
        }
        for (QuestId id : st.open_quests())
            if (!bundle_.discarded.count(id)) survivors_.push_back(id);
        construct();
    }
    BundleSearch(const BundleSearch&) = delete;
    BundleSearch& operator=(const BundleSearch&) = delete;

    const ResponseBundle& current() const { return bundle_; }

    ResponseBundle run() {
        const std::size_t budget = 2 * bundle_.transform.target->size() + 4;
        for (std::size_t attempt = 0; attempt < budget; ++attempt) {
            if (check_and_repair()) return bundle_;
            construct();
        }
        throw PolicyFailure("response repair did not converge", {});
    }

private:
    void construct() {
        bundle_.responses.clear();
        for (QuestId id : survivors_) {
            const Quest& q = st_.quest(id);
            if (!q.relation) {
                bundle_.responses[id] = bl_.free_transform(q.scenario, nullptr);
                continue;
            }
            const auto& rel = *q.relation;
            const Scenario& parent_old = st_.quest(rel.parent).scenario;
            const Scenario& parent_now = bundle_.responses.at(rel.parent);
            switch (rel.kind) {
                case QuestKind::Relaxation: bundle_.responses[id] = bl_.relaxation_transform(q.scenario, parent_now); break;
                case QuestKind::Descent: bundle_.responses[id] = bl_.free_transform(q.scenario, &parent_now); break;
                default: bundle_.responses[id] = one_way_construction(rel, parent_old, parent_now, bundle_.transform); break;
            }
        }
    }

    bool check_and_repair() {
        const BoardTransform& bt = bundle_.transform;
        Violations failing;
        QuestId culprit = -1;
        for (QuestId id : survivors_) {
            const Quest& q = st_.quest(id);
            const Scenario& now = bundle_.responses.at(id);
            const Scenario* parent_now = q.relation ? &bundle_.responses.at(q.relation->parent) : nullptr;
            auto& seen = passed_[{bt.target.get(), id}];
            bool known = false;
            for (const auto& [r, p] : seen) known = known || (r == now && (!parent_now || p == *parent_now));
            if (known) continue;
            Violations vs;
            try {
                vs = validate_blowup_transform(q.scenario, bt, now);
                if (q.relation) {
                    const auto& rel = *q.relation;
                    append(vs, commutes_relation(rel, st_.quest(rel.parent).scenario, q.scenario,
                                                 bundle_.responses.at(rel.parent), now, bt));
                }
            } catch (const std::exception& ex) {
                throw PolicyFailure(std::string("response check failed: ") + ex.what(), {});
            }
            if (!vs.empty()) {
                failing = std::move(vs);
                culprit = id;
                break;
            }
            seen.emplace_back(now, parent_now ? *parent_now : Scenario{});
        }
        if (failing.empty()) return true;

        const Scenario& now = bundle_.responses.at(culprit);
        std::optional<NodeId> blame;
        for (const auto& v : failing) {
            for (const auto& w : v.witness)
                if (now.S.count(w) && !bl_.banned.count(w)) {
                    blame = w;
                    break;
                }
            if (blame) break;
        }
        if (!blame)
            throw PolicyFailure("no valid response for quest " + std::to_string(culprit) + ": " + blame_summary(failing),
                                failing);
        if (bl_.step_of(*blame) > 0) bl_.steps.erase(*blame);
        else bl_.banned.insert(*blame);
        return false;
    }

    const GameState& st_;
    ResponseBundle bundle_;
    Builder bl_;
    std::vector<QuestId> survivors_;
    PassCache own_;
    PassCache& passed_;
};

}  // namespace

ResponseBundle build_blowup_bundle(const GameState& st, const NodeId& z, const BlowupChoice& choice) {
    BundleSearch search(st, z, choice, canonical_blowup_board(st.board, z, choice.extra_fiber_dims));
    return search.run();
}

std::vector<BlowupChoice> blowup_choices(const GameState& st, const NodeId& z, const Caps& caps) {
    const int n = st.board->n();
    std::vector<std::vector<int>> extras{{}};
    if (n >= 2) {
        std::vector<std::vector<int>> layer{{}};
        for (int k = 1; k <= caps.max_new_nodes; ++k) {
            std::vector<std::vector<int>> next;
            for (const auto& v : layer)
                for (int dim = v.empty() ? 0 : v.back(); dim <= n - 2; ++dim) {
                    auto w = v;
                    w.push_back(dim);
                    next.push_back(w);
                }
            extras.insert(extras.end(), next.begin(), next.end());
            layer = std::move(next);
        }
    }
    const Scenario& main = st.main().scenario;
    bool e_optional = main.S.count(z) && main.ord.at(z) >= OrderValue(2);
    std::vector<BlowupChoice> out;
    for (const auto& x : extras)
        for (bool with_e : {true, false}) {
            if (!with_e && !e_optional) continue;
            for (int step = 0; step <= caps.max_order_steps; ++step) out.push_back({x, with_e, step, {}});
        }
    return out;
}

Scenario descent_child(const Scenario& parent, int step) {
    Scenario c;
    c.board = parent.board;
    c.d = parent.d - 1;
    c.B = parent.B;
    c.S = parent.S;
    c.T = parent.T;
    c.M = FactorSet::zero({});
    for (const auto& x : top_down(parent.b(), c.S)) {
        if (parent.b().dim(x) == c.d) {
            c.ord[x] = OrderValue::infinity();
            continue;
        }
        auto o = order_floor(c, x);
        if (o.is_finite()) o = o + OrderValue(Rational(step, c.B));
        c.ord[x] = o;
    }
    return c;
}

ResponseBundle respond_call(const GameState& st, const QuestRelation& call, const Policy& policy) {
    if (!st.is_open(call.parent)) throw PreconditionError("call on a quest that is not open");
    ResponseBundle bundle;
    bundle.transform = trivial_refinement(st.board);
    for (QuestId id : st.open_quests()) bundle.responses[id] = st.quest(id).scenario;
    const Scenario& parent = st.quest(call.parent).scenario;
    Scenario child;
    switch (call.kind) {
        case QuestKind::Relaxation: child = relaxation_response(parent, call.jibs); break;
        case QuestKind::Transversality: child = transversality_response(parent, call.jibs); break;
        case QuestKind::Quotient: child = quotient_response(parent, call.factor, call.scale); break;
        case QuestKind::Descent: {
            if (!is_tight(parent) || !parent.H.empty() || parent.d < 1)
                throw PreconditionError("descent needs a tight scenario with empty handicap and d >= 1");
            int step = 0;
            if (policy.kind == Policy::Kind::Adversarial) step = policy.caps.max_order_steps;
            if (policy.kind == Policy::Kind::Random && policy.caps.max_order_steps > 0) {
                auto rng = make_rng(policy.seed, st.round);
                step = std::uniform_int_distribution<int>(0, policy.caps.max_order_steps)(rng);
            }
            child = descent_child(parent, step);
            break;
        }
        case QuestKind::Main: throw PreconditionError("the main quest cannot be called");
    }
    bundle.responses[st.next_quest_id] = std::move(child);
    return bundle;
}

namespace {

std::pair<std::size_t, Rational> adversarial_score(const ResponseBundle& b) {
    std::size_t count = 0;
    Rational mass(0);
    for (const auto& [id, c] : b.responses) {
        count += c.S.size();
        for (const auto& [s, o] : c.ord)
            if (o.is_finite()) mass += o.value();
    }
    return {count, mass};
}

}  // namespace

ResponseBundle respond_blowup(const GameState& st, const NodeId& z, const Policy& policy) {
    switch (policy.kind) {
        case Policy::Kind::Canonical: return build_blowup_bundle(st, z, BlowupChoice{});
        case Policy::Kind::Random: {
            auto rng = make_rng(policy.seed, st.round);
            BlowupChoice choice;
            const int n = st.board->n();
            if (n >= 2 && policy.caps.max_new_nodes > 0) {
                int k = std::uniform_int_distribution<int>(0, policy.caps.max_new_nodes)(rng);
                for (int j = 0; j < k; ++j) choice.extra_fiber_dims.push_back(std::uniform_int_distribution<int>(0, n - 2)(rng));
                std::sort(choice.extra_fiber_dims.begin(), choice.extra_fiber_dims.end());
            }
            choice.include_exceptional = std::bernoulli_distribution(0.5)(rng);
            if (policy.caps.max_order_steps > 0) {
                auto bt = canonical_blowup_board(st.board, z, choice.extra_fiber_dims);
                std::uniform_int_distribution<int> pick(0, policy.caps.max_order_steps);
                for (const auto& x : bt.target->nodes()) choice.node_steps[x] = pick(rng);
            }
            try {
                return build_blowup_bundle(st, z, choice);
            } catch (const PolicyFailure&) {
                return build_blowup_bundle(st, z, BlowupChoice{});
            }
        }
        case Policy::Kind::Adversarial: {
            // Repairs never raise a score, so the score of a choice before
            // validation bounds its final score. Validating in descending
            // bound order finds the same maximum (earliest choice on ties)
            // as validating every choice.
            auto choices = blowup_choices(st, z, policy.caps);
            std::map<std::vector<int>, BoardTransform> boards;
            PassCache passed;
            std::vector<std::unique_ptr<BundleSearch>> searches;
            std::vector<std::pair<std::size_t, Rational>> bound;
            Violations last;
            for (const auto& choice : choices) {
                auto it = boards.find(choice.extra_fiber_dims);
                if (it == boards.end())
                    it = boards.emplace(choice.extra_fiber_dims, canonical_blowup_board(st.board, z, choice.extra_fiber_dims)).first;
                searches.push_back(std::make_unique<BundleSearch>(st, z, choice, it->second, &passed));
                bound.push_back(adversarial_score(searches.back()->current()));
            }
            std::vector<std::size_t> order(choices.size());
            for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return bound[x] > bound[y]; });

            std::optional<ResponseBundle> best;
            std::pair<std::size_t, Rational> best_score{0, Rational(0)};
            std::size_t best_index = 0;
            for (std::size_t k : order) {
                if (best && (bound[k] < best_score || (bound[k] == best_score && k > best_index))) {
                    if (bound[k] < best_score) break;
                    continue;
                }
                try {
                    auto b = searches[k]->run();
                    auto score = adversarial_score(b);
                    if (!best || score > best_score || (score == best_score && k < best_index)) {
                        best = std::move(b);
                        best_score = score;
                        best_index = k;
                    }
                } catch (const PolicyFailure& f) {
                    last = f.blocking;
                }
            }
            if (!best) throw PolicyFailure("no choice within the caps yields a valid bundle", last);
            return *best;
        }
    }
    throw std::logic_error("unknown policy");
}

ResponseBundle respond(const GameState& st, const Move& move, const Policy& policy) {
    if (move.kind == Move::Kind::Blowup) return respond_blowup(st, move.center, policy);
    return respond_call(st, move.call, policy);
}

std::vector<ResponseBundle> candidate_bundles(const GameState& st, const Move& move, const Caps& caps) {
    std::vector<ResponseBundle> out;
    std::set<std::string> seen;
    auto add = [&](ResponseBundle b) {
        if (seen.insert(to_json(b).dump()).second) out.push_back(std::move(b));
    };
    if (move.kind == Move::Kind::Blowup) {
        for (const auto& choice : blowup_choices(st, move.center, caps)) {
            try {
                add(build_blowup_bundle(st, move.center, choice));
            } catch (const PolicyFailure&) {
            }
        }
        return out;
    }
    Policy p;
    p.caps = caps;
    if (move.call.kind != QuestKind::Descent) {
        add(respond_call(st, move.call, p));
        return out;
    }
    for (int step = 0; step <= caps.max_order_steps; ++step) {
        auto b = respond_call(st, move.call, p);
        b.responses[st.next_quest_id] = descent_child(st.quest(move.call.parent).scenario, step);
        add(std::move(b));
    }
    return out;
}

}  // namespace salmagundy
