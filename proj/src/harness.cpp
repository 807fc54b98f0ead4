#include "salmagundy/harness.hpp"

#include "salmagundy/dido.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace salmagundy {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string id(const char* prefix, int k) { return prefix + std::to_string(k); }

// Removes from S every node failing the local room condition together with
// the nodes of S above it, and keeps infinity nodes of dim d pairwise remote.
NodeSet prune(const Board& b, int d, const NodeSet& H, NodeSet S) {
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& s : S) {
            int jibs = 0;
            for (const auto& h : H)
                if (b.leq(s, h)) ++jibs;
            if (jibs > d - b.dim(s)) {
                for (const auto& t : b.above(s)) S.erase(t);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        std::vector<NodeId> top;
        for (const auto& s : S)
            if (b.dim(s) == d) top.push_back(s);
        for (std::size_t i = 0; i < top.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < top.size(); ++j)
                if (!b.remote(top[i], top[j])) {
                    S.erase(top[j]);
                    changed = true;
                    break;
                }
    }
    return S;
}

}  // namespace

BoardPtr gen_board(std::uint64_t seed, const BoardParams& params) {
    if (params.max_nodes < 1 || params.n < 0) throw std::invalid_argument("gen_board: need max_nodes >= 1 and n >= 0");
    Rng rng(seed);
    int count = uniform(rng, 1, params.max_nodes);
    if (params.n == 0) count = 1;
    std::vector<std::pair<NodeId, int>> nodes{{"v0", params.n}};
    for (int k = 1; k < count; ++k) nodes.emplace_back(id("v", k), uniform(rng, 0, params.n - 1));
    std::vector<Cover> rel;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        rel.emplace_back(nodes[i].first, "v0");
        for (std::size_t j = 1; j < nodes.size(); ++j)
            if (nodes[i].second < nodes[j].second && coin(rng, 0.4)) rel.emplace_back(nodes[i].first, nodes[j].first);
    }
    auto covers = Board::reduce(nodes, rel);
    return std::make_shared<const Board>(std::move(nodes), std::move(covers));
}

Scenario gen_scenario(std::uint64_t seed, const BoardPtr& board, const ScenarioParams& params) {
    const Board& b = *board;
    int n = b.n();
    if (params.d < 0 || params.d > n || params.B < 1) throw std::invalid_argument("gen_scenario: need 0 <= d <= n and B >= 1");
    std::vector<NodeId> hyper;
    for (const auto& s : b.nodes())
        if (b.dim(s) == n - 1) hyper.push_back(s);
    if (params.jib_count > static_cast<int>(hyper.size()))
        throw std::invalid_argument("gen_scenario: board has only " + std::to_string(hyper.size()) + " nodes of dim n-1");
    auto topnode = *b.top();

    Rng rng(seed);
    for (int attempt = 0; attempt < params.attempts; ++attempt) {
        Scenario c;
        c.board = board;
        c.d = params.d;
        c.B = params.B;
        std::shuffle(hyper.begin(), hyper.end(), rng);
        c.H = NodeSet(hyper.begin(), hyper.begin() + params.jib_count);

        NodeSet S;
        for (const auto& s : b.nodes())
            if (s != topnode && b.dim(s) <= c.d && coin(rng, 0.35))
                for (const auto& t : b.below(s)) S.insert(t);
        c.S = prune(b, c.d, c.H, std::move(S));
        if (params.nonempty && c.S.empty()) continue;

        c.T = c.S;
        for (const auto& s : b.nodes())
            if (coin(rng, 0.5)) c.T.insert(s);

        std::vector<NodeId> order(c.S.begin(), c.S.end());
        std::stable_sort(order.begin(), order.end(), [&](const NodeId& x, const NodeId& y) { return b.dim(x) > b.dim(y); });
        for (const auto& s : order) {
            OrderValue floor(1);
            bool inf = b.dim(s) == c.d;
            for (const auto& t : c.S)
                if (b.less(s, t)) {
                    const auto& o = c.ord.at(t);
                    if (o.is_infinite()) inf = true;
                    else floor = std::max(floor, o);
                }
            if (inf) c.ord[s] = OrderValue::infinity();
            else c.ord[s] = floor + OrderValue(Rational(uniform(rng, 0, 2 * static_cast<int>(c.B)), c.B));
        }
        c.M = FactorSet::zero(c.H);
        if (validate_scenario(c).empty()) return c;
    }
    throw std::runtime_error("gen_scenario: no valid scenario within " + std::to_string(params.attempts) + " attempts");
}

Scenario gen_game_start(std::uint64_t seed, int max_nodes, int max_n, int max_d, std::int64_t B) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int n = uniform(rng, 1, std::max(1, max_n));
        auto board = gen_board(rng(), {max_nodes, n});
        int hyper = 0;
        for (const auto& s : board->nodes())
            if (board->dim(s) == n - 1) ++hyper;
        ScenarioParams p;
        p.d = uniform(rng, 0, std::min(max_d, n - 1));
        p.B = B;
        p.jib_count = uniform(rng, 0, std::min(hyper, 2));
        p.nonempty = true;
        p.attempts = 20;
        try {
            return gen_scenario(rng(), board, p);
        } catch (const std::runtime_error&) {
        }
    }
    throw std::runtime_error("gen_game_start: no scenario found");
}

Scenario gen_monomial(std::uint64_t seed, const MonomialParams& params) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = uniform(rng, 2, 4);
        int d = uniform(rng, 1, n - 1);
        int jibs = uniform(rng, 1, params.max_jibs);
        auto B = static_cast<std::int64_t>(uniform(rng, 1, static_cast<int>(params.max_B)));

        std::vector<std::pair<NodeId, int>> nodes{{"v0", n}};
        std::vector<Cover> rel;
        MonomialFactor m;
        std::vector<NodeId> hs, support;
        for (int k = 1; k <= jibs; ++k) {
            auto h = id("h", k);
            hs.push_back(h);
            nodes.emplace_back(h, n - 1);
            rel.emplace_back(h, "v0");
            m.weights[h] = OrderValue(Rational(uniform(rng, 0, static_cast<int>(2 * B)), B));
            if (coin(rng, 0.7)) support.push_back(h);
        }

        // heavy subsets of the support with at most d members
        std::vector<NodeSet> family;
        for (unsigned mask = 1; mask < (1u << support.size()); ++mask) {
            NodeSet K;
            Rational total(0);
            for (std::size_t i = 0; i < support.size(); ++i)
                if (mask & (1u << i)) {
                    K.insert(support[i]);
                    total += m.at(support[i]).value();
                }
            if (static_cast<int>(K.size()) <= d && total >= 1) family.push_back(std::move(K));
        }
        if (family.empty() || static_cast<int>(nodes.size() + family.size()) > params.max_nodes) continue;

        Scenario c;
        std::vector<NodeId> sid;
        for (std::size_t i = 0; i < family.size(); ++i) {
            sid.push_back(id("s", static_cast<int>(i) + 1));
            nodes.emplace_back(sid.back(), d - static_cast<int>(family[i].size()));
            Rational total(0);
            for (const auto& h : family[i]) {
                rel.emplace_back(sid.back(), h);
                total += m.at(h).value();
            }
            c.ord[sid.back()] = OrderValue(total);
        }
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = 0; j < family.size(); ++j)
                if (i != j && std::includes(family[i].begin(), family[i].end(), family[j].begin(), family[j].end()))
                    rel.emplace_back(sid[i], sid[j]);

        auto covers = Board::reduce(nodes, rel);
        c.board = std::make_shared<const Board>(std::move(nodes), std::move(covers));
        c.d = d;
        c.B = B;
        c.H = NodeSet(hs.begin(), hs.end());
        c.S = NodeSet(sid.begin(), sid.end());
        c.T = c.S;
        for (const auto& s : c.b().nodes())
            if (coin(rng, 0.5)) c.T.insert(s);
        c.M = FactorSet({m});
        if (validate_scenario(c).empty()) return c;
    }
    throw std::runtime_error("gen_monomial: no scenario found");
}

namespace {

struct Explorer {
    Caps caps;
    int depth_cap;
    ExploreReport report;

    void leaf(const GameState& st, bool won) {
        ++report.branch_count;
        report.max_depth = std::max(report.max_depth, st.round);
        if (!won) {
            report.all_won = false;
            if (!report.counterexample) report.counterexample = st.trace;
        }
    }

    void run(const GameState& st, const Dido& dido) {
        if (st.over) {
            ++report.won;
            return leaf(st, true);
        }
        if (st.round >= depth_cap) {
            ++report.capped;
            return leaf(st, false);
        }
        Dido mover = dido;
        Move move;
        std::vector<ResponseBundle> bundles;
        try {
            move = mover.next(st);
            bundles = candidate_bundles(st, move, caps);
        } catch (const std::exception&) {
            ++report.failed;
            return leaf(st, false);
        }
        bool any = false;
        for (const auto& bundle : bundles) {
            if (!validate_bundle(st, move, bundle).empty()) continue;
            any = true;
            Dido branch = mover;
            GameState before = snapshot(st);
            GameState after = commit_round(st, move, bundle);
            branch.observe(before, move, bundle, after);
            if (!branch.assertion_failures().empty()) {
                ++report.failed;
                leaf(after, false);
                continue;
            }
            run(after, branch);
        }
        if (!any) {
            ++report.stuck;
            leaf(st, false);
        }
    }
};

}  // namespace

ExploreReport explore(const Scenario& c0, const Caps& caps, int depth_cap) {
    Explorer e{caps, depth_cap, {}};
    e.run(new_game(c0), Dido());
    return e.report;
}

std::string export_dot(const Scenario& c) {
    const Board& b = c.b();
    std::ostringstream out;
    out << "digraph scenario {\n  rankdir=BT;\n";
    for (const auto& s : b.nodes()) {
        out << "  \"" << s << "\" [label=\"" << s << " (" << b.dim(s) << ")";
        if (c.S.count(s)) out << "\\nord " << c.ord.at(s).str();
        out << "\"";
        if (c.H.count(s)) out << " shape=box";
        if (c.S.count(s)) out << " style=filled fillcolor=lightcoral";
        if (c.T.count(s)) out << " peripheries=2";
        out << "];\n";
    }
    for (const auto& [lo, hi] : b.covers()) out << "  \"" << lo << "\" -> \"" << hi << "\";\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const GameState& st) {
    std::ostringstream out;
    out << "digraph quests {\n";
    for (const auto& [qid, q] : st.quests) {
        out << "  q" << qid << " [label=\"" << qid << ": " << to_string(q.status) << "\\nd=" << q.scenario.d
            << " |S|=" << q.scenario.S.size() << "\"";
        if (q.status == QuestStatus::Won) out << " style=filled fillcolor=palegreen";
        if (q.status == QuestStatus::Discarded) out << " style=dashed";
        out << "];\n";
    }
    for (const auto& [qid, q] : st.quests)
        if (q.relation) out << "  q" << q.relation->parent << " -> q" << qid << " [label=\"" << to_string(q.relation->kind) << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace salmagundy
