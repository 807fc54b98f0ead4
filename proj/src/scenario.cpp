#include "salmagundy/scenario.hpp"

#include <algorithm>

namespace salmagundy {

MonomialFactor zero_factor(const NodeSet& H) {
    MonomialFactor m;
    for (const auto& h : H) m.weights[h] = OrderValue(0);
    return m;
}

bool dominated(const MonomialFactor& a, const MonomialFactor& b) {
    for (const auto& [h, w] : a.weights)
        if (w > b.at(h)) return false;
    for (const auto& [h, w] : b.weights)
        if (a.at(h) > w) return false;
    return true;
}

FactorSet::FactorSet(std::vector<MonomialFactor> generators) {
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < generators.size() && keep; ++j)
            if (i != j && dominated(generators[i], generators[j])) keep = false;
        if (keep) gens_.push_back(generators[i]);
    }
}

bool FactorSet::contains(const MonomialFactor& m) const {
    for (const auto& g : gens_)
        if (dominated(m, g)) return true;
    return false;
}

bool Scenario::operator==(const Scenario& o) const {
    bool boards = board == o.board || (board && o.board && *board == *o.board);
    return boards && d == o.d && B == o.B && H == o.H && S == o.S && T == o.T && ord == o.ord && M == o.M;
}

OrderValue extend_factor(const Scenario& c, const MonomialFactor& m, const NodeId& s) {
    OrderValue sum(0);
    for (const auto& h : jibs_above(c, s)) sum = sum + m.at(h);
    return sum;
}

NodeSet jibs_above(const Scenario& c, const NodeId& s) {
    const Board& b = c.b();
    const auto si = b.index(s);
    NodeSet out;
    // Few nodes lie above s; scanning its row beats a lookup per jib.
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b.leq_at(si, k) && c.H.count(b.nodes()[k])) out.insert(b.nodes()[k]);
    return out;
}

OrderValue excess(const Scenario& c, const MonomialFactor& m, const NodeId& s) {
    const auto& o = c.ord.at(s);
    if (o.is_infinite()) return o;
    auto w = extend_factor(c, m, s);
    if (w.is_infinite()) return OrderValue(-1);  // issue 6 already fails here
    return o - w;
}

namespace {

std::string join(const NodeSet& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out;
}

std::vector<NodeSet> subsets(const NodeSet& s) {
    std::vector<NodeId> v(s.begin(), s.end());
    std::vector<NodeSet> out;
    if (v.size() > 16) return out;
    for (std::uint32_t mask = 0; mask < (1u << v.size()); ++mask) {
        NodeSet k;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask & (1u << i)) k.insert(v[i]);
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace

Violations validate_scenario(const Scenario& c) {
    Violations out;
    auto R1 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R1", issue, std::move(w), std::move(d)}); };
    if (!c.board) {
        R1(0, {}, "scenario without a board");
        return out;
    }
    const Board& b = c.b();
    auto top = b.top();
    if (!top) {
        R1(0, {}, "board has no unique top node");
        return out;
    }
    const int n = b.dim(*top);
    if (c.d < 0 || c.d > n) R1(0, {}, "dimension d=" + std::to_string(c.d) + " outside [0," + std::to_string(n) + "]");
    if (c.B <= 0) R1(0, {}, "bound B must be positive");
    bool unknown = false;
    for (const auto* set : {&c.H, &c.S, &c.T})
        for (const auto& s : *set)
            if (!b.contains(s)) {
                R1(0, {s}, "unknown node " + s);
                unknown = true;
            }
    for (const auto& s : c.S)
        if (!c.ord.count(s)) R1(0, {s}, "no order at singular node " + s);
    for (const auto& [s, o] : c.ord) {
        if (!c.S.count(s)) R1(0, {s}, "order given at non-singular node " + s);
        if (o.is_finite() && o.value() < 0) R1(0, {s}, "negative order at " + s);
    }
    if (unknown || !out.empty()) return out;

    // 1
    for (const auto& h : c.H)
        if (b.dim(h) != n - 1)
            R1(1, {h}, "jib " + h + " has dim " + std::to_string(b.dim(h)) + ", expected " + std::to_string(n - 1));

    // 2
    for (const auto& s : c.S)
        for (const auto& t : b.below(s))
            if (!c.S.count(t)) R1(2, {s, t}, "S not downward closed: " + t + " < " + s + " is missing");

    // 3
    for (const auto& s : c.S) {
        if (c.ord.at(s).is_finite()) continue;
        bool maximal = true;
        for (const auto& t : c.S)
            if (t != s && c.ord.at(t).is_infinite() && b.leq(s, t)) maximal = false;
        if (!maximal) continue;
        if (b.dim(s) != c.d)
            R1(3, {s}, "maximal order-infinity node " + s + " has dim " + std::to_string(b.dim(s)) + " != d");
        else if (c.H.empty() && !c.T.count(s))
            R1(3, {s}, "maximal order-infinity node " + s + " is not transversal (H empty)");
    }

    // 4
    for (const auto& s : c.S) {
        if (b.dim(s) > c.d) R1(4, {s}, "dim(" + s + ") exceeds d");
        else if (b.dim(s) == c.d && c.ord.at(s).is_finite())
            R1(4, {s}, "dim(" + s + ") = d but ord = " + c.ord.at(s).str() + " is not infinite");
    }

    // 5
    for (const auto& s : c.S) {
        auto J = jibs_above(c, s);
        int room = c.d - b.dim(s);
        if (room < 0) continue;  // reported under 4
        int k = static_cast<int>(J.size());
        std::vector<NodeId> w{s};
        w.insert(w.end(), J.begin(), J.end());
        if (k > room)
            R1(5, w, s + " lies below " + std::to_string(k) + " jibs {" + join(J) + "} but dim allows " + std::to_string(room));
        else if (k == room && !c.T.count(s))
            R1(5, w, s + " has dim d-" + std::to_string(k) + " below {" + join(J) + "} and is not transversal");
    }

    // 7
    if (c.M.generators().empty()) R1(7, {}, "M has no generators");
    for (const auto& g : c.M.generators()) {
        NodeSet dom;
        for (const auto& [h, w] : g.weights) {
            dom.insert(h);
            if (w.is_finite() && w.value() < 0) R1(7, {h}, "negative factor weight at " + h);
        }
        if (dom != c.H) R1(7, {}, "factor domain {" + join(dom) + "} differs from H {" + join(c.H) + "}");
    }

    // 6, 8
    for (const auto& g : c.M.generators()) {
        std::map<NodeId, OrderValue> ext;
        for (const auto& s : c.S) {
            auto w = ext[s] = extend_factor(c, g, s);
            if (w > c.ord.at(s)) R1(6, {s}, "ord(" + s + ") = " + c.ord.at(s).str() + " < m(" + s + ") = " + w.str());
        }
        auto excess_at = [&](const NodeId& s) {
            const auto& o = c.ord.at(s);
            return o.is_infinite() ? o : o - ext.at(s);
        };
        for (const auto& s : c.S)
            for (const auto& t : c.S) {
                if (!b.less(s, t)) continue;
                const auto &ws = ext.at(s), &wt = ext.at(t);
                if ((ws.is_infinite() && c.ord.at(s).is_finite()) || (wt.is_infinite() && c.ord.at(t).is_finite()))
                    continue;  // issue 6
                auto es = excess_at(s), et = excess_at(t);
                if (es < et)
                    R1(8, {s, t}, "ord - m increases from " + s + " (" + es.str() + ") to " + t + " (" + et.str() + ")");
            }
    }

    // 9
    for (const auto& s : c.S) {
        auto J = jibs_above(c, s);
        for (const auto& K : subsets(J)) {
            if (K.empty()) continue;
            bool heavy = false;
            for (const auto& g : c.M.generators()) {
                OrderValue sum(0);
                for (const auto& h : K) sum = sum + g.at(h);
                if (sum >= OrderValue(1)) heavy = true;
            }
            if (!heavy) continue;
            int want = c.d - static_cast<int>(K.size());
            int count = 0;
            for (const auto& t : c.S) {
                if (!b.leq(s, t) || b.dim(t) != want) continue;
                bool under = true;
                for (const auto& h : K) under = under && b.leq(t, h);
                if (under) ++count;
            }
            if (count != 1) {
                std::vector<NodeId> w{s};
                w.insert(w.end(), K.begin(), K.end());
                R1(9, w, std::to_string(count) + " singular nodes of dim " + std::to_string(want) + " above " + s +
                             " below all of {" + join(K) + "}, expected exactly one");
            }
        }
    }
    return out;
}

Violations grid_violations(const Scenario& c) {
    Violations out;
    for (const auto& [s, o] : c.ord)
        if (o.is_finite() && !on_grid(o.value(), c.B))
            out.push_back({"R1", 0, {s}, "ord(" + s + ") = " + o.str() + " is not a multiple of 1/" + std::to_string(c.B)});
    return out;
}

bool is_tight(const Scenario& c) {
    for (const auto& [s, o] : c.ord)
        if (o != OrderValue(1)) return false;
    return true;
}

bool is_resolved(const Scenario& c) { return c.S.empty(); }

bool is_complete(const Scenario& c, const MonomialFactor& m) {
    for (const auto& s : c.S)
        if (extend_factor(c, m, s) != c.ord.at(s)) return false;
    return true;
}

std::optional<MonomialFactor> complete_factor(const Scenario& c) {
    for (const auto& g : c.M.generators())
        if (is_complete(c, g)) return g;
    return std::nullopt;
}

bool is_admissible(const Scenario& c, const NodeId& z) {
    const Board& b = c.b();
    if (!b.contains(z) || !c.T.count(z)) return false;
    auto top = b.top();
    if (top && *top == z) return false;
    if (c.S.count(z)) return true;
    for (const auto& s : c.S)
        if (!b.remote(z, s)) return false;
    return true;
}

NodeSet admissible_centers(const Scenario& c) {
    NodeSet out;
    for (const auto& z : c.T)
        if (is_admissible(c, z)) out.insert(z);
    return out;
}

}  // namespace salmagundy
