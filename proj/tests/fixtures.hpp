#pragma once

#include "salmagundy/transform.hpp"

namespace fixtures {

using namespace salmagundy;

inline BoardPtr board(std::vector<std::pair<NodeId, int>> nodes, std::vector<Cover> covers) {
    return std::make_shared<const Board>(std::move(nodes), std::move(covers));
}

// p(0) < a(1) < w(2)
inline BoardPtr f1() { return board({{"p", 0}, {"a", 1}, {"w", 2}}, {{"p", "a"}, {"a", "w"}}); }

// d=1, B=1, H={}, S={p}, ord(p)=2, T=everything, M=<0>
inline Scenario f2() {
    Scenario c;
    c.board = f1();
    c.d = 1;
    c.B = 1;
    c.S = {"p"};
    c.ord = {{"p", OrderValue(2)}};
    c.T = {"p", "a", "w"};
    c.M = FactorSet::zero({});
    return c;
}

// Two jibs h1, h2 over a point s of dim d-2, weights 3/5 and 7/10,
// ord(s) = 13/10 so the factor is complete.
inline Scenario f4() {
    Scenario c;
    c.board = board({{"s", 0}, {"h1", 1}, {"h2", 1}, {"w", 2}}, {{"s", "h1"}, {"s", "h2"}, {"h1", "w"}, {"h2", "w"}});
    c.d = 2;
    c.B = 10;
    c.H = {"h1", "h2"};
    c.S = {"s"};
    c.ord = {{"s", OrderValue(Rational(13, 10))}};
    c.T = {"s", "h1", "h2", "w"};
    MonomialFactor m;
    m.weights = {{"h1", OrderValue(Rational(3, 5))}, {"h2", OrderValue(Rational(7, 10))}};
    c.M = FactorSet({m});
    return c;
}

inline MonomialFactor factor(std::map<NodeId, Rational> w) {
    MonomialFactor m;
    for (auto& [h, v] : w) m.weights[h] = OrderValue(v);
    return m;
}

}  // namespace fixtures

namespace fixtures {

// f2 blown up at p, written out by hand: x1(0) below both p(1) and a(1),
// S' = {x1} with order 1, H' = {p}, M' = <p -> 1>.
inline Scenario f3() {
    Scenario c;
    c.board = board({{"p", 1}, {"a", 1}, {"w", 2}, {"x1", 0}}, {{"x1", "a"}, {"x1", "p"}, {"p", "w"}, {"a", "w"}});
    c.d = 1;
    c.B = 1;
    c.H = {"p"};
    c.S = {"x1"};
    c.ord = {{"x1", OrderValue(1)}};
    c.T = {"p", "a", "w", "x1"};
    c.M = FactorSet({factor({{"p", Rational(1)}})});
    return c;
}

// Same ids, dims and order relation.
inline bool same_board(const Board& a, const Board& b) {
    if (NodeSet(a.nodes().begin(), a.nodes().end()) != NodeSet(b.nodes().begin(), b.nodes().end())) return false;
    for (const auto& s : a.nodes()) {
        if (a.dim(s) != b.dim(s)) return false;
        for (const auto& t : a.nodes())
            if (a.leq(s, t) != b.leq(s, t)) return false;
    }
    return true;
}

}  // namespace fixtures
