#include "salmagundy/quests.hpp"

#include <algorithm>
#include <numeric>

namespace salmagundy {

const char* to_string(QuestKind k) {
    switch (k) {
        case QuestKind::Main: return "main";
        case QuestKind::Relaxation: return "relaxation";
        case QuestKind::Descent: return "descent";
        case QuestKind::Transversality: return "transversality";
        case QuestKind::Quotient: return "quotient";
    }
    return "?";
}

QuestKind parse_quest_kind(const std::string& s) {
    for (auto k : {QuestKind::Main, QuestKind::Relaxation, QuestKind::Descent, QuestKind::Transversality,
                   QuestKind::Quotient})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown quest kind '" + s + "'");
}

namespace {

void require_subset(const NodeSet& part, const NodeSet& whole, const char* what) {
    for (const auto& x : part)
        if (!whole.count(x)) throw PreconditionError(std::string(what) + " contains " + x + ", which is not a jib");
}

NodeSet sym_diff(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace

Scenario transversality_response(const Scenario& c, const NodeSet& K) {
    require_subset(K, c.H, "K");
    Scenario out = c;
    if (K.empty()) return out;
    out.S.clear();
    out.ord.clear();
    for (const auto& s : c.S) {
        bool under = true;
        for (const auto& h : K) under = under && c.b().leq(s, h);
        if (under) {
            out.S.insert(s);
            out.ord[s] = OrderValue(1);
        }
    }
    MonomialFactor unit = zero_factor(c.H);
    if (K.size() == 1) {
        unit.weights[*K.begin()] = OrderValue(1);
        out.M = c.M.contains(unit) ? FactorSet({unit}) : FactorSet::zero(c.H);
    } else {
        out.M = FactorSet::zero(c.H);
    }
    return out;
}

std::int64_t quotient_bound(std::int64_t B, const Rational& q) {
    if (q <= 0) throw PreconditionError("scale must be positive");
    if (B <= 0) throw PreconditionError("bound must be positive");
    std::int64_t a = q.numerator(), b = q.denominator();
    return B * b / std::gcd(a, B * b);
}

Scenario quotient_response(const Scenario& c, const MonomialFactor& m, const Rational& q) {
    if (!c.M.contains(m)) throw PreconditionError("factor is not a member of M");
    return quotient_construction(c, m, q);
}

Scenario quotient_construction(const Scenario& c, const MonomialFactor& m, const Rational& q) {
    if (q <= 0) throw PreconditionError("scale must be positive");
    for (const auto& [h, w] : m.weights)
        if (w.is_infinite()) throw PreconditionError("quotient factor must be finite");
    Scenario out = c;
    out.B = quotient_bound(c.B, q);
    out.S.clear();
    out.ord.clear();
    for (const auto& s : c.S) {
        auto ex = excess(c, m, s);
        if (ex < OrderValue(q)) continue;
        out.S.insert(s);
        out.ord[s] = std::min(c.ord.at(s), ex / q);
    }
    std::vector<MonomialFactor> gens;
    for (const auto& g : c.M.generators()) {
        MonomialFactor n;
        for (const auto& h : c.H) {
            auto w = g.at(h);
            if (w.is_infinite()) {
                n.weights[h] = w;
                continue;
            }
            Rational v = (w.value() - m.at(h).value()) / q;
            n.weights[h] = OrderValue(v < 0 ? Rational(0) : v);
        }
        gens.push_back(std::move(n));
    }
    out.M = FactorSet(std::move(gens));
    return out;
}

Scenario relaxation_response(const Scenario& c, const NodeSet& J) {
    require_subset(J, c.H, "J");
    Scenario out = c;
    for (const auto& h : J) out.H.erase(h);
    std::vector<MonomialFactor> gens;
    for (const auto& g : c.M.generators()) {
        MonomialFactor r;
        for (const auto& h : out.H) r.weights[h] = g.at(h);
        gens.push_back(std::move(r));
    }
    out.M = FactorSet(std::move(gens));
    return out;
}

Violations compare_scenarios(const Scenario& e, const Scenario& a, const std::string& rule, int issue) {
    Violations out;
    auto add = [&](std::vector<NodeId> w, std::string d) { out.push_back({rule, issue, std::move(w), std::move(d)}); };
    if (e.d != a.d) add({}, "d is " + std::to_string(a.d) + ", expected " + std::to_string(e.d));
    if (e.B != a.B) add({}, "B is " + std::to_string(a.B) + ", expected " + std::to_string(e.B));
    auto nodes = [](const NodeSet& s) { return std::vector<NodeId>(s.begin(), s.end()); };
    if (auto x = sym_diff(e.S, a.S); !x.empty()) add(nodes(x), "singular sets differ");
    for (const auto& s : e.S)
        if (a.S.count(s) && a.ord.count(s) && e.ord.at(s) != a.ord.at(s))
            add({s}, "ord(" + s + ") is " + a.ord.at(s).str() + ", expected " + e.ord.at(s).str());
    if (auto x = sym_diff(e.H, a.H); !x.empty()) add(nodes(x), "handicaps differ");
    if (auto x = sym_diff(e.T, a.T); !x.empty()) add(nodes(x), "transversal sets differ");
    if (!(e.M == a.M)) add({}, "monomial factor sets differ");
    return out;
}

Violations relaxation_check(const Scenario& c, const NodeSet& J, const Scenario& c1) {
    require_subset(J, c.H, "J");
    if (!(c.b() == c1.b())) throw PreconditionError("relaxation response must live on the same board");
    Violations out;
    auto R4 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R4", issue, std::move(w), std::move(d)}); };
    if (c1.d != c.d || c1.B != c.B) R4(1, {}, "d and B must be unchanged");
    if (c1.S != c.S) {
        auto x = sym_diff(c.S, c1.S);
        R4(2, {x.begin(), x.end()}, "singular set changed");
    }
    for (const auto& s : c.S)
        if (c1.ord.count(s) && c1.ord.at(s) != c.ord.at(s)) R4(2, {s}, "ord changed at " + s);
    NodeSet h1 = c.H;
    for (const auto& h : J) h1.erase(h);
    if (c1.H != h1) {
        auto x = sym_diff(h1, c1.H);
        R4(3, {x.begin(), x.end()}, "H1 must be H minus J");
    }
    for (const auto& z : c.T)
        if (!c1.T.count(z)) R4(4, {z}, "transversal node " + z + " was dropped");
    for (const auto& z : c1.T) {
        if (c.T.count(z)) continue;
        bool under_all = true, remote_all = true;
        for (const auto& h : J) {
            under_all = under_all && c.b().leq(z, h);
            remote_all = remote_all && c.b().remote(z, h);
        }
        if (under_all) R4(4, {z}, z + " lies below all released jibs and cannot become transversal");
        else if (remote_all) R4(4, {z}, z + " is remote from the released jibs and cannot become transversal");
    }
    if (!(c1.M == relaxation_response(c, J).M)) R4(5, {}, "M1 must be the restriction of M to H1");
    append(out, validate_scenario(c1));
    return out;
}

Violations descent_check(const Scenario& c, const BoardTransform& bt, const Scenario& c1) {
    if (!is_tight(c)) throw PreconditionError("descent requires a tight scenario");
    if (!c.H.empty()) throw PreconditionError("descent requires an empty handicap");
    if (c.d == 0) throw PreconditionError("descent requires d >= 1");
    if (bt.kind != TransformKind::Refinement) throw PreconditionError("descent responses live on a refinement");
    Violations out;
    auto R5 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R5", issue, std::move(w), std::move(d)}); };
    if (c1.d != c.d - 1) R5(1, {}, "d1 must be d-1 = " + std::to_string(c.d - 1) + ", got " + std::to_string(c1.d));
    if (c1.B != c.B) R5(1, {}, "B1 must equal B");
    auto S1 = bt.preimage(c.S);
    if (c1.S != S1) {
        auto x = sym_diff(S1, c1.S);
        R5(2, {x.begin(), x.end()}, "S1 must be u^-1(S)");
    }
    if (c1.H != bt.image(c.H)) R5(2, {}, "H1 must be i(H)");
    for (const auto& s : bt.source->nodes())
        if (c.T.count(s) != c1.T.count(bt.i(s))) R5(2, {bt.i(s)}, "transversality of i(" + s + ") must match " + s);
    if (!(c1.M == FactorSet::zero(c1.H))) R5(2, {}, "M1 of a new descent quest is <0>");
    append(out, validate_scenario(c1));
    return out;
}

Violations descent_relation(const Scenario& c, const Scenario& c1) {
    Violations out;
    auto R5 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R5", issue, std::move(w), std::move(d)}); };
    if (c1.d != c.d - 1) R5(1, {}, "d1 must be d-1");
    if (c1.B != c.B) R5(1, {}, "B1 must equal B");
    if (c1.S != c.S) {
        auto x = sym_diff(c.S, c1.S);
        R5(2, {x.begin(), x.end()}, "S1 must equal S");
    }
    if (c1.H != c.H) {
        auto x = sym_diff(c.H, c1.H);
        R5(2, {x.begin(), x.end()}, "H1 must equal H");
    }
    if (c1.T != c.T) {
        auto x = sym_diff(c.T, c1.T);
        R5(2, {x.begin(), x.end()}, "T1 must equal T");
    }
    return out;
}

Violations relation_holds(const QuestRelation& rel, const Scenario& parent, const Scenario& child) {
    switch (rel.kind) {
        case QuestKind::Relaxation: return relaxation_check(parent, rel.jibs, child);
        case QuestKind::Descent: return descent_relation(parent, child);
        case QuestKind::Transversality:
            return compare_scenarios(transversality_response(parent, rel.jibs), child, "JIB", 0);
        case QuestKind::Quotient:
            return compare_scenarios(quotient_response(parent, rel.factor, rel.scale), child, "QUOT", 0);
        case QuestKind::Main: break;
    }
    return {};
}

}  // namespace salmagundy
