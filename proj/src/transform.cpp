#include "salmagundy/transform.hpp"

#include <algorithm>
#include <optional>

namespace salmagundy {

namespace {

void require_boards(const Scenario& c, const BoardTransform& bt, const Scenario& c1) {
    if (!c.board || !c1.board || !bt.source || !bt.target) throw PreconditionError("missing board");
    if (!(c.b() == *bt.source)) throw PreconditionError("scenario does not live on the transform source");
    if (!(c1.b() == *bt.target)) throw PreconditionError("scenario does not live on the transform target");
}

void check_joint(const Scenario& c, const BoardTransform& bt, const Scenario& c1, Violations& out) {
    if (c1.d != c.d) out.push_back({"R3", 1, {}, "d changed from " + std::to_string(c.d) + " to " + std::to_string(c1.d)});
    if (c1.B != c.B) out.push_back({"R3", 1, {}, "B changed from " + std::to_string(c.B) + " to " + std::to_string(c1.B)});
    for (const auto& s : bt.source->nodes()) {
        bool before = c.T.count(s) != 0, after = c1.T.count(bt.i(s)) != 0;
        if (before != after)
            out.push_back({"R3", 2, {bt.i(s)}, "i(" + s + ") transversal is " + (after ? "true" : "false") +
                                                   " but " + s + " transversal is " + (before ? "true" : "false")});
    }
}

std::vector<NodeSet> subsets_of_size(const std::vector<NodeId>& v, std::size_t k) {
    std::vector<NodeSet> out;
    if (k > v.size()) return out;
    std::vector<char> pick(v.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
        NodeSet s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (pick[i]) s.insert(v[i]);
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

std::string join(const NodeSet& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out;
}

}  // namespace

Violations validate_refinement_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1) {
    if (bt.kind != TransformKind::Refinement) throw PreconditionError("expected a refinement");
    require_boards(c, bt, c1);
    Violations out;
    check_joint(c, bt, c1, out);
    auto S1 = bt.preimage(c.S);
    for (const auto& s : S1)
        if (!c1.S.count(s)) out.push_back({"R3", 3, {s}, s + " lies over a singular node but is missing from S'"});
    for (const auto& s : c1.S)
        if (!S1.count(s)) out.push_back({"R3", 3, {s}, s + " is in S' but u(" + s + ") is not singular"});
    for (const auto& s : c1.S) {
        if (!S1.count(s) || !c1.ord.count(s)) continue;
        const auto& want = c.ord.at(bt.u(s));
        if (c1.ord.at(s) != want)
            out.push_back({"R3", 4, {s}, "ord'(" + s + ") = " + c1.ord.at(s).str() + ", expected " + want.str()});
    }
    auto H1 = bt.image(c.H);
    if (c1.H != H1) out.push_back({"R3", 5, {}, "H' = {" + join(c1.H) + "}, expected i(H) = {" + join(H1) + "}"});
    std::vector<MonomialFactor> gens;
    for (const auto& g : c.M.generators()) {
        MonomialFactor t;
        for (const auto& h : c.H) t.weights[bt.i(h)] = g.at(h);
        gens.push_back(std::move(t));
    }
    if (!(c1.M == FactorSet(std::move(gens))))
        out.push_back({"R3", 6, {}, "M' is not the transport of M along u"});
    append(out, validate_scenario(c1));
    return out;
}

OrderValue exceptional_cap(const Scenario& c, const NodeId& z) {
    if (!c.S.count(z)) return OrderValue(0);
    return c.ord.at(z) - OrderValue(1);
}

FactorSet blowup_factor_set(const Scenario& c, const BoardTransform& bt) {
    const NodeId& z = *bt.center;
    const NodeId& e = *bt.exceptional;
    auto cap = exceptional_cap(c, z);
    std::vector<MonomialFactor> gens;
    for (const auto& g : c.M.generators()) {
        MonomialFactor t;
        for (const auto& h : c.H) t.weights[bt.i(h)] = g.at(h);
        t.weights[e] = c.H.count(z) ? std::min(g.at(z), cap) : cap;
        gens.push_back(std::move(t));
    }
    return FactorSet(std::move(gens));
}

MonomialFactor transported_complete_factor(const Scenario& c, const NodeId& z, const BoardTransform& bt,
                                           const MonomialFactor& m) {
    if (!is_complete(c, m)) throw PreconditionError("factor is not complete");
    MonomialFactor t;
    for (const auto& h : c.H) t.weights[bt.i(h)] = m.at(h);
    t.weights[bt.i(z)] = exceptional_cap(c, z);
    return t;
}

MonomialFactor quotient_lifted_factor(const MonomialFactor& m, const NodeId& z, const Rational& q, const Scenario& c,
                                      const BoardTransform& bt) {
    auto lift = extend_factor(c, m, z) + OrderValue(q) - OrderValue(1);
    if (lift < OrderValue(0))
        throw PreconditionError("lifted factor is negative at the exceptional node: " + lift.str());
    MonomialFactor t;
    for (const auto& h : c.H) t.weights[bt.i(h)] = m.at(h);
    t.weights[bt.i(z)] = lift;
    return t;
}

Violations validate_blowup_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1) {
    if (bt.kind != TransformKind::Blowup) throw PreconditionError("expected a blowup");
    if (!bt.center || !bt.exceptional) throw PreconditionError("blowup without center");
    if (bt.i(*bt.center) != *bt.exceptional) throw PreconditionError("exceptional node is not i(z)");
    require_boards(c, bt, c1);
    const NodeId& z = *bt.center;
    const NodeId& e = *bt.exceptional;
    const Board& b1 = c1.b();
    Violations out;
    auto R3 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R3", issue, std::move(w), std::move(d)}); };
    check_joint(c, bt, c1, out);

    // 7
    if (!is_admissible(c, z)) R3(7, {z}, "center " + z + " is not admissible");

    // 8
    for (const auto& s : c1.S)
        if (!c.S.count(bt.u(s))) R3(8, {s}, s + " is in S' but u(" + s + ") = " + bt.u(s) + " is not singular");

    // 9
    bool z_sing = c.S.count(z) != 0;
    if (c1.S.count(e)) {
        if (!z_sing || c.ord.at(z) < OrderValue(2))
            R3(9, {e}, "e is singular although " + (z_sing ? "ord(z) = " + c.ord.at(z).str() + " < 2" : z + " is not singular"));
        else if (c1.ord.count(e) && c1.ord.at(e) != c.ord.at(z) - OrderValue(1))
            R3(9, {e}, "ord'(e) = " + c1.ord.at(e).str() + ", expected ord(z)-1 = " + (c.ord.at(z) - OrderValue(1)).str());
    }

    // 10
    for (const auto& s : c1.S) {
        if (b1.leq(s, e) || !c1.ord.count(s) || !c.S.count(bt.u(s))) continue;
        const auto& want = c.ord.at(bt.u(s));
        if (c1.ord.at(s) != want)
            R3(10, {s}, "ord'(" + s + ") = " + c1.ord.at(s).str() + ", expected ord(u(" + s + ")) = " + want.str());
    }

    // 11
    if (is_tight(c))
        for (const auto& [s, o] : c1.ord)
            if (o != OrderValue(1)) R3(11, {s}, "scenario was tight but ord'(" + s + ") = " + o.str());

    // 12
    auto H1 = bt.image(c.H);
    H1.insert(e);
    if (c1.H != H1) R3(12, {}, "H' = {" + join(c1.H) + "}, expected i(H)+e = {" + join(H1) + "}");

    // 13
    int k = c.d - c.b().dim(z);
    if (k >= 0) {
        std::vector<NodeId> over;
        for (const auto& h : c.H)
            if (c.b().leq(z, h)) over.push_back(h);
        for (const auto& K : subsets_of_size(over, static_cast<std::size_t>(k)))
            for (const auto& s : c1.S) {
                if (!b1.leq(s, e)) continue;
                bool under = true;
                for (const auto& h : K) under = under && b1.leq(s, bt.i(h));
                if (under)
                    R3(13, {s}, s + " lies below e and below i(K) for K = {" + join(K) + "}, dim(z) = d-" +
                                    std::to_string(k));
            }
    }

    // 14
    if (!(c1.M == blowup_factor_set(c, bt))) R3(14, {}, "M' is not the transform of M");

    // 15
    if (auto m = complete_factor(c)) {
        auto t = transported_complete_factor(c, z, bt, *m);
        if (!c1.M.contains(t) || !is_complete(c1, t)) {
            std::vector<NodeId> w;
            for (const auto& s : c1.S)
                if (extend_factor(c1, t, s) != c1.ord.at(s)) w.push_back(s);
            R3(15, w, "transported complete factor is not complete for the transform");
        }
    }

    append(out, validate_scenario(c1));
    return out;
}

Violations validate_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1) {
    return bt.kind == TransformKind::Blowup ? validate_blowup_transform(c, bt, c1)
                                            : validate_refinement_transform(c, bt, c1);
}

Scenario refine_scenario(const Scenario& c, const BoardTransform& bt) {
    if (bt.kind != TransformKind::Refinement) throw PreconditionError("expected a refinement");
    Scenario out;
    out.board = bt.target;
    out.d = c.d;
    out.B = c.B;
    out.S = bt.preimage(c.S);
    for (const auto& s : out.S) out.ord[s] = c.ord.at(bt.u(s));
    out.H = bt.image(c.H);
    out.T = bt.preimage(c.T);
    std::vector<MonomialFactor> gens;
    for (const auto& g : c.M.generators()) {
        MonomialFactor t;
        for (const auto& h : c.H) t.weights[bt.i(h)] = g.at(h);
        gens.push_back(std::move(t));
    }
    out.M = FactorSet(std::move(gens));
    return out;
}

QuestRelation transport_relation(const QuestRelation& rel, const Scenario& parent, const BoardTransform& bt) {
    QuestRelation out = rel;
    out.jibs = bt.image(rel.jibs);
    if (rel.kind != QuestKind::Quotient) return out;
    if (bt.kind == TransformKind::Blowup) {
        out.factor = quotient_lifted_factor(rel.factor, *bt.center, rel.scale, parent, bt);
    } else {
        out.factor = MonomialFactor{};
        for (const auto& h : parent.H) out.factor.weights[bt.i(h)] = rel.factor.at(h);
    }
    return out;
}

Scenario one_way_construction(const QuestRelation& rel, const Scenario& parent, const Scenario& parentPrime,
                              const BoardTransform& bt) {
    auto moved = transport_relation(rel, parent, bt);
    switch (rel.kind) {
        case QuestKind::Transversality: return transversality_response(parentPrime, moved.jibs);
        case QuestKind::Quotient: return quotient_construction(parentPrime, moved.factor, moved.scale);
        default: throw PreconditionError(std::string("no construction for ") + to_string(rel.kind));
    }
}

int commutativity_issue(QuestKind k) {
    switch (k) {
        case QuestKind::Relaxation: return 1;
        case QuestKind::Descent: return 2;
        case QuestKind::Transversality: return 3;
        case QuestKind::Quotient: return 4;
        case QuestKind::Main: break;
    }
    return 0;
}

namespace {

// nullopt when the relation does not constrain this blowup.
std::optional<Violations> relation_inner(const QuestRelation& rel, const Scenario& c, const Scenario& c1,
                                         const Scenario& cPrime, const Scenario& c1Prime, const BoardTransform& bt) {
    if (bt.kind != TransformKind::Blowup || !bt.center) throw PreconditionError("commutativity concerns blowups");
    if (!(c.b() == c1.b()) || !(cPrime.b() == c1Prime.b())) throw PreconditionError("mismatched boards");
    if (!is_admissible(c1, *bt.center)) return std::nullopt;
    switch (rel.kind) {
        case QuestKind::Relaxation: return relaxation_check(cPrime, bt.image(rel.jibs), c1Prime);
        case QuestKind::Descent: return descent_relation(cPrime, c1Prime);
        case QuestKind::Transversality:
        case QuestKind::Quotient: {
            Scenario want;
            try {
                want = one_way_construction(rel, c, cPrime, bt);
            } catch (const PreconditionError&) {
                return std::nullopt;  // negative lift: the quotient quest cannot follow this center
            }
            return compare_scenarios(want, c1Prime, "COMM", commutativity_issue(rel.kind));
        }
        case QuestKind::Main: break;
    }
    return std::nullopt;
}

Violations wrap(const Violations& inner, int issue) {
    Violations out;
    for (const auto& v : inner) {
        Violation w{"COMM", issue, v.witness, v.detail};
        if (v.rule != "COMM") w.detail = v.rule + "." + std::to_string(v.issue) + ": " + v.detail;
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

Violations commutes(const QuestRelation& rel, const Scenario& c, const Scenario& c1, const Scenario& cPrime,
                    const Scenario& c1Prime, const BoardTransform& bt) {
    auto inner = relation_inner(rel, c, c1, cPrime, c1Prime, bt);
    if (!inner) return {};
    append(*inner, validate_blowup_transform(c1, bt, c1Prime));
    return wrap(*inner, commutativity_issue(rel.kind));
}

Violations commutes_relation(const QuestRelation& rel, const Scenario& c, const Scenario& c1, const Scenario& cPrime,
                             const Scenario& c1Prime, const BoardTransform& bt) {
    auto inner = relation_inner(rel, c, c1, cPrime, c1Prime, bt);
    return inner ? wrap(*inner, commutativity_issue(rel.kind)) : Violations{};
}

}  // namespace salmagundy
