#pragma once

#include "salmagundy/quests.hpp"

namespace salmagundy {

// Rule 3 joint items 1-2 and refinement items 3-6, plus validity of c1.
Violations validate_refinement_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1);

// Rule 3 joint items 1-2 and blowup items 7-15, plus validity of c1.
// Item 13 is checked on nodes below e: the old singular content away from
// the center is governed by items 8 and 10.
Violations validate_blowup_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1);

// Either of the two above, by bt.kind.
Violations validate_transform(const Scenario& c, const BoardTransform& bt, const Scenario& c1);

// The unique refinement transform with T' = u^-1(T).
Scenario refine_scenario(const Scenario& c, const BoardTransform& bt);

// Upper bound for m'(e): ord(z)-1 if z is singular, else 0.
OrderValue exceptional_cap(const Scenario& c, const NodeId& z);

// M' of a blowup: each generator g goes to g' with g'(i(h)) = g(h) and
// g'(e) = cap (clamped to g(z) if z is itself a jib).
FactorSet blowup_factor_set(const Scenario& c, const BoardTransform& bt);

MonomialFactor transported_complete_factor(const Scenario& c, const NodeId& z, const BoardTransform& bt,
                                           const MonomialFactor& m);

// m'(e) = m(z) + q - 1, m'(i(h)) = m(h). Throws PreconditionError if m'(e) < 0.
MonomialFactor quotient_lifted_factor(const MonomialFactor& m, const NodeId& z, const Rational& q, const Scenario& c,
                                      const BoardTransform& bt);

// Relation parameters carried across bt (jibs through i, lifted factor for
// quotients). `z` must be bt.center; c is the parent before the blowup.
QuestRelation transport_relation(const QuestRelation& rel, const Scenario& parent, const BoardTransform& bt);

// The construction side of the commutativity rule: what the child must be
// after the blowup, given the transformed parent. Only defined for the
// one-way relations.
Scenario one_way_construction(const QuestRelation& rel, const Scenario& parent, const Scenario& parentPrime,
                              const BoardTransform& bt);

// Commutativity issues 1-4. Every violation is reported under COMM with the
// relation's issue; the detail names the underlying rule. Returns {} when
// the center is not admissible for c1 (the child is discarded).
Violations commutes(const QuestRelation& rel, const Scenario& c, const Scenario& c1, const Scenario& cPrime,
                    const Scenario& c1Prime, const BoardTransform& bt);

// commutes without re-validating c1Prime as a transform of c1, for callers
// that run validate_blowup_transform on it anyway.
Violations commutes_relation(const QuestRelation& rel, const Scenario& c, const Scenario& c1, const Scenario& cPrime,
                             const Scenario& c1Prime, const BoardTransform& bt);

int commutativity_issue(QuestKind k);

}  // namespace salmagundy
