#include "doctest.h"
#include "fixtures.hpp"

using namespace salmagundy;
using namespace fixtures;

TEST_CASE("board queries on a chain") {
    auto b = f1();
    CHECK(b->leq("p", "w"));
    CHECK_FALSE(b->leq("w", "p"));
    CHECK_FALSE(b->remote("a", "p"));
    CHECK(b->top() == NodeId("w"));
    CHECK(b->n() == 2);
    CHECK(validate_board(*b).empty());
    CHECK(b->fresh_id() == "x1");
}

TEST_CASE("board defects") {
    auto flat = board({{"p", 0}, {"a", 0}, {"w", 2}}, {{"p", "a"}, {"a", "w"}});
    CHECK(has_issue(validate_board(*flat), "BOARD", 2));
    auto two_tops = board({{"p", 0}, {"a", 1}, {"w", 2}, {"v", 2}}, {{"p", "a"}, {"a", "w"}, {"a", "v"}});
    CHECK(has_issue(validate_board(*two_tops), "BOARD", 3));
    auto cyc = board({{"p", 0}, {"a", 1}}, {{"p", "a"}, {"a", "p"}});
    CHECK(has_issue(validate_board(*cyc), "BOARD", 1));
}

TEST_CASE("remote nodes share no lower bound") {
    auto b = board({{"p", 0}, {"q", 0}, {"w", 1}}, {{"p", "w"}, {"q", "w"}});
    CHECK(b->remote("p", "q"));
    CHECK_FALSE(b->remote("p", "w"));
}

TEST_CASE("blowup of the chain at its bottom") {
    auto bt = blowup_board(f1(), "p");
    const Board& t = *bt.target;
    CHECK(t.size() == 4);
    CHECK(t.dim("p") == 1);
    CHECK(t.dim("a") == 1);
    CHECK(t.dim("w") == 2);
    CHECK(t.dim("x1") == 0);
    CHECK(t.less("x1", "a"));
    CHECK(t.less("x1", "p"));
    CHECK(t.less("p", "w"));
    CHECK_FALSE(t.leq("p", "a"));
    CHECK(bt.u("x1") == "p");
    CHECK(validate_board_transform(bt).empty());
    CHECK(validate_board_transform(trivial_refinement(f1())).empty());
}

TEST_CASE("blowup dimension law is checked") {
    auto bt = blowup_board(f1(), "p");
    auto nodes = std::vector<std::pair<NodeId, int>>{{"p", 0}, {"a", 1}, {"w", 2}, {"x1", 0}};
    bt.target = board(nodes, bt.target->covers());
    auto vs = validate_board_transform(bt);
    REQUIRE(has_issue(vs, "R2", 7));
}

TEST_CASE("fixture scenarios are valid") {
    CHECK(validate_scenario(f2()).empty());
    CHECK(validate_scenario(f4()).empty());
    CHECK_FALSE(is_tight(f2()));
    CHECK(admissible_centers(f2()) == NodeSet{"p"});
    auto t = f2();
    t.T = {"a", "w"};
    CHECK(admissible_centers(t).empty());
}

TEST_CASE("scenario mutations") {
    auto c = f2();
    c.S = {"a"};
    c.ord = {{"a", OrderValue(2)}};
    auto vs = validate_scenario(c);
    CHECK(has_issue(vs, "R1", 2));
    CHECK(has_issue(vs, "R1", 4));
}

TEST_CASE("extended factors and completeness") {
    auto c = f4();
    auto m = factor({{"h1", Rational(3, 5)}, {"h2", Rational(7, 10)}});
    CHECK(extend_factor(c, m, "s") == OrderValue(Rational(13, 10)));
    REQUIRE(complete_factor(c).has_value());
    CHECK(*complete_factor(c) == m);
    CHECK_FALSE(complete_factor(f2()).has_value());
}

TEST_CASE("factor sets keep maximal generators") {
    auto a = factor({{"h", Rational(1)}, {"k", Rational(0)}});
    auto b = factor({{"h", Rational(1, 2)}, {"k", Rational(0)}});
    auto c = factor({{"h", Rational(0)}, {"k", Rational(2)}});
    FactorSet s({a, b, c});
    CHECK(s.generators().size() == 2);
    CHECK(s.contains(b));
    CHECK_FALSE(s.contains(factor({{"h", Rational(1)}, {"k", Rational(1)}})));
}

TEST_CASE("quotient of the chain scenario at its maximal excess is tight") {
    auto c1 = quotient_response(f2(), zero_factor({}), Rational(2));
    CHECK(c1.S == NodeSet{"p"});
    CHECK(c1.ord.at("p") == OrderValue(1));
    CHECK(is_tight(c1));
    CHECK(c1.B == 1);
    CHECK(validate_scenario(c1).empty());
    CHECK_THROWS_AS(quotient_response(f2(), zero_factor({}), Rational(0)), PreconditionError);
}

TEST_CASE("quotient bound examples") {
    CHECK(quotient_bound(1, Rational(2)) == 1);
    CHECK(quotient_bound(6, Rational(4)) == 3);
    CHECK(quotient_bound(10, Rational(13, 10)) == 100);
    CHECK(quotient_bound(4, Rational(1, 3)) == 12);
}

TEST_CASE("transversality with empty K is the identity") {
    CHECK(transversality_response(f2(), {}) == f2());
    auto c1 = transversality_response(f4(), {"h1", "h2"});
    CHECK(c1.S == NodeSet{"s"});
    CHECK(c1.ord.at("s") == OrderValue(1));
    CHECK(c1.M == FactorSet::zero(c1.H));
}

TEST_CASE("relaxation rules") {
    auto c = f4();
    auto c1 = relaxation_response(c, {"h1"});
    CHECK(c1.H == NodeSet{"h2"});
    CHECK(relaxation_check(c, {"h1"}, c1).empty());
    auto bad = c1;
    bad.H = c.H;
    CHECK(has_issue(relaxation_check(c, {"h1"}, bad), "R4", 3));
}

TEST_CASE("descent on a tight chain scenario") {
    auto c = f2();
    c.ord["p"] = OrderValue(1);
    auto bt = trivial_refinement(c.board);
    auto c1 = c;
    c1.d = 0;
    c1.ord["p"] = OrderValue::infinity();
    CHECK(descent_check(c, bt, c1).empty());
    auto bad = c1;
    bad.d = 1;
    CHECK(has_issue(descent_check(c, bt, bad), "R5", 1));
    CHECK_THROWS_AS(descent_check(f2(), bt, c1), PreconditionError);
}

namespace {

// The blowup of f2 at p with every rule applied by hand.
Scenario chain_blown_up(const BoardTransform& bt) {
    Scenario c;
    c.board = bt.target;
    c.d = 1;
    c.B = 1;
    c.H = {"p"};
    c.S = {"x1"};
    c.ord = {{"x1", OrderValue(1)}};
    c.T = {"p", "a", "w", "x1"};
    c.M = FactorSet({factor({{"p", Rational(1)}})});
    return c;
}

}  // namespace

TEST_CASE("blowup transform of the chain scenario") {
    auto c = f2();
    auto bt = blowup_board(c.board, "p");
    auto c1 = chain_blown_up(bt);
    CHECK(validate_blowup_transform(c, bt, c1).empty());
    CHECK(blowup_factor_set(c, bt) == c1.M);

    SUBCASE("e cannot be singular at dimension d with finite order") {
        auto bad = c1;
        bad.S.insert("p");
        bad.ord["p"] = OrderValue(2);
        auto vs = validate_blowup_transform(c, bt, bad);
        CHECK(has_issue(vs, "R3", 9));
    }
    SUBCASE("orders away from e are inherited") {
        auto t = c;
        t.ord["p"] = OrderValue(1);
        auto bad = c1;
        bad.M = blowup_factor_set(t, bt);
        bad.ord["x1"] = OrderValue(2);
        CHECK(has_issue(validate_blowup_transform(t, bt, bad), "R3", 11));
    }
}

TEST_CASE("transported complete factor") {
    auto c = f4();
    auto bt = blowup_board(c.board, "s");
    auto m = *complete_factor(c);
    auto t = transported_complete_factor(c, "s", bt, m);
    CHECK(t.at("s") == OrderValue(Rational(3, 10)));
    CHECK(t.at("h1") == OrderValue(Rational(3, 5)));
    CHECK_THROWS_AS(transported_complete_factor(f2(), "p", blowup_board(f1(), "p"), zero_factor({})),
                    PreconditionError);
}

TEST_CASE("lifted quotient factor") {
    auto c = f2();
    auto bt = blowup_board(c.board, "p");
    CHECK(quotient_lifted_factor(zero_factor({}), "p", Rational(2), c, bt).at("p") == OrderValue(1));
    auto c4 = f4();
    auto bt4 = blowup_board(c4.board, "s");
    CHECK(quotient_lifted_factor(zero_factor(c4.H), "s", Rational(13, 10), c4, bt4).at("s") ==
          OrderValue(Rational(3, 10)));
    auto half = factor({{"h1", Rational(1, 2)}, {"h2", Rational(0)}});
    CHECK(quotient_lifted_factor(half, "s", Rational(1, 2), c4, bt4).at("s") == OrderValue(0));
    CHECK_THROWS_AS(quotient_lifted_factor(zero_factor(c4.H), "s", Rational(1, 2), c4, bt4), PreconditionError);
}
