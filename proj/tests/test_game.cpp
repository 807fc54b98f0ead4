#include "doctest.h"
#include "fixtures.hpp"

#include "salmagundy/harness.hpp"
#include "salmagundy/io.hpp"
#include "salmagundy/mephisto.hpp"
#include "salmagundy/play.hpp"

using namespace salmagundy;
using namespace fixtures;

TEST_CASE("new game checks its start") {
    auto st = new_game(f2());
    CHECK(st.round == 0);
    CHECK_FALSE(st.over);
    CHECK(st.open_quests() == std::vector<QuestId>{kMainQuest});
    CHECK_THROWS(new_game(f4()));  // M is not <0>
    CHECK_NOTHROW(new_game(f4(), false));
    auto low = f4();
    low.ord["s"] = OrderValue(Rational(1, 2));
    CHECK_THROWS(new_game(low, false));
    auto done = f2();
    done.S.clear();
    done.ord.clear();
    CHECK(new_game(done).over);
}

TEST_CASE("canonical blowup of the chain scenario is the hand-written one") {
    auto bundle = build_blowup_bundle(new_game(f2()), "p", {});
    const auto& c1 = bundle.responses.at(kMainQuest);
    auto want = f3();
    CHECK(same_board(*c1.board, *want.board));
    CHECK(c1.S == want.S);
    CHECK(c1.ord == want.ord);
    CHECK(c1.H == want.H);
    CHECK(c1.M == want.M);
    CHECK(c1.T == want.T);
}

TEST_CASE("bundles must answer every open quest") {
    auto st = new_game(f2());
    auto move = Move::blowup("p");
    auto bundle = build_blowup_bundle(st, "p", {});
    CHECK(validate_bundle(st, move, bundle).empty());
    auto missing = bundle;
    missing.responses.clear();
    CHECK(has_issue(validate_bundle(st, move, missing), "GAME", 6));
    CHECK(has_issue(validate_move(st, Move::blowup("w")), "GAME", 2));
    CHECK_THROWS_AS(apply_round(st, move, missing), InvalidBundle);
}

TEST_CASE("a rejected bundle leaves the state untouched") {
    auto st = new_game(f2());
    auto before = state_to_json(st);
    auto move = Move::blowup("p");
    auto bad = build_blowup_bundle(st, "p", {});
    bad.responses.at(kMainQuest).B = 7;
    CHECK_THROWS_AS(apply_round(st, move, bad), InvalidBundle);
    CHECK(state_to_json(st) == before);
    CHECK(st.trace.size() == 1);
}

TEST_CASE("chain scenario is won in six rounds by the canonical policy") {
    auto r = play(f2(), Policy::parse("canonical"), 100);
    CHECK(r.outcome == Outcome::Won);
    CHECK(r.rounds() == 6);
    CHECK(strictness_certificate(r.state));
    CHECK(r.dido.assertion_failures().empty());
}

TEST_CASE("round cap zero plays nothing") {
    auto r = play(f2(), Policy::parse("canonical"), 0);
    CHECK(r.outcome == Outcome::CapReached);
    CHECK(r.rounds() == 0);
}

TEST_CASE("every open quest lives on the current board") {
    auto c = gen_game_start(3, 12, 3, 2);
    auto r = play(c, Policy::parse("random:4", {1, 2}), 10000);
    REQUIRE(r.outcome == Outcome::Won);
    for (const auto& [id, q] : r.state.quests)
        if (q.status == QuestStatus::Open) CHECK(q.scenario.board == r.state.board);
}

TEST_CASE("trace replay") {
    auto r = play(f2(), Policy::parse("random:2", {1, 2}), 100);
    auto again = replay(r.state.trace);
    CHECK(state_to_json(again) == state_to_json(r.state));
    CHECK_THROWS(replay({}));
}

TEST_CASE("policy names") {
    CHECK(Policy::parse("canonical").name() == "canonical");
    CHECK(Policy::parse("random:17").seed == 17);
    CHECK(Policy::parse("adversarial").kind == Policy::Kind::Adversarial);
    CHECK_THROWS_AS(Policy::parse("sneaky"), std::invalid_argument);
}

TEST_CASE("quest tree as DOT") {
    auto r = play(f2(), Policy::parse("canonical"), 100);
    auto dot = export_dot(r.state);
    CHECK(dot.find("digraph quests") == 0);
    CHECK(dot.find("q1") != std::string::npos);
    auto board_dot = export_dot(f4());
    CHECK(board_dot.find("\"s\" -> \"h1\"") != std::string::npos);
    CHECK(board_dot.find("shape=box") != std::string::npos);
}
