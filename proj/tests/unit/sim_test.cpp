#include <numeric>

#include "doctest.h"
#include "quizboard/error.hpp"
#include "quizboard/sim.hpp"
#include "test_support.hpp"

using namespace quizboard;

namespace {

SimReport simulate(GameKind kind, Speed speed, std::uint64_t games, std::uint64_t seed, unsigned threads,
                   const AnswerPolicy& policy = AnswerPolicy::always_correct()) {
  const auto config = simulation_config(kind, speed, 2, seed);
  return run_sim(config, testing::shared_board(default_board(kind)), synthetic_bank(config), policy, games,
                 {threads, kDefaultActionCap});
}

}  // namespace

TEST_CASE("summary statistics") {
  const auto m = summarize({5, 1, 3, 2, 4, 100, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19});
  CHECK(m.median == doctest::Approx(10.5));
  CHECK(m.p95 == 19);  // nearest rank 19 of 20
  CHECK(m.mean == doctest::Approx(14.5));
  CHECK(summarize({7}).p95 == 7);
}

TEST_CASE("reports are deterministic and independent of threads") {
  for (auto kind : {GameKind::Goose, GameKind::Parchis, GameKind::Motor}) {
    const auto a = simulate(kind, Speed::Normal, 200, 9, 1);
    const auto b = simulate(kind, Speed::Normal, 200, 9, 4);
    CHECK(a == b);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(std::accumulate(a.wins.begin(), a.wins.end(), std::uint64_t{0}) == 200);
    CHECK(a.rolls.mean > 0);
    CHECK(a.turns.p95 >= a.turns.median);
  }
}

TEST_CASE("different seeds give different games") {
  CHECK_FALSE(simulate(GameKind::Goose, Speed::Normal, 100, 1, 1) == simulate(GameKind::Goose, Speed::Normal, 100, 2, 1));
}

TEST_CASE("an arm compared with itself has ratio one") {
  const auto config = simulation_config(GameKind::Motor, Speed::Normal, 2, 4);
  const auto cmp = compare_arms(config, config, testing::shared_board(motor_board()), synthetic_bank(config),
                                AnswerPolicy::always_correct(), 300);
  CHECK(cmp.ratio == doctest::Approx(1.0));
}

TEST_CASE("fewer right answers make games longer") {
  const auto always = simulate(GameKind::Motor, Speed::Normal, 300, 3, 0);
  const auto half = simulate(GameKind::Motor, Speed::Normal, 300, 3, 0, AnswerPolicy::bernoulli_all(0.5, 2));
  CHECK(half.rolls.mean > always.rolls.mean * 1.5);
  CHECK(half.turns.mean > always.turns.mean);
}

TEST_CASE("a team that always answers right wins more") {
  const auto r = simulate(GameKind::Goose, Speed::Normal, 400, 5, 0, AnswerPolicy::bernoulli({1.0, 0.3}));
  CHECK(r.wins[0] > r.wins[1] * 2);
}

TEST_CASE("nobody ever answering right is caught by the action cap") {
  const auto config = simulation_config(GameKind::Goose, Speed::Normal, 2, 1);
  try {
    run_sim(config, testing::shared_board(goose_board()), synthetic_bank(config), AnswerPolicy::bernoulli_all(0.0, 2),
            3, {1, 10000});
    FAIL("game without right answers terminated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTerminating);
    CHECK(std::string(e.what()).find("game 0") != std::string::npos);
  }
}

TEST_CASE("policy validation") {
  CHECK_THROWS_AS(AnswerPolicy::bernoulli({0.5, 1.5}), Error);
  CHECK_THROWS_AS(AnswerPolicy::bernoulli({-0.1}), Error);
  const auto config = simulation_config(GameKind::Goose, Speed::Normal, 3, 1);
  CHECK_THROWS_AS(run_sim(config, testing::shared_board(goose_board()), synthetic_bank(config),
                          AnswerPolicy::bernoulli({0.5, 0.5}), 10),
                  Error);
  CHECK_THROWS_AS(run_sim(config, testing::shared_board(goose_board()), synthetic_bank(config),
                          AnswerPolicy::always_correct(), 0),
                  Error);
}

TEST_CASE("play_game records a replayable game") {
  const auto config = simulation_config(GameKind::Parchis, Speed::Fast, 3, 44);
  auto board = testing::shared_board(parchis_board());
  auto bank = synthetic_bank(config);
  std::vector<Action> actions;
  GameState final_state;
  const auto outcome =
      play_game(new_game(config, board, bank), AnswerPolicy::bernoulli_all(0.6, 3), 44, kDefaultActionCap, &actions,
                &final_state);
  CHECK(outcome.actions == actions.size());
  CHECK(final_state.phase.kind == PhaseKind::GameOver);
  CHECK(replay({config, actions}, board, bank) == final_state);
}

TEST_CASE("report rendering") {
  const auto r = simulate(GameKind::Motor, Speed::Fast, 50, 1, 1);
  const auto doc = report_to_json(r);
  CHECK(doc["games"] == 50);
  CHECK(doc["rolls_per_game"].contains("p95"));
  const auto table = report_table(r);
  CHECK(table.find("rolls/game") != std::string::npos);
  CHECK(table.find("team1=") != std::string::npos);
}
