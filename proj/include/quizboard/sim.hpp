#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "quizboard/game.hpp"
#include "quizboard/transcript.hpp"

namespace quizboard {

// Stands in for the players: decides whether each question is answered right.
struct AnswerPolicy {
  enum class Kind { AlwaysCorrect, Bernoulli };

  Kind kind = Kind::AlwaysCorrect;
  std::vector<double> p;  // Bernoulli: per-team probability of a right answer

  static AnswerPolicy always_correct() { return {}; }
  static AnswerPolicy bernoulli(std::vector<double> per_team);
  static AnswerPolicy bernoulli_all(double p, int team_count) {
    return bernoulli(std::vector<double>(static_cast<std::size_t>(team_count), p));
  }

  double probability(TeamIndex team) const;
};

inline constexpr std::uint64_t kDefaultActionCap = 1'000'000;

struct GameOutcome {
  TeamIndex winner = -1;
  std::uint64_t rolls = 0;
  std::uint64_t turns = 0;
  std::uint64_t actions = 0;
};

// Plays one game to the end. Parchís pawn choices are uniform among the legal
// pawns. `policy_seed` drives answers and choices, independent of the game's
// own dice. Throws Error(NonTerminating) past action_cap actions. When
// `record` is given every action is appended to it.
GameOutcome play_game(GameState state, const AnswerPolicy& policy, std::uint64_t policy_seed,
                      std::uint64_t action_cap = kDefaultActionCap, std::vector<Action>* record = nullptr,
                      GameState* final_state = nullptr);

struct MetricSummary {
  double mean = 0;
  double median = 0;
  double p95 = 0;  // nearest-rank

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

MetricSummary summarize(std::vector<std::uint64_t> values);

struct SimReport {
  GameKind kind = GameKind::Goose;
  Speed speed = Speed::Normal;
  int team_count = 2;
  std::uint64_t seed = 0;
  std::uint64_t games = 0;
  MetricSummary rolls;
  MetricSummary turns;
  std::vector<std::uint64_t> wins;  // per team
  double elapsed_seconds = 0;       // wall clock; informational only

  // Equality ignores the wall clock.
  friend bool operator==(const SimReport& a, const SimReport& b) {
    return a.kind == b.kind && a.speed == b.speed && a.team_count == b.team_count && a.seed == b.seed &&
           a.games == b.games && a.rolls == b.rolls && a.turns == b.turns && a.wins == b.wins;
  }
};

struct SimOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t action_cap = kDefaultActionCap;
};

// Seed of game `index` in a run seeded with `base_seed`; paired arms share it.
std::uint64_t game_seed(std::uint64_t base_seed, std::uint64_t index);

// A bank with `per_topic` generated questions for every topic the config
// mentions, in the config's language.
std::shared_ptr<const QuestionBank> synthetic_bank(const GameConfig& config, int per_topic = 5);

// A config with `team_count` teams sharing one synthetic topic.
GameConfig simulation_config(GameKind kind, Speed speed, int team_count, std::uint64_t seed);

// Plays `games` games whose seeds derive from config.seed. The report does not
// depend on the thread count.
SimReport run_sim(const GameConfig& config, std::shared_ptr<const BoardDefinition> board,
                  std::shared_ptr<const QuestionBank> bank, const AnswerPolicy& policy, std::uint64_t games,
                  const SimOptions& options = {});

struct SpeedComparison {
  SimReport baseline;  // Normal arm
  SimReport variant;   // Fast arm
  double ratio = 0;    // mean rolls baseline / variant; > 1 means the variant is quicker
};

// Runs two configs over the same per-game seeds.
SpeedComparison compare_arms(const GameConfig& baseline, const GameConfig& variant,
                             std::shared_ptr<const BoardDefinition> board, std::shared_ptr<const QuestionBank> bank,
                             const AnswerPolicy& policy, std::uint64_t games, const SimOptions& options = {});

// Normal against Fast on the default board for `kind` with AlwaysCorrect
// answers.
SpeedComparison compare_speeds(GameKind kind, std::uint64_t games, std::uint64_t seed, int team_count = 2,
                               const SimOptions& options = {});

nlohmann::json report_to_json(const SimReport& report);
std::string report_table(const SimReport& report);

}  // namespace quizboard
