#include "quizboard/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "quizboard/error.hpp"

namespace quizboard {

namespace {

constexpr std::uint64_t kPolicyTweak = 0x6A09E667F3BCC909ull;

}  // namespace

AnswerPolicy AnswerPolicy::bernoulli(std::vector<double> per_team) {
  for (double p : per_team) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidConfig, "answer probability must be in [0, 1]");
  }
  return {Kind::Bernoulli, std::move(per_team)};
}

double AnswerPolicy::probability(TeamIndex team) const {
  if (kind == Kind::AlwaysCorrect) return 1.0;
  if (team < 0 || static_cast<std::size_t>(team) >= p.size()) {
    throw Error(ErrorCode::InvalidConfig, "no answer probability for team " + std::to_string(team));
  }
  return p[static_cast<std::size_t>(team)];
}

GameOutcome play_game(GameState state, const AnswerPolicy& policy, std::uint64_t policy_seed,
                      std::uint64_t action_cap, std::vector<Action>* record, GameState* final_state) {
  SplitMix64 choices(policy_seed ^ kPolicyTweak);
  GameOutcome outcome;
  while (state.phase.kind != PhaseKind::GameOver) {
    if (outcome.actions >= action_cap) {
      throw Error(ErrorCode::NonTerminating,
                  "game did not finish within " + std::to_string(action_cap) + " actions");
    }
    Action action;
    switch (state.phase.kind) {
      case PhaseKind::AwaitRoll:
        action = Action::roll();
        break;
      case PhaseKind::AwaitAnswer: {
        const QuestionRecord& q = state.bank->record(state.phase.question);
        const bool right = policy.kind == AnswerPolicy::Kind::AlwaysCorrect ||
                           choices.chance(policy.probability(state.current_team));
        const int options = static_cast<int>(q.options.size());
        action = Action::answer(right ? q.correct_index : (q.correct_index + 1) % options);
        break;
      }
      case PhaseKind::AwaitMoveChoice: {
        const auto& movable = state.phase.movable;
        action = Action::choose(movable[static_cast<std::size_t>(choices.below(movable.size()))]);
        break;
      }
      case PhaseKind::GameOver:
        break;
    }
    state = apply_action(std::move(state), action).state;
    ++outcome.actions;
    if (record) record->push_back(action);
  }
  outcome.winner = state.phase.winner;
  outcome.rolls = state.roll_count;
  outcome.turns = state.turn_number + 1;
  if (final_state) *final_state = std::move(state);
  return outcome;
}

MetricSummary summarize(std::vector<std::uint64_t> values) {
  MetricSummary m;
  if (values.empty()) return m;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  long double total = 0;
  for (auto v : values) total += static_cast<long double>(v);
  m.mean = static_cast<double>(total / static_cast<long double>(n));
  m.median = n % 2 == 1 ? static_cast<double>(values[n / 2])
                        : (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  m.p95 = static_cast<double>(values[std::max<std::size_t>(rank, 1) - 1]);
  return m;
}

std::uint64_t game_seed(std::uint64_t base_seed, std::uint64_t index) {
  return SplitMix64::at(base_seed, index);
}

std::shared_ptr<const QuestionBank> synthetic_bank(const GameConfig& config, int per_topic) {
  std::set<std::string> topics;
  for (const auto& team : config.topics_per_team) topics.insert(team.begin(), team.end());
  std::vector<QuestionRecord> records;
  for (const auto& topic : topics) {
    for (int i = 0; i < per_topic; ++i) {
      QuestionRecord r;
      r.id = topic + "-" + std::to_string(i + 1);
      r.topic_id = topic;
      r.topic_label = topic;
      r.language = config.language;
      r.prompt = "Question " + std::to_string(i + 1) + " on " + topic;
      r.options = {"a", "b", "c", "d"};
      r.correct_index = i % 4;
      records.push_back(std::move(r));
    }
  }
  return std::make_shared<const QuestionBank>(config.language, std::move(records));
}

GameConfig simulation_config(GameKind kind, Speed speed, int team_count, std::uint64_t seed) {
  GameConfig config;
  config.kind = kind;
  config.speed = speed;
  config.team_count = team_count;
  config.topics_per_team.assign(static_cast<std::size_t>(team_count), {"general"});
  config.dice_mode = DiceMode::Auto;
  config.seed = seed;
  return config;
}

SimReport run_sim(const GameConfig& config, std::shared_ptr<const BoardDefinition> board,
                  std::shared_ptr<const QuestionBank> bank, const AnswerPolicy& policy, std::uint64_t games,
                  const SimOptions& options) {
  if (games < 1) throw Error(ErrorCode::InvalidConfig, "games must be >= 1");
  validate_config(config, *board, *bank);
  if (policy.kind == AnswerPolicy::Kind::Bernoulli &&
      policy.p.size() < static_cast<std::size_t>(config.team_count)) {
    throw Error(ErrorCode::InvalidConfig, "answer policy lists fewer teams than the config");
  }

  const auto started = std::chrono::steady_clock::now();
  std::vector<GameOutcome> outcomes(games);
  std::vector<std::exception_ptr> failures(games);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t i = next++; i < games; i = next++) {
      try {
        const std::uint64_t seed = game_seed(config.seed, i);
        GameConfig game_config = config;
        game_config.seed = seed;
        outcomes[i] = play_game(new_game(std::move(game_config), board, bank), policy, seed, options.action_cap);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, games));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Report the lowest failing game so the error does not depend on scheduling.
  for (std::uint64_t i = 0; i < games; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "game " + std::to_string(i) + " (seed " + std::to_string(game_seed(config.seed, i)) +
                                "): " + e.what());
    }
  }

  SimReport report;
  report.kind = config.kind;
  report.speed = config.speed;
  report.team_count = config.team_count;
  report.seed = config.seed;
  report.games = games;
  report.wins.assign(static_cast<std::size_t>(config.team_count), 0);
  std::vector<std::uint64_t> rolls, turns;
  rolls.reserve(games);
  turns.reserve(games);
  for (const auto& o : outcomes) {
    rolls.push_back(o.rolls);
    turns.push_back(o.turns);
    ++report.wins[static_cast<std::size_t>(o.winner)];
  }
  report.rolls = summarize(std::move(rolls));
  report.turns = summarize(std::move(turns));
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

SpeedComparison compare_arms(const GameConfig& baseline, const GameConfig& variant,
                             std::shared_ptr<const BoardDefinition> board, std::shared_ptr<const QuestionBank> bank,
                             const AnswerPolicy& policy, std::uint64_t games, const SimOptions& options) {
  GameConfig second = variant;
  second.seed = baseline.seed;  // paired seeds
  SpeedComparison out;
  out.baseline = run_sim(baseline, board, bank, policy, games, options);
  out.variant = run_sim(second, board, bank, policy, games, options);
  out.ratio = out.baseline.rolls.mean / out.variant.rolls.mean;
  return out;
}

SpeedComparison compare_speeds(GameKind kind, std::uint64_t games, std::uint64_t seed, int team_count,
                               const SimOptions& options) {
  const auto normal = simulation_config(kind, Speed::Normal, team_count, seed);
  const auto fast = simulation_config(kind, Speed::Fast, team_count, seed);
  auto board = std::make_shared<const BoardDefinition>(default_board(kind));
  return compare_arms(normal, fast, board, synthetic_bank(normal), AnswerPolicy::always_correct(), games, options);
}

nlohmann::json report_to_json(const SimReport& r) {
  auto metric = [](const MetricSummary& m) {
    return nlohmann::json{{"mean", m.mean}, {"median", m.median}, {"p95", m.p95}};
  };
  return {{"game", to_string(r.kind)}, {"speed", to_string(r.speed)}, {"teams", r.team_count},
          {"seed", r.seed},            {"games", r.games},            {"rolls_per_game", metric(r.rolls)},
          {"turns_per_game", metric(r.turns)}, {"wins", r.wins}};
}

std::string report_table(const SimReport& r) {
  std::ostringstream out;
  out << "game " << to_string(r.kind) << ", speed " << to_string(r.speed) << ", " << r.team_count << " teams, "
      << r.games << " games, seed " << r.seed << "\n";
  out << std::left << std::setw(16) << "metric" << std::right << std::setw(12) << "mean" << std::setw(12)
      << "median" << std::setw(12) << "p95" << "\n";
  out << std::fixed << std::setprecision(2);
  auto row = [&](const char* name, const MetricSummary& m) {
    out << std::left << std::setw(16) << name << std::right << std::setw(12) << m.mean << std::setw(12)
        << m.median << std::setw(12) << m.p95 << "\n";
  };
  row("rolls/game", r.rolls);
  row("turns/game", r.turns);
  out << std::left << std::setw(16) << "wins";
  for (std::size_t t = 0; t < r.wins.size(); ++t) out << " team" << t << "=" << r.wins[t];
  out << "\n";
  return out.str();
}

}  // namespace quizboard
