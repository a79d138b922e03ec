#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "quizboard/game.hpp"

namespace quizboard {

enum class ActionKind { Roll, Answer, ChoosePawn };

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

struct Action {
  ActionKind kind = ActionKind::Roll;
  int value = 0;  // Answer: option index; ChoosePawn: pawn id

  static constexpr Action roll() { return {ActionKind::Roll, 0}; }
  static constexpr Action answer(int choice) { return {ActionKind::Answer, choice}; }
  static constexpr Action choose(PawnId pawn) { return {ActionKind::ChoosePawn, pawn}; }

  friend constexpr bool operator==(const Action&, const Action&) = default;
};

// Seed (inside config) plus the ordered player actions. Automatic rolls are
// recorded as ordinary Roll actions.
struct Transcript {
  GameConfig config;
  std::vector<Action> actions;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct StepResult {
  GameState state;
  Events events;
};

// Dispatches one action; errors from the underlying operation propagate.
StepResult apply_action(GameState state, const Action& action);

// Rebuilds the final state. Throws Error(DivergentAction) naming the first
// action that is illegal where it occurs.
GameState replay(const Transcript& transcript, std::shared_ptr<const BoardDefinition> board,
                 std::shared_ptr<const QuestionBank> bank);

}  // namespace quizboard
