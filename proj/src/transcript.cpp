#include "quizboard/transcript.hpp"

#include <string>
#include <utility>

#include "quizboard/error.hpp"

namespace quizboard {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Roll:
      return "roll";
    case ActionKind::Answer:
      return "answer";
    case ActionKind::ChoosePawn:
      return "choose_pawn";
  }
  return "?";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
  if (text == "roll") return ActionKind::Roll;
  if (text == "answer") return ActionKind::Answer;
  if (text == "choose_pawn") return ActionKind::ChoosePawn;
  return std::nullopt;
}

StepResult apply_action(GameState state, const Action& action) {
  switch (action.kind) {
    case ActionKind::Roll: {
      auto r = roll_dice(std::move(state));
      return {std::move(r.state), std::move(r.events)};
    }
    case ActionKind::Answer: {
      auto r = submit_answer(std::move(state), action.value);
      return {std::move(r.state), std::move(r.events)};
    }
    case ActionKind::ChoosePawn: {
      auto r = choose_pawn(std::move(state), action.value);
      return {std::move(r.state), std::move(r.events)};
    }
  }
  throw Error(ErrorCode::DivergentAction, "unknown action kind");
}

GameState replay(const Transcript& transcript, std::shared_ptr<const BoardDefinition> board,
                 std::shared_ptr<const QuestionBank> bank) {
  GameState state = new_game(transcript.config, std::move(board), std::move(bank));
  for (std::size_t i = 0; i < transcript.actions.size(); ++i) {
    const Action& action = transcript.actions[i];
    try {
      state = apply_action(std::move(state), action).state;
    } catch (const Error& e) {
      throw Error(ErrorCode::DivergentAction, "action " + std::to_string(i) + " (" +
                                                  std::string(to_string(action.kind)) + "): " + e.what());
    }
  }
  return state;
}

}  // namespace quizboard
