#include "quizboard/board.hpp"

#include <algorithm>
#include <array>

#include "quizboard/error.hpp"

namespace quizboard {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidBoard, message);
}

void check_linear(const BoardDefinition& board) {
  if (board.goal != board.square_count) {
    invalid("goal must equal square_count on a linear board");
  }
  for (const auto& [square, effect] : board.effects) {
    switch (effect.kind) {
      case EffectKind::JumpTo:
        if (effect.target < 1 || effect.target > board.square_count) {
          invalid("jump target out of range at square " + std::to_string(square));
        }
        break;
      case EffectKind::SkipTurns:
        if (effect.turns < 1) {
          invalid("skip count must be >= 1 at square " + std::to_string(square));
        }
        break;
      case EffectKind::Safe:
      case EffectKind::TeamStart:
        invalid("safe/team_start effects are Parchís-only (square " +
                std::to_string(square) + ")");
      default:
        break;
    }
  }
  if (board.effects.count(board.goal) != 0) invalid("the goal square cannot carry an effect");
  if (board.effects.count(1) != 0) invalid("the start square cannot carry an effect");
}

void fill_parchis(BoardDefinition& board) {
  if (board.corridor_length < 1) invalid("corridor_length must be >= 1");
  std::map<int, int> starts;  // team -> square
  for (const auto& [square, effect] : board.effects) {
    switch (effect.kind) {
      case EffectKind::Safe:
        break;
      case EffectKind::TeamStart:
        if (effect.team < 0 || !starts.emplace(effect.team, square).second) {
          invalid("duplicate or negative team_start team " + std::to_string(effect.team));
        }
        break;
      default:
        invalid("only safe/team_start effects are allowed on a Parchís board (square " +
                std::to_string(square) + ")");
    }
  }
  const int teams = static_cast<int>(starts.size());
  if (teams < 2) invalid("a Parchís board needs at least two team_start squares");
  if (starts.rbegin()->first != teams - 1) invalid("team_start teams must be 0..n-1");
  if (static_cast<int>(board.corridor_entries.size()) != teams) {
    invalid("corridor_entries must list one square per team");
  }
  board.start_squares.clear();
  for (const auto& [team, square] : starts) board.start_squares.push_back(square);
  board.entry_progress.clear();
  for (int team = 0; team < teams; ++team) {
    const int entry = board.corridor_entries[static_cast<std::size_t>(team)];
    if (entry < 1 || entry > board.square_count) invalid("corridor entry out of range");
    const int progress = board.progress_of_square(team, entry);
    if (progress == 0) invalid("corridor entry cannot be the start square");
    board.entry_progress.push_back(progress);
  }
  if (board.entry_face < 1) invalid("entry_face must be positive");
  if (board.capture_bonus < 0 || board.goal_bonus < 0) invalid("bonuses cannot be negative");
  if (board.max_consecutive_extra < 1) invalid("max_consecutive_extra must be >= 1");
}

}  // namespace

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::Goose:
      return "goose";
    case GameKind::Parchis:
      return "parchis";
    case GameKind::Motor:
      return "motor";
  }
  return "?";
}

std::optional<GameKind> parse_game_kind(std::string_view text) {
  if (text == "goose") return GameKind::Goose;
  if (text == "parchis") return GameKind::Parchis;
  if (text == "motor") return GameKind::Motor;
  return std::nullopt;
}

std::string_view to_string(EffectKind kind) {
  switch (kind) {
    case EffectKind::None:
      return "none";
    case EffectKind::JumpTo:
      return "jump";
    case EffectKind::ExtraRoll:
      return "extra_roll";
    case EffectKind::SkipTurns:
      return "skip";
    case EffectKind::BackToStart:
      return "back_to_start";
    case EffectKind::Safe:
      return "safe";
    case EffectKind::TeamStart:
      return "team_start";
  }
  return "?";
}

int BoardDefinition::progress_of_square(int team, int square) const {
  const int start = start_squares[static_cast<std::size_t>(team)];
  return ((square - start) % square_count + square_count) % square_count;
}

int BoardDefinition::square_at_progress(int team, int progress) const {
  const int start = start_squares[static_cast<std::size_t>(team)];
  return (start - 1 + progress) % square_count + 1;
}

BoardDefinition make_board(BoardDefinition board) {
  if (board.square_count < 2) invalid("square_count must be >= 2");
  for (const auto& [square, effect] : board.effects) {
    if (square < 1 || square > board.square_count) {
      invalid("effect square " + std::to_string(square) + " outside 1.." +
              std::to_string(board.square_count));
    }
    if (effect.kind == EffectKind::None) invalid("explicit none effect at square " + std::to_string(square));
  }
  board.safe.assign(static_cast<std::size_t>(board.square_count) + 1, false);
  if (board.is_linear()) {
    check_linear(board);
    board.start_squares.clear();
    board.entry_progress.clear();
    board.corridor_entries.clear();
    board.corridor_length = 0;
  } else {
    board.goal = 0;
    fill_parchis(board);
    for (const auto& [square, effect] : board.effects) {
      board.safe[static_cast<std::size_t>(square)] = true;
    }
  }
  return board;
}

BoardDefinition goose_board() {
  BoardDefinition board;
  board.kind = GameKind::Goose;
  board.square_count = 63;
  board.goal = 63;
  constexpr std::array geese{5, 9, 14, 18, 23, 27, 32, 36, 41, 45, 50, 54, 59};
  for (std::size_t i = 0; i < geese.size(); ++i) {
    const int next = i + 1 < geese.size() ? geese[i + 1] : board.goal;
    board.effects[geese[i]] = SquareEffect::jump_to(next, true);
  }
  board.effects[6] = SquareEffect::jump_to(12, true);
  board.effects[12] = SquareEffect::jump_to(6, true);
  board.effects[26] = SquareEffect::jump_to(53, true);
  board.effects[53] = SquareEffect::jump_to(26, true);
  board.effects[19] = SquareEffect::skip(1);   // inn
  board.effects[31] = SquareEffect::skip(2);   // well
  board.effects[42] = SquareEffect::jump_to(30, false);  // labyrinth
  board.effects[56] = SquareEffect::skip(3);   // prison
  board.effects[58] = SquareEffect::back_to_start();     // death
  return make_board(std::move(board));
}

BoardDefinition parchis_board() {
  return make_parchis_board(68, {5, 22, 39, 56}, {68, 17, 34, 51},
                            {12, 17, 29, 34, 46, 51, 63, 68}, 7);
}

BoardDefinition motor_board() {
  BoardDefinition board;
  board.kind = GameKind::Motor;
  board.square_count = 48;
  board.goal = 48;
  return make_board(std::move(board));
}

BoardDefinition default_board(GameKind kind) {
  switch (kind) {
    case GameKind::Goose:
      return goose_board();
    case GameKind::Parchis:
      return parchis_board();
    case GameKind::Motor:
      return motor_board();
  }
  invalid("unknown game kind");
}

BoardDefinition make_parchis_board(int ring_size, std::vector<int> starts,
                                   std::vector<int> corridor_entries,
                                   std::vector<int> safe_squares, int corridor_length) {
  BoardDefinition board;
  board.kind = GameKind::Parchis;
  board.square_count = ring_size;
  board.corridor_length = corridor_length;
  board.corridor_entries = std::move(corridor_entries);
  for (int square : safe_squares) board.effects[square] = SquareEffect::safe();
  for (std::size_t team = 0; team < starts.size(); ++team) {
    board.effects[starts[team]] = SquareEffect::team_start(static_cast<int>(team));
  }
  return make_board(std::move(board));
}

}  // namespace quizboard
