#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quizboard {

enum class GameKind { Goose, Parchis, Motor };

std::string_view to_string(GameKind kind);
std::optional<GameKind> parse_game_kind(std::string_view text);

enum class EffectKind { None, JumpTo, ExtraRoll, SkipTurns, BackToStart, Safe, TeamStart };

std::string_view to_string(EffectKind kind);

struct SquareEffect {
  EffectKind kind = EffectKind::None;
  int target = 0;           // JumpTo
  bool extra_roll = false;  // JumpTo
  int turns = 0;            // SkipTurns
  int team = 0;             // TeamStart

  static SquareEffect jump_to(int target, bool extra_roll) {
    return {EffectKind::JumpTo, target, extra_roll, 0, 0};
  }
  static SquareEffect extra() { return {EffectKind::ExtraRoll, 0, false, 0, 0}; }
  static SquareEffect skip(int turns) { return {EffectKind::SkipTurns, 0, false, turns, 0}; }
  static SquareEffect back_to_start() { return {EffectKind::BackToStart, 0, false, 0, 0}; }
  static SquareEffect safe() { return {EffectKind::Safe, 0, false, 0, 0}; }
  static SquareEffect team_start(int team) { return {EffectKind::TeamStart, 0, false, 0, team}; }

  friend bool operator==(const SquareEffect&, const SquareEffect&) = default;
};

// Data-driven board. Goose and Motor use a linear track 1..square_count whose
// last square is the goal. Parchís uses a ring of square_count squares, a
// private corridor per team and the goal one step past the corridor end.
//
// Construct through make_board() (or load from JSON) so the invariants are
// checked and the per-team lookup tables are filled in.
struct BoardDefinition {
  GameKind kind = GameKind::Goose;
  int square_count = 0;
  int goal = 0;  // linear boards only; equals square_count
  std::map<int, SquareEffect> effects;

  // Parchís constants.
  int corridor_length = 0;
  std::vector<int> corridor_entries;  // per team: last ring square before the corridor
  int entry_face = 5;
  int capture_bonus = 20;
  int goal_bonus = 10;
  int extra_roll_face = 6;
  int max_consecutive_extra = 3;  // this many extra-roll faces in a row is penalised

  // Derived by make_board().
  std::vector<int> start_squares;   // per team
  std::vector<int> entry_progress;  // per team: steps from start to corridor entry
  std::vector<bool> safe;           // indexed by square, size square_count + 1

  bool is_linear() const { return kind != GameKind::Parchis; }
  int team_slots() const { return static_cast<int>(start_squares.size()); }

  const SquareEffect* effect_at(int square) const {
    auto it = effects.find(square);
    return it == effects.end() ? nullptr : &it->second;
  }

  bool is_safe(int square) const { return safe[static_cast<std::size_t>(square)]; }

  // Parchís: distance travelled from the team's start square. The start
  // square is progress 0, the corridor entry is entry_progress[team], corridor
  // step k is entry_progress + k and the goal is entry_progress + length + 1.
  int progress_of_square(int team, int square) const;
  int square_at_progress(int team, int progress) const;
  int finish_progress(int team) const {
    return entry_progress[static_cast<std::size_t>(team)] + corridor_length + 1;
  }

  friend bool operator==(const BoardDefinition&, const BoardDefinition&) = default;
};

// Validates and fills the derived tables. Throws Error(InvalidBoard).
BoardDefinition make_board(BoardDefinition board);

// The shipped layouts: traditional 63-square Goose, 68-square Spanish Parchís
// and the plain 48-square Motor track.
BoardDefinition default_board(GameKind kind);

BoardDefinition goose_board();
BoardDefinition parchis_board();
BoardDefinition motor_board();

// Parchís board with arbitrary geometry; safe squares are in addition to the
// start squares, which are always safe.
BoardDefinition make_parchis_board(int ring_size, std::vector<int> starts,
                                   std::vector<int> corridor_entries,
                                   std::vector<int> safe_squares, int corridor_length);

}  // namespace quizboard
