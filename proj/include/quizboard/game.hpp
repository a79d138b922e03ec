#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quizboard/board.hpp"
#include "quizboard/question_bank.hpp"
#include "quizboard/rng.hpp"

namespace quizboard {

enum class Speed { Normal, Fast };
enum class DiceMode { Manual, Auto };

std::string_view to_string(Speed speed);
std::string_view to_string(DiceMode mode);
std::optional<Speed> parse_speed(std::string_view text);
std::optional<DiceMode> parse_dice_mode(std::string_view text);

inline constexpr int kMinTeams = 2;
inline constexpr int kMaxTeams = 4;

struct GameConfig {
  GameKind kind = GameKind::Goose;
  int team_count = 2;
  std::vector<std::vector<std::string>> topics_per_team;
  Speed speed = Speed::Normal;
  DiceMode dice_mode = DiceMode::Manual;
  std::uint64_t seed = 0;
  std::string language = "en";

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

int pawns_per_team(GameKind kind, Speed speed);
int min_face(Speed speed);
int max_face(Speed speed);

enum class Where { Home, Track, Corridor, Finished };

std::string_view to_string(Where where);

struct Location {
  Where where = Where::Home;
  int value = 0;  // track square or corridor step

  static constexpr Location home() { return {Where::Home, 0}; }
  static constexpr Location track(int square) { return {Where::Track, square}; }
  static constexpr Location corridor(int step) { return {Where::Corridor, step}; }
  static constexpr Location finished() { return {Where::Finished, 0}; }

  friend constexpr bool operator==(const Location&, const Location&) = default;
};

using PawnId = int;
using TeamIndex = int;

struct Pawn {
  TeamIndex team = 0;
  Location location;

  friend bool operator==(const Pawn&, const Pawn&) = default;
};

enum class PhaseKind { AwaitRoll, AwaitAnswer, AwaitMoveChoice, GameOver };

std::string_view to_string(PhaseKind kind);

// A turn ends inside the transition that resolves it (see EventKind::TurnPassed),
// so there is no resting phase between one team's turn and the next.
struct TurnPhase {
  PhaseKind kind = PhaseKind::AwaitRoll;
  std::size_t question = 0;    // AwaitAnswer: index into the bank
  int face = 0;                // AwaitAnswer, AwaitMoveChoice: steps to play
  std::vector<PawnId> movable; // AwaitMoveChoice
  TeamIndex winner = -1;       // GameOver

  friend bool operator==(const TurnPhase&, const TurnPhase&) = default;
};

enum class EventKind {
  Rolled,
  Asked,
  Answered,
  Moved,
  Bounced,
  Jumped,
  Entered,
  Captured,
  Finished,
  BonusAwarded,
  BonusForfeited,
  MoveForfeited,
  ExtraRoll,
  SkipTurns,
  BackToStart,
  ExtraRollPenalty,
  TurnSkipped,
  TurnPassed,
  GameWon,
};

std::string_view to_string(EventKind kind);

struct Event {
  EventKind kind;
  TeamIndex team = -1;
  PawnId pawn = -1;
  Location from;
  Location to;
  int value = 0;  // face, bonus steps, skip turns, answered-correctly flag, ...

  friend bool operator==(const Event&, const Event&) = default;
};

using Events = std::vector<Event>;

struct GameState {
  GameConfig config;
  std::shared_ptr<const BoardDefinition> board;
  std::shared_ptr<const QuestionBank> bank;
  std::vector<Pawn> pawns;
  TeamIndex current_team = 0;
  TurnPhase phase;
  std::vector<int> skip_counters;
  int consecutive_sixes = 0;
  std::optional<int> pending_bonus;
  bool extra_roll_pending = false;  // Parchís: the roll being played grants another
  std::vector<std::optional<PawnId>> last_moved;  // per team, Parchís
  SplitMix64 rng;
  SelectionCursor cursor;
  std::uint64_t turn_number = 0;
  std::uint64_t roll_count = 0;
  std::optional<int> last_face;

  int pawns_per_team() const { return quizboard::pawns_per_team(config.kind, config.speed); }
  std::vector<PawnId> team_pawns(TeamIndex team) const;

  // Board and bank compare by content; the shared pointers themselves are not
  // part of a state's identity.
  friend bool operator==(const GameState& a, const GameState& b);
};

// Throws Error with InvalidConfig, KindMismatch, UnknownTopic or EmptyTopic.
void validate_config(const GameConfig& config, const BoardDefinition& board, const QuestionBank& bank);

GameState new_game(GameConfig config, std::shared_ptr<const BoardDefinition> board,
                   std::shared_ptr<const QuestionBank> bank);

struct RollResult {
  int face = 0;
  GameState state;
  Events events;
};

struct AnswerResult {
  bool correct = false;
  GameState state;
  Events events;
};

struct MoveResult {
  GameState state;
  Events events;
};

// Every operation takes the state by value and returns the successor, so
// callers that do not need the old state should std::move it in.

// AwaitRoll -> AwaitAnswer with a question drawn for the current team. In
// Parchís the last of max_consecutive_extra sixes in a row instead sends the
// team's last-moved track pawn home and passes the turn.
RollResult roll_dice(GameState state);

// AwaitAnswer -> wrong answers pass the turn with no pawn moved; right answers
// play the rolled face.
AnswerResult submit_answer(GameState state, int choice);

// Pawns of the current team that may legally play `face`. For Goose and Motor
// this is the team's pawn unless it has finished.
std::vector<PawnId> legal_moves(const GameState& state, int face);

// Plays `face` with `pawn` as if that roll had just been answered correctly,
// resolving board effects, captures, bonuses and turn hand-over.
MoveResult apply_move(GameState state, PawnId pawn, int face);

// AwaitMoveChoice -> plays the pending face or bonus with the chosen pawn.
MoveResult choose_pawn(GameState state, PawnId pawn);

std::optional<TeamIndex> winner(const GameState& state);

// Where a linear-track pawn at `position` lands with `face` before square
// effects. Exact finishes bounce back by the excess; otherwise reaching or
// passing the goal lands on it.
int linear_landing(int position, int face, int goal, bool exact_finish);

bool exact_finish(GameKind kind, Speed speed);

// Empty when every structural invariant holds; otherwise a description of the
// first violation.
std::optional<std::string> find_invariant_violation(const GameState& state);

}  // namespace quizboard
