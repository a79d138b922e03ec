#include "quizboard/game.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "quizboard/error.hpp"

namespace quizboard {

namespace {

// Separates the question stream from the dice stream of the same seed.
constexpr std::uint64_t kQuestionStreamTweak = 0xD1B54A32D192ED03ull;

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void require_phase(const GameState& s, PhaseKind kind, std::string_view op) {
  if (s.phase.kind != kind) {
    fail(ErrorCode::WrongPhase, std::string(op) + " needs phase " + std::string(to_string(kind)) +
                                    ", game is in " + std::string(to_string(s.phase.kind)));
  }
}

int track_occupants(const GameState& s, int square, std::vector<PawnId>* who = nullptr) {
  int count = 0;
  for (std::size_t i = 0; i < s.pawns.size(); ++i) {
    const Location& loc = s.pawns[i].location;
    if (loc.where == Where::Track && loc.value == square) {
      ++count;
      if (who) who->push_back(static_cast<PawnId>(i));
    }
  }
  return count;
}

bool is_barrier(const GameState& s, int square) {
  std::vector<PawnId> who;
  if (track_occupants(s, square, &who) != 2) return false;
  return s.pawns[idx(who[0])].team == s.pawns[idx(who[1])].team;
}

struct ParchisPlan {
  Location to;
  PawnId victim = -1;
};

std::optional<ParchisPlan> plan_parchis(const GameState& s, PawnId id, int steps, bool allow_entry) {
  const BoardDefinition& board = *s.board;
  const Pawn& pawn = s.pawns[idx(id)];
  const int team = pawn.team;

  if (pawn.location.where == Where::Finished || steps < 1) return std::nullopt;

  if (pawn.location.where == Where::Home) {
    if (!allow_entry || steps != board.entry_face) return std::nullopt;
    const int start = board.start_squares[idx(team)];
    std::vector<PawnId> who;
    if (track_occupants(s, start, &who) < 2) return ParchisPlan{Location::track(start)};
    PawnId victim = -1;
    for (PawnId other : who) {
      if (s.pawns[idx(other)].team != team) {
        victim = other;
        break;
      }
    }
    if (victim < 0) return std::nullopt;
    return ParchisPlan{Location::track(start), victim};
  }

  const int entry = board.entry_progress[idx(team)];
  const int finish = board.finish_progress(team);
  const bool on_track = pawn.location.where == Where::Track;
  const int from = on_track ? board.progress_of_square(team, pawn.location.value)
                            : entry + pawn.location.value;
  int target = from + steps;
  if (target > finish) {
    if (exact_finish(GameKind::Parchis, s.config.speed)) return std::nullopt;
    target = finish;
  }

  if (on_track) {
    const int last_passed = std::min(target - 1, entry);
    for (int p = from + 1; p <= last_passed; ++p) {
      if (is_barrier(s, board.square_at_progress(team, p))) return std::nullopt;
    }
  }
  if (target == finish) return ParchisPlan{Location::finished()};
  if (target > entry) return ParchisPlan{Location::corridor(target - entry)};

  const int square = board.square_at_progress(team, target);
  std::vector<PawnId> who;
  const int occupied = track_occupants(s, square, &who);
  if (occupied >= 2) return std::nullopt;
  ParchisPlan plan{Location::track(square)};
  if (occupied == 1 && s.pawns[idx(who[0])].team != team && !board.is_safe(square)) {
    plan.victim = who[0];
  }
  return plan;
}

std::vector<PawnId> parchis_moves(const GameState& s, TeamIndex team, int steps, bool allow_entry) {
  const auto pawns = s.team_pawns(team);
  if (allow_entry && steps == s.board->entry_face) {
    for (PawnId id : pawns) {
      if (s.pawns[idx(id)].location.where == Where::Home && plan_parchis(s, id, steps, true)) {
        return {id};  // entering is compulsory; home pawns are interchangeable
      }
    }
  }
  std::vector<PawnId> moves;
  for (PawnId id : pawns) {
    if (plan_parchis(s, id, steps, allow_entry)) moves.push_back(id);
  }
  return moves;
}

// First team whose pawns have all finished. Goose and Motor have one pawn per
// team, so this is also their "first to the goal" rule.
std::optional<TeamIndex> pawn_winner(const GameState& s) {
  const int per_team = s.pawns_per_team();
  for (int team = 0; team < s.config.team_count; ++team) {
    int finished = 0;
    for (int i = 0; i < per_team; ++i) {
      if (s.pawns[idx(team * per_team + i)].location.where == Where::Finished) ++finished;
    }
    if (finished == per_team) return team;
  }
  return std::nullopt;
}

void pass_turn(GameState& s, Events& ev) {
  ev.push_back({EventKind::TurnPassed, s.current_team, -1, {}, {}, 0});
  s.consecutive_sixes = 0;
  s.pending_bonus.reset();
  s.extra_roll_pending = false;
  ++s.turn_number;
  const int teams = s.config.team_count;
  int team = s.current_team;
  for (;;) {
    team = (team + 1) % teams;
    int& counter = s.skip_counters[idx(team)];
    if (counter == 0) break;
    --counter;
    ev.push_back({EventKind::TurnSkipped, team, -1, {}, {}, counter});
  }
  s.current_team = team;
  s.phase = TurnPhase{};
}

// Ends the game if someone won; otherwise grants the extra roll or passes on.
void finish_turn(GameState& s, Events& ev, bool extra_roll) {
  if (auto won = pawn_winner(s)) {
    s.phase = TurnPhase{};
    s.phase.kind = PhaseKind::GameOver;
    s.phase.winner = *won;
    s.pending_bonus.reset();
    ev.push_back({EventKind::GameWon, *won, -1, {}, {}, 0});
    return;
  }
  if (extra_roll) {
    s.phase = TurnPhase{};
    s.pending_bonus.reset();
    ev.push_back({EventKind::ExtraRoll, s.current_team, -1, {}, {}, 0});
    return;
  }
  pass_turn(s, ev);
}

// Lands a linear-board pawn and resolves the square's effect. A jump's
// destination applies its own non-jump effect, but jumps do not chain, so
// paired squares (bridges, dice) cannot loop.
void land_linear(GameState& s, PawnId id, int square, Events& ev, bool& extra_roll) {
  const BoardDefinition& board = *s.board;
  Pawn& pawn = s.pawns[idx(id)];
  bool jumped = false;
  for (;;) {
    if (square >= board.goal) {
      pawn.location = Location::finished();
      ev.push_back({EventKind::Finished, pawn.team, id, Location::track(board.goal), pawn.location});
      return;
    }
    pawn.location = Location::track(square);
    const SquareEffect* effect = board.effect_at(square);
    if (effect == nullptr) return;
    switch (effect->kind) {
      case EffectKind::JumpTo:
        if (jumped) return;
        ev.push_back({EventKind::Jumped, pawn.team, id, Location::track(square),
                      Location::track(effect->target), effect->extra_roll ? 1 : 0});
        extra_roll = extra_roll || effect->extra_roll;
        square = effect->target;
        jumped = true;
        continue;
      case EffectKind::ExtraRoll:
        extra_roll = true;
        return;
      case EffectKind::SkipTurns:
        s.skip_counters[idx(pawn.team)] += effect->turns;
        ev.push_back({EventKind::SkipTurns, pawn.team, id, pawn.location, pawn.location, effect->turns});
        return;
      case EffectKind::BackToStart:
        pawn.location = Location::track(1);
        ev.push_back({EventKind::BackToStart, pawn.team, id, Location::track(square), pawn.location});
        return;
      default:
        return;
    }
  }
}

void play_linear(GameState& s, PawnId id, int face, Events& ev) {
  const BoardDefinition& board = *s.board;
  Pawn& pawn = s.pawns[idx(id)];
  const Location from = pawn.location;
  const int reached = from.value + face;
  const int landing = linear_landing(from.value, face, board.goal, exact_finish(s.config.kind, s.config.speed));
  const Location first = landing >= board.goal ? Location::finished() : Location::track(landing);
  ev.push_back({EventKind::Moved, pawn.team, id, from, first, face});
  if (reached > board.goal && landing < board.goal) {
    ev.push_back({EventKind::Bounced, pawn.team, id, Location::track(board.goal), first, reached - board.goal});
  }
  bool extra_roll = false;
  land_linear(s, id, landing, ev, extra_roll);
  finish_turn(s, ev, extra_roll);
}

// Moves one Parchís pawn and returns the bonus it earned (0 for none).
int move_parchis(GameState& s, PawnId id, int steps, bool allow_entry, Events& ev) {
  const auto plan = plan_parchis(s, id, steps, allow_entry);
  if (!plan) fail(ErrorCode::IllegalMove, "pawn " + std::to_string(id) + " cannot move " + std::to_string(steps));
  Pawn& pawn = s.pawns[idx(id)];
  const Location from = pawn.location;
  pawn.location = plan->to;
  s.last_moved[idx(pawn.team)] = id;
  ev.push_back({from.where == Where::Home ? EventKind::Entered : EventKind::Moved, pawn.team, id, from,
                plan->to, steps});
  int bonus = 0;
  if (plan->victim >= 0) {
    Pawn& victim = s.pawns[idx(plan->victim)];
    ev.push_back({EventKind::Captured, victim.team, plan->victim, victim.location, Location::home(), pawn.team});
    victim.location = Location::home();
    bonus = s.board->capture_bonus;
  }
  if (plan->to.where == Where::Finished) {
    ev.push_back({EventKind::Finished, pawn.team, id, from, plan->to});
    bonus = s.board->goal_bonus;
  }
  if (bonus > 0) ev.push_back({EventKind::BonusAwarded, pawn.team, id, {}, {}, bonus});
  return bonus;
}

// Plays steps (a rolled face or a bonus) and then any bonuses it chains into,
// stopping early if a bonus needs the player to pick a pawn.
void play_parchis(GameState& s, PawnId id, int steps, bool allow_entry, Events& ev) {
  int bonus = move_parchis(s, id, steps, allow_entry, ev);
  while (bonus > 0 && !pawn_winner(s)) {
    const auto moves = parchis_moves(s, s.current_team, bonus, false);
    if (moves.empty()) {
      ev.push_back({EventKind::BonusForfeited, s.current_team, -1, {}, {}, bonus});
      break;
    }
    if (moves.size() > 1) {
      s.pending_bonus = bonus;
      s.phase = TurnPhase{};
      s.phase.kind = PhaseKind::AwaitMoveChoice;
      s.phase.face = bonus;
      s.phase.movable = moves;
      return;
    }
    bonus = move_parchis(s, moves.front(), bonus, false, ev);
  }
  finish_turn(s, ev, s.extra_roll_pending);
}

void play_roll(GameState& s, PawnId id, int face, Events& ev) {
  if (s.board->is_linear()) {
    play_linear(s, id, face, ev);
    return;
  }
  s.extra_roll_pending = face == s.board->extra_roll_face;
  play_parchis(s, id, face, true, ev);
}

}  // namespace

std::string_view to_string(Speed speed) { return speed == Speed::Fast ? "fast" : "normal"; }
std::string_view to_string(DiceMode mode) { return mode == DiceMode::Auto ? "auto" : "manual"; }

std::optional<Speed> parse_speed(std::string_view text) {
  if (text == "normal") return Speed::Normal;
  if (text == "fast") return Speed::Fast;
  return std::nullopt;
}

std::optional<DiceMode> parse_dice_mode(std::string_view text) {
  if (text == "manual") return DiceMode::Manual;
  if (text == "auto") return DiceMode::Auto;
  return std::nullopt;
}

std::string_view to_string(Where where) {
  switch (where) {
    case Where::Home:
      return "home";
    case Where::Track:
      return "track";
    case Where::Corridor:
      return "corridor";
    case Where::Finished:
      return "finished";
  }
  return "?";
}

std::string_view to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::AwaitRoll:
      return "await_roll";
    case PhaseKind::AwaitAnswer:
      return "await_answer";
    case PhaseKind::AwaitMoveChoice:
      return "await_move_choice";
    case PhaseKind::GameOver:
      return "game_over";
  }
  return "?";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Rolled:
      return "rolled";
    case EventKind::Asked:
      return "asked";
    case EventKind::Answered:
      return "answered";
    case EventKind::Moved:
      return "moved";
    case EventKind::Bounced:
      return "bounced";
    case EventKind::Jumped:
      return "jumped";
    case EventKind::Entered:
      return "entered";
    case EventKind::Captured:
      return "captured";
    case EventKind::Finished:
      return "finished";
    case EventKind::BonusAwarded:
      return "bonus_awarded";
    case EventKind::BonusForfeited:
      return "bonus_forfeited";
    case EventKind::MoveForfeited:
      return "move_forfeited";
    case EventKind::ExtraRoll:
      return "extra_roll";
    case EventKind::SkipTurns:
      return "skip_turns";
    case EventKind::BackToStart:
      return "back_to_start";
    case EventKind::ExtraRollPenalty:
      return "extra_roll_penalty";
    case EventKind::TurnSkipped:
      return "turn_skipped";
    case EventKind::TurnPassed:
      return "turn_passed";
    case EventKind::GameWon:
      return "game_won";
  }
  return "?";
}

int pawns_per_team(GameKind kind, Speed speed) {
  if (kind != GameKind::Parchis) return 1;
  return speed == Speed::Fast ? 2 : 4;
}

int min_face(Speed speed) { return speed == Speed::Fast ? 4 : 1; }
int max_face(Speed speed) { return speed == Speed::Fast ? 9 : 6; }

bool exact_finish(GameKind kind, Speed speed) {
  return speed == Speed::Normal && kind != GameKind::Motor;
}

int linear_landing(int position, int face, int goal, bool exact) {
  const int reached = position + face;
  if (reached <= goal) return reached;
  if (!exact) return goal;
  return std::max(1, goal - (reached - goal));
}

std::vector<PawnId> GameState::team_pawns(TeamIndex team) const {
  const int per_team = pawns_per_team();
  std::vector<PawnId> ids(idx(per_team));
  for (int i = 0; i < per_team; ++i) ids[idx(i)] = team * per_team + i;
  return ids;
}

bool operator==(const GameState& a, const GameState& b) {
  auto same_board = a.board == b.board || (a.board && b.board && *a.board == *b.board);
  auto same_bank = a.bank == b.bank || (a.bank && b.bank && *a.bank == *b.bank);
  return same_board && same_bank && a.config == b.config && a.pawns == b.pawns &&
         a.current_team == b.current_team && a.phase == b.phase && a.skip_counters == b.skip_counters &&
         a.consecutive_sixes == b.consecutive_sixes && a.pending_bonus == b.pending_bonus &&
         a.extra_roll_pending == b.extra_roll_pending && a.last_moved == b.last_moved && a.rng == b.rng &&
         a.cursor == b.cursor && a.turn_number == b.turn_number && a.roll_count == b.roll_count &&
         a.last_face == b.last_face;
}

void validate_config(const GameConfig& config, const BoardDefinition& board, const QuestionBank& bank) {
  if (config.team_count < kMinTeams || config.team_count > kMaxTeams) {
    fail(ErrorCode::InvalidConfig, "team_count must be 2..4, got " + std::to_string(config.team_count));
  }
  if (static_cast<int>(config.topics_per_team.size()) != config.team_count) {
    fail(ErrorCode::InvalidConfig, "topics_per_team must list one topic set per team");
  }
  if (board.kind != config.kind) {
    fail(ErrorCode::KindMismatch, "board is " + std::string(to_string(board.kind)) + ", config asks for " +
                                      std::string(to_string(config.kind)));
  }
  if (!board.is_linear() && config.team_count > board.team_slots()) {
    fail(ErrorCode::InvalidConfig, "board has start squares for " + std::to_string(board.team_slots()) + " teams");
  }
  for (int team = 0; team < config.team_count; ++team) {
    const auto& topics = config.topics_per_team[idx(team)];
    if (topics.empty()) fail(ErrorCode::InvalidConfig, "team " + std::to_string(team) + " has no topics");
    for (const auto& topic_id : topics) {
      const Topic* topic = bank.find_topic(topic_id);
      if (topic == nullptr) {
        fail(ErrorCode::UnknownTopic, "team " + std::to_string(team) + ": unknown topic '" + topic_id + "'");
      }
      if (bank.language() != config.language || topic->questions.empty()) {
        fail(ErrorCode::EmptyTopic, "team " + std::to_string(team) + ": no '" + config.language +
                                        "' questions for topic '" + topic_id + "'");
      }
    }
  }
}

GameState new_game(GameConfig config, std::shared_ptr<const BoardDefinition> board,
                   std::shared_ptr<const QuestionBank> bank) {
  if (!board || !bank) fail(ErrorCode::InvalidConfig, "board and bank are required");
  validate_config(config, *board, *bank);
  for (auto& topics : config.topics_per_team) {
    std::sort(topics.begin(), topics.end());
    topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
  }

  GameState s;
  s.rng = SplitMix64(config.seed);
  s.cursor = SelectionCursor(config.seed ^ kQuestionStreamTweak);
  s.config = std::move(config);
  s.board = std::move(board);
  s.bank = std::move(bank);
  const int teams = s.config.team_count;
  const int per_team = s.pawns_per_team();
  const Location start = s.board->is_linear() ? Location::track(1) : Location::home();
  for (int team = 0; team < teams; ++team) {
    for (int i = 0; i < per_team; ++i) s.pawns.push_back({team, start});
  }
  s.skip_counters.assign(idx(teams), 0);
  s.last_moved.assign(idx(teams), std::nullopt);
  return s;
}

RollResult roll_dice(GameState s) {
  require_phase(s, PhaseKind::AwaitRoll, "roll");
  Events ev;
  const int face = s.rng.between(min_face(s.config.speed), max_face(s.config.speed));
  ++s.roll_count;
  s.last_face = face;
  ev.push_back({EventKind::Rolled, s.current_team, -1, {}, {}, face});

  if (!s.board->is_linear()) {
    if (face == s.board->extra_roll_face) {
      if (++s.consecutive_sixes >= s.board->max_consecutive_extra) {
        const auto& last = s.last_moved[idx(s.current_team)];
        PawnId victim = -1;
        Location from;
        if (last && s.pawns[idx(*last)].location.where == Where::Track) {
          victim = *last;
          from = s.pawns[idx(victim)].location;
          s.pawns[idx(victim)].location = Location::home();
        }
        ev.push_back({EventKind::ExtraRollPenalty, s.current_team, victim, from,
                      victim >= 0 ? Location::home() : from, face});
        pass_turn(s, ev);
        return {face, std::move(s), std::move(ev)};
      }
    } else {
      s.consecutive_sixes = 0;
    }
  }

  const auto& topics = s.config.topics_per_team[idx(s.current_team)];
  auto selection = select_question(*s.bank, std::move(s.cursor), s.current_team, topics);
  s.cursor = std::move(selection.cursor);
  s.phase = TurnPhase{};
  s.phase.kind = PhaseKind::AwaitAnswer;
  s.phase.question = selection.index;
  s.phase.face = face;
  ev.push_back({EventKind::Asked, s.current_team, -1, {}, {}, static_cast<int>(selection.index)});
  return {face, std::move(s), std::move(ev)};
}

AnswerResult submit_answer(GameState s, int choice) {
  require_phase(s, PhaseKind::AwaitAnswer, "answer");
  const QuestionRecord& question = s.bank->record(s.phase.question);
  if (choice < 0 || idx(choice) >= question.options.size()) {
    fail(ErrorCode::ChoiceOutOfRange, "choice " + std::to_string(choice) + " on a question with " +
                                          std::to_string(question.options.size()) + " options");
  }
  const bool correct = choice == question.correct_index;
  const int face = s.phase.face;
  Events ev;
  ev.push_back({EventKind::Answered, s.current_team, -1, {}, {}, correct ? 1 : 0});
  if (!correct) {
    pass_turn(s, ev);
    return {false, std::move(s), std::move(ev)};
  }

  const auto moves = legal_moves(s, face);
  if (moves.empty()) {
    ev.push_back({EventKind::MoveForfeited, s.current_team, -1, {}, {}, face});
    pass_turn(s, ev);
  } else if (moves.size() == 1 || s.board->is_linear()) {
    play_roll(s, moves.front(), face, ev);
  } else {
    s.phase = TurnPhase{};
    s.phase.kind = PhaseKind::AwaitMoveChoice;
    s.phase.face = face;
    s.phase.movable = moves;
    s.extra_roll_pending = face == s.board->extra_roll_face;
  }
  return {true, std::move(s), std::move(ev)};
}

std::vector<PawnId> legal_moves(const GameState& s, int face) {
  if (s.phase.kind == PhaseKind::GameOver) return {};
  if (s.board->is_linear()) {
    std::vector<PawnId> moves;
    for (PawnId id : s.team_pawns(s.current_team)) {
      if (s.pawns[idx(id)].location.where == Where::Track && face >= 1) moves.push_back(id);
    }
    return moves;
  }
  return parchis_moves(s, s.current_team, face, true);
}

MoveResult apply_move(GameState s, PawnId pawn, int face) {
  if (s.phase.kind == PhaseKind::GameOver) fail(ErrorCode::WrongPhase, "the game is over");
  if (s.pending_bonus) fail(ErrorCode::WrongPhase, "a bonus move is pending; choose a pawn");
  const auto moves = legal_moves(s, face);
  if (std::find(moves.begin(), moves.end(), pawn) == moves.end()) {
    fail(ErrorCode::IllegalMove, "pawn " + std::to_string(pawn) + " cannot play " + std::to_string(face));
  }
  Events ev;
  play_roll(s, pawn, face, ev);
  return {std::move(s), std::move(ev)};
}

MoveResult choose_pawn(GameState s, PawnId pawn) {
  require_phase(s, PhaseKind::AwaitMoveChoice, "choose_pawn");
  const auto& movable = s.phase.movable;
  if (std::find(movable.begin(), movable.end(), pawn) == movable.end()) {
    fail(ErrorCode::IllegalMove, "pawn " + std::to_string(pawn) + " is not among the movable pawns");
  }
  Events ev;
  const int steps = s.phase.face;
  if (s.pending_bonus) {
    s.pending_bonus.reset();
    play_parchis(s, pawn, steps, false, ev);
  } else {
    play_parchis(s, pawn, steps, true, ev);
  }
  return {std::move(s), std::move(ev)};
}

std::optional<TeamIndex> winner(const GameState& s) {
  if (s.phase.kind == PhaseKind::GameOver) return s.phase.winner;
  return pawn_winner(s);
}

std::optional<std::string> find_invariant_violation(const GameState& s) {
  auto bad = [](std::string what) { return std::optional<std::string>(std::move(what)); };
  const BoardDefinition& board = *s.board;
  const int teams = s.config.team_count;
  const int per_team = s.pawns_per_team();
  if (static_cast<int>(s.pawns.size()) != teams * per_team) return bad("pawn count changed");
  if (s.current_team < 0 || s.current_team >= teams) return bad("current team out of range");
  if (static_cast<int>(s.skip_counters.size()) != teams) return bad("skip counter per team");
  for (int c : s.skip_counters) {
    if (c < 0) return bad("negative skip counter");
  }
  for (std::size_t i = 0; i < s.pawns.size(); ++i) {
    const Pawn& pawn = s.pawns[i];
    const auto who = [i] { return "pawn " + std::to_string(i); };
    if (pawn.team != static_cast<int>(i) / per_team) return bad(who() + " changed team");
    const Location& loc = pawn.location;
    switch (loc.where) {
      case Where::Home:
        if (board.is_linear()) return bad(who() + " at home on a linear board");
        break;
      case Where::Corridor:
        if (board.is_linear()) return bad(who() + " in a corridor on a linear board");
        if (loc.value < 1 || loc.value > board.corridor_length) return bad(who() + " corridor step out of range");
        break;
      case Where::Track:
        if (loc.value < 1 || loc.value > board.square_count) return bad(who() + " square out of range");
        if (board.is_linear() && loc.value == board.goal) return bad(who() + " parked on the goal");
        if (!board.is_linear() &&
            board.progress_of_square(pawn.team, loc.value) > board.entry_progress[idx(pawn.team)]) {
          return bad(who() + " past its corridor entry");
        }
        break;
      case Where::Finished:
        break;
    }
  }
  if (!board.is_linear()) {
    std::set<int> squares;
    for (const Pawn& pawn : s.pawns) {
      if (pawn.location.where == Where::Track) squares.insert(pawn.location.value);
    }
    for (int square : squares) {
      std::vector<PawnId> who;
      const int n = track_occupants(s, square, &who);
      if (n > 2) return bad("more than two pawns on square " + std::to_string(square));
      if (n == 2 && s.pawns[idx(who[0])].team != s.pawns[idx(who[1])].team && !board.is_safe(square)) {
        return bad("rival pawns share unsafe square " + std::to_string(square));
      }
    }
    if (s.consecutive_sixes < 0 || s.consecutive_sixes >= board.max_consecutive_extra) {
      return bad("consecutive sixes out of range");
    }
  }
  if (s.phase.kind == PhaseKind::AwaitMoveChoice) {
    if (board.is_linear()) return bad("move choice on a linear board");
    if (s.phase.movable.empty()) return bad("move choice with no movable pawn");
  }
  if (s.phase.kind == PhaseKind::GameOver && pawn_winner(s) != s.phase.winner) return bad("winner mismatch");
  if (s.phase.kind != PhaseKind::GameOver && pawn_winner(s)) return bad("a team finished but the game goes on");
  return std::nullopt;
}

}  // namespace quizboard
