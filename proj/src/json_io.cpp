#include "quizboard/json_io.hpp"

#include <fstream>
#include <sstream>

#include "quizboard/error.hpp"

namespace quizboard {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_board(const std::string& message) { throw Error(ErrorCode::InvalidBoard, message); }

int int_field(const json& doc, const char* key, std::optional<int> fallback = std::nullopt) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (fallback) return *fallback;
    bad_board(std::string("missing '") + key + "'");
  }
  if (!it->is_number_integer()) bad_board(std::string("'") + key + "' must be an integer");
  return it->get<int>();
}

std::vector<int> int_list(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return {};
  if (!it->is_array()) bad_board(std::string("'") + key + "' must be an array");
  std::vector<int> out;
  for (const auto& v : *it) {
    if (!v.is_number_integer()) bad_board(std::string("'") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

json effect_to_json(int square, const SquareEffect& effect) {
  json e = {{"square", square}, {"type", to_string(effect.kind)}};
  switch (effect.kind) {
    case EffectKind::JumpTo:
      e["target"] = effect.target;
      e["extra_roll"] = effect.extra_roll;
      break;
    case EffectKind::SkipTurns:
      e["turns"] = effect.turns;
      break;
    case EffectKind::TeamStart:
      e["team"] = effect.team;
      break;
    default:
      break;
  }
  return e;
}

SquareEffect effect_from_json(const json& e) {
  if (!e.contains("type") || !e["type"].is_string()) bad_board("effect needs a string 'type'");
  const auto type = e["type"].get<std::string>();
  if (type == "jump") {
    bool extra = false;
    if (auto it = e.find("extra_roll"); it != e.end()) {
      if (!it->is_boolean()) bad_board("'extra_roll' must be a boolean");
      extra = it->get<bool>();
    }
    return SquareEffect::jump_to(int_field(e, "target"), extra);
  }
  if (type == "extra_roll") return SquareEffect::extra();
  if (type == "skip") return SquareEffect::skip(int_field(e, "turns"));
  if (type == "back_to_start") return SquareEffect::back_to_start();
  if (type == "safe") return SquareEffect::safe();
  if (type == "team_start") return SquareEffect::team_start(int_field(e, "team"));
  bad_board("unknown effect type '" + type + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json board_to_json(const BoardDefinition& board) {
  json doc = {{"kind", to_string(board.kind)}, {"square_count", board.square_count}};
  json effects = json::array();
  for (const auto& [square, effect] : board.effects) effects.push_back(effect_to_json(square, effect));
  doc["effects"] = std::move(effects);
  if (board.is_linear()) {
    doc["goal"] = board.goal;
  } else {
    doc["corridor_entries"] = board.corridor_entries;
    doc["corridor_length"] = board.corridor_length;
    doc["entry_face"] = board.entry_face;
    doc["capture_bonus"] = board.capture_bonus;
    doc["goal_bonus"] = board.goal_bonus;
    doc["extra_roll_face"] = board.extra_roll_face;
    doc["max_consecutive_extra"] = board.max_consecutive_extra;
  }
  return doc;
}

BoardDefinition board_from_json(const json& doc) {
  if (!doc.is_object()) bad_board("board must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) bad_board("board needs a string 'kind'");
  const auto kind = parse_game_kind(doc["kind"].get<std::string>());
  if (!kind) bad_board("unknown board kind '" + doc["kind"].get<std::string>() + "'");

  BoardDefinition board;
  board.kind = *kind;
  board.square_count = int_field(doc, "square_count");
  if (auto it = doc.find("effects"); it != doc.end()) {
    if (!it->is_array()) bad_board("'effects' must be an array");
    for (const auto& e : *it) {
      if (!e.is_object()) bad_board("effects must be objects");
      const int square = int_field(e, "square");
      if (!board.effects.emplace(square, effect_from_json(e)).second) {
        bad_board("two effects on square " + std::to_string(square));
      }
    }
  }
  if (board.is_linear()) {
    board.goal = int_field(doc, "goal", board.square_count);
  } else {
    board.corridor_entries = int_list(doc, "corridor_entries");
    board.corridor_length = int_field(doc, "corridor_length");
    board.entry_face = int_field(doc, "entry_face", 5);
    board.capture_bonus = int_field(doc, "capture_bonus", 20);
    board.goal_bonus = int_field(doc, "goal_bonus", 10);
    board.extra_roll_face = int_field(doc, "extra_roll_face", 6);
    board.max_consecutive_extra = int_field(doc, "max_consecutive_extra", 3);
  }
  return make_board(std::move(board));
}

BoardDefinition load_board_file(const fs::path& path) {
  try {
    return board_from_json(json::parse(read_text(path)));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidBoard, path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::map<GameKind, std::shared_ptr<const BoardDefinition>> load_boards(const fs::path& dir) {
  std::map<GameKind, std::shared_ptr<const BoardDefinition>> boards;
  for (GameKind kind : {GameKind::Goose, GameKind::Parchis, GameKind::Motor}) {
    const fs::path file = dir.empty() ? fs::path{} : dir / (std::string(to_string(kind)) + ".json");
    BoardDefinition board = !file.empty() && fs::exists(file) ? load_board_file(file) : default_board(kind);
    if (board.kind != kind) {
      throw Error(ErrorCode::KindMismatch, file.string() + " holds a " + std::string(to_string(board.kind)) + " board");
    }
    boards.emplace(kind, std::make_shared<const BoardDefinition>(std::move(board)));
  }
  return boards;
}

std::optional<GameConfig> parse_config(const json& doc, std::vector<FieldError>& errors) {
  const std::size_t before = errors.size();
  auto error = [&](std::string field, std::string message) {
    errors.push_back({std::move(field), std::move(message)});
  };
  if (!doc.is_object()) {
    error("", "config must be a JSON object");
    return std::nullopt;
  }

  GameConfig config;
  if (auto it = doc.find("game"); it == doc.end() || !it->is_string()) {
    error("game", "required: one of goose, parchis, motor");
  } else if (auto kind = parse_game_kind(it->get<std::string>())) {
    config.kind = *kind;
  } else {
    error("game", "unknown game '" + it->get<std::string>() + "'");
  }

  if (auto it = doc.find("teams"); it == doc.end() || !it->is_array()) {
    error("teams", "required: one topic list per team");
  } else {
    config.team_count = static_cast<int>(it->size());
    if (config.team_count < kMinTeams || config.team_count > kMaxTeams) {
      error("teams", "between 2 and 4 teams required, got " + std::to_string(config.team_count));
    }
    for (std::size_t t = 0; t < it->size(); ++t) {
      const json& team = (*it)[t];
      const std::string field = "teams[" + std::to_string(t) + "]";
      std::vector<std::string> topics;
      if (!team.is_array()) {
        error(field, "must be a list of topic ids");
      } else {
        for (const auto& topic : team) {
          if (topic.is_string()) {
            topics.push_back(topic.get<std::string>());
          } else {
            error(field, "topic ids must be strings");
          }
        }
        if (team.empty()) error(field, "choose at least one topic");
      }
      config.topics_per_team.push_back(std::move(topics));
    }
  }

  if (auto it = doc.find("speed"); it != doc.end()) {
    auto speed = it->is_string() ? parse_speed(it->get<std::string>()) : std::nullopt;
    if (speed) {
      config.speed = *speed;
    } else {
      error("speed", "must be normal or fast");
    }
  }
  if (auto it = doc.find("dice_mode"); it != doc.end()) {
    auto mode = it->is_string() ? parse_dice_mode(it->get<std::string>()) : std::nullopt;
    if (mode) {
      config.dice_mode = *mode;
    } else {
      error("dice_mode", "must be manual or auto");
    }
  }
  if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (it->is_number_unsigned() || (it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
      config.seed = it->get<std::uint64_t>();
    } else if (it->is_string()) {
      // Large seeds travel as strings so JavaScript clients keep every bit.
      try {
        std::size_t used = 0;
        const auto text = it->get<std::string>();
        config.seed = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        error("seed", "must be an unsigned 64-bit integer");
      }
    } else {
      error("seed", "must be an unsigned 64-bit integer");
    }
  }
  if (auto it = doc.find("language"); it != doc.end()) {
    if (it->is_string() && !it->get<std::string>().empty()) {
      config.language = it->get<std::string>();
    } else {
      error("language", "must be a non-empty language tag");
    }
  }
  if (errors.size() != before) return std::nullopt;
  return config;
}

GameConfig config_from_json(const json& doc) {
  std::vector<FieldError> errors;
  auto config = parse_config(doc, errors);
  if (!config) {
    const auto& first = errors.front();
    throw Error(ErrorCode::InvalidConfig, first.field + ": " + first.message);
  }
  return *config;
}

json config_to_json(const GameConfig& config) {
  return {{"game", to_string(config.kind)},   {"teams", config.topics_per_team},
          {"speed", to_string(config.speed)}, {"dice_mode", to_string(config.dice_mode)},
          {"seed", config.seed},              {"language", config.language}};
}

json location_to_json(const Location& location) {
  json doc = {{"at", to_string(location.where)}};
  if (location.where == Where::Track) doc["square"] = location.value;
  if (location.where == Where::Corridor) doc["step"] = location.value;
  return doc;
}

Location location_from_json(const json& doc) {
  const auto at = doc.at("at").get<std::string>();
  if (at == "home") return Location::home();
  if (at == "track") return Location::track(doc.at("square").get<int>());
  if (at == "corridor") return Location::corridor(doc.at("step").get<int>());
  if (at == "finished") return Location::finished();
  throw Error(ErrorCode::BadTranscript, "unknown location '" + at + "'");
}

json event_to_json(const Event& event, const QuestionBank* bank) {
  json doc = {{"type", to_string(event.kind)}};
  if (event.team >= 0) doc["team"] = event.team;
  if (event.pawn >= 0) doc["pawn"] = event.pawn;
  switch (event.kind) {
    case EventKind::Moved:
    case EventKind::Bounced:
    case EventKind::Jumped:
    case EventKind::Entered:
    case EventKind::Captured:
    case EventKind::Finished:
    case EventKind::BackToStart:
      doc["from"] = location_to_json(event.from);
      doc["to"] = location_to_json(event.to);
      break;
    case EventKind::ExtraRollPenalty:
      if (event.pawn >= 0) {
        doc["from"] = location_to_json(event.from);
        doc["to"] = location_to_json(event.to);
      }
      break;
    default:
      break;
  }
  switch (event.kind) {
    case EventKind::Rolled:
    case EventKind::ExtraRollPenalty:
      doc["face"] = event.value;
      break;
    case EventKind::Asked:
      if (bank) doc["question"] = bank->record(static_cast<std::size_t>(event.value)).id;
      break;
    case EventKind::Answered:
      doc["right"] = event.value != 0;
      break;
    case EventKind::Moved:
    case EventKind::Entered:
    case EventKind::MoveForfeited:
      doc["steps"] = event.value;
      break;
    case EventKind::Bounced:
      doc["excess"] = event.value;
      break;
    case EventKind::Jumped:
      doc["extra_roll"] = event.value != 0;
      break;
    case EventKind::Captured:
      doc["by_team"] = event.value;
      break;
    case EventKind::BonusAwarded:
    case EventKind::BonusForfeited:
      doc["bonus"] = event.value;
      break;
    case EventKind::SkipTurns:
      doc["turns"] = event.value;
      break;
    case EventKind::TurnSkipped:
      doc["turns_left"] = event.value;
      break;
    default:
      break;
  }
  return doc;
}

json state_to_json(const GameState& s) {
  json pawns = json::array();
  for (std::size_t i = 0; i < s.pawns.size(); ++i) {
    pawns.push_back({{"id", i}, {"team", s.pawns[i].team}, {"location", location_to_json(s.pawns[i].location)}});
  }
  json phase = {{"kind", to_string(s.phase.kind)}};
  switch (s.phase.kind) {
    case PhaseKind::AwaitAnswer:
      phase["question"] = s.bank->record(s.phase.question).id;
      phase["face"] = s.phase.face;
      break;
    case PhaseKind::AwaitMoveChoice:
      phase["face"] = s.phase.face;
      phase["movable"] = s.phase.movable;
      break;
    case PhaseKind::GameOver:
      phase["winner"] = s.phase.winner;
      break;
    default:
      break;
  }
  json last_moved = json::array();
  for (const auto& p : s.last_moved) last_moved.push_back(optional_int(p));
  json pools = json::array();
  for (const auto& pool : s.cursor.pools) {
    pools.push_back({{"topics", pool.topics}, {"order", pool.order}, {"remaining", pool.remaining}});
  }
  return {{"config", config_to_json(s.config)},
          {"board", to_string(s.board->kind)},
          {"language", s.bank->language()},
          {"pawns", std::move(pawns)},
          {"current_team", s.current_team},
          {"phase", std::move(phase)},
          {"skip_counters", s.skip_counters},
          {"consecutive_sixes", s.consecutive_sixes},
          {"pending_bonus", optional_int(s.pending_bonus)},
          {"extra_roll_pending", s.extra_roll_pending},
          {"last_moved", std::move(last_moved)},
          {"rng_state", s.rng.state()},
          {"cursor", {{"rng_state", s.cursor.rng.state()}, {"pools", std::move(pools)}}},
          {"turn_number", s.turn_number},
          {"roll_count", s.roll_count},
          {"last_face", optional_int(s.last_face)}};
}

json transcript_to_json(const Transcript& transcript) {
  json actions = json::array();
  for (const auto& action : transcript.actions) {
    json a = {{"type", to_string(action.kind)}};
    if (action.kind == ActionKind::Answer) a["choice"] = action.value;
    if (action.kind == ActionKind::ChoosePawn) a["pawn"] = action.value;
    actions.push_back(std::move(a));
  }
  return {{"config", config_to_json(transcript.config)}, {"actions", std::move(actions)}};
}

Transcript transcript_from_json(const json& doc) {
  auto bad = [](const std::string& message) -> Error { return Error(ErrorCode::BadTranscript, message); };
  if (!doc.is_object() || !doc.contains("config") || !doc.contains("actions")) {
    throw bad("transcript needs 'config' and 'actions'");
  }
  Transcript transcript;
  try {
    transcript.config = config_from_json(doc["config"]);
  } catch (const Error& e) {
    throw bad(std::string("config: ") + e.what());
  }
  const json& actions = doc["actions"];
  if (!actions.is_array()) throw bad("'actions' must be an array");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const json& a = actions[i];
    const std::string where = "action " + std::to_string(i);
    if (!a.is_object() || !a.contains("type") || !a["type"].is_string()) throw bad(where + ": needs a 'type'");
    const auto kind = parse_action_kind(a["type"].get<std::string>());
    if (!kind) throw bad(where + ": unknown type '" + a["type"].get<std::string>() + "'");
    Action action{*kind, 0};
    const char* key = *kind == ActionKind::Answer ? "choice" : *kind == ActionKind::ChoosePawn ? "pawn" : nullptr;
    if (key) {
      if (!a.contains(key) || !a[key].is_number_integer()) throw bad(where + ": needs integer '" + key + "'");
      action.value = a[key].get<int>();
    }
    transcript.actions.push_back(action);
  }
  return transcript;
}

}  // namespace quizboard
