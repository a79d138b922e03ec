#include "quizboard/service.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "quizboard/bank_io.hpp"
#include "quizboard/error.hpp"
#include "quizboard/json_io.hpp"

namespace quizboard {

using nlohmann::json;

namespace {

json error_body(std::string_view code, std::string_view message) {
  return {{"error", code}, {"message", message}};
}

std::string_view error_slug(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongPhase:
      return "wrong_phase";
    case ErrorCode::ChoiceOutOfRange:
      return "choice_out_of_range";
    case ErrorCode::IllegalMove:
      return "illegal_move";
    default:
      return "conflict";
  }
}

}  // namespace

Catalog Catalog::load(const std::filesystem::path& banks_dir, const std::filesystem::path& boards_dir) {
  Catalog catalog;
  catalog.banks = load_bank_dir(banks_dir);
  catalog.boards = load_boards(boards_dir);
  return catalog;
}

json state_view(const GameState& s) {
  json pawns = json::array();
  for (std::size_t i = 0; i < s.pawns.size(); ++i) {
    pawns.push_back({{"id", i}, {"team", s.pawns[i].team}, {"location", location_to_json(s.pawns[i].location)}});
  }
  json view = {{"game", to_string(s.config.kind)},
               {"speed", to_string(s.config.speed)},
               {"dice_mode", to_string(s.config.dice_mode)},
               {"language", s.config.language},
               {"teams", s.config.team_count},
               {"team_topics", s.config.topics_per_team},
               {"phase", to_string(s.phase.kind)},
               {"current_team", s.current_team},
               {"turn_number", s.turn_number},
               {"roll_count", s.roll_count},
               {"last_face", s.last_face ? json(*s.last_face) : json(nullptr)},
               {"pawns", std::move(pawns)},
               {"skip_counters", s.skip_counters},
               {"pending_bonus", s.pending_bonus ? json(*s.pending_bonus) : json(nullptr)},
               {"winner", nullptr}};
  switch (s.phase.kind) {
    case PhaseKind::AwaitAnswer: {
      const QuestionRecord& q = s.bank->record(s.phase.question);
      json question = {{"id", q.id},
                       {"topic", q.topic_id},
                       {"topic_label", q.topic_label},
                       {"prompt", q.prompt},
                       {"options", q.options}};
      if (q.image_ref) question["image_url"] = "/assets/" + s.config.language + "/" + *q.image_ref;
      view["question"] = std::move(question);
      view["face"] = s.phase.face;
      break;
    }
    case PhaseKind::AwaitMoveChoice:
      view["face"] = s.phase.face;
      view["movable_pawns"] = s.phase.movable;
      break;
    case PhaseKind::GameOver:
      view["winner"] = s.phase.winner;
      break;
    case PhaseKind::AwaitRoll:
      break;
  }
  return view;
}

GameService::GameService(Catalog catalog, std::chrono::seconds session_ttl, NowFn now)
    : catalog_(std::move(catalog)), ttl_(session_ttl), now_(std::move(now)) {}

std::string GameService::fresh_id() {
  static thread_local std::random_device device;
  for (;;) {
    char buffer[33];
    for (int i = 0; i < 4; ++i) std::snprintf(buffer + 8 * i, 9, "%08x", static_cast<unsigned>(device()));
    std::string id(buffer, 32);
    if (sessions_.find(id) == sessions_.end()) return id;
  }
}

std::shared_ptr<GameService::Session> GameService::find(std::string_view session_id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(std::string(session_id));
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

bool GameService::expired(const Session& session) const { return now_() - session.last_active > ttl_; }

void GameService::record_events(Session& session, const Events& events) const {
  for (const auto& event : events) {
    json e = event_to_json(event, session.state.bank.get());
    e["seq"] = session.next_seq++;
    session.events.push_back(std::move(e));
  }
  while (session.events.size() > kEventTail) session.events.pop_front();
}

json GameService::view(const Session& session) const {
  json v = state_view(session.state);
  v["session_id"] = session.id;
  v["action_count"] = session.transcript.actions.size();
  v["events"] = json(session.events);
  return v;
}

ServiceReply GameService::create_session(const json& body) {
  expire_idle();

  std::vector<FieldError> errors;
  auto config = parse_config(body, errors);
  std::shared_ptr<const QuestionBank> bank;
  std::shared_ptr<const BoardDefinition> board;
  if (config) {
    if (auto it = catalog_.banks.find(config->language); it == catalog_.banks.end()) {
      errors.push_back({"language", "no question bank for language '" + config->language + "'"});
    } else {
      bank = it->second;
      for (std::size_t t = 0; t < config->topics_per_team.size(); ++t) {
        for (const auto& topic : config->topics_per_team[t]) {
          if (!bank->find_topic(topic)) {
            errors.push_back({"teams[" + std::to_string(t) + "]", "unknown topic '" + topic + "'"});
          }
        }
      }
    }
    board = catalog_.boards.at(config->kind);
    if (!board->is_linear() && config->team_count > board->team_slots()) {
      errors.push_back({"teams", "this board seats at most " + std::to_string(board->team_slots()) + " teams"});
    }
  }
  if (errors.empty() && config && !body.contains("seed")) {
    std::random_device device;
    config->seed = (static_cast<std::uint64_t>(device()) << 32) | device();
  }
  if (!errors.empty()) {
    json fields = json::array();
    for (const auto& e : errors) fields.push_back({{"field", e.field}, {"message", e.message}});
    return {422, {{"error", "validation"}, {"fields", std::move(fields)}}};
  }

  auto session = std::make_shared<Session>();
  try {
    session->state = new_game(*config, board, bank);
  } catch (const Error& e) {
    return {422, {{"error", "validation"}, {"fields", json::array({{{"field", ""}, {"message", e.what()}}})}}};
  }
  session->transcript.config = *config;
  session->created_at = session->last_active = now_();
  record_events(*session, {});
  if (config->dice_mode == DiceMode::Auto) {
    while (session->state.phase.kind == PhaseKind::AwaitRoll) {
      auto step = apply_action(session->state, Action::roll());
      session->state = std::move(step.state);
      session->transcript.actions.push_back(Action::roll());
      record_events(*session, step.events);
    }
  }

  std::unique_lock lock(sessions_mutex_);
  session->id = fresh_id();
  sessions_.emplace(session->id, session);
  json reply = {{"session_id", session->id}, {"view", view(*session)}};
  return {201, std::move(reply)};
}

ServiceReply GameService::post_action(std::string_view session_id, const json& body) {
  auto session = find(session_id);
  if (!session) return {404, error_body("not_found", "unknown session")};
  std::lock_guard lock(session->mutex);
  if (expired(*session)) return {404, error_body("not_found", "session expired")};

  if (!body.is_object() || !body.contains("type") || !body["type"].is_string()) {
    return {400, error_body("bad_request", "action needs a string 'type'")};
  }
  const auto kind = parse_action_kind(body["type"].get<std::string>());
  if (!kind) return {400, error_body("bad_request", "unknown action type '" + body["type"].get<std::string>() + "'")};
  Action action{*kind, 0};
  if (*kind != ActionKind::Roll) {
    const char* key = *kind == ActionKind::Answer ? "choice" : "pawn";
    if (!body.contains(key) || !body[key].is_number_integer()) {
      return {400, error_body("bad_request", std::string("action needs an integer '") + key + "'")};
    }
    action.value = body[key].get<int>();
  }

  // Work on copies so a rejected action leaves the session untouched.
  GameState state = session->state;
  std::vector<Action> applied;
  Events events;
  try {
    auto step = apply_action(std::move(state), action);
    state = std::move(step.state);
    applied.push_back(action);
    events = std::move(step.events);
    if (state.config.dice_mode == DiceMode::Auto) {
      while (state.phase.kind == PhaseKind::AwaitRoll) {
        auto roll = apply_action(std::move(state), Action::roll());
        state = std::move(roll.state);
        applied.push_back(Action::roll());
        events.insert(events.end(), roll.events.begin(), roll.events.end());
      }
    }
  } catch (const Error& e) {
    json reply = error_body(error_slug(e.code()), e.what());
    reply["view"] = view(*session);
    return {409, std::move(reply)};
  }

  session->state = std::move(state);
  session->transcript.actions.insert(session->transcript.actions.end(), applied.begin(), applied.end());
  record_events(*session, events);
  session->last_active = now_();
  return {200, view(*session)};
}

ServiceReply GameService::get_state(std::string_view session_id) const {
  auto session = find(session_id);
  if (!session) return {404, error_body("not_found", "unknown session")};
  std::lock_guard lock(session->mutex);
  if (expired(*session)) return {404, error_body("not_found", "session expired")};
  return {200, view(*session)};
}

ServiceReply GameService::get_transcript(std::string_view session_id) const {
  auto session = find(session_id);
  if (!session) return {404, error_body("not_found", "unknown session")};
  std::lock_guard lock(session->mutex);
  if (expired(*session)) return {404, error_body("not_found", "session expired")};
  return {200, transcript_to_json(session->transcript)};
}

std::optional<bool> GameService::transcript_matches_state(std::string_view session_id) const {
  auto session = find(session_id);
  if (!session) return std::nullopt;
  std::lock_guard lock(session->mutex);
  const GameState replayed = replay(session->transcript, session->state.board, session->state.bank);
  return replayed == session->state;
}

json GameService::banks_summary() const {
  json languages = json::object();
  for (const auto& [language, bank] : catalog_.banks) {
    json topics = json::array();
    for (const auto& [id, topic] : bank->topics()) {
      topics.push_back({{"id", id}, {"label", topic.label}, {"questions", topic.questions.size()}});
    }
    languages[language] = {{"topics", std::move(topics)}};
  }
  return {{"languages", std::move(languages)}};
}

json GameService::boards_summary() const {
  json kinds = json::array();
  for (const auto& [kind, board] : catalog_.boards) kinds.push_back(to_string(kind));
  return {{"boards", std::move(kinds)}};
}

std::optional<json> GameService::board(std::string_view kind) const {
  auto parsed = parse_game_kind(kind);
  if (!parsed) return std::nullopt;
  auto it = catalog_.boards.find(*parsed);
  if (it == catalog_.boards.end()) return std::nullopt;
  return board_to_json(*it->second);
}

std::size_t GameService::expire_idle() {
  std::unique_lock lock(sessions_mutex_);
  return std::erase_if(sessions_, [&](const auto& entry) {
    std::lock_guard session_lock(entry.second->mutex);
    return expired(*entry.second);
  });
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

}  // namespace quizboard
