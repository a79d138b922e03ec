#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "quizboard/board.hpp"
#include "quizboard/game.hpp"
#include "quizboard/question_bank.hpp"
#include "quizboard/transcript.hpp"

namespace quizboard {

// Banks (per language) and boards (per kind) a service can start games with.
struct Catalog {
  std::map<std::string, std::shared_ptr<const QuestionBank>> banks;
  std::map<GameKind, std::shared_ptr<const BoardDefinition>> boards;

  // boards_dir may be empty for the built-in boards.
  static Catalog load(const std::filesystem::path& banks_dir, const std::filesystem::path& boards_dir);
};

struct ServiceReply {
  int status = 200;
  nlohmann::json body;
};

// HTTP-independent core of the game server. Thread-safe: actions on one
// session are serialized, different sessions proceed in parallel.
class GameService {
 public:
  using Clock = std::chrono::steady_clock;
  using NowFn = std::function<Clock::time_point()>;

  static constexpr std::size_t kEventTail = 32;

  explicit GameService(Catalog catalog, std::chrono::seconds session_ttl = std::chrono::hours(2),
                       NowFn now = [] { return Clock::now(); });

  // 201 {session_id, view} | 422 {error: "validation", fields: [...]}
  ServiceReply create_session(const nlohmann::json& config);

  // Body {"type": "roll"} | {"type": "answer", "choice": i} |
  // {"type": "choose_pawn", "pawn": id}.
  // 200 view | 400 malformed | 404 unknown session | 409 not legal now (the
  // unchanged view is included).
  ServiceReply post_action(std::string_view session_id, const nlohmann::json& action);

  // 200 view | 404. Never mutates anything.
  ServiceReply get_state(std::string_view session_id) const;

  // 200 transcript JSON | 404. Replays with the same banks and boards.
  ServiceReply get_transcript(std::string_view session_id) const;

  nlohmann::json banks_summary() const;
  nlohmann::json boards_summary() const;
  std::optional<nlohmann::json> board(std::string_view kind) const;

  // Drops sessions idle for longer than the TTL; returns how many.
  std::size_t expire_idle();
  std::size_t session_count() const;

  // Test hook: replays the stored transcript and compares with the stored
  // state. Empty optional for an unknown session.
  std::optional<bool> transcript_matches_state(std::string_view session_id) const;

 private:
  struct Session {
    std::string id;
    mutable std::mutex mutex;
    GameState state;
    Transcript transcript;
    std::deque<nlohmann::json> events;  // tail, each tagged with "seq"
    std::uint64_t next_seq = 0;
    Clock::time_point created_at;
    Clock::time_point last_active;
  };

  std::shared_ptr<Session> find(std::string_view session_id) const;
  bool expired(const Session& session) const;
  nlohmann::json view(const Session& session) const;
  void record_events(Session& session, const Events& events) const;
  std::string fresh_id();

  Catalog catalog_;
  std::chrono::seconds ttl_;
  NowFn now_;
  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

// Client-facing projection of a state. Carries the pending question's prompt
// and options but never its answer.
nlohmann::json state_view(const GameState& state);

}  // namespace quizboard
