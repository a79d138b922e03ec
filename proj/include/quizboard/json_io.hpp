#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "quizboard/board.hpp"
#include "quizboard/game.hpp"
#include "quizboard/transcript.hpp"

namespace quizboard {

using nlohmann::json;

// Board files.
json board_to_json(const BoardDefinition& board);
BoardDefinition board_from_json(const json& doc);  // throws Error(InvalidBoard)
BoardDefinition load_board_file(const std::filesystem::path& path);

// Loads goose.json / parchis.json / motor.json from dir, falling back to the
// built-in layout for any that is missing. An empty path yields the defaults.
std::map<GameKind, std::shared_ptr<const BoardDefinition>> load_boards(const std::filesystem::path& dir);

// Game configuration as sent by clients:
//   {"game": "goose", "teams": [["sport"], ["food", "animals"]],
//    "speed": "normal", "dice_mode": "manual", "seed": 7, "language": "en"}
// speed, dice_mode, seed and language are optional. A missing seed is left
// at 0; callers that want a random game fill it in themselves.
struct FieldError {
  std::string field;
  std::string message;
};

std::optional<GameConfig> parse_config(const json& doc, std::vector<FieldError>& errors);
GameConfig config_from_json(const json& doc);  // throws Error(InvalidConfig)
json config_to_json(const GameConfig& config);

json location_to_json(const Location& location);
Location location_from_json(const json& doc);

// bank is used to name questions in "asked" events; it may be null.
json event_to_json(const Event& event, const QuestionBank* bank);

// Full engine state, including generator state and pending question index.
// Never send this to players: it can reveal the answer.
json state_to_json(const GameState& state);

json transcript_to_json(const Transcript& transcript);
Transcript transcript_from_json(const json& doc);  // throws Error(BadTranscript)

}  // namespace quizboard
