#include <algorithm>

#include "doctest.h"
#include "quizboard/json_io.hpp"
#include "test_support.hpp"

using namespace quizboard;

TEST_CASE("config parsing fills defaults") {
  std::vector<FieldError> errors;
  const auto c = parse_config(json::parse(R"({"game": "parchis", "teams": [["sport"], ["food", "animals"]]})"), errors);
  REQUIRE(c);
  CHECK(errors.empty());
  CHECK(c->kind == GameKind::Parchis);
  CHECK(c->team_count == 2);
  CHECK(c->topics_per_team[1] == std::vector<std::string>{"food", "animals"});
  CHECK(c->speed == Speed::Normal);
  CHECK(c->dice_mode == DiceMode::Manual);
  CHECK(c->language == "en");
}

TEST_CASE("config parsing names every bad field") {
  std::vector<FieldError> errors;
  const auto c = parse_config(
      json::parse(R"({"game": "chess", "teams": [["a"], [], 3], "speed": "ludicrous", "dice_mode": 1, "seed": -4})"),
      errors);
  CHECK_FALSE(c);
  std::vector<std::string> fields;
  for (const auto& e : errors) fields.push_back(e.field);
  for (const char* f : {"game", "teams[1]", "teams[2]", "speed", "dice_mode", "seed"}) {
    CHECK_MESSAGE(std::count(fields.begin(), fields.end(), f) == 1, f);
  }
}

TEST_CASE("five teams are refused") {
  std::vector<FieldError> errors;
  CHECK_FALSE(parse_config(json::parse(R"({"game": "goose", "teams": [["a"], ["a"], ["a"], ["a"], ["a"]]})"), errors));
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].field == "teams");
}

TEST_CASE("config round-trip") {
  auto c = testing::config(GameKind::Motor, Speed::Fast, 3, 1234);
  c.dice_mode = DiceMode::Auto;
  c.language = "es";
  CHECK(config_from_json(config_to_json(c)) == c);
}

TEST_CASE("locations serialize by kind") {
  for (const auto& loc : {Location::home(), Location::track(12), Location::corridor(3), Location::finished()}) {
    CHECK(location_from_json(location_to_json(loc)) == loc);
  }
  CHECK(location_to_json(Location::track(12)) == json::parse(R"({"at": "track", "square": 12})"));
}

TEST_CASE("state json never hides the engine state") {
  auto s = roll_dice(testing::start(GameKind::Goose)).state;
  const auto doc = state_to_json(s);
  CHECK(doc["phase"]["kind"] == "await_answer");
  CHECK(doc["rng_state"] == s.rng.state());
  CHECK(doc["pawns"].size() == 2);
}
