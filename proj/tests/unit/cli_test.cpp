#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "quizboard/cli.hpp"
#include "quizboard/json_io.hpp"
#include "quizboard/sim.hpp"
#include "test_support.hpp"

using namespace quizboard;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (testing::fixtures() / name).string(); }

}  // namespace

TEST_CASE("bank compile writes the english bank") {
  testing::TempDir dir;
  const auto r = run({"bank", "compile", "--in", fixture("sheet.csv"), "--lang", "en", "--out", (dir / "banks").string()});
  CHECK(r.code == 0);
  CHECK(fs::is_regular_file(dir / "banks/en/questions.json"));
  CHECK(fs::is_regular_file(dir / "banks/en/img/s1.png"));
  CHECK(r.out.find("questions.json") != std::string::npos);
}

TEST_CASE("bank compile reports problems with their row and writes nothing") {
  testing::TempDir dir;
  auto r = run({"bank", "compile", "--in", fixture("corrupt/duplicate_id.csv"), "--out", (dir / "banks").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find(":4: DuplicateId") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "banks/en"));

  r = run({"bank", "compile", "--in", fixture("corrupt/missing_image.csv"), "--out", (dir / "banks").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("MissingImage") != std::string::npos);
  CHECK(r.err.find("img/x.png") != std::string::npos);

  r = run({"bank", "compile", "--in", fixture("corrupt/empty.csv"), "--out", (dir / "banks").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("EmptyBank") != std::string::npos);
}

TEST_CASE("bank validate") {
  auto r = run({"bank", "validate", "--in", fixture("sheet.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("en: 5 topic(s)") != std::string::npos);
  r = run({"bank", "validate", "--in", fixture("corrupt/bad_correct_index.csv")});
  CHECK(r.code == 1);
  CHECK(r.err.find(":2: BadCorrectIndex") != std::string::npos);
  CHECK(r.err.find(":3: BadCorrectIndex") != std::string::npos);
}

TEST_CASE("simulate is reproducible") {
  const std::vector<std::string> args{"simulate", "--game", "goose", "--speed", "fast", "--games", "300", "--seed", "1"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("rolls/game") != std::string::npos);

  auto json_args = args;
  json_args.push_back("--json");
  json_args.push_back("--threads");
  json_args.push_back("3");
  const auto c = run(json_args);
  const auto doc = nlohmann::json::parse(c.out);
  CHECK(doc["games"] == 300);
  CHECK(doc["speed"] == "fast");
}

TEST_CASE("simulate compare prints both arms") {
  const auto r = run({"simulate", "--game", "motor", "--games", "200", "--compare", "--json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["fast_over_normal"].get<double>() < 1.0);
  CHECK(doc["normal"]["speed"] == "normal");
}

TEST_CASE("simulate with an answer probability") {
  const auto r = run({"simulate", "--game", "parchis", "--games", "20", "--p", "0.8", "--teams", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("team2=") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  auto r = run({"dance"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"simulate", "--game", "chess"}).code == 2);
  CHECK(run({"simulate", "--game", "goose", "--frobnicate"}).code == 2);
  CHECK(run({"simulate", "--game", "goose", "--teams", "5"}).code == 2);
  CHECK(run({"bank", "compile", "--in", fixture("sheet.csv")}).code == 2);
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("replay prints the final state") {
  testing::TempDir dir;
  const auto config = simulation_config(GameKind::Goose, Speed::Normal, 2, 6);
  auto board = std::make_shared<const BoardDefinition>(goose_board());
  auto bank = synthetic_bank(config);
  std::vector<Action> actions;
  GameState final_state;
  play_game(new_game(config, board, bank), AnswerPolicy::bernoulli_all(0.5, 2), 6, kDefaultActionCap, &actions,
            &final_state);
  testing::write_text(dir / "t.json", transcript_to_json({config, actions}).dump());

  const auto r = run({"replay", "--transcript", (dir / "t.json").string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == state_to_json(final_state));

  auto broken = transcript_to_json({config, actions});
  broken["actions"].insert(broken["actions"].begin(), nlohmann::json{{"type", "answer"}, {"choice", 0}});
  testing::write_text(dir / "bad.json", broken.dump());
  const auto bad = run({"replay", "--transcript", (dir / "bad.json").string()});
  CHECK(bad.code == 1);
  CHECK_MESSAGE(bad.err.find("DivergentAction") != std::string::npos, bad.err);
}

TEST_CASE("replay against compiled banks") {
  testing::TempDir dir;
  REQUIRE(run({"bank", "compile", "--in", fixture("sheet.csv"), "--out", (dir / "banks").string()}).code == 0);
  Transcript t;
  t.config = testing::config(GameKind::Motor);
  t.config.topics_per_team = {{"sport"}, {"food"}};
  t.actions = {Action::roll(), Action::answer(0), Action::roll()};
  testing::write_text(dir / "t.json", transcript_to_json(t).dump());
  const auto r = run({"replay", "--transcript", (dir / "t.json").string(), "--banks-dir", (dir / "banks").string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["phase"]["kind"] == "await_answer");
}
