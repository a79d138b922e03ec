#include <map>
#include <set>

#include "doctest.h"
#include "quizboard/error.hpp"
#include "quizboard/question_bank.hpp"
#include "test_support.hpp"

using namespace quizboard;

namespace {

QuestionBank bank_of(std::map<std::string, int> sizes) {
  std::vector<QuestionRecord> records;
  for (const auto& [topic, n] : sizes) {
    for (int i = 0; i < n; ++i) records.push_back(testing::record(topic + "-" + std::to_string(i), topic));
  }
  return QuestionBank("en", std::move(records));
}

}  // namespace

TEST_CASE("selection stays inside the topic set") {
  const auto bank = bank_of({{"sport", 4}, {"food", 6}, {"signs", 3}});
  SelectionCursor cursor(8);
  const std::vector<std::string> topics{"sport", "signs"};
  for (int i = 0; i < 200; ++i) {
    auto sel = select_question(bank, std::move(cursor), 0, topics);
    const auto& topic = bank.record(sel.index).topic_id;
    CHECK((topic == "sport" || topic == "signs"));
    cursor = std::move(sel.cursor);
  }
}

TEST_CASE("no repeats until the pool is used up") {
  const auto bank = bank_of({{"sport", 7}, {"food", 5}});
  SelectionCursor cursor(21);
  const std::vector<std::string> topics{"sport", "food"};
  for (int cycle = 0; cycle < 4; ++cycle) {
    std::set<std::size_t> seen;
    for (int i = 0; i < 12; ++i) {
      auto sel = select_question(bank, std::move(cursor), 1, topics);
      CHECK(seen.insert(sel.index).second);
      cursor = std::move(sel.cursor);
    }
    CHECK(seen.size() == 12);
  }
}

TEST_CASE("teams draw from their own pools") {
  const auto bank = bank_of({{"sport", 3}});
  SelectionCursor cursor(2);
  const std::vector<std::string> topics{"sport"};
  std::map<int, std::set<std::size_t>> seen;
  for (int i = 0; i < 6; ++i) {
    auto sel = select_question(bank, std::move(cursor), i % 2, topics);
    seen[i % 2].insert(sel.index);
    cursor = std::move(sel.cursor);
  }
  CHECK(seen[0].size() == 3);
  CHECK(seen[1].size() == 3);
}

TEST_CASE("same cursor, same question") {
  const auto bank = bank_of({{"sport", 10}});
  const std::vector<std::string> topics{"sport"};
  SelectionCursor cursor(77);
  cursor = select_question(bank, cursor, 0, topics).cursor;
  CHECK(select_question(bank, cursor, 0, topics).index == select_question(bank, cursor, 0, topics).index);
}

TEST_CASE("first draw from a fresh cursor is uniform") {
  const auto bank = bank_of({{"sport", 5}, {"food", 3}});
  const std::vector<std::string> topics{"sport"};
  std::map<std::size_t, int> counts;
  const int draws = 10000;
  for (int seed = 0; seed < draws; ++seed) {
    ++counts[select_question(bank, SelectionCursor(SplitMix64::at(123, seed)), 0, topics).index];
  }
  CHECK(counts.size() == 5);
  for (const auto& [index, n] : counts) {
    const double share = static_cast<double>(n) / draws;
    CHECK(share > 0.15);
    CHECK(share < 0.25);
  }
}

TEST_CASE("unknown or empty topic sets are refused") {
  const auto bank = bank_of({{"sport", 2}});
  const std::vector<std::string> bad{"opera"};
  try {
    select_question(bank, SelectionCursor(1), 0, bad);
    FAIL("selected from an unknown topic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTopic);
    CHECK(std::string(e.what()).find("opera") != std::string::npos);
  }
  CHECK_THROWS_AS(select_question(bank, SelectionCursor(1), 0, std::vector<std::string>{}), Error);
}

TEST_CASE("bank construction checks its records") {
  CHECK_THROWS_AS(QuestionBank("en", {}), Error);
  auto r = testing::record("x", "t");
  r.correct_index = 4;
  CHECK_THROWS_AS(QuestionBank("en", {r}), Error);
  auto other = testing::record("x", "t");
  other.language = "es";
  CHECK_THROWS_AS(QuestionBank("en", {other}), Error);
  CHECK_THROWS_AS(QuestionBank("en", {testing::record("x", "t"), testing::record("x", "u")}), Error);
}
