#include "quizboard/question_bank.hpp"

#include <algorithm>
#include <utility>

#include "quizboard/error.hpp"

namespace quizboard {

namespace {

[[noreturn]] void bad(const QuestionRecord& record, const std::string& what) {
  throw Error(ErrorCode::BadBankFile, "question '" + record.id + "': " + what);
}

}  // namespace

QuestionBank::QuestionBank(std::string language, std::vector<QuestionRecord> records)
    : language_(std::move(language)), records_(std::move(records)) {
  if (records_.empty()) {
    throw Error(ErrorCode::EmptyBank, "bank for language '" + language_ + "' has no questions");
  }
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const QuestionRecord& r = records_[i];
    if (r.id.empty()) bad(r, "empty id");
    if (r.topic_id.empty()) bad(r, "empty topic id");
    if (r.language != language_) bad(r, "language '" + r.language + "' in a '" + language_ + "' bank");
    if (r.options.size() < kMinOptions || r.options.size() > kMaxOptions) {
      bad(r, "needs 2..6 options");
    }
    if (r.correct_index < 0 || static_cast<std::size_t>(r.correct_index) >= r.options.size()) {
      bad(r, "correct index out of range");
    }
    if (!by_id_.emplace(r.id, i).second) bad(r, "duplicate id");

    auto [it, inserted] = topics_.try_emplace(r.topic_id, Topic{r.topic_label, {}});
    if (!inserted && it->second.label != r.topic_label) {
      bad(r, "topic '" + r.topic_id + "' already labelled '" + it->second.label + "'");
    }
    it->second.questions.push_back(i);
  }
}

const Topic* QuestionBank::find_topic(std::string_view topic_id) const {
  auto it = topics_.find(topic_id);
  return it == topics_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> QuestionBank::find_question(std::string_view question_id) const {
  auto it = by_id_.find(std::string(question_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Selection select_question(const QuestionBank& bank, SelectionCursor cursor, int team,
                          std::span<const std::string> topic_set) {
  if (topic_set.empty()) throw Error(ErrorCode::UnknownTopic, "empty topic set");
  if (team < 0) throw Error(ErrorCode::UnknownTopic, "negative team index");

  std::vector<std::string> key(topic_set.begin(), topic_set.end());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());

  if (cursor.pools.size() <= static_cast<std::size_t>(team)) {
    cursor.pools.resize(static_cast<std::size_t>(team) + 1);
  }
  auto& pool = cursor.pools[static_cast<std::size_t>(team)];
  if (pool.topics != key || pool.order.empty()) {
    pool = {};
    for (const auto& topic_id : key) {
      const Topic* topic = bank.find_topic(topic_id);
      if (topic == nullptr) {
        throw Error(ErrorCode::UnknownTopic, "unknown topic '" + topic_id + "'");
      }
      for (std::size_t index : topic->questions) {
        pool.order.push_back(static_cast<std::uint32_t>(index));
      }
    }
    if (pool.order.empty()) throw Error(ErrorCode::EmptyTopic, "topic set has no questions");
    std::sort(pool.order.begin(), pool.order.end());
    pool.topics = std::move(key);
  }

  if (pool.remaining == 0) pool.remaining = pool.order.size();
  const auto pick = static_cast<std::size_t>(cursor.rng.below(pool.remaining));
  --pool.remaining;
  std::swap(pool.order[pick], pool.order[pool.remaining]);
  const std::size_t index = pool.order[pool.remaining];
  return {index, std::move(cursor)};
}

}  // namespace quizboard
