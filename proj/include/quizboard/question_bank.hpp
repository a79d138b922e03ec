#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quizboard/rng.hpp"

namespace quizboard {

struct QuestionRecord {
  std::string id;
  std::string topic_id;
  std::string topic_label;
  std::string language;
  std::string prompt;
  std::optional<std::string> image_ref;
  std::vector<std::string> options;
  int correct_index = 0;

  friend bool operator==(const QuestionRecord&, const QuestionRecord&) = default;
};

inline constexpr std::size_t kMinOptions = 2;
inline constexpr std::size_t kMaxOptions = 6;

struct Topic {
  std::string label;
  std::vector<std::size_t> questions;  // indices into QuestionBank::records()

  friend bool operator==(const Topic&, const Topic&) = default;
};

// Questions of one language grouped by topic. Records keep their input order,
// so a bank rebuilt from records() is identical to the original.
class QuestionBank {
 public:
  QuestionBank() = default;

  // Throws Error(EmptyBank) for no records, Error(BadBankFile) when a record
  // breaks the record invariants, has another language, reuses an id or
  // disagrees on a topic label.
  QuestionBank(std::string language, std::vector<QuestionRecord> records);

  const std::string& language() const { return language_; }
  std::span<const QuestionRecord> records() const { return records_; }
  const QuestionRecord& record(std::size_t index) const { return records_[index]; }
  const std::map<std::string, Topic, std::less<>>& topics() const { return topics_; }

  const Topic* find_topic(std::string_view topic_id) const;
  std::optional<std::size_t> find_question(std::string_view question_id) const;

  friend bool operator==(const QuestionBank& a, const QuestionBank& b) {
    return a.language_ == b.language_ && a.records_ == b.records_;
  }

 private:
  std::string language_;
  std::vector<QuestionRecord> records_;
  std::map<std::string, Topic, std::less<>> topics_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Per-team draw state. Each team owns a pool covering the union of its topics;
// draws are uniform over the pool entries not yet used in the current cycle,
// and the cycle restarts once every entry has been drawn.
struct SelectionCursor {
  struct Pool {
    std::vector<std::string> topics;    // sorted key the pool was built for
    std::vector<std::uint32_t> order;   // bank indices; [0, remaining) unused
    std::size_t remaining = 0;

    friend bool operator==(const Pool&, const Pool&) = default;
  };

  std::vector<Pool> pools;
  SplitMix64 rng;

  SelectionCursor() = default;
  explicit SelectionCursor(std::uint64_t seed) : rng(seed) {}

  friend bool operator==(const SelectionCursor&, const SelectionCursor&) = default;
};

struct Selection {
  std::size_t index;  // into bank.records()
  SelectionCursor cursor;
};

// Throws Error(UnknownTopic) when topic_set is empty or names a topic the bank
// lacks.
Selection select_question(const QuestionBank& bank, SelectionCursor cursor, int team,
                          std::span<const std::string> topic_set);

}  // namespace quizboard
