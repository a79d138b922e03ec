#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quizboard/question_bank.hpp"

namespace quizboard {

// One CSV record with the 1-based line it starts on.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// RFC 4180 reader: quoted cells may hold delimiters, doubled quotes and line
// breaks. Accepts LF or CRLF and a leading UTF-8 BOM; blank lines are skipped.
std::vector<CsvRow> read_csv(std::string_view text, char delimiter = ',');

enum class SheetErrorKind {
  MissingColumn,
  BadCorrectIndex,
  DuplicateId,
  MissingValue,
  BadOptions,
  TopicLabelConflict,
  MalformedRow,
};

std::string_view to_string(SheetErrorKind kind);

struct SheetIssue {
  std::size_t row = 0;  // source line; the header is line 1
  SheetErrorKind kind = SheetErrorKind::MalformedRow;
  std::string message;
};

struct ParsedSheet {
  std::vector<QuestionRecord> records;
  std::vector<SheetIssue> issues;

  bool ok() const { return issues.empty(); }
};

// Required header columns, matched by exact name in any order.
inline constexpr std::string_view kSheetColumns[] = {
    "id", "topic_id", "topic_label", "language", "prompt", "image_ref", "correct_index"};

// Parses a question sheet export. Every problem is reported with its line
// number; records are only returned for rows that parsed cleanly.
ParsedSheet parse_sheet(std::string_view text, char delimiter = ',');

}  // namespace quizboard
