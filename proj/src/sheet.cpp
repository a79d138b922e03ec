#include "quizboard/sheet.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <utility>

namespace quizboard {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

// option_<n> with n >= 1, else 0.
int option_number(std::string_view name) {
  constexpr std::string_view prefix = "option_";
  if (name.substr(0, prefix.size()) != prefix) return 0;
  auto n = parse_int(name.substr(prefix.size()));
  return n && *n >= 1 ? *n : 0;
}

}  // namespace

std::string_view to_string(SheetErrorKind kind) {
  switch (kind) {
    case SheetErrorKind::MissingColumn:
      return "MissingColumn";
    case SheetErrorKind::BadCorrectIndex:
      return "BadCorrectIndex";
    case SheetErrorKind::DuplicateId:
      return "DuplicateId";
    case SheetErrorKind::MissingValue:
      return "MissingValue";
    case SheetErrorKind::BadOptions:
      return "BadOptions";
    case SheetErrorKind::TopicLabelConflict:
      return "TopicLabelConflict";
    case SheetErrorKind::MalformedRow:
      return "MalformedRow";
  }
  return "?";
}

std::vector<CsvRow> read_csv(std::string_view text, char delimiter) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<CsvRow> rows;
  CsvRow row;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;  // anything seen for the current record
  std::size_t line = 1;
  row.line = 1;

  auto end_cell = [&] {
    row.cells.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    const bool blank = row.cells.size() == 1 && row.cells[0].empty() && !cell_started;
    if (!blank) rows.push_back(std::move(row));
    row = {};
    cell_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      cell_started = true;
    } else if (c == delimiter) {
      cell_started = true;
      end_cell();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_row();
      ++line;
      row.line = line;
    } else {
      cell_started = true;
      cell += c;
    }
  }
  if (cell_started || !cell.empty() || !row.cells.empty()) end_row();
  return rows;
}

ParsedSheet parse_sheet(std::string_view text, char delimiter) {
  ParsedSheet out;
  auto issue = [&](std::size_t row, SheetErrorKind kind, std::string message) {
    out.issues.push_back({row, kind, std::move(message)});
  };

  const auto rows = read_csv(text, delimiter);
  if (rows.empty()) {
    issue(1, SheetErrorKind::MissingColumn, "empty sheet: no header row");
    return out;
  }

  const CsvRow& header = rows.front();
  std::map<std::string, std::size_t, std::less<>> column;
  std::map<int, std::size_t> option_columns;
  for (std::size_t i = 0; i < header.cells.size(); ++i) {
    const std::string name = trim(header.cells[i]);
    if (name.empty()) continue;
    if (!column.emplace(name, i).second) {
      issue(header.line, SheetErrorKind::MalformedRow, "duplicate column '" + name + "'");
    }
    if (const int n = option_number(name); n > 0) option_columns.emplace(n, i);
  }
  for (std::string_view name : kSheetColumns) {
    if (column.find(name) == column.end()) {
      issue(header.line, SheetErrorKind::MissingColumn, "missing column '" + std::string(name) + "'");
    }
  }
  const int option_count = option_columns.empty() ? 0 : option_columns.rbegin()->first;
  for (int n = 1; n <= std::max(option_count, static_cast<int>(kMinOptions)); ++n) {
    if (option_columns.count(n) == 0) {
      issue(header.line, SheetErrorKind::MissingColumn, "missing column 'option_" + std::to_string(n) + "'");
    }
  }
  if (!out.issues.empty()) return out;

  std::map<std::pair<std::string, std::string>, std::size_t> seen_ids;      // (lang, id) -> line
  std::map<std::pair<std::string, std::string>, std::string> topic_labels;  // (lang, topic) -> label

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    const std::size_t line = row.line;
    if (std::all_of(row.cells.begin(), row.cells.end(), [](const auto& c) { return trim(c).empty(); })) {
      continue;  // spreadsheet padding row
    }
    const std::size_t before = out.issues.size();

    for (std::size_t i = header.cells.size(); i < row.cells.size(); ++i) {
      if (!trim(row.cells[i]).empty()) {
        issue(line, SheetErrorKind::MalformedRow,
              "row has " + std::to_string(row.cells.size()) + " cells, header has " +
                  std::to_string(header.cells.size()));
        break;
      }
    }
    auto cell = [&](std::size_t index) {
      return index < row.cells.size() ? trim(row.cells[index]) : std::string{};
    };
    auto field = [&](std::string_view name) { return cell(column.find(name)->second); };

    QuestionRecord record;
    record.id = field("id");
    record.topic_id = field("topic_id");
    record.topic_label = field("topic_label");
    record.language = field("language");
    record.prompt = field("prompt");
    if (auto image = field("image_ref"); !image.empty()) record.image_ref = std::move(image);

    for (std::string_view name : {"id", "topic_id", "topic_label", "language", "prompt"}) {
      if (field(name).empty()) {
        issue(line, SheetErrorKind::MissingValue, "empty '" + std::string(name) + "'");
      }
    }

    std::vector<std::string> options;
    for (const auto& [n, index] : option_columns) options.push_back(cell(index));
    while (!options.empty() && options.back().empty()) options.pop_back();
    if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) {
      issue(line, SheetErrorKind::BadOptions, "empty option between filled options");
    } else if (options.size() < kMinOptions || options.size() > kMaxOptions) {
      issue(line, SheetErrorKind::BadOptions,
            "has " + std::to_string(options.size()) + " options, needs 2..6");
    }
    record.options = std::move(options);

    const std::string correct = field("correct_index");
    if (auto value = parse_int(correct); !value) {
      issue(line, SheetErrorKind::BadCorrectIndex, "correct_index '" + correct + "' is not an integer");
    } else if (*value < 0 || static_cast<std::size_t>(*value) >= record.options.size()) {
      issue(line, SheetErrorKind::BadCorrectIndex,
            "correct_index " + correct + " out of range for " + std::to_string(record.options.size()) +
                " options");
    } else {
      record.correct_index = *value;
    }

    if (!record.id.empty()) {
      auto [it, fresh] = seen_ids.emplace(std::pair{record.language, record.id}, line);
      if (!fresh) {
        issue(line, SheetErrorKind::DuplicateId,
              "id '" + record.id + "' already used on line " + std::to_string(it->second));
      }
    }
    if (!record.topic_id.empty()) {
      auto [it, fresh] = topic_labels.emplace(std::pair{record.language, record.topic_id}, record.topic_label);
      if (!fresh && it->second != record.topic_label) {
        issue(line, SheetErrorKind::TopicLabelConflict,
              "topic '" + record.topic_id + "' labelled '" + record.topic_label + "', earlier '" +
                  it->second + "'");
      }
    }

    if (out.issues.size() == before) out.records.push_back(std::move(record));
  }
  return out;
}

}  // namespace quizboard
