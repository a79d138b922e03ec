#include <set>
#include <algorithm>

#include "doctest.h"
#include "quizboard/sheet.hpp"
#include "test_support.hpp"

using namespace quizboard;

namespace {

bool has_issue(const ParsedSheet& sheet, SheetErrorKind kind, std::size_t row) {
  return std::any_of(sheet.issues.begin(), sheet.issues.end(),
                     [&](const SheetIssue& i) { return i.kind == kind && i.row == row; });
}

const char* kHeader = "id,topic_id,topic_label,language,prompt,image_ref,option_1,option_2,option_3,option_4,correct_index\n";

}  // namespace

TEST_CASE("csv reader handles quoting, CRLF and a BOM") {
  const auto rows = read_csv("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\r\n\r\n\"two\nlines\",z\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].cells == std::vector<std::string>{"a", "b"});
  CHECK(rows[1].cells == std::vector<std::string>{"x, y", "say \"hi\""});
  CHECK(rows[1].line == 2);
  CHECK(rows[2].cells == std::vector<std::string>{"two\nlines", "z"});
  CHECK(rows[2].line == 4);
}

TEST_CASE("the fixture's first row parses as written") {
  const auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "sheet.csv"));
  REQUIRE(sheet.ok());
  const auto& q1 = sheet.records.front();
  CHECK(q1.id == "q1");
  CHECK(q1.topic_id == "sport");
  CHECK(q1.topic_label == "Sport");
  CHECK(q1.language == "en");
  CHECK(q1.prompt == "Which sport?");
  CHECK(q1.image_ref == "img/s1.png");
  CHECK(q1.options == std::vector<std::string>{"Tennis", "Golf", "Chess"});
  CHECK(q1.correct_index == 1);
}

TEST_CASE("fixture sheet size") {
  const auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "sheet.csv"));
  REQUIRE(sheet.ok());
  CHECK(sheet.records.size() >= 25);
  std::set<std::string> topics;
  int images = 0;
  for (const auto& r : sheet.records) {
    topics.insert(r.topic_id);
    images += r.image_ref ? 1 : 0;
  }
  CHECK(topics.size() >= 5);
  CHECK(images >= 1);
  const auto quoted = std::find_if(sheet.records.begin(), sheet.records.end(), [](auto& r) { return r.id == "q4"; });
  CHECK(quoted->prompt == "How long is a marathon, roughly?");
}

TEST_CASE("cells are trimmed and columns may come in any order") {
  const auto sheet = parse_sheet(
      "correct_index,option_2,option_1,prompt,language,topic_label,topic_id,image_ref,id\n"
      " 0 , no ,  yes , Is it? , en , Misc , misc ,  , a1 \n");
  REQUIRE(sheet.ok());
  const auto& r = sheet.records.at(0);
  CHECK(r.id == "a1");
  CHECK(r.options == std::vector<std::string>{"yes", "no"});
  CHECK_FALSE(r.image_ref.has_value());
  CHECK(r.prompt == "Is it?");
}

TEST_CASE("missing column") {
  const auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "corrupt/missing_column.csv"));
  CHECK(has_issue(sheet, SheetErrorKind::MissingColumn, 1));
  CHECK(sheet.records.empty());
}

TEST_CASE("bad correct index") {
  const auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "corrupt/bad_correct_index.csv"));
  CHECK(has_issue(sheet, SheetErrorKind::BadCorrectIndex, 2));
  CHECK(has_issue(sheet, SheetErrorKind::BadCorrectIndex, 3));
  CHECK(sheet.issues.size() == 2);
  REQUIRE(sheet.records.size() == 1);
  CHECK(sheet.records[0].id == "q3");
}

TEST_CASE("duplicate id") {
  const auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "corrupt/duplicate_id.csv"));
  CHECK(has_issue(sheet, SheetErrorKind::DuplicateId, 4));
  CHECK(sheet.issues.size() == 1);
}

TEST_CASE("option shape") {
  auto sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,P?,,only,,,,0\n");
  CHECK(has_issue(sheet, SheetErrorKind::BadOptions, 2));
  sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,P?,,a,,c,,0\n");
  CHECK(has_issue(sheet, SheetErrorKind::BadOptions, 2));
  sheet = parse_sheet(
      "id,topic_id,topic_label,language,prompt,image_ref,option_1,option_2,option_3,option_4,option_5,option_6,"
      "option_7,correct_index\nq1,t,T,en,P?,,a,b,c,d,e,f,g,0\n");
  CHECK(has_issue(sheet, SheetErrorKind::BadOptions, 2));
  sheet = parse_sheet("id,topic_id,topic_label,language,prompt,image_ref,option_1,option_3,correct_index\n");
  CHECK(has_issue(sheet, SheetErrorKind::MissingColumn, 1));
}

TEST_CASE("required values and label consistency") {
  auto sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,,,a,b,,,0\n");
  CHECK(has_issue(sheet, SheetErrorKind::MissingValue, 2));
  sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,P?,,a,b,,,0\nq2,t,Other,en,P?,,a,b,,,0\n");
  CHECK(has_issue(sheet, SheetErrorKind::TopicLabelConflict, 3));
  sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,P?,,a,b,,,0,extra\n");
  CHECK(has_issue(sheet, SheetErrorKind::MalformedRow, 2));
}

TEST_CASE("the same id may appear once per language") {
  const auto sheet = parse_sheet(std::string(kHeader) + "q1,t,T,en,P?,,a,b,,,0\nq1,t,T,es,¿P?,,a,b,,,1\n");
  CHECK(sheet.ok());
  CHECK(sheet.records.size() == 2);
}

TEST_CASE("empty sheet") {
  const auto sheet = parse_sheet("");
  CHECK(has_issue(sheet, SheetErrorKind::MissingColumn, 1));
}
