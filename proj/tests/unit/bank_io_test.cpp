#include "doctest.h"
#include "json.hpp"
#include "quizboard/bank_io.hpp"
#include "quizboard/error.hpp"
#include "quizboard/sheet.hpp"
#include "test_support.hpp"

using namespace quizboard;
namespace fs = std::filesystem;

namespace {

std::vector<QuestionRecord> fixture_records() {
  auto sheet = parse_sheet(testing::read_text(testing::fixtures() / "sheet.csv"));
  REQUIRE(sheet.ok());
  return sheet.records;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("compile then load is the identity") {
  const auto records = fixture_records();
  const auto bytes = compile_bank(records, "en", testing::fixtures());
  const auto bank = load_bank(bytes);
  CHECK(bank.language() == "en");
  CHECK(std::vector<QuestionRecord>(bank.records().begin(), bank.records().end()) == records);
  CHECK(bank.topics().size() == 5);
  CHECK(bank.topics().at("sport").label == "Sport");
  CHECK(bank.topics().at("sport").questions.size() == 6);
}

TEST_CASE("compiled bank file layout") {
  const auto doc = nlohmann::json::parse(compile_bank(fixture_records(), "en", testing::fixtures()));
  CHECK(doc["format"] == "quizboard-bank");
  CHECK(doc["version"] == 1);
  CHECK(doc["topics"][0]["id"] == "sport");
  CHECK(doc["questions"][0]["image"] == "img/s1.png");
  CHECK(doc["questions"][0]["correct_index"] == 1);
  CHECK_FALSE(doc["questions"][1].contains("image"));
}

TEST_CASE("missing image") {
  auto records = fixture_records();
  records[1].image_ref = "img/x.png";
  CHECK(code_of([&] { compile_bank(records, "en", testing::fixtures()); }) == ErrorCode::MissingImage);
  records[1].image_ref = "../sheet.csv";
  CHECK(code_of([&] { compile_bank(records, "en", testing::fixtures() / "img"); }) == ErrorCode::MissingImage);
  records[1].image_ref = (testing::fixtures() / "img/s1.png").string();
  CHECK(code_of([&] { compile_bank(records, "en", testing::fixtures()); }) == ErrorCode::MissingImage);
}

TEST_CASE("empty bank") {
  CHECK(code_of([&] { compile_bank({}, "en", testing::fixtures()); }) == ErrorCode::EmptyBank);
  CHECK(code_of([&] { compile_bank(fixture_records(), "fr", testing::fixtures()); }) == ErrorCode::EmptyBank);
}

TEST_CASE("load rejects damaged files") {
  const auto good = nlohmann::json::parse(compile_bank(fixture_records(), "en", testing::fixtures()));
  auto broken = [&](auto&& edit) {
    auto doc = good;
    edit(doc);
    return code_of([&] { load_bank(doc.dump()); }) == ErrorCode::BadBankFile;
  };
  CHECK(code_of([] { load_bank("{"); }) == ErrorCode::BadBankFile);
  CHECK(broken([](auto& d) { d["format"] = "other"; }));
  CHECK(broken([](auto& d) { d["version"] = 99; }));
  CHECK(broken([](auto& d) { d["questions"][0]["correct_index"] = 3; }));
  CHECK(broken([](auto& d) { d["questions"][0]["topic"] = "nope"; }));
  CHECK(broken([](auto& d) { d["questions"][1]["id"] = "q1"; }));
  auto empty = good;
  empty["questions"] = nlohmann::json::array();
  CHECK(code_of([&] { load_bank(empty.dump()); }) == ErrorCode::EmptyBank);
}

TEST_CASE("write_banks lays out one folder per language with images") {
  testing::TempDir dir;
  auto records = fixture_records();
  auto es = testing::record("e1", "comida", 3, 2);
  es.language = "es";
  es.image_ref = "img/cow.png";
  records.push_back(es);

  BankWriteOptions options;
  options.out_dir = dir / "banks";
  options.assets_root = testing::fixtures();
  const auto written = write_banks(records, options);
  CHECK(written.bank_files.size() == 2);
  CHECK(fs::is_regular_file(dir / "banks/en/questions.json"));
  CHECK(fs::is_regular_file(dir / "banks/es/questions.json"));
  CHECK(fs::is_regular_file(dir / "banks/en/img/s1.png"));
  CHECK(fs::is_regular_file(dir / "banks/es/img/cow.png"));
  CHECK(testing::read_text(dir / "banks/en/img/stop.png") == testing::read_text(testing::fixtures() / "img/stop.png"));

  const auto banks = load_bank_dir(dir / "banks");
  REQUIRE(banks.size() == 2);
  CHECK(banks.at("es")->records().size() == 1);
  CHECK(banks.at("en")->records().size() == records.size() - 1);

  // Nothing but the two language folders remains.
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "banks")) ++entries;
  CHECK(entries == 2);
}

TEST_CASE("write_banks writes nothing when one language fails") {
  testing::TempDir dir;
  auto records = fixture_records();
  auto es = testing::record("e1", "comida");
  es.language = "es";
  es.image_ref = "img/missing.png";
  records.push_back(es);
  BankWriteOptions options;
  options.out_dir = dir / "banks";
  options.assets_root = testing::fixtures();
  CHECK(code_of([&] { write_banks(records, options); }) == ErrorCode::MissingImage);
  CHECK_FALSE(fs::exists(dir / "banks/en"));
  CHECK_FALSE(fs::exists(dir / "banks/es"));
  if (fs::exists(dir / "banks")) CHECK(fs::is_empty(dir / "banks"));
}

TEST_CASE("write_banks can limit the languages") {
  testing::TempDir dir;
  auto records = fixture_records();
  auto es = testing::record("e1", "comida");
  es.language = "es";
  records.push_back(es);
  BankWriteOptions options;
  options.out_dir = dir.path();
  options.assets_root = testing::fixtures();
  options.languages = {"es"};
  options.bank_name = "extra";
  const auto written = write_banks(records, options);
  REQUIRE(written.bank_files.size() == 1);
  CHECK(written.bank_files[0] == dir / "es/extra.json");
  CHECK_FALSE(fs::exists(dir / "en"));
}

TEST_CASE("load_bank_dir merges several files of one language") {
  testing::TempDir dir;
  std::vector<QuestionRecord> a{testing::record("a1", "t1"), testing::record("a2", "t1")};
  std::vector<QuestionRecord> b{testing::record("b1", "t2")};
  testing::write_text(dir / "en/a.json", compile_bank(a, "en", dir.path()));
  testing::write_text(dir / "en/b.json", compile_bank(b, "en", dir.path()));
  const auto banks = load_bank_dir(dir.path());
  REQUIRE(banks.count("en") == 1);
  CHECK(banks.at("en")->records().size() == 3);
  CHECK(banks.at("en")->topics().size() == 2);
}
