#include "quizboard/bank_io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "quizboard/error.hpp"

namespace quizboard {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_file(const std::string& message) {
  throw Error(ErrorCode::BadBankFile, message);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
}

const json& member(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) bad_file(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_member(const json& object, const char* key) {
  const json& value = member(object, key);
  if (!value.is_string()) bad_file(std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

}  // namespace

bool image_resolves(const fs::path& assets_root, std::string_view image_ref) {
  const fs::path ref(image_ref);
  if (ref.empty() || ref.is_absolute() || ref.has_root_name()) return false;
  for (const auto& part : ref) {
    if (part == "..") return false;
  }
  std::error_code ec;
  return fs::is_regular_file(assets_root / ref, ec);
}

std::string compile_bank(std::span<const QuestionRecord> records, std::string_view language,
                         const fs::path& assets_root) {
  std::vector<QuestionRecord> selected;
  for (const auto& record : records) {
    if (record.language == language) selected.push_back(record);
  }
  if (selected.empty()) {
    throw Error(ErrorCode::EmptyBank, "no questions for language '" + std::string(language) + "'");
  }
  for (const auto& record : selected) {
    if (record.image_ref && !image_resolves(assets_root, *record.image_ref)) {
      throw Error(ErrorCode::MissingImage, "question '" + record.id + "': image '" + *record.image_ref +
                                               "' not found under " + assets_root.string());
    }
  }
  // Validates ids, option counts and labels.
  const QuestionBank bank(std::string(language), selected);

  json topics = json::array();
  std::set<std::string> listed;
  for (const auto& record : bank.records()) {
    if (listed.insert(record.topic_id).second) {
      topics.push_back({{"id", record.topic_id}, {"label", record.topic_label}});
    }
  }
  json questions = json::array();
  for (const auto& record : bank.records()) {
    json q = {{"id", record.id},
              {"topic", record.topic_id},
              {"prompt", record.prompt},
              {"options", record.options},
              {"correct_index", record.correct_index}};
    if (record.image_ref) q["image"] = *record.image_ref;
    questions.push_back(std::move(q));
  }
  const json doc = {{"format", kBankFormat},
                    {"version", kBankFormatVersion},
                    {"language", bank.language()},
                    {"topics", std::move(topics)},
                    {"questions", std::move(questions)}};
  return doc.dump(2) + "\n";
}

QuestionBank load_bank(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    bad_file(std::string("bank is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_file("bank root must be an object");
  if (string_member(doc, "format") != kBankFormat) bad_file("not a quizboard bank file");
  if (member(doc, "version") != kBankFormatVersion) bad_file("unsupported bank version");
  const std::string language = string_member(doc, "language");

  std::map<std::string, std::string> labels;
  const json& topics = member(doc, "topics");
  if (!topics.is_array()) bad_file("'topics' must be an array");
  for (const auto& topic : topics) {
    if (!labels.emplace(string_member(topic, "id"), string_member(topic, "label")).second) {
      bad_file("topic listed twice");
    }
  }

  std::vector<QuestionRecord> records;
  const json& questions = member(doc, "questions");
  if (!questions.is_array()) bad_file("'questions' must be an array");
  for (const auto& q : questions) {
    QuestionRecord record;
    record.id = string_member(q, "id");
    record.topic_id = string_member(q, "topic");
    auto label = labels.find(record.topic_id);
    if (label == labels.end()) bad_file("question '" + record.id + "' uses unlisted topic");
    record.topic_label = label->second;
    record.language = language;
    record.prompt = string_member(q, "prompt");
    if (auto image = q.find("image"); image != q.end()) {
      if (!image->is_string()) bad_file("'image' must be a string");
      record.image_ref = image->get<std::string>();
    }
    const json& options = member(q, "options");
    if (!options.is_array()) bad_file("'options' must be an array");
    for (const auto& option : options) {
      if (!option.is_string()) bad_file("options must be strings");
      record.options.push_back(option.get<std::string>());
    }
    const json& correct = member(q, "correct_index");
    if (!correct.is_number_integer()) bad_file("'correct_index' must be an integer");
    record.correct_index = correct.get<int>();
    records.push_back(std::move(record));
  }
  return QuestionBank(language, std::move(records));
}

QuestionBank load_bank_file(const fs::path& path) {
  try {
    return load_bank(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

BankWriteResult write_banks(std::span<const QuestionRecord> records, const BankWriteOptions& options) {
  std::vector<std::string> languages = options.languages;
  if (languages.empty()) {
    std::set<std::string> present;
    for (const auto& r : records) present.insert(r.language);
    languages.assign(present.begin(), present.end());
  }
  if (languages.empty()) throw Error(ErrorCode::EmptyBank, "no questions to compile");

  // Compile everything before touching the output directory.
  struct Pending {
    fs::path relative;
    std::string bytes;
  };
  std::vector<Pending> pending;
  std::vector<std::pair<fs::path, fs::path>> image_copies;  // source, relative destination
  for (const auto& language : languages) {
    pending.push_back({fs::path(language) / (options.bank_name + ".json"),
                       compile_bank(records, language, options.assets_root)});
    std::set<std::string> copied;
    for (const auto& r : records) {
      if (r.language == language && r.image_ref && copied.insert(*r.image_ref).second) {
        image_copies.emplace_back(options.assets_root / *r.image_ref, fs::path(language) / *r.image_ref);
      }
    }
  }

  fs::create_directories(options.out_dir);
  std::mt19937_64 salt(std::random_device{}());
  const fs::path staging = options.out_dir / (".staging-" + std::to_string(salt()));
  BankWriteResult result;
  try {
    for (const auto& p : pending) write_file(staging / p.relative, p.bytes);
    for (const auto& [source, relative] : image_copies) {
      fs::create_directories((staging / relative).parent_path());
      fs::copy_file(source, staging / relative, fs::copy_options::overwrite_existing);
    }
    auto promote = [&](const fs::path& relative) {
      const fs::path target = options.out_dir / relative;
      fs::create_directories(target.parent_path());
      fs::rename(staging / relative, target);
      return target;
    };
    for (const auto& [source, relative] : image_copies) result.images.push_back(promote(relative));
    for (const auto& p : pending) result.bank_files.push_back(promote(p.relative));
  } catch (const fs::filesystem_error& e) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw Error(ErrorCode::Io, e.what());
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
  std::error_code ignored;
  fs::remove_all(staging, ignored);
  return result;
}

std::map<std::string, std::shared_ptr<const QuestionBank>> load_bank_dir(const fs::path& banks_dir) {
  std::map<std::string, std::shared_ptr<const QuestionBank>> banks;
  if (!fs::is_directory(banks_dir)) {
    throw Error(ErrorCode::Io, "banks directory not found: " + banks_dir.string());
  }
  std::vector<fs::path> language_dirs;
  for (const auto& entry : fs::directory_iterator(banks_dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && !name.empty() && name.front() != '.') language_dirs.push_back(entry.path());
  }
  std::sort(language_dirs.begin(), language_dirs.end());
  for (const auto& dir : language_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    const std::string language = dir.filename().string();
    std::vector<QuestionRecord> merged;
    for (const auto& file : files) {
      QuestionBank bank = load_bank_file(file);
      if (bank.language() != language) {
        bad_file(file.string() + ": language '" + bank.language() + "' stored under '" + language + "/'");
      }
      merged.insert(merged.end(), bank.records().begin(), bank.records().end());
    }
    banks.emplace(language, std::make_shared<const QuestionBank>(language, std::move(merged)));
  }
  return banks;
}

}  // namespace quizboard
