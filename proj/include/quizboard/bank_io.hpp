#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quizboard/question_bank.hpp"

namespace quizboard {

inline constexpr std::string_view kBankFormat = "quizboard-bank";
inline constexpr int kBankFormatVersion = 1;

// Serializes the records of one language to bank-file JSON. Records of other
// languages are skipped. Throws Error(EmptyBank) when none remain and
// Error(MissingImage) when an image_ref does not name a regular file inside
// assets_root.
std::string compile_bank(std::span<const QuestionRecord> records, std::string_view language,
                         const std::filesystem::path& assets_root);

// Parses bank-file JSON. Throws Error(BadBankFile).
QuestionBank load_bank(std::string_view bytes);
QuestionBank load_bank_file(const std::filesystem::path& path);

// Checks that image_ref is a relative path without ".." that resolves to a
// regular file under assets_root.
bool image_resolves(const std::filesystem::path& assets_root, std::string_view image_ref);

struct BankWriteOptions {
  std::filesystem::path out_dir;      // banks root; files land in <out_dir>/<lang>/
  std::filesystem::path assets_root;  // where image_refs are resolved
  std::string bank_name = "questions";
  std::vector<std::string> languages; // empty: every language present
};

struct BankWriteResult {
  std::vector<std::filesystem::path> bank_files;
  std::vector<std::filesystem::path> images;
};

// Writes <out_dir>/<lang>/<bank_name>.json for each language and copies the
// referenced images next to it. Everything is staged in a temporary directory
// first; on any error nothing under out_dir changes.
BankWriteResult write_banks(std::span<const QuestionRecord> records, const BankWriteOptions& options);

// Loads every *.json bank under <banks_dir>/<lang>/ and merges them per
// language. Directories without bank files are ignored.
std::map<std::string, std::shared_ptr<const QuestionBank>> load_bank_dir(
    const std::filesystem::path& banks_dir);

}  // namespace quizboard
