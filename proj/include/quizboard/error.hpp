#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quizboard {

enum class ErrorCode {
  InvalidConfig,
  InvalidBoard,
  KindMismatch,
  UnknownTopic,
  EmptyTopic,
  WrongPhase,
  ChoiceOutOfRange,
  IllegalMove,
  DivergentAction,
  MissingImage,
  EmptyBank,
  BadBankFile,
  BadTranscript,
  NonTerminating,
  Io,
};

std::string_view to_string(ErrorCode code);

// Single exception type for every domain failure; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quizboard
