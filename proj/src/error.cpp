#include "quizboard/error.hpp"

namespace quizboard {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
    case ErrorCode::InvalidBoard:
      return "InvalidBoard";
    case ErrorCode::KindMismatch:
      return "KindMismatch";
    case ErrorCode::UnknownTopic:
      return "UnknownTopic";
    case ErrorCode::EmptyTopic:
      return "EmptyTopic";
    case ErrorCode::WrongPhase:
      return "WrongPhase";
    case ErrorCode::ChoiceOutOfRange:
      return "ChoiceOutOfRange";
    case ErrorCode::IllegalMove:
      return "IllegalMove";
    case ErrorCode::DivergentAction:
      return "DivergentAction";
    case ErrorCode::MissingImage:
      return "MissingImage";
    case ErrorCode::EmptyBank:
      return "EmptyBank";
    case ErrorCode::BadBankFile:
      return "BadBankFile";
    case ErrorCode::BadTranscript:
      return "BadTranscript";
    case ErrorCode::NonTerminating:
      return "NonTerminating";
    case ErrorCode::Io:
      return "Io";
  }
  return "?";
}

}  // namespace quizboard
