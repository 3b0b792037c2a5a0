#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subsent {

enum class ErrorKind {
  Io,
  Parse,
  DuplicateAnnotation,
  InvalidClass,
  UnknownDisease,
  MissingDocument,
  Syntax,
  EmptyInput,
  InvalidEntry,
  NotFound,
  NoMatchedTerms,
  NoSubjectiveTerms,
  EmptyVocabulary,
  EmptyContext,
  NoKnownTokens,
  ZeroVector,
  InsufficientData,
  DegenerateVariance,
  InvalidInput,
  InsufficientSubsets,
  InvalidConfig,
  InvalidModel,
  InvalidMorphology,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DuplicateAnnotation: return "DuplicateAnnotation";
    case ErrorKind::InvalidClass: return "InvalidClass";
    case ErrorKind::UnknownDisease: return "UnknownDisease";
    case ErrorKind::MissingDocument: return "MissingDocument";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidEntry: return "InvalidEntry";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NoMatchedTerms: return "NoMatchedTerms";
    case ErrorKind::NoSubjectiveTerms: return "NoSubjectiveTerms";
    case ErrorKind::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorKind::EmptyContext: return "EmptyContext";
    case ErrorKind::NoKnownTokens: return "NoKnownTokens";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InsufficientSubsets: return "InsufficientSubsets";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidMorphology: return "InvalidMorphology";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on the cause without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 protected:
  struct Verbatim {};
  Error(ErrorKind kind, const std::string& message, Verbatim) : std::runtime_error(message), kind_(kind) {}

 private:
  ErrorKind kind_;
};

/// Parse failure tied to a 1-based line of an input file.
class ParseError : public Error {
 public:
  ParseError(std::string_view source, std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse,
              std::string(source) + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace subsent
