#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace disasteller {

/// Every failure the engine reports is one of these codes. The CLI maps
/// them onto process exit codes, tests match on them.
enum class Errc {
  // core
  NoGradeToken,
  AmbiguousGrade,
  DuplicateKey,
  MissingKey,
  ScenarioInvalid,
  UndecodableImage,
  IoError,
  // model gateway
  Timeout,
  Transport,
  ScriptMiss,
  MalformedResponse,
  // toolkit
  UnknownTool,
  DuplicateTool,
  ArgumentSchemaViolation,
  EmptyDocument,
  EmptyQuery,
  ProviderUnavailable,
  NoFixture,
  UnresolvedLocation,
  OutOfBounds,
  // orchestrator
  ConfigError,
  MissingInput,
  ToolIterationLimit,
  FormatRetriesExhausted,
  DisallowedTool,
  StageFailed,
  // evaluation
  UnparsableScore,
  CsvFormat,
  ScoreOutOfRange,
  EmptyInput,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

/// Transport failure; status is the HTTP status or 0 when no response arrived.
class TransportError : public Error {
 public:
  TransportError(int status, const std::string& message)
      : Error(Errc::Transport, message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// Schema violation that names the offending argument field.
class ArgumentError : public Error {
 public:
  ArgumentError(std::string field, const std::string& message)
      : Error(Errc::ArgumentSchemaViolation, field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace disasteller
