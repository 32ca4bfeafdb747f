#include "disasteller/error.hpp"

namespace disasteller {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NoGradeToken: return "NoGradeToken";
    case Errc::AmbiguousGrade: return "AmbiguousGrade";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::MissingKey: return "MissingKey";
    case Errc::ScenarioInvalid: return "ScenarioInvalid";
    case Errc::UndecodableImage: return "UndecodableImage";
    case Errc::IoError: return "IoError";
    case Errc::Timeout: return "Timeout";
    case Errc::Transport: return "Transport";
    case Errc::ScriptMiss: return "ScriptMiss";
    case Errc::MalformedResponse: return "MalformedResponse";
    case Errc::UnknownTool: return "UnknownTool";
    case Errc::DuplicateTool: return "DuplicateTool";
    case Errc::ArgumentSchemaViolation: return "ArgumentSchemaViolation";
    case Errc::EmptyDocument: return "EmptyDocument";
    case Errc::EmptyQuery: return "EmptyQuery";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
    case Errc::NoFixture: return "NoFixture";
    case Errc::UnresolvedLocation: return "UnresolvedLocation";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::ConfigError: return "ConfigError";
    case Errc::MissingInput: return "MissingInput";
    case Errc::ToolIterationLimit: return "ToolIterationLimit";
    case Errc::FormatRetriesExhausted: return "FormatRetriesExhausted";
    case Errc::DisallowedTool: return "DisallowedTool";
    case Errc::StageFailed: return "StageFailed";
    case Errc::UnparsableScore: return "UnparsableScore";
    case Errc::CsvFormat: return "CsvFormat";
    case Errc::ScoreOutOfRange: return "ScoreOutOfRange";
    case Errc::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

}  // namespace disasteller
