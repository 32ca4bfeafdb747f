#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disasteller/gateway/model.hpp"

namespace disasteller::toolkit {

enum class ArgType { String, Integer, Grade, AnnotationList };

struct ArgField {
  std::string name;
  ArgType type = ArgType::String;
  bool required = true;
  std::string description;
};

struct ToolSpec {
  std::string tool_id;
  std::string description;
  std::vector<ArgField> fields;

  /// JSON-schema form handed to the model.
  gateway::FunctionSchema to_function_schema() const;
};

/// Checks args against the declared schema: required fields present, declared types,
/// no undeclared fields. Throws ArgumentError naming the field
/// (e.g. "annotations[0].grade").
void validate_arguments(const ToolSpec& spec, const nlohmann::json& args);

using ToolHandler = std::function<nlohmann::json(const nlohmann::json& args)>;

struct ToolCallRecord {
  std::uint64_t sequence = 0;
  std::string stage;
  /// "model" when the agent asked for it, "orchestrator" otherwise.
  std::string origin;
  std::string call_id;
  std::string tool_id;
  nlohmann::json args;
  bool ok = false;
  nlohmann::json result;
  std::string error;
  double duration_ms = 0;
};

nlohmann::json to_json(const ToolCallRecord& record, bool with_timing = true);

/// Append-only, thread-safe record of every dispatch in a run.
class ToolCallLog {
 public:
  std::uint64_t append(ToolCallRecord record);
  std::vector<ToolCallRecord> records() const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<ToolCallRecord> records_;
};

struct DispatchContext {
  std::string stage;
  std::string origin = "model";
  std::string call_id;
};

class ToolRegistry {
 public:
  explicit ToolRegistry(std::shared_ptr<ToolCallLog> log = std::make_shared<ToolCallLog>());

  /// Throws DuplicateTool.
  void register_tool(ToolSpec spec, ToolHandler handler);

  bool has(const std::string& tool_id) const;
  const ToolSpec& spec(const std::string& tool_id) const;
  std::vector<std::string> tool_ids() const;

  /// Validates, runs the handler once and logs exactly one record whatever
  /// the outcome. Throws UnknownTool, ArgumentSchemaViolation, or whatever
  /// the handler throws.
  nlohmann::json dispatch(const std::string& tool_id, const nlohmann::json& args,
                          const DispatchContext& context = {});

  ToolCallLog& log() noexcept { return *log_; }
  const ToolCallLog& log() const noexcept { return *log_; }

 private:
  struct Entry {
    ToolSpec spec;
    ToolHandler handler;
  };
  std::map<std::string, Entry> tools_;
  std::shared_ptr<ToolCallLog> log_;
};

}  // namespace disasteller::toolkit
