#include "disasteller/toolkit/registry.hpp"

#include <chrono>
#include <set>

#include "disasteller/core/grade.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;

namespace disasteller::toolkit {

namespace {

json type_schema(ArgType type) {
  switch (type) {
    case ArgType::String:
      return {{"type", "string"}};
    case ArgType::Integer:
      return {{"type", "integer"}, {"minimum", 1}};
    case ArgType::Grade:
      return {{"type", "string"},
              {"enum", {"G1", "G2", "G3", "G4", "G5"}},
              {"description", "EMS-98 damage grade"}};
    case ArgType::AnnotationList:
      return {{"type", "array"},
              {"items",
               {{"type", "object"},
                {"properties",
                 {{"location_name", {{"type", "string"}}},
                  {"grade", {{"type", "string"}, {"enum", {"G1", "G2", "G3", "G4", "G5"}}}}}},
                {"required", {"location_name", "grade"}},
                {"additionalProperties", false}}}};
  }
  return {};
}

void check_grade(const json& v, const std::string& field) {
  if (!v.is_string()) throw ArgumentError(field, "expected a grade token string");
  const auto& s = v.get_ref<const std::string&>();
  try {
    core::parse_grade(s);
  } catch (const Error&) {
    throw ArgumentError(field, "'" + s + "' is not a grade G1..G5");
  }
}

void check_value(const json& v, ArgType type, const std::string& field) {
  switch (type) {
    case ArgType::String:
      if (!v.is_string()) throw ArgumentError(field, "expected a string");
      return;
    case ArgType::Integer:
      if (!v.is_number_integer()) throw ArgumentError(field, "expected an integer");
      return;
    case ArgType::Grade:
      check_grade(v, field);
      return;
    case ArgType::AnnotationList:
      if (!v.is_array()) throw ArgumentError(field, "expected a list of annotations");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const std::string at = field + "[" + std::to_string(i) + "]";
        if (!a.is_object()) throw ArgumentError(at, "expected an object");
        for (const auto& [k, _] : a.items()) {
          if (k != "location_name" && k != "grade") {
            throw ArgumentError(at + "." + k, "unexpected field");
          }
        }
        if (!a.contains("location_name")) {
          throw ArgumentError(at + ".location_name", "required field missing");
        }
        if (!a["location_name"].is_string()) {
          throw ArgumentError(at + ".location_name", "expected a string");
        }
        if (!a.contains("grade")) throw ArgumentError(at + ".grade", "required field missing");
        check_grade(a["grade"], at + ".grade");
      }
      return;
  }
}

}  // namespace

gateway::FunctionSchema ToolSpec::to_function_schema() const {
  json props = json::object();
  json required = json::array();
  for (const auto& f : fields) {
    json s = type_schema(f.type);
    if (!f.description.empty()) s["description"] = f.description;
    props[f.name] = std::move(s);
    if (f.required) required.push_back(f.name);
  }
  return {tool_id, description,
          {{"type", "object"},
           {"properties", std::move(props)},
           {"required", std::move(required)},
           {"additionalProperties", false}}};
}

void validate_arguments(const ToolSpec& spec, const json& args) {
  if (!args.is_object()) throw ArgumentError("(arguments)", "expected a JSON object");
  std::set<std::string> declared;
  for (const auto& f : spec.fields) {
    declared.insert(f.name);
    if (!args.contains(f.name)) {
      if (f.required) throw ArgumentError(f.name, "required field missing");
      continue;
    }
    check_value(args[f.name], f.type, f.name);
  }
  for (const auto& [k, _] : args.items()) {
    if (!declared.contains(k)) throw ArgumentError(k, "unexpected field");
  }
}

json to_json(const ToolCallRecord& r, bool with_timing) {
  json j = {{"sequence", r.sequence}, {"stage", r.stage},     {"origin", r.origin},
            {"call_id", r.call_id},   {"tool", r.tool_id},    {"args", r.args},
            {"ok", r.ok},             {"result", r.result},   {"error", r.error}};
  if (with_timing) j["duration_ms"] = r.duration_ms;
  return j;
}

std::uint64_t ToolCallLog::append(ToolCallRecord record) {
  std::lock_guard lock(mu_);
  record.sequence = records_.size();
  records_.push_back(std::move(record));
  return records_.back().sequence;
}

std::vector<ToolCallRecord> ToolCallLog::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::size_t ToolCallLog::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

ToolRegistry::ToolRegistry(std::shared_ptr<ToolCallLog> log) : log_(std::move(log)) {}

void ToolRegistry::register_tool(ToolSpec spec, ToolHandler handler) {
  auto id = spec.tool_id;
  if (tools_.contains(id)) throw Error(Errc::DuplicateTool, "tool '" + id + "'");
  tools_.emplace(std::move(id), Entry{std::move(spec), std::move(handler)});
}

bool ToolRegistry::has(const std::string& tool_id) const {
  return tools_.contains(tool_id);
}

const ToolSpec& ToolRegistry::spec(const std::string& tool_id) const {
  auto it = tools_.find(tool_id);
  if (it == tools_.end()) throw Error(Errc::UnknownTool, "tool '" + tool_id + "'");
  return it->second.spec;
}

std::vector<std::string> ToolRegistry::tool_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : tools_) ids.push_back(id);
  return ids;
}

json ToolRegistry::dispatch(const std::string& tool_id, const json& args,
                            const DispatchContext& context) {
  ToolCallRecord rec;
  rec.stage = context.stage;
  rec.origin = context.origin;
  rec.call_id = context.call_id;
  rec.tool_id = tool_id;
  rec.args = args;
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    rec.duration_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    log_->append(std::move(rec));
  };
  try {
    auto it = tools_.find(tool_id);
    if (it == tools_.end()) throw Error(Errc::UnknownTool, "tool '" + tool_id + "'");
    validate_arguments(it->second.spec, args);
    json result = it->second.handler(args);
    rec.ok = true;
    rec.result = result;
    finish();
    return result;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
    finish();
    throw;
  }
}

}  // namespace disasteller::toolkit
