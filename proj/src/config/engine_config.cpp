#include "disasteller/engine_config.hpp"

#include <filesystem>
#include <set>

#include "disasteller/core/digest.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace disasteller {

namespace {

const std::set<std::string> kStages = {"expert", "alerts", "emergency", "assignment"};

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(Errc::ConfigError, field + ": " + why);
}

class Section {
 public:
  Section(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) bad(prefix_.empty() ? "(root)" : prefix_, "expected an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : j_.items()) {
      if (!allowed.contains(k)) bad(name(k), "unknown key");
    }
  }

  std::string name(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const { return j_.at(key); }

  void get(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!j_[key].is_string()) bad(name(key), "expected a string");
    out = j_[key].get<std::string>();
  }
  void get(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!j_[key].is_boolean()) bad(name(key), "expected a boolean");
    out = j_[key].get<bool>();
  }
  void get(const char* key, int& out, int min) const {
    if (has(key)) {
      if (!j_[key].is_number_integer()) bad(name(key), "expected an integer");
      out = j_[key].get<int>();
    }
    if (out < min) bad(name(key), "must be >= " + std::to_string(min));
  }
  void get(const char* key, double& out, double min, bool strict) const {
    if (has(key)) {
      if (!j_[key].is_number()) bad(name(key), "expected a number");
      out = j_[key].get<double>();
    }
    if (strict ? out <= min : out < min) {
      bad(name(key), std::string("must be ") + (strict ? "> " : ">= ") + std::to_string(min));
    }
  }

 private:
  const json& j_;
  std::string prefix_;
};

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty()) return p;
  return fs::absolute(fs::path(base) / p).lexically_normal().string();
}

}  // namespace

EngineConfig parse_config(const json& j, const std::string& base_dir) {
  EngineConfig c;
  Section root(j, "");
  root.allow_only({"gateway", "retry", "retrieval", "orchestration", "prompts", "tools", "agents"});

  if (root.has("gateway")) {
    Section s(root.at("gateway"), "gateway");
    s.allow_only({"endpoint", "model_id", "evaluator_model_id", "temperature",
                  "max_output_tokens", "deadline_s", "max_in_flight"});
    s.get("endpoint", c.gateway.endpoint);
    s.get("model_id", c.gateway.model_id);
    s.get("evaluator_model_id", c.gateway.evaluator_model_id);
    s.get("temperature", c.gateway.temperature, 0.0, false);
    s.get("max_output_tokens", c.gateway.max_output_tokens, 1);
    s.get("deadline_s", c.gateway.deadline_s, 0.0, true);
    s.get("max_in_flight", c.gateway.max_in_flight, 1);
  }
  if (root.has("retry")) {
    Section s(root.at("retry"), "retry");
    s.allow_only({"max_attempts", "base_delay_ms"});
    s.get("max_attempts", c.retry.max_attempts, 1);
    s.get("base_delay_ms", c.retry.base_delay_ms, 0);
  }
  if (root.has("retrieval")) {
    Section s(root.at("retrieval"), "retrieval");
    s.allow_only({"chunk_size", "overlap", "k"});
    s.get("chunk_size", c.retrieval.chunk_size, 1);
    s.get("overlap", c.retrieval.overlap, 0);
    s.get("k", c.retrieval.k, 1);
  }
  if (c.retrieval.overlap >= c.retrieval.chunk_size) {
    bad("retrieval.overlap", "must be smaller than retrieval.chunk_size");
  }
  if (root.has("orchestration")) {
    Section s(root.at("orchestration"), "orchestration");
    s.allow_only({"parallel_alerts_emergency", "max_tool_iterations", "max_format_retries"});
    s.get("parallel_alerts_emergency", c.orchestration.parallel_alerts_emergency);
    s.get("max_tool_iterations", c.orchestration.max_tool_iterations, 1);
    s.get("max_format_retries", c.orchestration.max_format_retries, 0);
  }
  if (root.has("prompts")) {
    Section s(root.at("prompts"), "prompts");
    for (const auto& [stage, path] : root.at("prompts").items()) {
      if (!kStages.contains(stage)) bad(s.name(stage), "unknown stage");
      if (!path.is_string()) bad(s.name(stage), "expected a file path");
      const auto abs = resolve(base_dir, path.get<std::string>());
      if (!fs::is_regular_file(abs)) bad(s.name(stage), "prompt file not found: " + abs);
      c.prompts[stage] = abs;
    }
  }
  if (root.has("tools")) {
    Section s(root.at("tools"), "tools");
    s.allow_only({"web_search"});
    if (s.has("web_search")) {
      Section w(s.at("web_search"), "tools.web_search");
      w.allow_only({"mode", "fixture", "endpoint"});
      std::string mode = "live";
      w.get("mode", mode);
      if (mode == "live") {
        c.tools.web_search_mode = WebSearchMode::Live;
      } else if (mode == "fixture") {
        c.tools.web_search_mode = WebSearchMode::Fixture;
      } else {
        bad("tools.web_search.mode", "expected 'live' or 'fixture'");
      }
      std::string fixture;
      w.get("fixture", fixture);
      c.tools.web_search_fixture = resolve(base_dir, fixture);
      w.get("endpoint", c.tools.web_search_endpoint);
    }
  }
  if (c.tools.web_search_mode == WebSearchMode::Fixture) {
    if (c.tools.web_search_fixture.empty()) {
      bad("tools.web_search.fixture", "required when mode is 'fixture'");
    }
    if (!fs::is_regular_file(c.tools.web_search_fixture)) {
      bad("tools.web_search.fixture", "file not found: " + c.tools.web_search_fixture);
    }
  }
  if (root.has("agents")) {
    Section s(root.at("agents"), "agents");
    for (const auto& [stage, body] : root.at("agents").items()) {
      if (!kStages.contains(stage)) bad(s.name(stage), "unknown stage");
      Section a(body, s.name(stage));
      a.allow_only({"allowed_tools", "temperature", "max_output_tokens"});
      AgentOverride o;
      if (a.has("allowed_tools")) {
        const auto& tools = a.at("allowed_tools");
        if (!tools.is_array()) bad(a.name("allowed_tools"), "expected a list of tool ids");
        std::vector<std::string> ids;
        for (const auto& t : tools) {
          if (!t.is_string()) bad(a.name("allowed_tools"), "expected tool id strings");
          ids.push_back(t.get<std::string>());
        }
        o.allowed_tools = std::move(ids);
      }
      if (a.has("temperature")) {
        double t = 0;
        a.get("temperature", t, 0.0, false);
        o.temperature = t;
      }
      if (a.has("max_output_tokens")) {
        int m = 0;
        a.get("max_output_tokens", m, 1);
        o.max_output_tokens = m;
      }
      c.agents[stage] = std::move(o);
    }
  }
  return c;
}

EngineConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(core::read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, path + ": not valid JSON: " + e.what());
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.detail());
  }
  return parse_config(j, fs::absolute(path).parent_path().string());
}

json to_json(const EngineConfig& c) {
  json agents = json::object();
  for (const auto& [stage, o] : c.agents) {
    json a = json::object();
    if (o.allowed_tools) a["allowed_tools"] = *o.allowed_tools;
    if (o.temperature) a["temperature"] = *o.temperature;
    if (o.max_output_tokens) a["max_output_tokens"] = *o.max_output_tokens;
    agents[stage] = std::move(a);
  }
  json web = {{"mode", c.tools.web_search_mode == WebSearchMode::Fixture ? "fixture" : "live"}};
  if (!c.tools.web_search_fixture.empty()) web["fixture"] = c.tools.web_search_fixture;
  if (!c.tools.web_search_endpoint.empty()) web["endpoint"] = c.tools.web_search_endpoint;
  return {{"gateway",
           {{"endpoint", c.gateway.endpoint},
            {"model_id", c.gateway.model_id},
            {"evaluator_model_id", c.gateway.evaluator_model_id},
            {"temperature", c.gateway.temperature},
            {"max_output_tokens", c.gateway.max_output_tokens},
            {"deadline_s", c.gateway.deadline_s},
            {"max_in_flight", c.gateway.max_in_flight}}},
          {"retry",
           {{"max_attempts", c.retry.max_attempts}, {"base_delay_ms", c.retry.base_delay_ms}}},
          {"retrieval",
           {{"chunk_size", c.retrieval.chunk_size},
            {"overlap", c.retrieval.overlap},
            {"k", c.retrieval.k}}},
          {"orchestration",
           {{"parallel_alerts_emergency", c.orchestration.parallel_alerts_emergency},
            {"max_tool_iterations", c.orchestration.max_tool_iterations},
            {"max_format_retries", c.orchestration.max_format_retries}}},
          {"prompts", c.prompts},
          {"tools", {{"web_search", web}}},
          {"agents", agents}};
}

}  // namespace disasteller
