#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller {

struct GatewaySettings {
  std::string endpoint = "https://api.openai.com/v1";
  std::string model_id = "gpt-4o";
  std::string evaluator_model_id = "gpt-4o";
  double temperature = 0.7;
  int max_output_tokens = 2048;
  double deadline_s = 120;
  int max_in_flight = 4;
};

struct RetrySettings {
  int max_attempts = 3;
  int base_delay_ms = 500;
};

struct RetrievalSettings {
  int chunk_size = 300;
  int overlap = 50;
  int k = 3;
};

struct OrchestrationSettings {
  bool parallel_alerts_emergency = true;
  int max_tool_iterations = 8;
  int max_format_retries = 2;
};

enum class WebSearchMode { Live, Fixture };

struct ToolSettings {
  WebSearchMode web_search_mode = WebSearchMode::Live;
  std::string web_search_fixture;   // absolute once loaded
  std::string web_search_endpoint;  // live mode
};

/// Per-stage overrides of the built-in agent definitions.
struct AgentOverride {
  std::optional<std::vector<std::string>> allowed_tools;
  std::optional<double> temperature;
  std::optional<int> max_output_tokens;
};

struct EngineConfig {
  GatewaySettings gateway;
  RetrySettings retry;
  RetrievalSettings retrieval;
  OrchestrationSettings orchestration;
  /// stage id -> system prompt file (absolute once loaded).
  std::map<std::string, std::string> prompts;
  ToolSettings tools;
  std::map<std::string, AgentOverride> agents;
};

/// Parses and validates a config object; relative paths resolve against
/// base_dir. Throws ConfigError naming the offending field (e.g.
/// "retrieval.overlap"). Unknown keys are rejected.
EngineConfig parse_config(const nlohmann::json& j, const std::string& base_dir = ".");
EngineConfig load_config(const std::string& path);

/// Normalized effective configuration with every default filled in.
nlohmann::json to_json(const EngineConfig& config);

}  // namespace disasteller
