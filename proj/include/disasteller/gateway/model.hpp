#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller::gateway {

enum class Role { System, User, Assistant, Tool };

std::string to_string(Role role);

struct TextPart {
  std::string text;
  friend bool operator==(const TextPart&, const TextPart&) = default;
};

struct ImagePart {
  std::string media_type;  // "image/png" or "image/jpeg"
  std::string base64;
  friend bool operator==(const ImagePart&, const ImagePart&) = default;
};

using ContentPart = std::variant<TextPart, ImagePart>;

struct ToolCall {
  std::string id;
  std::string tool_id;
  nlohmann::json arguments = nlohmann::json::object();
  friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

struct Message {
  Role role = Role::User;
  std::vector<ContentPart> parts;
  /// Assistant turns that requested tools.
  std::vector<ToolCall> tool_calls;
  /// Tool turns answer exactly one call.
  std::string tool_call_id;

  static Message system(std::string text);
  static Message user(std::string text);
  static Message assistant(std::string text, std::vector<ToolCall> calls = {});
  static Message tool(std::string call_id, std::string content);

  /// Concatenated text parts.
  std::string text() const;
  friend bool operator==(const Message&, const Message&) = default;
};

/// Function-style tool description as sent to the model.
struct FunctionSchema {
  std::string name;
  std::string description;
  nlohmann::json parameters;
  friend bool operator==(const FunctionSchema&, const FunctionSchema&) = default;
};

struct ModelRequest {
  /// Pipeline stage issuing the call ("expert", "tool:interpret_image",
  /// "evaluator:AlertNews", ...). Scripted replay keys on it; never sent.
  std::string stage;
  std::string model_id;
  std::vector<Message> messages;
  std::vector<FunctionSchema> tools;
  double temperature = 0.7;
  int max_output_tokens = 2048;
};

/// Throws std::invalid_argument: needs >= 1 message, a leading system
/// message, images only in user messages, temperature >= 0, tokens > 0.
void validate_request(const ModelRequest& request);

enum class FinishReason { Stop, ToolCall, Length, Error };

std::string to_string(FinishReason reason);
FinishReason finish_reason_from_string(const std::string& s);

struct Usage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
  friend bool operator==(const Usage&, const Usage&) = default;
};

/// finish_reason == ToolCall exactly when tool_calls is non-empty.
struct ModelResponse {
  std::string text;
  std::vector<ToolCall> tool_calls;
  FinishReason finish_reason = FinishReason::Stop;
  Usage usage;
  friend bool operator==(const ModelResponse&, const ModelResponse&) = default;

  static ModelResponse final_text(std::string text);
  static ModelResponse calls(std::vector<ToolCall> calls);
};

// OpenAI-compatible chat-completions wire mapping.
nlohmann::json encode_request(const ModelRequest& request);
ModelRequest decode_request(const nlohmann::json& body);
nlohmann::json encode_response(const ModelResponse& response);
/// Throws MalformedResponse when the payload does not follow the schema.
ModelResponse decode_response(const nlohmann::json& body);

// Compact form used in script and transcript files.
nlohmann::json response_to_json(const ModelResponse& response);
ModelResponse response_from_json(const nlohmann::json& j);

/// SHA-256 over the request's model-visible content (model id, messages,
/// tools). Sampling parameters are excluded.
std::string request_digest(const ModelRequest& request);

inline constexpr int kMaxImageSide = 2048;

/// Validates the bytes as PNG/JPEG (UndecodableImage) and, when the longest
/// side exceeds max_side, re-encodes a downscaled PNG.
ImagePart make_image_part(std::span<const std::uint8_t> bytes,
                          int max_side = kMaxImageSide);

}  // namespace disasteller::gateway
