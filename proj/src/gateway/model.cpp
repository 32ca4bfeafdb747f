#include "disasteller/gateway/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/raster.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;

namespace disasteller::gateway {

std::string to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
    case Role::Tool: return "tool";
  }
  return "user";
}

namespace {

Role role_from_string(const std::string& s) {
  if (s == "system") return Role::System;
  if (s == "user") return Role::User;
  if (s == "assistant") return Role::Assistant;
  if (s == "tool") return Role::Tool;
  throw Error(Errc::MalformedResponse, "unknown message role '" + s + "'");
}

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(Errc::MalformedResponse, msg);
}

json encode_tool_calls(const std::vector<ToolCall>& calls) {
  json out = json::array();
  for (const auto& c : calls) {
    out.push_back({{"id", c.id},
                   {"type", "function"},
                   {"function", {{"name", c.tool_id}, {"arguments", c.arguments.dump()}}}});
  }
  return out;
}

std::vector<ToolCall> decode_tool_calls(const json& arr) {
  std::vector<ToolCall> out;
  if (arr.is_null()) return out;
  if (!arr.is_array()) malformed("tool_calls is not an array");
  for (const auto& c : arr) {
    if (!c.is_object() || !c.contains("function") || !c["function"].is_object()) {
      malformed("tool call without function object");
    }
    const auto& fn = c["function"];
    ToolCall call;
    call.id = c.value("id", "");
    if (!fn.contains("name") || !fn["name"].is_string()) {
      malformed("tool call without function name");
    }
    call.tool_id = fn["name"].get<std::string>();
    const json& args = fn.contains("arguments") ? fn["arguments"] : json();
    if (args.is_string()) {
      const auto& s = args.get_ref<const std::string&>();
      if (s.empty()) {
        call.arguments = json::object();
      } else {
        try {
          call.arguments = json::parse(s);
        } catch (const json::parse_error& e) {
          malformed("tool call '" + call.tool_id + "' arguments are not JSON");
        }
      }
    } else if (args.is_object()) {
      call.arguments = args;
    } else if (args.is_null()) {
      call.arguments = json::object();
    } else {
      malformed("tool call arguments must be a JSON string");
    }
    out.push_back(std::move(call));
  }
  return out;
}

std::string content_text(const json& content) {
  if (content.is_null()) return "";
  if (content.is_string()) return content.get<std::string>();
  if (content.is_array()) {
    std::string out;
    for (const auto& p : content) {
      if (p.is_object() && p.value("type", "") == "text") {
        out += p.value("text", "");
      }
    }
    return out;
  }
  malformed("message content has unexpected type");
}

}  // namespace

Message Message::system(std::string text) {
  return {Role::System, {TextPart{std::move(text)}}, {}, {}};
}
Message Message::user(std::string text) {
  return {Role::User, {TextPart{std::move(text)}}, {}, {}};
}
Message Message::assistant(std::string text, std::vector<ToolCall> calls) {
  Message m{Role::Assistant, {}, std::move(calls), {}};
  if (!text.empty()) m.parts.push_back(TextPart{std::move(text)});
  return m;
}
Message Message::tool(std::string call_id, std::string content) {
  return {Role::Tool, {TextPart{std::move(content)}}, {}, std::move(call_id)};
}

std::string Message::text() const {
  std::string out;
  for (const auto& p : parts) {
    if (const auto* t = std::get_if<TextPart>(&p)) out += t->text;
  }
  return out;
}

void validate_request(const ModelRequest& r) {
  if (r.messages.empty()) throw std::invalid_argument("request has no messages");
  if (r.messages.front().role != Role::System) {
    throw std::invalid_argument("first message must be the system prompt");
  }
  for (const auto& m : r.messages) {
    if (m.role == Role::User) continue;
    for (const auto& p : m.parts) {
      if (std::holds_alternative<ImagePart>(p)) {
        throw std::invalid_argument("image parts are only allowed in user messages");
      }
    }
  }
  if (r.temperature < 0) throw std::invalid_argument("temperature must be >= 0");
  if (r.max_output_tokens <= 0) {
    throw std::invalid_argument("max_output_tokens must be positive");
  }
}

std::string to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::Stop: return "stop";
    case FinishReason::ToolCall: return "tool_calls";
    case FinishReason::Length: return "length";
    case FinishReason::Error: return "content_filter";
  }
  return "stop";
}

FinishReason finish_reason_from_string(const std::string& s) {
  if (s == "stop") return FinishReason::Stop;
  if (s == "tool_calls" || s == "tool_call" || s == "function_call") {
    return FinishReason::ToolCall;
  }
  if (s == "length") return FinishReason::Length;
  return FinishReason::Error;
}

ModelResponse ModelResponse::final_text(std::string text) {
  ModelResponse r;
  r.text = std::move(text);
  return r;
}

ModelResponse ModelResponse::calls(std::vector<ToolCall> calls) {
  ModelResponse r;
  r.tool_calls = std::move(calls);
  r.finish_reason = FinishReason::ToolCall;
  return r;
}

json encode_request(const ModelRequest& r) {
  json messages = json::array();
  for (const auto& m : r.messages) {
    json msg = {{"role", to_string(m.role)}};
    switch (m.role) {
      case Role::User: {
        json parts = json::array();
        for (const auto& p : m.parts) {
          if (const auto* t = std::get_if<TextPart>(&p)) {
            parts.push_back({{"type", "text"}, {"text", t->text}});
          } else {
            const auto& img = std::get<ImagePart>(p);
            parts.push_back(
                {{"type", "image_url"},
                 {"image_url",
                  {{"url", "data:" + img.media_type + ";base64," + img.base64}}}});
          }
        }
        msg["content"] = std::move(parts);
        break;
      }
      case Role::Assistant:
        msg["content"] = m.parts.empty() ? json(nullptr) : json(m.text());
        if (!m.tool_calls.empty()) msg["tool_calls"] = encode_tool_calls(m.tool_calls);
        break;
      case Role::Tool:
        msg["tool_call_id"] = m.tool_call_id;
        msg["content"] = m.text();
        break;
      case Role::System:
        msg["content"] = m.text();
        break;
    }
    messages.push_back(std::move(msg));
  }
  json body = {{"model", r.model_id},
               {"messages", std::move(messages)},
               {"temperature", r.temperature},
               {"max_tokens", r.max_output_tokens}};
  if (!r.tools.empty()) {
    json tools = json::array();
    for (const auto& t : r.tools) {
      tools.push_back({{"type", "function"},
                       {"function",
                        {{"name", t.name},
                         {"description", t.description},
                         {"parameters", t.parameters}}}});
    }
    body["tools"] = std::move(tools);
  }
  return body;
}

ModelRequest decode_request(const json& body) {
  try {
    ModelRequest r;
    r.model_id = body.value("model", "");
    r.temperature = body.value("temperature", 0.7);
    r.max_output_tokens = body.value("max_tokens", 2048);
    for (const auto& m : body.at("messages")) {
      Message msg;
      msg.role = role_from_string(m.at("role").get<std::string>());
      const json& content = m.contains("content") ? m["content"] : json();
      if (msg.role == Role::User && content.is_array()) {
        for (const auto& p : content) {
          const auto type = p.at("type").get<std::string>();
          if (type == "text") {
            msg.parts.push_back(TextPart{p.at("text").get<std::string>()});
          } else if (type == "image_url") {
            const auto url = p.at("image_url").at("url").get<std::string>();
            const auto semi = url.find(';');
            const auto comma = url.find(',');
            if (url.rfind("data:", 0) != 0 || semi == std::string::npos ||
                comma == std::string::npos) {
              malformed("image_url is not a base64 data URL");
            }
            msg.parts.push_back(
                ImagePart{url.substr(5, semi - 5), url.substr(comma + 1)});
          }
        }
      } else if (!content.is_null()) {
        msg.parts.push_back(TextPart{content_text(content)});
      }
      if (m.contains("tool_calls")) msg.tool_calls = decode_tool_calls(m["tool_calls"]);
      msg.tool_call_id = m.value("tool_call_id", "");
      r.messages.push_back(std::move(msg));
    }
    if (body.contains("tools")) {
      for (const auto& t : body["tools"]) {
        const auto& fn = t.at("function");
        r.tools.push_back({fn.at("name").get<std::string>(),
                           fn.value("description", ""),
                           fn.value("parameters", json::object())});
      }
    }
    return r;
  } catch (const json::exception& e) {
    malformed(std::string("request body: ") + e.what());
  }
}

json encode_response(const ModelResponse& r) {
  json message = {{"role", "assistant"},
                  {"content", r.text.empty() && !r.tool_calls.empty()
                                  ? json(nullptr)
                                  : json(r.text)}};
  if (!r.tool_calls.empty()) message["tool_calls"] = encode_tool_calls(r.tool_calls);
  return {{"id", "chatcmpl-local"},
          {"object", "chat.completion"},
          {"choices",
           json::array({{{"index", 0},
                         {"message", std::move(message)},
                         {"finish_reason", to_string(r.finish_reason)}}})},
          {"usage",
           {{"prompt_tokens", r.usage.prompt_tokens},
            {"completion_tokens", r.usage.completion_tokens},
            {"total_tokens", r.usage.prompt_tokens + r.usage.completion_tokens}}}};
}

ModelResponse decode_response(const json& body) {
  if (!body.is_object()) malformed("response body is not an object");
  if (body.contains("error") && !body["error"].is_null()) {
    malformed("response carries an error object: " + body["error"].dump());
  }
  if (!body.contains("choices") || !body["choices"].is_array() ||
      body["choices"].empty()) {
    malformed("response has no choices");
  }
  const json& choice = body["choices"][0];
  if (!choice.is_object() || !choice.contains("message") ||
      !choice["message"].is_object()) {
    malformed("first choice has no message");
  }
  const json& message = choice["message"];
  ModelResponse r;
  r.text = content_text(message.contains("content") ? message["content"] : json());
  if (message.contains("tool_calls")) {
    r.tool_calls = decode_tool_calls(message["tool_calls"]);
  }
  const json& fr = choice.contains("finish_reason") ? choice["finish_reason"] : json();
  if (fr.is_string()) {
    r.finish_reason = finish_reason_from_string(fr.get<std::string>());
  }
  // Some gateways report "stop" alongside tool calls; the invariant wins.
  if (!r.tool_calls.empty()) {
    r.finish_reason = FinishReason::ToolCall;
  } else if (r.finish_reason == FinishReason::ToolCall) {
    malformed("finish_reason is tool_calls but no tool calls were sent");
  }
  if (body.contains("usage") && body["usage"].is_object()) {
    r.usage.prompt_tokens = body["usage"].value("prompt_tokens", 0);
    r.usage.completion_tokens = body["usage"].value("completion_tokens", 0);
  }
  return r;
}

json response_to_json(const ModelResponse& r) {
  json calls = json::array();
  for (const auto& c : r.tool_calls) {
    calls.push_back({{"id", c.id}, {"tool", c.tool_id}, {"arguments", c.arguments}});
  }
  json out = {{"text", r.text},
              {"tool_calls", std::move(calls)},
              {"finish_reason", to_string(r.finish_reason)}};
  if (r.usage != Usage{}) {
    out["usage"] = {{"prompt_tokens", r.usage.prompt_tokens},
                    {"completion_tokens", r.usage.completion_tokens}};
  }
  return out;
}

ModelResponse response_from_json(const json& j) {
  try {
    ModelResponse r;
    r.text = j.value("text", "");
    if (j.contains("tool_calls")) {
      for (const auto& c : j["tool_calls"]) {
        r.tool_calls.push_back({c.value("id", ""), c.at("tool").get<std::string>(),
                                c.value("arguments", json::object())});
      }
    }
    r.finish_reason = r.tool_calls.empty()
                          ? finish_reason_from_string(j.value("finish_reason", "stop"))
                          : FinishReason::ToolCall;
    if (r.finish_reason == FinishReason::ToolCall && r.tool_calls.empty()) {
      malformed("scripted response claims tool_calls but lists none");
    }
    if (j.contains("usage")) {
      r.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
      r.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
    }
    return r;
  } catch (const json::exception& e) {
    malformed(std::string("scripted response: ") + e.what());
  }
}

std::string request_digest(const ModelRequest& r) {
  json body = encode_request(r);
  body.erase("temperature");
  body.erase("max_tokens");
  return core::sha256_hex(body.dump());
}

ImagePart make_image_part(std::span<const std::uint8_t> bytes, int max_side) {
  const auto image = core::decode_image(bytes);
  if (std::max(image.width(), image.height()) <= max_side) {
    return {core::sniff_media_type(bytes), core::base64_encode(bytes)};
  }
  const auto png = core::encode_png(core::fit_within(image, max_side));
  return {"image/png", core::base64_encode(png)};
}

}  // namespace disasteller::gateway
