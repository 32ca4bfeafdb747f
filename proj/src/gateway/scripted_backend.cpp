#include "disasteller/gateway/backend.hpp"

#include <algorithm>
#include <fstream>

#include "disasteller/core/digest.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;

namespace disasteller::gateway {

json script_to_json(const Script& script) {
  json out = json::array();
  for (const auto& e : script) {
    json entry = {{"stage", e.stage}, {"index", e.index}};
    if (e.digest) entry["digest"] = *e.digest;
    entry["response"] = response_to_json(e.response);
    out.push_back(std::move(entry));
  }
  return out;
}

Script script_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::MalformedResponse, "script must be a JSON array");
  Script script;
  std::set<std::pair<std::string, int>> keys;
  std::set<std::string> digests;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string where = "script entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("response")) {
      throw Error(Errc::MalformedResponse, where + " has no response");
    }
    ScriptEntry entry;
    entry.stage = e.value("stage", "");
    entry.index = e.value("index", 0);
    if (e.contains("digest") && e["digest"].is_string()) {
      entry.digest = e["digest"].get<std::string>();
      if (!digests.insert(*entry.digest).second) {
        throw Error(Errc::MalformedResponse, where + " repeats digest " + *entry.digest);
      }
    }
    if (entry.stage.empty() && !entry.digest) {
      throw Error(Errc::MalformedResponse, where + " has neither stage nor digest");
    }
    if (!entry.stage.empty() && !keys.insert({entry.stage, entry.index}).second) {
      throw Error(Errc::MalformedResponse,
                  where + " repeats key (" + entry.stage + ", " +
                      std::to_string(entry.index) + ")");
    }
    entry.response = response_from_json(e["response"]);
    script.push_back(std::move(entry));
  }
  return script;
}

Script load_script(const std::string& path) {
  const auto text = core::read_text_file(path);
  try {
    return script_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedResponse, path + ": " + e.what());
  }
}

void write_script(const std::string& path, const Script& script) {
  core::write_new_file(path, script_to_json(script).dump(2) + "\n");
}

Script record_transcript(const std::vector<Exchange>& exchanges) {
  Script script;
  script.reserve(exchanges.size());
  for (const auto& x : exchanges) {
    script.push_back({x.stage, x.index, x.digest, x.response});
  }
  std::sort(script.begin(), script.end(), [](const auto& a, const auto& b) {
    return std::tie(a.stage, a.index) < std::tie(b.stage, b.index);
  });
  return script;
}

ScriptedBackend::ScriptedBackend(Script script, MatchMode mode) : mode_(mode) {
  for (auto& e : script) {
    if (mode_ == MatchMode::Digest) {
      if (!e.digest) {
        throw Error(Errc::MalformedResponse,
                    "digest-mode script entry (" + e.stage + ", " +
                        std::to_string(e.index) + ") lacks a digest");
      }
      by_digest_.emplace(*e.digest, std::move(e.response));
    } else {
      positional_.emplace(std::pair{e.stage, e.index}, std::move(e.response));
    }
  }
}

ModelResponse ScriptedBackend::complete(const ModelRequest& request) {
  validate_request(request);
  std::lock_guard lock(mu_);
  ++calls_;
  const int index = next_index_[request.stage]++;
  if (mode_ == MatchMode::Digest) {
    const auto digest = request_digest(request);
    auto it = by_digest_.find(digest);
    if (it == by_digest_.end()) {
      throw Error(Errc::ScriptMiss, "no script entry for digest " + digest);
    }
    auto response = std::move(it->second);
    by_digest_.erase(it);
    return response;
  }
  auto it = positional_.find({request.stage, index});
  if (it == positional_.end()) {
    throw Error(Errc::ScriptMiss, "no script entry for (" + request.stage + ", " +
                                      std::to_string(index) + ")");
  }
  auto response = std::move(it->second);
  positional_.erase(it);
  return response;
}

std::size_t ScriptedBackend::remaining() const {
  std::lock_guard lock(mu_);
  return positional_.size() + by_digest_.size();
}

std::size_t ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

ModelResponse RecordingBackend::complete(const ModelRequest& request) {
  auto response = inner_.complete(request);
  Exchange x{request.stage, 0, request_digest(request), request, response};
  std::lock_guard lock(mu_);
  x.index = next_index_[request.stage]++;
  exchanges_.push_back(std::move(x));
  return response;
}

std::vector<Exchange> RecordingBackend::exchanges() const {
  std::lock_guard lock(mu_);
  return exchanges_;
}

}  // namespace disasteller::gateway
