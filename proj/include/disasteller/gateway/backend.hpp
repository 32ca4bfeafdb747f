#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "disasteller/gateway/model.hpp"

namespace disasteller::gateway {

/// A model backend. Implementations must tolerate concurrent callers.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual ModelResponse complete(const ModelRequest& request) = 0;
};

/// One recorded call. index is the call's position among calls carrying
/// the same stage tag.
struct Exchange {
  std::string stage;
  int index = 0;
  std::string digest;
  ModelRequest request;
  ModelResponse response;
};

struct ScriptEntry {
  std::string stage;
  int index = 0;
  std::optional<std::string> digest;
  ModelResponse response;
};

using Script = std::vector<ScriptEntry>;

/// Script file: JSON array of {stage, index, [digest], response}.
nlohmann::json script_to_json(const Script& script);
/// Throws MalformedResponse for schema errors or duplicate match keys.
Script script_from_json(const nlohmann::json& j);
Script load_script(const std::string& path);
void write_script(const std::string& path, const Script& script);

/// Turns the exchanges of one completed run into a replayable script,
/// ordered by (stage, index) so concurrent stages serialize identically.
Script record_transcript(const std::vector<Exchange>& exchanges);

enum class MatchMode { Positional, Digest };

/// Deterministic replay. Positional mode answers the n-th call of a stage
/// with entry (stage, n); digest mode matches on request_digest. Each entry
/// is consumed once; misses throw ScriptMiss.
class ScriptedBackend : public ModelBackend {
 public:
  explicit ScriptedBackend(Script script, MatchMode mode = MatchMode::Positional);

  ModelResponse complete(const ModelRequest& request) override;

  std::size_t remaining() const;
  std::size_t calls() const;

 private:
  MatchMode mode_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, int>, ModelResponse> positional_;
  std::map<std::string, ModelResponse> by_digest_;
  std::map<std::string, int> next_index_;
  std::size_t calls_ = 0;
};

/// Decorator that records every successful exchange in call order.
class RecordingBackend : public ModelBackend {
 public:
  explicit RecordingBackend(ModelBackend& inner) : inner_(inner) {}

  ModelResponse complete(const ModelRequest& request) override;

  std::vector<Exchange> exchanges() const;

 private:
  ModelBackend& inner_;
  mutable std::mutex mu_;
  std::map<std::string, int> next_index_;
  std::vector<Exchange> exchanges_;
};

}  // namespace disasteller::gateway
