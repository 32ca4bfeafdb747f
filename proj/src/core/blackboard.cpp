#include "disasteller/core/blackboard.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "disasteller/error.hpp"

namespace disasteller::core {

std::string to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::Text: return "text";
    case EntryKind::ImageRef: return "image-ref";
    case EntryKind::Structured: return "structured";
  }
  return "text";
}

EntryKind entry_kind_from_string(const std::string& s) {
  if (s == "text") return EntryKind::Text;
  if (s == "image-ref") return EntryKind::ImageRef;
  if (s == "structured") return EntryKind::Structured;
  throw Error(Errc::MalformedResponse, "unknown entry kind '" + s + "'");
}

nlohmann::json to_json(const BlackboardEntry& entry, bool with_timestamp) {
  nlohmann::json j = {{"key", entry.key},
                      {"producer", entry.producer},
                      {"kind", to_string(entry.kind)},
                      {"sequence", entry.sequence},
                      {"content", entry.content}};
  if (with_timestamp) {
    j["created_at_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             entry.created_at.time_since_epoch())
                             .count();
  }
  return j;
}

void Blackboard::put(const std::string& key, BlackboardEntry entry) {
  entry.key = key;
  put_all({std::move(entry)});
}

void Blackboard::put_all(std::vector<BlackboardEntry> entries) {
  std::unique_lock lock(mu_);
  std::set<std::string> batch;
  for (const auto& e : entries) {
    if (entries_.contains(e.key) || !batch.insert(e.key).second) {
      throw Error(Errc::DuplicateKey, "blackboard key '" + e.key + "'");
    }
  }
  const auto now = std::chrono::system_clock::now();
  for (auto& e : entries) {
    e.sequence = next_sequence_++;
    e.created_at = now;
    auto key = e.key;
    entries_.emplace(std::move(key), std::move(e));
  }
}

BlackboardEntry Blackboard::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(Errc::MissingKey, "blackboard key '" + key + "'");
  }
  return it->second;
}

bool Blackboard::contains(const std::string& key) const {
  std::shared_lock lock(mu_);
  return entries_.contains(key);
}

std::size_t Blackboard::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::vector<BlackboardEntry> Blackboard::snapshot() const {
  std::vector<BlackboardEntry> out;
  {
    std::shared_lock lock(mu_);
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.sequence < b.sequence; });
  return out;
}

}  // namespace disasteller::core
