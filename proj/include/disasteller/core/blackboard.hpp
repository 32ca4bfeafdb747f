#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller::core {

enum class EntryKind { Text, ImageRef, Structured };

std::string to_string(EntryKind kind);
EntryKind entry_kind_from_string(const std::string& s);

/// One immutable intermediate output. Keys follow "<stage>.<artifact>".
/// Text entries hold a JSON string; image refs hold
/// {"artifact", "media_type", "sha256"}.
struct BlackboardEntry {
  std::string key;
  std::string producer;
  EntryKind kind = EntryKind::Text;
  nlohmann::json content;
  std::uint64_t sequence = 0;
  std::chrono::system_clock::time_point created_at{};

  /// Equality ignores created_at.
  friend bool operator==(const BlackboardEntry& a, const BlackboardEntry& b) {
    return a.key == b.key && a.producer == b.producer && a.kind == b.kind &&
           a.content == b.content && a.sequence == b.sequence;
  }
};

nlohmann::json to_json(const BlackboardEntry& entry, bool with_timestamp = true);

/// Append-only store shared by the pipeline stages. Safe for concurrent
/// readers and writers; a key can be written once.
class Blackboard {
 public:
  /// Stores the entry under key, assigning sequence and created_at.
  /// Throws DuplicateKey if the key exists.
  void put(const std::string& key, BlackboardEntry entry);

  /// All-or-none publication: either every key is new and all entries
  /// become visible together, or nothing is written and DuplicateKey is
  /// thrown.
  void put_all(std::vector<BlackboardEntry> entries);

  /// Throws MissingKey.
  BlackboardEntry get(const std::string& key) const;
  bool contains(const std::string& key) const;
  std::size_t size() const;

  /// Entries in sequence order.
  std::vector<BlackboardEntry> snapshot() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, BlackboardEntry> entries_;
  std::uint64_t next_sequence_ = 0;
};

}  // namespace disasteller::core
