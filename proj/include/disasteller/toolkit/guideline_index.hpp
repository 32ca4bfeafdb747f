#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace disasteller::toolkit {

struct GuidelineChunk {
  std::string doc_id;
  int chunk_id = 0;
  std::string text;
  int token_count = 0;

  /// "<doc_id>#<chunk_id>", the citation form used in reports.
  std::string ref() const { return doc_id + "#" + std::to_string(chunk_id); }
};

struct ChunkingOptions {
  int chunk_size = 300;  // whitespace tokens
  int overlap = 50;
};

/// BM25 parameters.
inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

/// Scoring terms: maximal runs of ASCII letters/digits (and any non-ASCII
/// byte), lowercased.
std::vector<std::string> tokenize_terms(std::string_view text);

/// Token ranges [begin, end) for a document of n whitespace tokens: windows
/// of chunk_size advancing by chunk_size - overlap until one reaches the end.
std::vector<std::pair<int, int>> chunk_ranges(int token_count,
                                              const ChunkingOptions& options);

/// Robertson–Sparck Jones idf with the +1 floor that keeps it positive.
double bm25_idf(std::size_t chunk_count, std::size_t document_frequency);

struct ScoredChunk {
  std::size_t ordinal = 0;  // position in GuidelineIndex::chunks()
  double score = 0;
};

/// Chunked guideline corpus with BM25 term statistics. Immutable once built;
/// concurrent searches are safe.
class GuidelineIndex {
 public:
  explicit GuidelineIndex(ChunkingOptions options = {});

  /// Throws EmptyDocument when text has no tokens.
  void add_document(const std::string& doc_id, std::string_view text);

  const std::vector<GuidelineChunk>& chunks() const noexcept { return chunks_; }
  const ChunkingOptions& options() const noexcept { return options_; }
  std::size_t document_frequency(const std::string& term) const;
  int chunk_length(std::size_t ordinal) const { return lengths_.at(ordinal); }
  double average_chunk_length() const;

  /// Top-k chunks by BM25 over the distinct query terms; ties go to the
  /// lower ordinal. Every chunk is scored, so fewer than k results only
  /// happen when the corpus is smaller than k. Throws EmptyQuery.
  std::vector<ScoredChunk> search(std::string_view query, int k) const;

  nlohmann::json chunks_json() const;
  nlohmann::json stats_json() const;
  /// Rebuilds from a persisted chunk list (statistics are recomputed).
  static GuidelineIndex from_json(const nlohmann::json& chunks,
                                  ChunkingOptions options);

 private:
  void index_chunk(GuidelineChunk chunk);

  ChunkingOptions options_;
  std::vector<GuidelineChunk> chunks_;
  std::vector<int> lengths_;
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, int>>> postings_;
  long long total_length_ = 0;
};

/// Reads a plain-text guideline; doc_id is the file stem.
/// Throws IoError, EmptyDocument.
GuidelineIndex ingest_guideline(const std::string& path, ChunkingOptions options = {});

/// Writes chunks.json and stats.json into a new directory (IoError if it
/// exists). load_index reads chunks.json back.
void save_index(const GuidelineIndex& index, const std::string& dir);
GuidelineIndex load_index(const std::string& dir);

}  // namespace disasteller::toolkit
