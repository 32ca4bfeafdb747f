#include "disasteller/toolkit/guideline_index.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/text.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace disasteller::toolkit {

std::vector<std::string> tokenize_terms(std::string_view text) {
  std::vector<std::string> terms;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      terms.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) terms.push_back(std::move(cur));
  return terms;
}

std::vector<std::pair<int, int>> chunk_ranges(int n, const ChunkingOptions& o) {
  if (o.chunk_size <= 0 || o.overlap < 0 || o.overlap >= o.chunk_size) {
    throw std::invalid_argument("chunking needs 0 <= overlap < chunk_size");
  }
  std::vector<std::pair<int, int>> out;
  const int step = o.chunk_size - o.overlap;
  for (int start = 0; start < n; start += step) {
    out.emplace_back(start, std::min(start + o.chunk_size, n));
    if (start + o.chunk_size >= n) break;
  }
  return out;
}

double bm25_idf(std::size_t n, std::size_t df) {
  const double N = static_cast<double>(n);
  const double d = static_cast<double>(df);
  return std::log(1.0 + (N - d + 0.5) / (d + 0.5));
}

GuidelineIndex::GuidelineIndex(ChunkingOptions options) : options_(options) {
  chunk_ranges(0, options_);  // validates
}

void GuidelineIndex::add_document(const std::string& doc_id, std::string_view text) {
  const auto tokens = core::split_whitespace(text);
  if (tokens.empty()) {
    throw Error(Errc::EmptyDocument, "guideline '" + doc_id + "' has no text");
  }
  int chunk_id = 0;
  for (auto [begin, end] : chunk_ranges(static_cast<int>(tokens.size()), options_)) {
    GuidelineChunk c;
    c.doc_id = doc_id;
    c.chunk_id = chunk_id++;
    c.token_count = end - begin;
    for (int i = begin; i < end; ++i) {
      if (i > begin) c.text.push_back(' ');
      c.text += tokens[static_cast<std::size_t>(i)];
    }
    index_chunk(std::move(c));
  }
}

void GuidelineIndex::index_chunk(GuidelineChunk chunk) {
  const std::size_t ordinal = chunks_.size();
  const auto terms = tokenize_terms(chunk.text);
  std::map<std::string, int> tf;
  for (const auto& t : terms) ++tf[t];
  for (auto& [term, count] : tf) postings_[term].emplace_back(ordinal, count);
  lengths_.push_back(static_cast<int>(terms.size()));
  total_length_ += static_cast<long long>(terms.size());
  chunks_.push_back(std::move(chunk));
}

std::size_t GuidelineIndex::document_frequency(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

double GuidelineIndex::average_chunk_length() const {
  return chunks_.empty() ? 0.0
                         : static_cast<double>(total_length_) /
                               static_cast<double>(chunks_.size());
}

std::vector<ScoredChunk> GuidelineIndex::search(std::string_view query, int k) const {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const auto terms = tokenize_terms(query);
  if (terms.empty()) throw Error(Errc::EmptyQuery, "query has no searchable terms");
  const std::set<std::string> distinct(terms.begin(), terms.end());

  const std::size_t n = chunks_.size();
  const double avgdl = average_chunk_length();
  std::vector<double> scores(n, 0.0);
  for (const auto& term : distinct) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double idf = bm25_idf(n, it->second.size());
    for (const auto& [ordinal, tf] : it->second) {
      const double norm =
          kBm25K1 * (1.0 - kBm25B + kBm25B * lengths_[ordinal] / avgdl);
      scores[ordinal] += idf * (tf * (kBm25K1 + 1.0)) / (tf + norm);
    }
  }

  std::vector<ScoredChunk> ranked(n);
  for (std::size_t i = 0; i < n; ++i) ranked[i] = {i, scores[i]};
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), [](const ScoredChunk& a, const ScoredChunk& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.ordinal < b.ordinal;
                    });
  ranked.resize(take);
  return ranked;
}

json GuidelineIndex::chunks_json() const {
  json out = json::array();
  for (const auto& c : chunks_) {
    out.push_back({{"doc_id", c.doc_id},
                   {"chunk_id", c.chunk_id},
                   {"token_count", c.token_count},
                   {"text", c.text}});
  }
  return out;
}

json GuidelineIndex::stats_json() const {
  // std::map keeps the term order stable across runs.
  std::map<std::string, std::size_t> df;
  for (const auto& [term, posting] : postings_) df[term] = posting.size();
  return {{"bm25", {{"k1", kBm25K1}, {"b", kBm25B}}},
          {"chunking", {{"chunk_size", options_.chunk_size}, {"overlap", options_.overlap}}},
          {"chunk_count", chunks_.size()},
          {"average_chunk_length", average_chunk_length()},
          {"chunk_lengths", lengths_},
          {"document_frequency", df}};
}

GuidelineIndex GuidelineIndex::from_json(const json& chunks, ChunkingOptions options) {
  GuidelineIndex index(options);
  try {
    for (const auto& c : chunks) {
      index.index_chunk({c.at("doc_id").get<std::string>(), c.at("chunk_id").get<int>(),
                         c.at("text").get<std::string>(), c.at("token_count").get<int>()});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed chunk list: ") + e.what());
  }
  return index;
}

GuidelineIndex ingest_guideline(const std::string& path, ChunkingOptions options) {
  GuidelineIndex index(options);
  index.add_document(fs::path(path).stem().string(), core::read_text_file(path));
  return index;
}

void save_index(const GuidelineIndex& index, const std::string& dir) {
  std::error_code ec;
  if (!fs::create_directories(dir, ec)) {
    throw Error(Errc::IoError, "index directory '" + dir + "' exists or is not writable");
  }
  core::write_new_file((fs::path(dir) / "chunks.json").string(),
                       index.chunks_json().dump(2) + "\n");
  core::write_new_file((fs::path(dir) / "stats.json").string(),
                       index.stats_json().dump(2) + "\n");
}

GuidelineIndex load_index(const std::string& dir) {
  json chunks;
  json stats;
  try {
    chunks = json::parse(core::read_text_file((fs::path(dir) / "chunks.json").string()));
    stats = json::parse(core::read_text_file((fs::path(dir) / "stats.json").string()));
  } catch (const json::parse_error& e) {
    throw Error(Errc::IoError, "index in '" + dir + "' is not valid JSON");
  }
  ChunkingOptions options{stats.at("chunking").at("chunk_size").get<int>(),
                          stats.at("chunking").at("overlap").get<int>()};
  auto index = GuidelineIndex::from_json(chunks, options);
  if (index.stats_json() != stats) {
    throw Error(Errc::IoError, "stats.json in '" + dir + "' does not match chunks.json");
  }
  return index;
}

}  // namespace disasteller::toolkit
