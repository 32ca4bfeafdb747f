#pragma once

// Reference computations written independently of the library: they share
// no code with the implementation under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

/// Lowercased maximal runs of [A-Za-z0-9] and bytes >= 0x80.
inline std::vector<std::string> terms(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (c >= 0x80) {
      cur += static_cast<char>(c);
    } else if (c >= 'A' && c <= 'Z') {
      cur += static_cast<char>(c - 'A' + 'a');
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      cur += static_cast<char>(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

struct Hit {
  std::size_t ordinal;
  long double score;
};

/// Brute-force BM25 (k1 = 1.2, b = 0.75) over every chunk, scoring each
/// distinct query term once; sorted by descending score then ordinal.
inline std::vector<Hit> bm25_rank(const std::vector<std::string>& chunk_texts,
                                  const std::string& query) {
  const long double k1 = 1.2L;
  const long double b = 0.75L;
  std::vector<std::vector<std::string>> docs;
  for (const auto& t : chunk_texts) docs.push_back(terms(t));
  const auto n = static_cast<long double>(docs.size());
  long double total = 0;
  for (const auto& d : docs) total += static_cast<long double>(d.size());
  const long double avgdl = total / n;

  const auto q = terms(query);
  const std::set<std::string> distinct(q.begin(), q.end());
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    long double score = 0;
    for (const auto& term : distinct) {
      long double df = 0;
      for (const auto& d : docs) {
        if (std::find(d.begin(), d.end(), term) != d.end()) df += 1;
      }
      if (df == 0) continue;
      const long double tf =
          static_cast<long double>(std::count(docs[i].begin(), docs[i].end(), term));
      if (tf == 0) continue;
      const long double idf = std::log(1.0L + (n - df + 0.5L) / (df + 0.5L));
      const long double dl = static_cast<long double>(docs[i].size());
      score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl));
    }
    hits.push_back({i, score});
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Hit& a, const Hit& c) { return a.score > c.score; });
  return hits;
}

using Big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<60>>;

struct MeanStd {
  Big mean;
  Big stddev;  // meaningful for n >= 2
};

/// Arithmetic mean and sample (n - 1) standard deviation in 60 digits.
inline MeanStd mean_std(const std::vector<double>& values) {
  Big sum = 0;
  for (double v : values) sum += Big(v);
  const Big n = Big(static_cast<int>(values.size()));
  const Big mean = sum / n;
  Big ss = 0;
  for (double v : values) ss += (Big(v) - mean) * (Big(v) - mean);
  Big sd = 0;
  if (values.size() >= 2) sd = boost::multiprecision::sqrt(ss / (n - 1));
  return {mean, sd};
}

}  // namespace oracle
