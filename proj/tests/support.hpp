/*
 * Copyright 2026 The stylex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Shared by the unit tests and the acceptance binary: fixture paths, seeded
// generators, and brute-force reference implementations. The references are
// written for obviousness, not speed, and share no code with the library
// beyond the data types and the character classifier.

#ifndef STYLEX_TESTS_SUPPORT_HPP_
#define STYLEX_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "stylex/aggregation.hpp"
#include "stylex/attribution.hpp"
#include "stylex/corpus.hpp"
#include "stylex/embeddings.hpp"
#include "stylex/lexicon.hpp"
#include "stylex/mlc.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

inline void PrintTo(const TermMatch& m, std::ostream* os) {
  *os << "{" << m.category << "/" << m.term << " [" << m.char_start << ","
      << m.char_end << ") c" << m.category_index << " t" << m.term_index
      << "}";
}

}  // namespace stylex

namespace stylex::testing {

inline std::filesystem::path FixtureDir() { return STYLEX_FIXTURE_DIR; }

inline std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("stylex-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// |a - b| <= rel * scale, with scale floored at 1 so values near zero are
// compared absolutely.
inline bool Close(double a, double b, double scale, double rel) {
  return std::fabs(a - b) <= rel * std::max(1.0, scale);
}

// ---------------------------------------------------------------------------
// Generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t Index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::size_t Range(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double Normal() { return std::normal_distribution<double>()(rng_); }
  bool Coin(double p = 0.5) { return Uniform(0, 1) < p; }
  std::mt19937_64& engine() { return rng_; }

  // Lowercase ASCII word from a small alphabet, so collisions happen.
  std::string Word(std::size_t min_len = 1, std::size_t max_len = 4) {
    static constexpr char kLetters[] = "abcde";
    std::string w;
    const std::size_t n = Range(min_len, max_len);
    for (std::size_t i = 0; i < n; ++i) w.push_back(kLetters[Index(5)]);
    return w;
  }

  // Words separated by spaces with occasional punctuation.
  std::string Sentence(std::size_t words) {
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
      if (i) s += Coin(0.1) ? ", " : " ";
      s += Word();
    }
    if (Coin(0.5)) s += Coin(0.5) ? "." : "!";
    return s;
  }

  // Random valid record: tokens tile parts of the text, gaps allowed.
  AttributionRecord Record(const std::string& id, const std::string& text,
                           double value_scale = 1.0) {
    AttributionRecord r;
    r.id = id;
    r.language = "xx";
    r.text = text;
    r.label = Uniform(-2, 2);
    r.base_value = Uniform(-1, 1);
    const std::size_t len = unicode::CodePointLength(text);
    const std::u32string cps = unicode::Decode(text);
    std::size_t pos = 0;
    while (pos < len) {
      if (Coin(0.15)) {
        ++pos;
        continue;
      }
      const std::size_t end = std::min(len, pos + Range(1, 4));
      TokenAttribution t;
      t.char_start = pos;
      t.char_end = end;
      t.text = unicode::Encode(cps.substr(pos, end - pos));
      t.value = value_scale * Normal();
      r.tokens.push_back(std::move(t));
      pos = end;
    }
    return r;
  }

 private:
  std::mt19937_64 rng_;
};

// Random lexicon over Gen::Word vocabulary; phrases included.
inline Lexicon RandomLexicon(Gen& g, std::size_t categories,
                             std::size_t max_terms) {
  Lexicon lex;
  lex.language = "xx";
  for (std::size_t c = 0; c < categories; ++c) {
    Category cat;
    cat.name = "C" + std::to_string(c);
    const std::size_t n = g.Range(1, max_terms);
    std::set<std::string> seen;
    for (std::size_t t = 0; t < n; ++t) {
      std::string term = g.Word(1, 3);
      if (g.Coin(0.2)) term += " " + g.Word(1, 3);
      if (seen.insert(term).second) cat.terms.push_back(term);
    }
    lex.categories.push_back(std::move(cat));
  }
  return lex;
}

// ---------------------------------------------------------------------------
// Reference implementations

namespace oracle {

inline double Cos(const std::vector<double>& u, const std::vector<double>& v) {
  long double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<long double>(u[i]) * v[i];
    nu += static_cast<long double>(u[i]) * u[i];
    nv += static_cast<long double>(v[i]) * v[i];
  }
  if (nu == 0 || nv == 0) return -2.0;  // never passes a threshold
  return static_cast<double>(dot / (std::sqrt(nu) * std::sqrt(nv)));
}

inline std::vector<double> RowOf(const EmbeddingTable& t, std::size_t i) {
  const auto row = t.Row(i);
  return {row.begin(), row.end()};
}

// Scan every row, sort by (similarity desc, row asc), cut at k.
inline std::vector<std::size_t> Knn(const EmbeddingTable& t,
                                    const std::vector<double>& q,
                                    std::size_t k, double min_sim) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = Cos(q, RowOf(t, i));
    if (s >= min_sim) all.emplace_back(s, i);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < all.size() && i < k; ++i) {
    out.push_back(all[i].second);
  }
  return out;
}

inline std::vector<double> Centroid(const EmbeddingTable& t,
                                    const std::vector<std::string>& words) {
  std::set<std::size_t> rows;
  for (const auto& w : words) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.vocab()[i] == w) rows.insert(i);
    }
  }
  std::vector<long double> acc(t.dim(), 0);
  for (const std::size_t r : rows) {
    for (std::size_t d = 0; d < t.dim(); ++d) acc[d] += t.Row(r)[d];
  }
  std::vector<double> out(t.dim());
  for (std::size_t d = 0; d < t.dim(); ++d) {
    out[d] = static_cast<double>(acc[d] / rows.size());
  }
  return out;
}

struct Unit {
  std::u32string key;
  std::size_t start, end;
};

inline std::vector<Unit> Units(const std::string& text, Segmentation seg) {
  const std::u32string cps = unicode::Decode(text);
  std::vector<Unit> out;
  if (seg == Segmentation::kSubstring) {
    for (std::size_t i = 0; i < cps.size(); ++i) {
      out.push_back({cps.substr(i, 1), i, i + 1});
    }
    return out;
  }
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto cls = unicode::Classify(cps[i]);
    if (cls == unicode::CharClass::kSpace) {
      ++i;
    } else if (cls == unicode::CharClass::kSymbol) {
      out.push_back({cps.substr(i, 1), i, i + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < cps.size() &&
             unicode::Classify(cps[j]) == unicode::CharClass::kWord) {
        ++j;
      }
      out.push_back({unicode::FoldCase(cps.substr(i, j - i)), i, j});
      i = j;
    }
  }
  return out;
}

// Greedy longest-first scan per category over precomputed units. Texts are
// assumed to be NFC already.
inline std::vector<TermMatch> Match(const Lexicon& lex, const std::string& text,
                                    Segmentation seg) {
  const auto units = Units(text, seg);
  std::vector<TermMatch> out;
  for (std::size_t c = 0; c < lex.categories.size(); ++c) {
    const auto& cat = lex.categories[c];
    std::vector<std::vector<std::u32string>> terms;
    for (const auto& term : cat.terms) {
      std::vector<std::u32string> keys;
      for (const auto& u : Units(term, seg)) keys.push_back(u.key);
      if (seg == Segmentation::kSubstring) {
        auto blank = [](const std::u32string& k) {
          return unicode::Classify(k[0]) == unicode::CharClass::kSpace;
        };
        while (!keys.empty() && blank(keys.back())) keys.pop_back();
        while (!keys.empty() && blank(keys.front())) keys.erase(keys.begin());
      }
      terms.push_back(std::move(keys));
    }
    std::size_t pos = 0;
    while (pos < units.size()) {
      std::size_t best = terms.size();
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& keys = terms[t];
        if (keys.empty() || pos + keys.size() > units.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < keys.size() && ok; ++k) {
          ok = units[pos + k].key == keys[k];
        }
        if (ok && (best == terms.size() ||
                   keys.size() > terms[best].size())) {
          best = t;
        }
      }
      if (best == terms.size()) {
        ++pos;
        continue;
      }
      const std::size_t n = terms[best].size();
      out.push_back({c, best, cat.name, cat.terms[best], units[pos].start,
                     units[pos + n - 1].end});
      pos += n;
    }
  }
  return out;
}

// Eq. 1: tokens whose midpoint falls in [a, b).
inline long double SpanSum(const AttributionRecord& r, std::size_t a,
                           std::size_t b) {
  long double s = 0;
  for (const auto& t : r.tokens) {
    const std::size_t mid = (t.char_start + t.char_end) / 2;
    if (mid >= a && mid < b) s += t.value;
  }
  return s;
}

struct CategoryRow {
  std::optional<double> importance;
  std::size_t occurrences = 0;
  double frequency_pct = 0;
  double abs_mass = 0;  // sum of |word importance|, the tolerance scale
};

// Eq. 2 by double loop over records and matches.
inline std::vector<CategoryRow> CategoryImportance(
    const std::vector<AttributionRecord>& records, const Lexicon& lex,
    Segmentation seg) {
  std::vector<CategoryRow> rows(lex.categories.size());
  std::vector<long double> sums(rows.size(), 0);
  std::vector<std::size_t> covered(rows.size(), 0);
  for (const auto& r : records) {
    std::vector<bool> hit(rows.size(), false);
    for (const auto& m : Match(lex, r.text, seg)) {
      const long double v = SpanSum(r, m.char_start, m.char_end);
      sums[m.category_index] += v;
      rows[m.category_index].abs_mass += std::fabs(static_cast<double>(v));
      ++rows[m.category_index].occurrences;
      hit[m.category_index] = true;
    }
    for (std::size_t c = 0; c < rows.size(); ++c) covered[c] += hit[c];
  }
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c].occurrences > 0) {
      rows[c].importance =
          static_cast<double>(sums[c] / rows[c].occurrences);
    }
    rows[c].frequency_pct =
        100.0 * static_cast<double>(covered[c]) /
        static_cast<double>(records.size());
  }
  return rows;
}

inline std::optional<double> Pearson(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// The lexicon creation pipeline, step for step, on the reference primitives.
// Returns the final lexicon and the set of (category, term) removed for being
// rare or uncorrelated.
struct MlcOutcome {
  Lexicon lexicon;
  std::set<std::pair<std::string, std::string>> rare;
  std::set<std::pair<std::string, std::string>> uncorrelated;
  std::map<std::pair<std::string, std::string>, std::optional<double>> r;
};

inline bool IsSingleWord(const std::string& term) {
  return term.find(' ') == std::string::npos;
}

inline MlcOutcome Mlc(const Lexicon& seed, const EmbeddingTable& table,
                      const std::vector<ScoredUtterance>& corpus,
                      Segmentation seg, const MlcConfig& cfg) {
  auto find = [&](const std::string& w) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table.vocab()[i] == w) return i;
    }
    return std::nullopt;
  };
  auto contains = [](const std::vector<std::string>& v, const std::string& w) {
    return std::find(v.begin(), v.end(), w) != v.end();
  };
  auto nonzero = [&](std::size_t i) {
    for (const float x : table.Row(i)) {
      if (x != 0) return true;
    }
    return false;
  };

  MlcOutcome out;
  Lexicon lex = seed;
  for (std::size_t c = 0; c < seed.categories.size(); ++c) {
    const auto& terms = seed.categories[c].terms;
    std::vector<std::string> added;
    std::vector<std::string> centroid_words;
    for (const auto& w : terms) {
      const auto row = IsSingleWord(w) ? find(w) : std::nullopt;
      if (!row) continue;
      centroid_words.push_back(w);
      if (!nonzero(*row)) continue;
      std::vector<std::string> neighbors;
      for (const auto i : Knn(table, RowOf(table, *row), cfg.syn_k + 1,
                              cfg.syn_min_sim)) {
        if (i != *row) neighbors.push_back(table.vocab()[i]);
      }
      if (neighbors.size() > cfg.syn_k) neighbors.resize(cfg.syn_k);
      for (const auto& n : neighbors) {
        if (!contains(terms, n) && !contains(added, n)) added.push_back(n);
      }
    }
    if (!centroid_words.empty()) {
      const auto centroid = Centroid(table, centroid_words);
      for (const auto i :
           Knn(table, centroid, cfg.concept_k, cfg.concept_min_sim)) {
        const auto& n = table.vocab()[i];
        if (!contains(terms, n) && !contains(added, n)) added.push_back(n);
      }
    }
    for (auto& n : added) lex.categories[c].terms.push_back(n);
  }

  // Rare-term filter.
  std::map<std::pair<std::size_t, std::string>, std::size_t> counts;
  for (const auto& u : corpus) {
    for (const auto& m : Match(lex, u.text, seg)) {
      ++counts[{m.category_index, m.term}];
    }
  }
  for (std::size_t c = 0; c < lex.categories.size(); ++c) {
    auto& terms = lex.categories[c].terms;
    std::vector<std::string> kept;
    for (const auto& t : terms) {
      if (counts[{c, t}] >= cfg.min_occurrences) {
        kept.push_back(t);
      } else {
        out.rare.insert({lex.categories[c].name, t});
      }
    }
    terms = kept;
  }

  // Correlation filter, all decisions against the same lexicon.
  std::vector<std::vector<TermMatch>> per_utt;
  for (const auto& u : corpus) per_utt.push_back(Match(lex, u.text, seg));
  Lexicon purified = lex;
  for (std::size_t c = 0; c < lex.categories.size(); ++c) {
    const auto& name = lex.categories[c].name;
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (const auto& m : per_utt[i]) {
        if (m.category_index == c) {
          sub.push_back(i);
          break;
        }
      }
    }
    std::vector<std::string> kept;
    for (const auto& t : lex.categories[c].terms) {
      if (sub.empty()) {
        kept.push_back(t);
        continue;
      }
      std::vector<double> x, y;
      for (const std::size_t i : sub) {
        bool has = false;
        for (const auto& m : per_utt[i]) {
          has = has || (m.category_index == c && m.term == t);
        }
        x.push_back(has ? 1.0 : 0.0);
        y.push_back(corpus[i].score);
      }
      const auto r = Pearson(x, y);
      out.r[{name, t}] = r;
      if (r && *r < cfg.corr_threshold) {
        out.uncorrelated.insert({name, t});
      } else {
        kept.push_back(t);
      }
    }
    purified.categories[c].terms = kept;
  }
  out.lexicon = purified;
  return out;
}

}  // namespace oracle

}  // namespace stylex::testing

#endif  // STYLEX_TESTS_SUPPORT_HPP_
