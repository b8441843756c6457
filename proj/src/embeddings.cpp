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

#include "stylex/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>

#include "stylex/error.hpp"
#include "stylex/parallel.hpp"
#include "stylex/unicode.hpp"

namespace stylex {

namespace {

// Strict total order: higher similarity first, then lower row index.
bool Closer(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.index < b.index;
}

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (begin <= line.size()) {
    const std::size_t end = std::min(line.find(' ', begin), line.size());
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
  // fastText dumps end every row with a space.
  if (fields.size() > 1 && fields.back().empty()) fields.pop_back();
  return fields;
}

bool ParseFloat(std::string_view field, float& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ptr == last && first != last &&
         (ec == std::errc() || ec == std::errc::result_out_of_range);
}

template <class Int>
bool ParseInt(std::string_view field, Int& out) {
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, out);
  return ec == std::errc() && ptr == last && !field.empty();
}

double Dot(std::span<const double> q, std::span<const float> row) {
  double dot = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    dot += q[d] * static_cast<double>(row[d]);
  }
  return dot;
}

double Norm(std::span<const double> v) {
  double sum = 0.0;
  for (const double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> vocab,
                               std::vector<float> values)
    : dim_(dim), vocab_(std::move(vocab)), values_(std::move(values)) {
  if (dim_ == 0) throw ContractError("embedding dimension must be positive");
  if (values_.size() != vocab_.size() * dim_) {
    throw ContractError("embedding values do not match vocab size x dim");
  }
  for (const float v : values_) {
    if (!std::isfinite(v)) throw ContractError("non-finite embedding value");
  }
  for (auto& word : vocab_) {
    if (word.empty()) throw ContractError("empty vocabulary entry");
    word = unicode::Nfc(word);
  }
  Index();
  if (duplicates_ > 0) {
    throw ContractError("duplicate vocabulary entry in embedding table");
  }
}

void EmbeddingTable::Index() {
  index_.clear();
  index_.reserve(vocab_.size());
  norms_.resize(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!index_.emplace(vocab_[i], i).second) ++duplicates_;
    double sum = 0.0;
    for (const float x : Row(i)) sum += static_cast<double>(x) * x;
    norms_[i] = std::sqrt(sum);
  }
}

EmbeddingTable EmbeddingTable::Load(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitSpaces(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !ParseInt(header[0], count) ||
      !ParseInt(header[1], dim) || dim == 0) {
    throw FormatError("malformed header, expected \"V D\"", 1);
  }

  EmbeddingTable table;
  table.dim_ = dim;
  table.vocab_.reserve(count);
  table.values_.reserve(count * dim);
  table.index_.reserve(count);
  std::vector<float> row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw FormatError("empty line", line_no);
    }
    if (line_no - 1 > count) {
      throw FormatError("more rows than the header's count of " +
                            std::to_string(count),
                        line_no);
    }
    const auto fields = SplitSpaces(line);
    std::size_t numeric = 0;
    while (numeric < dim && numeric < fields.size() - 1 &&
           ParseFloat(fields[fields.size() - 1 - numeric],
                      row[dim - 1 - numeric])) {
      ++numeric;
    }
    if (numeric < dim) {
      throw FormatError("wrong component count: expected " +
                            std::to_string(dim) + ", found " +
                            std::to_string(numeric),
                        line_no);
    }
    for (const float v : row) {
      if (!std::isfinite(v)) throw FormatError("non-finite component", line_no);
    }
    std::string word;
    for (std::size_t f = 0; f + dim < fields.size(); ++f) {
      if (fields[f].empty()) throw FormatError("empty field", line_no);
      if (f > 0) word.push_back(' ');
      word.append(fields[f]);
    }
    try {
      word = unicode::Nfc(word);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line_no);
    }
    if (table.index_.contains(word)) {
      ++table.duplicates_;
      continue;
    }
    table.index_.emplace(word, table.vocab_.size());
    table.vocab_.push_back(std::move(word));
    table.values_.insert(table.values_.end(), row.begin(), row.end());
  }
  if (in.bad()) throw IoError("read error in embedding stream");
  const std::size_t rows = line_no - 1;
  if (rows < count) {
    throw FormatError("header declares " + std::to_string(count) +
                          " rows, found " + std::to_string(rows),
                      line_no + 1);
  }
  const std::size_t duplicates = table.duplicates_;
  table.Index();
  table.duplicates_ = duplicates;
  return table;
}

EmbeddingTable EmbeddingTable::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings: " + path.string());
  return Load(in);
}

void EmbeddingTable::Save(std::ostream& out) const {
  out << vocab_.size() << ' ' << dim_ << '\n';
  char buf[64];
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    out << vocab_[i];
    for (const float v : Row(i)) {
      const auto result = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, result.ptr - buf);
    }
    out << '\n';
  }
}

std::optional<std::size_t> EmbeddingTable::Find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) {
    it = index_.find(unicode::Nfc(word));
    if (it == index_.end()) return std::nullopt;
  }
  return it->second;
}

std::vector<double> EmbeddingTable::Vector(std::size_t index) const {
  const auto row = Row(index);
  return {row.begin(), row.end()};
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ContractError("cosine: dimension mismatch");
  }
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) throw ContractError("cosine: zero-norm input");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return dot / (nu * nv);
}

std::vector<Neighbor> Knn(const EmbeddingTable& table,
                          std::span<const double> query, std::size_t k,
                          double min_sim, std::size_t threads) {
  if (query.size() != table.dim()) {
    throw ContractError("knn: query dimension " + std::to_string(query.size()) +
                        " does not match table dimension " +
                        std::to_string(table.dim()));
  }
  const double query_norm = Norm(query);
  if (!(query_norm > 0.0)) throw ContractError("knn: zero-norm query");
  if (k == 0 || table.size() == 0) return {};

  // Each chunk keeps its own top-k in a heap whose top is the worst kept
  // candidate; the union of chunk winners contains the global top-k.
  const std::size_t n = table.size();
  const std::size_t chunks = std::min(ResolveThreads(threads), n);
  std::vector<std::vector<Neighbor>> partial(chunks);
  const std::size_t chunk_size = (n + chunks - 1) / chunks;
  ParallelFor(chunks, chunks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(&Closer)>
          heap(&Closer);
      const std::size_t lo = c * chunk_size;
      const std::size_t hi = std::min(n, lo + chunk_size);
      for (std::size_t i = lo; i < hi; ++i) {
        const double row_norm = table.RowNorm(i);
        if (!(row_norm > 0.0)) continue;
        const double sim = Dot(query, table.Row(i)) / (query_norm * row_norm);
        if (sim < min_sim) continue;
        Neighbor candidate{std::string(), sim, i};
        if (heap.size() < k) {
          heap.push(std::move(candidate));
        } else if (Closer(candidate, heap.top())) {
          heap.pop();
          heap.push(std::move(candidate));
        }
      }
      auto& out = partial[c];
      out.reserve(heap.size());
      while (!heap.empty()) {
        out.push_back(heap.top());
        heap.pop();
      }
    }
  });

  std::vector<Neighbor> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  std::sort(merged.begin(), merged.end(), Closer);
  if (merged.size() > k) merged.resize(k);
  for (auto& neighbor : merged) neighbor.word = table.vocab()[neighbor.index];
  return merged;
}

Centroid ComputeCentroid(const EmbeddingTable& table,
                         std::span<const std::string> words) {
  Centroid result;
  std::vector<std::size_t> rows;
  for (const auto& word : words) {
    if (const auto index = table.Find(word)) {
      rows.push_back(*index);
    } else {
      result.missing.push_back(word);
    }
  }
  if (rows.empty()) {
    throw ContractError("centroid: none of the listed words is in the table");
  }
  // Summing in row order makes the result independent of list order.
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  result.vector.assign(table.dim(), 0.0);
  for (const std::size_t r : rows) {
    const auto row = table.Row(r);
    for (std::size_t d = 0; d < table.dim(); ++d) result.vector[d] += row[d];
  }
  for (double& x : result.vector) x /= static_cast<double>(rows.size());
  return result;
}

}  // namespace stylex
