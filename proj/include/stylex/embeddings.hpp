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

#ifndef STYLEX_EMBEDDINGS_HPP_
#define STYLEX_EMBEDDINGS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylex {

struct Neighbor {
  std::string word;
  double similarity = 0.0;
  std::size_t index = 0;  // row in the table; breaks similarity ties

  bool operator==(const Neighbor&) const = default;
};

// Fixed-vocabulary word vectors, immutable once built. Rows are stored as
// float (the precision of the usual text dumps); all similarity arithmetic is
// done in double.
//
// Text format: a header line "V D" followed by V lines "word c1 ... cD"
// separated by single spaces. The word is everything before the last D
// fields, so phrase entries such as "lo siento" are allowed. Words are NFC
// normalized on load; a duplicate word keeps its first row and is counted in
// duplicates().
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // `values` is row-major, vocab.size() x dim.
  EmbeddingTable(std::size_t dim, std::vector<std::string> vocab,
                 std::vector<float> values);

  static EmbeddingTable Load(std::istream& in);
  static EmbeddingTable LoadFile(const std::filesystem::path& path);
  void Save(std::ostream& out) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  std::size_t duplicates() const { return duplicates_; }

  // Language of the vocabulary, if known. The text format does not carry it.
  const std::string& language() const { return language_; }
  void set_language(std::string language) { language_ = std::move(language); }

  std::optional<std::size_t> Find(std::string_view word) const;
  std::span<const float> Row(std::size_t index) const {
    return {values_.data() + index * dim_, dim_};
  }
  double RowNorm(std::size_t index) const { return norms_[index]; }
  std::vector<double> Vector(std::size_t index) const;

 private:
  void Index();

  std::size_t dim_ = 0;
  std::vector<std::string> vocab_;
  std::vector<float> values_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
  std::string language_;
};

// dot(u, v) / (|u| |v|). Throws ContractError on a dimension mismatch or a
// zero-norm input.
double Cosine(std::span<const double> u, std::span<const double> v);

// Exact k nearest neighbors by cosine similarity: at most k rows with
// similarity >= min_sim, sorted by similarity descending and then by row.
// Zero-norm rows never match. The result does not depend on `threads`.
std::vector<Neighbor> Knn(const EmbeddingTable& table,
                          std::span<const double> query, std::size_t k,
                          double min_sim, std::size_t threads = 1);

struct Centroid {
  std::vector<double> vector;
  std::vector<std::string> missing;  // listed words absent from the table
};

// Mean of the vectors of the listed words that are in the table. Throws
// ContractError when none is.
Centroid ComputeCentroid(const EmbeddingTable& table,
                         std::span<const std::string> words);

}  // namespace stylex

#endif  // STYLEX_EMBEDDINGS_HPP_
