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

#ifndef STYLEX_NUMERIC_HPP_
#define STYLEX_NUMERIC_HPP_

#include <cstddef>
#include <optional>
#include <span>

namespace stylex::numeric {

// Neumaier's variant of Kahan summation.
class CompensatedAccumulator {
 public:
  void Add(double value);
  double Value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Left fold in index order.
double OrderedSum(std::span<const double> values);

// Compensated sum over fixed-size blocks reduced in block order. The block
// size does not depend on `threads`, so the result is bit-identical for every
// thread count.
double BlockedSum(std::span<const double> values, std::size_t threads = 1);

inline constexpr std::size_t kSumBlockSize = 4096;

// Product-moment correlation. Empty when the lengths differ, fewer than two
// samples are given, or either side has zero variance. Clamped to [-1, 1].
std::optional<double> PearsonCorrelation(std::span<const double> x,
                                         std::span<const double> y);

}  // namespace stylex::numeric

#endif  // STYLEX_NUMERIC_HPP_
