// Copyright 2026 The Revcal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcal/isotonic.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace revcal {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void Merge(const CompensatedSum& other) {
    Add(other.sum_);
    Add(other.compensation_);
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct Block {
  CompensatedSum weighted_sum;
  CompensatedSum weight;
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  double Mean() const { return weighted_sum.value() / weight.value(); }
};

}  // namespace

std::vector<double> IsotonicFit(std::span<const double> values,
                                std::span<const double> weights,
                                Direction direction) {
  const std::size_t n = values.size();
  if (!weights.empty() && weights.size() != n) {
    throw std::invalid_argument("isotonic: values and weights differ in length");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("isotonic: weights must be positive, got " +
                                  std::to_string(w));
    }
  }

  // Solve the non-increasing problem; the non-decreasing one is its mirror
  // under negation.
  const double sign = direction == Direction::kNonIncreasing ? 1.0 : -1.0;
  std::vector<Block> blocks;
  blocks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    Block block;
    block.weighted_sum.Add(sign * values[i] * w);
    block.weight.Add(w);
    block.begin = i;
    block.end = i + 1;
    while (!blocks.empty() && blocks.back().Mean() < block.Mean()) {
      Block& prev = blocks.back();
      prev.weighted_sum.Merge(block.weighted_sum);
      prev.weight.Merge(block.weight);
      prev.end = block.end;
      block = prev;
      blocks.pop_back();
    }
    blocks.push_back(block);
  }

  std::vector<double> fitted(n);
  for (const Block& block : blocks) {
    const double mean = sign * block.Mean();
    for (std::size_t i = block.begin; i < block.end; ++i) fitted[i] = mean;
  }
  return fitted;
}

std::vector<double> IsotonicFit(const IsotonicProblem& problem) {
  return IsotonicFit(problem.values, problem.weights, problem.direction);
}

std::vector<double> IsotonicProjectIndexed(std::span<const double> scores,
                                           std::span<const std::size_t> order,
                                           double blend) {
  if (!(blend >= 0.0 && blend <= 1.0)) {
    throw std::invalid_argument("isotonic: blend must lie in [0, 1], got " +
                                std::to_string(blend));
  }
  const std::size_t n = scores.size();
  if (order.size() != n) {
    throw std::invalid_argument("isotonic: order is not a permutation of the scores");
  }
  std::vector<bool> seen(n, false);
  std::vector<double> ordered(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || seen[order[k]]) {
      throw std::invalid_argument("isotonic: order is not a permutation of the scores");
    }
    seen[order[k]] = true;
    ordered[k] = scores[order[k]];
  }

  const std::vector<double> fitted =
      IsotonicFit(ordered, {}, Direction::kNonIncreasing);
  std::vector<double> out(scores.begin(), scores.end());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    // Untouched coordinates stay bit-exact for every blend.
    if (fitted[k] != scores[i]) {
      out[i] = blend * fitted[k] + (1.0 - blend) * scores[i];
    }
  }
  return out;
}

}  // namespace revcal
