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

#ifndef REVCAL_ISOTONIC_H_
#define REVCAL_ISOTONIC_H_

#include <cstddef>
#include <span>
#include <vector>

namespace revcal {

enum class Direction { kNonIncreasing, kNonDecreasing };

// Weighted least-squares isotonic regression along the index order.
// An empty `weights` vector means unit weights.
struct IsotonicProblem {
  std::vector<double> values;
  std::vector<double> weights;
  Direction direction = Direction::kNonIncreasing;
};

// Solves min sum_i w_i (x_i - y_i)^2 subject to x being monotone in the
// requested direction, using pool-adjacent-violators. The result is
// piecewise constant; every pooled block holds the weighted mean of its
// members. Throws std::invalid_argument on a size mismatch or a weight that
// is not strictly positive.
std::vector<double> IsotonicFit(std::span<const double> values,
                                std::span<const double> weights,
                                Direction direction);

std::vector<double> IsotonicFit(const IsotonicProblem& problem);

// Projects `scores` onto the set of vectors that are non-increasing when read
// in `order` (order[0] is the top-ranked index) and returns
// blend * projection + (1 - blend) * scores.
std::vector<double> IsotonicProjectIndexed(std::span<const double> scores,
                                           std::span<const std::size_t> order,
                                           double blend);

}  // namespace revcal

#endif  // REVCAL_ISOTONIC_H_
