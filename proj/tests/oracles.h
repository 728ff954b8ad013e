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


// Slow, obviously-correct reference implementations used by the tests.
// Nothing here shares code with the library.

#ifndef REVCAL_TESTS_ORACLES_H_
#define REVCAL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace revcal::testing {

// Weighted least squares onto non-increasing sequences by exhaustive search.
//
// The optimum is constant on contiguous blocks and equals the weighted mean
// on each block, so the minimum over all 2^(n-1) block partitions whose
// block means are non-increasing is the exact projection. Intended for
// n <= 12 or so.
inline std::vector<double> BruteForceIsotonicDecreasing(const std::vector<double>& y,
                                                        const std::vector<double>& w) {
  const std::size_t n = y.size();
  if (n == 0) return {};
  std::vector<double> best;
  double best_cost = std::numeric_limits<double>::infinity();
  const std::size_t n_masks = std::size_t{1} << (n - 1);
  std::vector<double> fit(n);
  for (std::size_t mask = 0; mask < n_masks; ++mask) {
    // Bit k set: a block boundary sits between k and k + 1.
    bool feasible = true;
    double prev = std::numeric_limits<double>::infinity();
    std::size_t start = 0;
    for (std::size_t k = 0; k < n && feasible; ++k) {
      const bool ends = k + 1 == n || ((mask >> k) & 1u);
      if (!ends) continue;
      double sw = 0.0, swy = 0.0;
      for (std::size_t i = start; i <= k; ++i) {
        sw += w[i];
        swy += w[i] * y[i];
      }
      const double mean = swy / sw;
      if (mean > prev + 1e-12) feasible = false;
      for (std::size_t i = start; i <= k; ++i) fit[i] = mean;
      prev = mean;
      start = k + 1;
    }
    if (!feasible) continue;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) cost += w[i] * (y[i] - fit[i]) * (y[i] - fit[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = fit;
    }
  }
  return best;
}

// Plackett-Luce probability written directly from the definition.
inline double NaivePlProbability(const std::vector<double>& theta,
                                 const std::vector<std::size_t>& perm) {
  double prob = 1.0;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    double denom = 0.0;
    for (std::size_t j = k; j < perm.size(); ++j) denom += std::exp(theta[perm[j]]);
    prob *= std::exp(theta[perm[k]]) / denom;
  }
  return prob;
}

// O(n^2) Kendall tau-a.
inline double NaiveKendallTau(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = (a[i] - a[j]) * (b[i] - b[j]);
      s += (x > 0) - (x < 0);
    }
  }
  return 2.0 * static_cast<double>(s) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace revcal::testing

#endif  // REVCAL_TESTS_ORACLES_H_
