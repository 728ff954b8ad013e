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

#ifndef REVCAL_RANK_AGGREGATION_H_
#define REVCAL_RANK_AGGREGATION_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "revcal/conference.h"
#include "revcal/sgp.h"

namespace revcal {

// Sorted, duplicate-free list of paper ids.
using PaperSet = std::vector<PaperId>;

PaperSet AllPapers(std::size_t n_papers);

// Multiset of pairwise outcomes. Each comparison between i and j increments
// exactly one of wins(i, j) and wins(j, i).
class ComparisonGraph {
 public:
  struct Edge {
    PaperId winner;
    PaperId loser;
    int count;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  ComparisonGraph() = default;
  // Aggregates (winner, loser) outcomes. Self-comparisons are rejected with
  // std::invalid_argument.
  explicit ComparisonGraph(std::vector<std::pair<PaperId, PaperId>> outcomes);
  // Same graph from pre-aggregated counts; repeated (winner, loser) entries
  // are summed and zero counts dropped. Negative counts and self-comparisons
  // raise std::invalid_argument.
  static ComparisonGraph FromCounts(std::vector<Edge> edges);

  // Number of times i beat j.
  int wins(PaperId i, PaperId j) const;
  int losses(PaperId i) const;
  // Number of distinct opponents of i.
  int degree(PaperId i) const;
  std::size_t total_comparisons() const { return total_; }
  // Sorted by (winner, loser).
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  void Finish(std::vector<Edge> edges);

  std::vector<Edge> edges_;
  std::vector<int> losses_;
  std::vector<int> degree_;
  std::size_t total_ = 0;
};

// Every ordered pair (i above j) inside a reviewer ranking with both papers
// active contributes one win for i. A ranking over R active papers yields
// R(R-1)/2 comparisons.
ComparisonGraph ExtractPairwise(std::span<const ReviewerRanking> rankings,
                                const PaperSet& active);

// Row-stochastic chain over the active papers. From state i the walk moves
// to j with probability wins(j, i) / (d_max * max(1, n_ij)) where n_ij counts
// all i-vs-j comparisons and d_max is the largest number of distinct
// opponents of any active paper; the rest of the mass stays on i.
struct TransitionMatrix {
  PaperSet papers;  // state k is papers[k]
  std::vector<std::vector<std::pair<std::size_t, double>>> off_diagonal;
  std::vector<double> diagonal;

  std::size_t size() const { return papers.size(); }
  double at(std::size_t from, std::size_t to) const;

  // Builds a chain from dense row-major probabilities; diagonal entries are
  // recomputed so each row sums to one.
  static TransitionMatrix FromDense(const std::vector<std::vector<double>>& rows);
};

TransitionMatrix BuildTransitionMatrix(const ComparisonGraph& graph,
                                       const PaperSet& active);

// Power iteration on the lazy chain (P + I) / 2, which shares its stationary
// law with P. A reducible chain is restricted to its largest closed
// communicating class (ties: lowest state index) and pi is zero elsewhere.
// Iteration stops once the L1 residual |pi P - pi| drops below `tol`; the
// error to the true fixed point is bounded by that residual over the
// spectral gap, so slowly mixing chains need a smaller tol for the same
// accuracy. Throws ConvergenceError carrying the residual when max_iter is
// hit.
std::vector<double> StationaryDistribution(const TransitionMatrix& chain,
                                           double tol = 1e-10,
                                           std::size_t max_iter = 100000);

PaperSet FindNeverLosers(const ComparisonGraph& graph, const PaperSet& active);

struct TierDecomposition {
  std::vector<PaperSet> tiers;  // G_1 first

  friend bool operator==(const TierDecomposition&, const TierDecomposition&) = default;
};

// Repeatedly peels off the papers that never lose among the papers still
// remaining, rebuilding the comparisons for the remainder each round. When a
// round finds no never-loser the remainder becomes the last tier.
TierDecomposition HierarchicalTiers(std::span<const ReviewerRanking> rankings,
                                    const PaperSet& all_papers);

// Tier by tier, and inside a tier by descending average (ties by ascending
// paper id).
std::vector<PaperId> FullRanking(const TierDecomposition& tiers,
                                 std::span<const double> avg_scores);

// Kendall's tau-a between two score vectors over the same items.
double KendallTau(std::span<const double> a, std::span<const double> b);

void to_json(nlohmann::json& j, const TierDecomposition& tiers);
void from_json(const nlohmann::json& j, TierDecomposition& tiers);

}  // namespace revcal

#endif  // REVCAL_RANK_AGGREGATION_H_
