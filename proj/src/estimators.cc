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

#include "revcal/estimators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "revcal/errors.h"
#include "revcal/isotonic.h"
#include "revcal/rank_aggregation.h"

namespace revcal {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kAverage: return "average";
    case Method::kReviewerRanking: return "reviewer_ranking";
    case Method::kAuthorRanking: return "author_ranking";
    case Method::kCombined: return "combined";
  }
  return "unknown";
}

std::string_view MethodLabel(Method method) {
  switch (method) {
    case Method::kAverage: return "1. Average scores";
    case Method::kReviewerRanking: return "2. Reviewer rankings";
    case Method::kAuthorRanking: return "3. Author rankings";
    case Method::kCombined: return "4. Reviewer + author rankings";
  }
  return "unknown";
}

Method MethodFromName(std::string_view name) {
  for (Method m : kAllMethods) {
    if (MethodName(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

EstimateVector AvgScores(const ScoreTable& final_scores, const Conference& conference) {
  const std::size_t n = conference.num_papers();
  std::vector<double> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (ReviewerId r = 0; r < final_scores.num_reviewers(); ++r) {
    for (const ScoreEntry& e : final_scores.row(r)) {
      sum[e.paper] += e.score;
      ++count[e.paper];
    }
  }
  EstimateVector avg(n);
  for (PaperId p = 0; p < n; ++p) {
    if (count[p] == 0) {
      throw std::invalid_argument("paper " + std::to_string(p) + " has no review");
    }
    avg[p] = sum[p] / count[p];
  }
  return avg;
}

EstimateVector CalibrateReviewer(std::span<const double> avg,
                                 std::span<const ReviewerRanking> rankings,
                                 double blend) {
  const TierDecomposition tiers = HierarchicalTiers(rankings, AllPapers(avg.size()));
  const std::vector<PaperId> order = FullRanking(tiers, avg);
  return IsotonicProjectIndexed(avg, order, blend);
}

OwnerPartition BuildOwnerPartition(const Conference& conference) {
  std::vector<AuthorId> authors(conference.num_authors());
  std::iota(authors.begin(), authors.end(), AuthorId{0});
  std::stable_sort(authors.begin(), authors.end(), [&](AuthorId a, AuthorId b) {
    return conference.authorship[a].size() > conference.authorship[b].size();
  });

  std::vector<bool> claimed(conference.num_papers(), false);
  OwnerPartition partition;
  for (AuthorId a : authors) {
    const auto& papers = conference.authorship[a];
    if (papers.size() < 2) break;  // sorted: nobody after this has two papers
    Owner owner{a, {}};
    for (PaperId p : papers) {
      if (!claimed[p]) owner.papers.push_back(p);
    }
    if (owner.papers.size() < 2) continue;
    for (PaperId p : owner.papers) claimed[p] = true;
    std::sort(owner.papers.begin(), owner.papers.end(), [&](PaperId x, PaperId y) {
      const double tx = conference.true_scores[x];
      const double ty = conference.true_scores[y];
      return tx != ty ? tx > ty : x < y;
    });
    partition.owners.push_back(std::move(owner));
  }
  return partition;
}

EstimateVector CalibrateAuthor(std::span<const double> scores,
                               const OwnerPartition& owners, double blend) {
  EstimateVector out(scores.begin(), scores.end());
  std::vector<double> local;
  std::vector<std::size_t> order;
  for (const Owner& owner : owners.owners) {
    local.clear();
    order.clear();
    for (PaperId p : owner.papers) {
      if (p >= scores.size()) {
        throw std::invalid_argument("owner references unknown paper " + std::to_string(p));
      }
      order.push_back(local.size());
      local.push_back(scores[p]);
    }
    const std::vector<double> fitted = IsotonicProjectIndexed(local, order, blend);
    for (std::size_t k = 0; k < owner.papers.size(); ++k) out[owner.papers[k]] = fitted[k];
  }
  return out;
}

EstimateVector CalibrateCombined(std::span<const double> avg,
                                 std::span<const ReviewerRanking> rankings,
                                 const OwnerPartition& owners,
                                 double reviewer_blend, double author_blend) {
  return CalibrateAuthor(CalibrateReviewer(avg, rankings, reviewer_blend), owners,
                         author_blend);
}

double Rmse(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size()) {
    throw std::invalid_argument("rmse: estimate has " + std::to_string(estimate.size()) +
                                " entries, truth has " + std::to_string(truth.size()));
  }
  if (estimate.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double d = estimate[i] - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(estimate.size()));
}

}  // namespace revcal
