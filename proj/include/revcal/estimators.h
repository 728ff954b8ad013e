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

#ifndef REVCAL_ESTIMATORS_H_
#define REVCAL_ESTIMATORS_H_

#include <span>
#include <string_view>
#include <vector>

#include "revcal/conference.h"
#include "revcal/sgp.h"

namespace revcal {

// One estimated quality per paper, indexed by paper id.
using EstimateVector = std::vector<double>;

enum class Method : int {
  kAverage = 0,
  kReviewerRanking = 1,
  kAuthorRanking = 2,
  kCombined = 3,
};

inline constexpr Method kAllMethods[] = {Method::kAverage, Method::kReviewerRanking,
                                         Method::kAuthorRanking, Method::kCombined};

std::string_view MethodName(Method method);   // "average", ...
std::string_view MethodLabel(Method method);  // human-readable row label
Method MethodFromName(std::string_view name);  // throws ConfigError

struct Owner {
  AuthorId author = 0;
  std::vector<PaperId> papers;  // best true score first

  friend bool operator==(const Owner&, const Owner&) = default;
};

// Disjoint assignment of papers to multi-paper authors. Authors are visited
// by descending submission count (ties by ascending id) and claim every paper
// no earlier author claimed; those left with fewer than two papers are
// dropped.
struct OwnerPartition {
  std::vector<Owner> owners;
};

// Mean final score per paper. Throws std::invalid_argument if some paper has
// no review.
EstimateVector AvgScores(const ScoreTable& final_scores, const Conference& conference);

// Peels hierarchical tiers from the reviewer rankings, orders papers tier by
// tier (average score inside a tier), projects `avg` onto that order and
// returns blend * projection + (1 - blend) * avg.
EstimateVector CalibrateReviewer(std::span<const double> avg,
                                 std::span<const ReviewerRanking> rankings,
                                 double blend = 0.5);

OwnerPartition BuildOwnerPartition(const Conference& conference);

// Replaces each owner's scores by their isotonic fit along the owner's true
// order, mixed with the input by `blend` (1 = full projection).
EstimateVector CalibrateAuthor(std::span<const double> scores,
                               const OwnerPartition& owners, double blend = 0.5);

EstimateVector CalibrateCombined(std::span<const double> avg,
                                 std::span<const ReviewerRanking> rankings,
                                 const OwnerPartition& owners,
                                 double reviewer_blend = 0.5,
                                 double author_blend = 0.5);

double Rmse(std::span<const double> estimate, std::span<const double> truth);

}  // namespace revcal

#endif  // REVCAL_ESTIMATORS_H_
