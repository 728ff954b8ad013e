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

#ifndef REVCAL_CONFERENCE_H_
#define REVCAL_CONFERENCE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "revcal/random.h"

namespace revcal {

using PaperId = std::size_t;
using AuthorId = std::size_t;
using ReviewerId = std::size_t;

// Finite distribution over positive integers.
struct DiscreteDistribution {
  std::vector<int> support;
  std::vector<double> weights;

  double Mean() const;
  int Min() const;
  int Max() const;
  // Throws ConfigError mentioning `name` if the distribution is malformed.
  void Validate(std::string_view name) const;
};

struct MultiplicityTarget {
  int threshold = 0;  // "authors with at least `threshold` papers"
  int count = 0;      // ... out of GenConfig::target_population authors

  friend bool operator==(const MultiplicityTarget&,
                         const MultiplicityTarget&) = default;
};

struct GenConfig {
  std::size_t n_papers = 6538;
  std::size_t n_authors = 18535;
  // Population size the multiplicity counts refer to. Counts are rescaled by
  // n_authors / target_population.
  std::size_t target_population = 18535;
  std::vector<MultiplicityTarget> author_multiplicity_targets = {
      {2, 4505}, {5, 508}, {10, 74}, {15, 26}};
  int max_papers_per_author = 40;
  DiscreteDistribution authors_per_paper_dist = {
      {1, 2, 3, 4, 5, 6, 7, 8},
      {0.05, 0.13, 0.21, 0.22, 0.18, 0.11, 0.06, 0.04}};
  DiscreteDistribution reviewers_per_paper_dist = {{3, 4}, {1.0, 1.0}};
  // Light loads: most reviewers see one or two papers. Heavier loads merge
  // the comparison graph into a few huge tiers and the reviewer-ranking
  // estimator loses most of its signal.
  DiscreteDistribution reviewer_capacity_dist = {{1, 2, 3}, {0.6, 0.25, 0.15}};
  // Reviewer pool is sized so expected capacity is this multiple of the
  // number of review slots. Ignored when n_reviewers is non-zero.
  double capacity_slack = 1.05;
  std::size_t n_reviewers = 0;
  double true_score_mean = 5.0;
  double true_score_sd = 0.9;
  int max_matching_retries = 32;
  std::uint64_t master_seed = 2023;

  // Throws ConfigError.
  void Validate() const;
};

struct Conference {
  std::vector<double> true_scores;
  // Per author, ascending paper ids.
  std::vector<std::vector<PaperId>> authorship;
  // Per reviewer, the assigned papers N_r in ascending order.
  std::vector<std::vector<PaperId>> assignment;
  // Per paper, ascending reviewer ids.
  std::vector<std::vector<ReviewerId>> reverse_assignment;

  std::size_t num_papers() const { return true_scores.size(); }
  std::size_t num_authors() const { return authorship.size(); }
  std::size_t num_reviewers() const { return assignment.size(); }

  // Checks the structural invariants; throws GenerationError on violation.
  void Validate() const;

  friend bool operator==(const Conference&, const Conference&) = default;
};

// Per-author paper counts. Authors are split into the bands implied by the
// thresholds with counts matching the targets (largest-remainder rounding
// after rescaling); values inside a band follow a truncated discrete power
// law whose exponent is fitted to the tail fractions. The returned vector is
// shuffled. Throws ConfigError on infeasible targets.
std::vector<int> SampleAuthorMultiplicities(const GenConfig& config, Rng& rng);

// Exponent alpha of the power law p(k) ~ k^-alpha fitted to the tail
// fractions of the targets; 2.0 when fewer than two thresholds are given.
double FitMultiplicityExponent(const std::vector<MultiplicityTarget>& targets);

// i.i.d. Normal(mean, sd) quality scores. sd == 0 yields exactly `mean`.
std::vector<double> GenTrueScores(std::size_t n, double mean, double sd, Rng& rng);

// Throws ConfigError or GenerationError.
Conference GenConference(const GenConfig& config, Rng& rng);

// Same as above with the conference stream derived from config.master_seed.
Conference GenConference(const GenConfig& config);

// Restores reverse_assignment from assignment.
void RebuildReverseAssignment(Conference& conference);

void to_json(nlohmann::json& j, const DiscreteDistribution& d);
void from_json(const nlohmann::json& j, DiscreteDistribution& d);
void to_json(nlohmann::json& j, const GenConfig& config);
// Missing keys keep their defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, GenConfig& config);
void to_json(nlohmann::json& j, const Conference& conference);
void from_json(const nlohmann::json& j, Conference& conference);

GenConfig LoadGenConfig(const std::string& path);
void SaveConference(const Conference& conference, const std::string& path);
Conference LoadConference(const std::string& path);

}  // namespace revcal

#endif  // REVCAL_CONFERENCE_H_
