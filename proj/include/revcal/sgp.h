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

#ifndef REVCAL_SGP_H_
#define REVCAL_SGP_H_

// Score-generating process: every reviewer draws biased noisy raw scores,
// samples a Plackett-Luce ranking of their papers from the true qualities,
// and reports the isotonic projection of the raw scores onto that ranking.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "revcal/conference.h"
#include "revcal/random.h"

namespace revcal {

struct ReviewerParams {
  double bias = 0.0;
  double noise_sd = 0.0;  // standard deviation, not variance
};

enum class NoiseCaseId : int {
  kBase = 0,
  kNoBias = 1,
  kNoVariance = 2,
  kBigBias = 3,
  kBigVariance = 4,
};

// What the Gamma draw for a reviewer's noise level stands for. With
// kVariance the draw is sigma_r^2 and the noise sd is its square root, which
// is how Normal(mean, sigma^2) notation reads. kStandardDeviation uses the
// draw as sigma_r directly.
enum class NoiseScale : int {
  kVariance = 0,
  kStandardDeviation = 1,
};

std::string_view NoiseScaleName(NoiseScale scale);
// "variance" or "sd"; throws ConfigError otherwise.
NoiseScale NoiseScaleFromName(std::string_view name);

// Bias ~ Uniform(-bias_halfwidth, bias_halfwidth) and
// g ~ Gamma(shape = gamma_shape, scale = gamma_scale), with noise_sd = sqrt(g)
// or g depending on `scale`. A zero half-width or zero Gamma scale makes the
// corresponding draw exactly zero.
struct NoiseCase {
  NoiseCaseId id = NoiseCaseId::kBase;
  double bias_halfwidth = 2.0;
  double gamma_shape = 1.0;
  double gamma_scale = 1.0;
  NoiseScale scale = NoiseScale::kVariance;

  std::string_view name() const;

  // Accepts "Base", "NoBias", "No-Bias", "no_variance", ... (case and
  // separators are ignored). Throws ConfigError for anything else.
  static NoiseCase FromName(std::string_view name);
  static NoiseCase FromId(NoiseCaseId id);
  static std::array<NoiseCase, 5> All();
};

struct ScoreEntry {
  PaperId paper;
  double score;
};

// Sparse reviewer x paper scores, laid out along the conference assignment.
class ScoreTable {
 public:
  ScoreTable() = default;
  // Zero-filled table on the assignment support of `conference`.
  explicit ScoreTable(const Conference& conference);

  std::size_t num_reviewers() const { return rows_.size(); }
  std::span<ScoreEntry> row(ReviewerId r) { return rows_[r]; }
  std::span<const ScoreEntry> row(ReviewerId r) const { return rows_[r]; }
  // Throws std::out_of_range if (r, paper) is outside the support.
  double at(ReviewerId r, PaperId paper) const;

  friend bool operator==(const ScoreTable&, const ScoreTable&);

 private:
  std::vector<std::vector<ScoreEntry>> rows_;
};

// Reviewer's sampled preference order, best first.
struct ReviewerRanking {
  ReviewerId reviewer = 0;
  std::vector<PaperId> order;

  friend bool operator==(const ReviewerRanking&, const ReviewerRanking&) = default;
};

std::vector<ReviewerParams> GenReviewerParams(const NoiseCase& noise_case,
                                              std::size_t n_reviewers, Rng& rng);

// S~_{r,i} ~ Normal(theta*_i + b_r, sigma_r). Reviewer r draws from the
// stream DeriveSeed(seed, kRawScores, {r}), so the table does not depend on
// the order in which reviewers are processed.
ScoreTable RawScores(const Conference& conference,
                     std::span<const ReviewerParams> params, std::uint64_t seed);

// Probability of `perm` (indices into theta, best first) under the
// Plackett-Luce model with utilities theta. Throws std::invalid_argument if
// perm is not a permutation of theta's indices or theta is empty.
double PlRankingProb(std::span<const double> theta,
                     std::span<const std::size_t> perm);

// Sequential sampling without replacement with weights exp(theta).
std::vector<std::size_t> SamplePlRanking(std::span<const double> theta, Rng& rng);

// Least-squares projection of `raw` onto vectors non-increasing along perm.
std::vector<double> ProjectScoresToRanking(std::span<const double> raw,
                                           std::span<const std::size_t> perm);

struct SgpDraw {
  ScoreTable final_scores;
  ScoreTable raw_scores;
  std::vector<ReviewerRanking> rankings;  // indexed by reviewer id
  std::vector<ReviewerParams> params;
};

// Runs the three steps for every reviewer. All randomness is derived from
// `seed`: reviewer parameters from (seed, kReviewerParams), raw scores from
// (seed, kRawScores, r) and rankings from (seed, kRankings, r).
SgpDraw GenerateFinalScores(const Conference& conference,
                            const NoiseCase& noise_case, std::uint64_t seed);

void to_json(nlohmann::json& j, const ScoreTable& table);
void to_json(nlohmann::json& j, const ReviewerRanking& ranking);
void from_json(const nlohmann::json& j, ReviewerRanking& ranking);

}  // namespace revcal

#endif  // REVCAL_SGP_H_
