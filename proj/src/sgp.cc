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

#include "revcal/sgp.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "revcal/errors.h"
#include "revcal/isotonic.h"

namespace revcal {
namespace {

std::string Canonical(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

void CheckPermutation(std::size_t n, std::span<const std::size_t> perm) {
  if (perm.size() != n) {
    throw std::invalid_argument("ranking length " + std::to_string(perm.size()) +
                                " does not match " + std::to_string(n) + " items");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i : perm) {
    if (i >= n || seen[i]) {
      throw std::invalid_argument("ranking is not a permutation");
    }
    seen[i] = true;
  }
}

}  // namespace

std::string_view NoiseScaleName(NoiseScale scale) {
  return scale == NoiseScale::kVariance ? "variance" : "sd";
}

NoiseScale NoiseScaleFromName(std::string_view name) {
  const std::string key = Canonical(name);
  if (key == "variance" || key == "var") return NoiseScale::kVariance;
  if (key == "sd" || key == "standarddeviation") return NoiseScale::kStandardDeviation;
  throw ConfigError("unknown noise scale '" + std::string(name) +
                    "' (expected variance or sd)");
}

std::string_view NoiseCase::name() const {
  switch (id) {
    case NoiseCaseId::kBase: return "Base";
    case NoiseCaseId::kNoBias: return "NoBias";
    case NoiseCaseId::kNoVariance: return "NoVariance";
    case NoiseCaseId::kBigBias: return "BigBias";
    case NoiseCaseId::kBigVariance: return "BigVariance";
  }
  return "Unknown";
}

NoiseCase NoiseCase::FromId(NoiseCaseId id) {
  switch (id) {
    case NoiseCaseId::kBase: return {id, 2.0, 1.0, 1.0};
    case NoiseCaseId::kNoBias: return {id, 0.0, 1.0, 1.0};
    case NoiseCaseId::kNoVariance: return {id, 2.0, 1.0, 0.0};
    case NoiseCaseId::kBigBias: return {id, 3.0, 1.0, 1.0};
    case NoiseCaseId::kBigVariance: return {id, 2.0, 1.0, 1.5};
  }
  throw ConfigError("unknown noise case id");
}

NoiseCase NoiseCase::FromName(std::string_view name) {
  const std::string key = Canonical(name);
  for (const NoiseCase& c : All()) {
    if (Canonical(c.name()) == key) return c;
  }
  if (key == "novar") return FromId(NoiseCaseId::kNoVariance);
  if (key == "bigvar") return FromId(NoiseCaseId::kBigVariance);
  throw ConfigError("unknown noise case '" + std::string(name) +
                    "' (expected Base, NoBias, NoVariance, BigBias, BigVariance)");
}

std::array<NoiseCase, 5> NoiseCase::All() {
  return {FromId(NoiseCaseId::kBase), FromId(NoiseCaseId::kNoBias),
          FromId(NoiseCaseId::kNoVariance), FromId(NoiseCaseId::kBigBias),
          FromId(NoiseCaseId::kBigVariance)};
}

ScoreTable::ScoreTable(const Conference& conference) {
  rows_.resize(conference.num_reviewers());
  for (ReviewerId r = 0; r < rows_.size(); ++r) {
    rows_[r].reserve(conference.assignment[r].size());
    for (PaperId p : conference.assignment[r]) rows_[r].push_back({p, 0.0});
  }
}

double ScoreTable::at(ReviewerId r, PaperId paper) const {
  if (r >= rows_.size()) throw std::out_of_range("unknown reviewer");
  for (const ScoreEntry& e : rows_[r]) {
    if (e.paper == paper) return e.score;
  }
  throw std::out_of_range("paper " + std::to_string(paper) +
                          " is not assigned to reviewer " + std::to_string(r));
}

bool operator==(const ScoreTable& a, const ScoreTable& b) {
  if (a.rows_.size() != b.rows_.size()) return false;
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    if (a.rows_[r].size() != b.rows_[r].size()) return false;
    for (std::size_t k = 0; k < a.rows_[r].size(); ++k) {
      if (a.rows_[r][k].paper != b.rows_[r][k].paper ||
          a.rows_[r][k].score != b.rows_[r][k].score) {
        return false;
      }
    }
  }
  return true;
}

std::vector<ReviewerParams> GenReviewerParams(const NoiseCase& noise_case,
                                              std::size_t n_reviewers, Rng& rng) {
  std::vector<ReviewerParams> params(n_reviewers);
  const double h = noise_case.bias_halfwidth;
  if (h > 0.0) {
    std::uniform_real_distribution<double> bias(-h, h);
    for (auto& p : params) p.bias = bias(rng);
  }
  if (noise_case.gamma_scale > 0.0) {
    std::gamma_distribution<double> noise(noise_case.gamma_shape,
                                          noise_case.gamma_scale);
    for (auto& p : params) {
      const double g = noise(rng);
      p.noise_sd = noise_case.scale == NoiseScale::kVariance ? std::sqrt(g) : g;
    }
  }
  return params;
}

ScoreTable RawScores(const Conference& conference,
                     std::span<const ReviewerParams> params, std::uint64_t seed) {
  if (params.size() != conference.num_reviewers()) {
    throw std::invalid_argument("one ReviewerParams per reviewer is required");
  }
  ScoreTable table(conference);
  std::normal_distribution<double> standard(0.0, 1.0);
  for (ReviewerId r = 0; r < table.num_reviewers(); ++r) {
    Rng rng = MakeStream(DeriveSeed(seed, StreamTag::kRawScores, {r}));
    standard.reset();
    for (ScoreEntry& e : table.row(r)) {
      const double z = standard(rng);
      e.score = conference.true_scores[e.paper] + params[r].bias +
                params[r].noise_sd * z;
    }
  }
  return table;
}

double PlRankingProb(std::span<const double> theta,
                     std::span<const std::size_t> perm) {
  if (theta.empty()) throw std::invalid_argument("empty utility vector");
  CheckPermutation(theta.size(), perm);
  const double shift = *std::max_element(theta.begin(), theta.end());
  const std::size_t n = perm.size();
  std::vector<double> weight(n);
  for (std::size_t k = 0; k < n; ++k) weight[k] = std::exp(theta[perm[k]] - shift);
  // suffix[k] = sum of weights of items still available at step k.
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + weight[k];
  double prob = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) prob *= weight[k] / suffix[k];
  return prob;
}

std::vector<std::size_t> SamplePlRanking(std::span<const double> theta, Rng& rng) {
  std::vector<std::size_t> remaining(theta.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<std::size_t> order;
  order.reserve(theta.size());
  std::vector<double> weight;
  while (remaining.size() > 1) {
    double shift = theta[remaining[0]];
    for (std::size_t i : remaining) shift = std::max(shift, theta[i]);
    weight.clear();
    double total = 0.0;
    for (std::size_t i : remaining) {
      weight.push_back(std::exp(theta[i] - shift));
      total += weight.back();
    }
    const double u = std::generate_canonical<double, 53>(rng) * total;
    std::size_t pick = remaining.size() - 1;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      cumulative += weight[k];
      if (u < cumulative) {
        pick = k;
        break;
      }
    }
    order.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  if (!remaining.empty()) order.push_back(remaining.front());
  return order;
}

std::vector<double> ProjectScoresToRanking(std::span<const double> raw,
                                           std::span<const std::size_t> perm) {
  return IsotonicProjectIndexed(raw, perm, 1.0);
}

SgpDraw GenerateFinalScores(const Conference& conference,
                            const NoiseCase& noise_case, std::uint64_t seed) {
  SgpDraw draw;
  Rng param_rng = MakeStream(DeriveSeed(seed, StreamTag::kReviewerParams));
  draw.params = GenReviewerParams(noise_case, conference.num_reviewers(), param_rng);
  draw.raw_scores = RawScores(conference, draw.params, seed);
  draw.final_scores = draw.raw_scores;
  draw.rankings.resize(conference.num_reviewers());

  std::vector<double> theta;
  std::vector<double> raw;
  for (ReviewerId r = 0; r < conference.num_reviewers(); ++r) {
    auto row = draw.final_scores.row(r);
    theta.clear();
    raw.clear();
    for (const ScoreEntry& e : row) {
      theta.push_back(conference.true_scores[e.paper]);
      raw.push_back(e.score);
    }
    Rng rng = MakeStream(DeriveSeed(seed, StreamTag::kRankings, {r}));
    const std::vector<std::size_t> perm = SamplePlRanking(theta, rng);
    const std::vector<double> projected = ProjectScoresToRanking(raw, perm);

    ReviewerRanking& ranking = draw.rankings[r];
    ranking.reviewer = r;
    ranking.order.reserve(perm.size());
    for (std::size_t k : perm) ranking.order.push_back(row[k].paper);
    for (std::size_t k = 0; k < row.size(); ++k) row[k].score = projected[k];
  }
  return draw;
}

void to_json(nlohmann::json& j, const ScoreTable& table) {
  j = nlohmann::json::array();
  for (ReviewerId r = 0; r < table.num_reviewers(); ++r) {
    for (const ScoreEntry& e : table.row(r)) {
      j.push_back({{"reviewer", r}, {"paper", e.paper}, {"score", e.score}});
    }
  }
}

void to_json(nlohmann::json& j, const ReviewerRanking& ranking) {
  j = nlohmann::json{{"reviewer", ranking.reviewer}, {"order", ranking.order}};
}

void from_json(const nlohmann::json& j, ReviewerRanking& ranking) {
  j.at("reviewer").get_to(ranking.reviewer);
  j.at("order").get_to(ranking.order);
}

}  // namespace revcal
