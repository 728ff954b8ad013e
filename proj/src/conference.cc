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

#include "revcal/conference.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "revcal/errors.h"

namespace revcal {
namespace {

// Draws from a validated DiscreteDistribution.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const DiscreteDistribution& d)
      : support_(d.support), dist_(d.weights.begin(), d.weights.end()) {}
  int operator()(Rng& rng) { return support_[dist_(rng)]; }

 private:
  std::vector<int> support_;
  std::discrete_distribution<std::size_t> dist_;
};

// Splits `total` items across bands proportionally to `masses` using
// largest-remainder rounding. Ties go to the earlier band.
std::vector<std::size_t> Apportion(std::size_t total,
                                   const std::vector<double>& masses) {
  std::vector<std::size_t> counts(masses.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < masses.size(); ++b) {
    const double exact = masses[b] * static_cast<double>(total);
    counts[b] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[b];
    remainders.emplace_back(exact - std::floor(exact), b);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total && k < remainders.size(); ++k) {
    ++counts[remainders[k].second];
    ++assigned;
  }
  return counts;
}

// Fills each group with group_sizes[g] distinct members taken from the
// shuffled pool; clashing draws are swapped with a later pool entry.
// Returns nullopt on a dead end.
std::optional<std::vector<std::vector<std::size_t>>> TryMatch(
    const std::vector<int>& group_sizes, std::vector<std::size_t>& pool,
    Rng& rng) {
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<std::vector<std::size_t>> groups(group_sizes.size());
  std::size_t k = 0;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    auto& members = groups[g];
    members.reserve(group_sizes[g]);
    for (int s = 0; s < group_sizes[g]; ++s, ++k) {
      auto taken = [&](std::size_t id) {
        return std::find(members.begin(), members.end(), id) != members.end();
      };
      if (taken(pool[k])) {
        std::size_t j = k + 1;
        while (j < pool.size() && taken(pool[j])) ++j;
        if (j == pool.size()) return std::nullopt;
        std::swap(pool[k], pool[j]);
      }
      members.push_back(pool[k]);
    }
    std::sort(members.begin(), members.end());
  }
  return groups;
}

std::vector<std::vector<std::size_t>> Match(const std::vector<int>& group_sizes,
                                            std::vector<std::size_t> pool,
                                            int max_retries, Rng& rng,
                                            const char* what) {
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    if (auto groups = TryMatch(group_sizes, pool, rng)) return *std::move(groups);
  }
  throw GenerationError(std::string("no duplicate-free ") + what +
                        " matching found after " +
                        std::to_string(max_retries + 1) + " attempts");
}

std::vector<std::vector<std::size_t>> Transpose(
    const std::vector<std::vector<std::size_t>>& groups, std::size_t n_members) {
  std::vector<std::vector<std::size_t>> out(n_members);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t m : groups[g]) out[m].push_back(g);
  }
  return out;
}

}  // namespace

double DiscreteDistribution::Mean() const {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double mean = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    mean += support[k] * weights[k] / total;
  }
  return mean;
}

int DiscreteDistribution::Min() const {
  return *std::min_element(support.begin(), support.end());
}

int DiscreteDistribution::Max() const {
  return *std::max_element(support.begin(), support.end());
}

void DiscreteDistribution::Validate(std::string_view name) const {
  const std::string n(name);
  if (support.empty()) throw ConfigError(n + ": empty support");
  if (support.size() != weights.size()) {
    throw ConfigError(n + ": support and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k] < 1) throw ConfigError(n + ": support must be positive integers");
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
      throw ConfigError(n + ": weights must be finite and non-negative");
    }
    total += weights[k];
  }
  if (!(total > 0.0)) throw ConfigError(n + ": weights sum to zero");
}

void GenConfig::Validate() const {
  if (n_papers < 1) throw ConfigError("n_papers must be at least 1");
  if (n_authors < 1) throw ConfigError("n_authors must be at least 1");
  if (target_population < 1) throw ConfigError("target_population must be at least 1");
  if (max_papers_per_author < 1) {
    throw ConfigError("max_papers_per_author must be at least 1");
  }
  authors_per_paper_dist.Validate("authors_per_paper_dist");
  reviewers_per_paper_dist.Validate("reviewers_per_paper_dist");
  reviewer_capacity_dist.Validate("reviewer_capacity_dist");
  if (!(true_score_sd > 0.0)) throw ConfigError("true_score_sd must be positive");
  if (!std::isfinite(true_score_mean)) throw ConfigError("true_score_mean must be finite");
  if (n_reviewers == 0 && !(capacity_slack >= 1.0)) {
    throw ConfigError("capacity_slack must be at least 1");
  }
  if (max_matching_retries < 0) throw ConfigError("max_matching_retries must be >= 0");
  int prev_threshold = 1;
  int prev_count = static_cast<int>(target_population);
  for (const auto& t : author_multiplicity_targets) {
    if (t.threshold <= prev_threshold) {
      throw ConfigError("author_multiplicity_targets: thresholds must be >= 2 and "
                        "strictly increasing");
    }
    if (t.count < 0 || t.count > prev_count) {
      throw ConfigError("author_multiplicity_targets: count " +
                        std::to_string(t.count) + " at threshold " +
                        std::to_string(t.threshold) +
                        " exceeds the count at the previous threshold");
    }
    prev_threshold = t.threshold;
    prev_count = t.count;
  }
}

double FitMultiplicityExponent(const std::vector<MultiplicityTarget>& targets) {
  if (targets.size() < 2 || targets.front().count <= 0) return 2.0;
  const double t0 = targets.front().threshold;
  const double c0 = targets.front().count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 1; k < targets.size(); ++k) {
    if (targets[k].count <= 0) continue;
    const double x = std::log(targets[k].threshold / t0);
    const double y = std::log(targets[k].count / c0);
    sxy += x * y;
    sxx += x * x;
  }
  if (sxx == 0.0) return 2.0;
  // Tail fraction of a discrete power law k^-alpha decays like t^(1-alpha).
  return 1.0 - sxy / sxx;
}

std::vector<int> SampleAuthorMultiplicities(const GenConfig& config, Rng& rng) {
  config.Validate();
  const int kmax = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(config.max_papers_per_author), config.n_papers));
  const auto& targets = config.author_multiplicity_targets;
  const double population = static_cast<double>(config.target_population);

  // Bands [lo, hi] with their probability mass.
  struct Band {
    int lo;
    int hi;
    double mass;
  };
  std::vector<Band> bands;
  int lo = 1;
  double above = 1.0;  // fraction of authors with >= lo papers
  for (const auto& t : targets) {
    const double tail = t.count / population;
    bands.push_back({lo, t.threshold - 1, above - tail});
    lo = t.threshold;
    above = tail;
  }
  bands.push_back({lo, kmax, above});
  for (const Band& b : bands) {
    if (b.mass > 0.0 && b.lo > std::min(b.hi, kmax)) {
      throw ConfigError("author_multiplicity_targets: threshold " +
                        std::to_string(b.lo) + " is unreachable with at most " +
                        std::to_string(kmax) + " papers per author");
    }
  }

  std::vector<double> masses;
  for (const Band& b : bands) masses.push_back(b.mass);
  const std::vector<std::size_t> counts = Apportion(config.n_authors, masses);

  const double alpha = FitMultiplicityExponent(targets);
  std::vector<int> multiplicities;
  multiplicities.reserve(config.n_authors);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    if (counts[b] == 0) continue;
    const int hi = std::min(bands[b].hi, kmax);
    std::vector<double> w;
    for (int k = bands[b].lo; k <= hi; ++k) w.push_back(std::pow(k, -alpha));
    std::discrete_distribution<int> dist(w.begin(), w.end());
    for (std::size_t a = 0; a < counts[b]; ++a) {
      multiplicities.push_back(bands[b].lo + dist(rng));
    }
  }
  std::shuffle(multiplicities.begin(), multiplicities.end(), rng);
  return multiplicities;
}

std::vector<double> GenTrueScores(std::size_t n, double mean, double sd, Rng& rng) {
  if (!(sd >= 0.0)) throw std::invalid_argument("true score sd must be >= 0");
  std::vector<double> scores(n, mean);
  if (sd == 0.0) return scores;
  std::normal_distribution<double> normal(mean, sd);
  for (double& s : scores) s = normal(rng);
  return scores;
}

Conference GenConference(const GenConfig& config, Rng& rng) {
  config.Validate();
  const std::size_t n = config.n_papers;
  Conference conf;
  conf.true_scores =
      GenTrueScores(n, config.true_score_mean, config.true_score_sd, rng);

  // Authorship: per-author multiplicities, then per-paper author counts
  // nudged so both sides of the bipartite graph have the same total.
  const std::vector<int> multiplicities = SampleAuthorMultiplicities(config, rng);
  const std::size_t author_slots =
      std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0});
  const int min_authors = config.authors_per_paper_dist.Min();
  const int max_authors = config.authors_per_paper_dist.Max();
  if (author_slots < n * min_authors || author_slots > n * max_authors) {
    throw ConfigError("authorship: " + std::to_string(author_slots) +
                      " author-paper slots cannot be spread over " +
                      std::to_string(n) + " papers with " +
                      std::to_string(min_authors) + ".." +
                      std::to_string(max_authors) + " authors each");
  }
  std::vector<int> authors_per_paper(n);
  {
    DiscreteSampler sample(config.authors_per_paper_dist);
    for (int& d : authors_per_paper) d = sample(rng);
    long long diff = static_cast<long long>(author_slots) -
                     std::accumulate(authors_per_paper.begin(),
                                     authors_per_paper.end(), 0LL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (diff != 0) {
      int& d = authors_per_paper[pick(rng)];
      if (diff > 0 && d < max_authors) {
        ++d;
        --diff;
      } else if (diff < 0 && d > min_authors) {
        --d;
        ++diff;
      }
    }
  }
  std::vector<std::size_t> author_pool;
  author_pool.reserve(author_slots);
  for (std::size_t a = 0; a < multiplicities.size(); ++a) {
    author_pool.insert(author_pool.end(), multiplicities[a], a);
  }
  const auto paper_authors = Match(authors_per_paper, std::move(author_pool),
                                   config.max_matching_retries, rng, "authorship");
  conf.authorship = Transpose(paper_authors, multiplicities.size());

  // Reviewer assignment.
  std::vector<int> reviewers_per_paper(n);
  {
    DiscreteSampler sample(config.reviewers_per_paper_dist);
    for (int& d : reviewers_per_paper) d = sample(rng);
  }
  const std::size_t review_slots = std::accumulate(
      reviewers_per_paper.begin(), reviewers_per_paper.end(), std::size_t{0});
  std::size_t n_reviewers = config.n_reviewers;
  if (n_reviewers == 0) {
    n_reviewers = static_cast<std::size_t>(
        std::ceil(config.capacity_slack * static_cast<double>(review_slots) /
                  config.reviewer_capacity_dist.Mean()));
  }
  std::vector<std::size_t> reviewer_pool;
  {
    DiscreteSampler sample(config.reviewer_capacity_dist);
    for (std::size_t r = 0; r < n_reviewers; ++r) {
      reviewer_pool.insert(reviewer_pool.end(), sample(rng), r);
    }
  }
  if (reviewer_pool.size() < review_slots) {
    throw GenerationError(
        "reviewer capacity " + std::to_string(reviewer_pool.size()) +
        " is below the " + std::to_string(review_slots) +
        " review slots (deficit " +
        std::to_string(review_slots - reviewer_pool.size()) + ")");
  }
  const auto paper_reviewers =
      Match(reviewers_per_paper, std::move(reviewer_pool),
            config.max_matching_retries, rng, "reviewer");
  auto assignment = Transpose(paper_reviewers, n_reviewers);
  // Reviewers left without papers are not part of the conference.
  std::erase_if(assignment, [](const auto& papers) { return papers.empty(); });
  conf.assignment = std::move(assignment);
  RebuildReverseAssignment(conf);
  return conf;
}

Conference GenConference(const GenConfig& config) {
  Rng rng = MakeStream(DeriveSeed(config.master_seed, StreamTag::kConference));
  return GenConference(config, rng);
}

void RebuildReverseAssignment(Conference& conference) {
  conference.reverse_assignment.assign(conference.num_papers(), {});
  for (ReviewerId r = 0; r < conference.assignment.size(); ++r) {
    for (PaperId p : conference.assignment[r]) {
      if (p >= conference.num_papers()) {
        throw GenerationError("reviewer " + std::to_string(r) +
                              " holds unknown paper " + std::to_string(p));
      }
      conference.reverse_assignment[p].push_back(r);
    }
  }
}

void Conference::Validate() const {
  const std::size_t n = num_papers();
  std::vector<bool> authored(n, false);
  for (AuthorId a = 0; a < authorship.size(); ++a) {
    for (PaperId p : authorship[a]) {
      if (p >= n) {
        throw GenerationError("author " + std::to_string(a) +
                              " lists unknown paper " + std::to_string(p));
      }
      authored[p] = true;
    }
  }
  std::size_t forward = 0;
  for (ReviewerId r = 0; r < assignment.size(); ++r) {
    const std::set<PaperId> unique(assignment[r].begin(), assignment[r].end());
    if (unique.size() != assignment[r].size()) {
      throw GenerationError("reviewer " + std::to_string(r) +
                            " holds a paper twice");
    }
    forward += assignment[r].size();
  }
  if (reverse_assignment.size() != n) {
    throw GenerationError("reverse assignment has the wrong length");
  }
  std::size_t backward = 0;
  for (PaperId p = 0; p < n; ++p) {
    if (!authored[p]) throw GenerationError("paper " + std::to_string(p) + " has no author");
    if (reverse_assignment[p].empty()) {
      throw GenerationError("paper " + std::to_string(p) + " has no reviewer");
    }
    for (ReviewerId r : reverse_assignment[p]) {
      if (r >= assignment.size() ||
          !std::binary_search(assignment[r].begin(), assignment[r].end(), p)) {
        throw GenerationError("reverse assignment of paper " + std::to_string(p) +
                              " disagrees with the forward assignment");
      }
    }
    backward += reverse_assignment[p].size();
  }
  if (forward != backward) {
    throw GenerationError("assignment totals disagree: " + std::to_string(forward) +
                          " vs " + std::to_string(backward));
  }
}

// JSON ----------------------------------------------------------------------

void to_json(nlohmann::json& j, const DiscreteDistribution& d) {
  j = nlohmann::json{{"support", d.support}, {"weights", d.weights}};
}

void from_json(const nlohmann::json& j, DiscreteDistribution& d) {
  j.at("support").get_to(d.support);
  j.at("weights").get_to(d.weights);
}

void to_json(nlohmann::json& j, const GenConfig& c) {
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : c.author_multiplicity_targets) {
    targets.push_back({t.threshold, t.count});
  }
  j = nlohmann::json{
      {"n_papers", c.n_papers},
      {"n_authors", c.n_authors},
      {"target_population", c.target_population},
      {"author_multiplicity_targets", targets},
      {"max_papers_per_author", c.max_papers_per_author},
      {"authors_per_paper_dist", c.authors_per_paper_dist},
      {"reviewers_per_paper_dist", c.reviewers_per_paper_dist},
      {"reviewer_capacity_dist", c.reviewer_capacity_dist},
      {"capacity_slack", c.capacity_slack},
      {"n_reviewers", c.n_reviewers},
      {"true_score_mean", c.true_score_mean},
      {"true_score_sd", c.true_score_sd},
      {"max_matching_retries", c.max_matching_retries},
      {"master_seed", c.master_seed},
  };
}

void from_json(const nlohmann::json& j, GenConfig& c) {
  if (!j.is_object()) throw ConfigError("generator config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n_papers") value.get_to(c.n_papers);
      else if (key == "n_authors") value.get_to(c.n_authors);
      else if (key == "target_population") value.get_to(c.target_population);
      else if (key == "author_multiplicity_targets") {
        c.author_multiplicity_targets.clear();
        // [threshold, count] pairs, or {"threshold": .., "count": ..}.
        for (const auto& t : value) {
          if (t.is_object()) {
            c.author_multiplicity_targets.push_back(
                {t.at("threshold").get<int>(), t.at("count").get<int>()});
          } else {
            c.author_multiplicity_targets.push_back({t.at(0).get<int>(), t.at(1).get<int>()});
          }
        }
      } else if (key == "max_papers_per_author") value.get_to(c.max_papers_per_author);
      else if (key == "authors_per_paper_dist") value.get_to(c.authors_per_paper_dist);
      else if (key == "reviewers_per_paper_dist") value.get_to(c.reviewers_per_paper_dist);
      else if (key == "reviewer_capacity_dist") value.get_to(c.reviewer_capacity_dist);
      else if (key == "capacity_slack") value.get_to(c.capacity_slack);
      else if (key == "n_reviewers") value.get_to(c.n_reviewers);
      else if (key == "true_score_mean") value.get_to(c.true_score_mean);
      else if (key == "true_score_sd") value.get_to(c.true_score_sd);
      else if (key == "max_matching_retries") value.get_to(c.max_matching_retries);
      else if (key == "master_seed") value.get_to(c.master_seed);
      else throw ConfigError("unknown generator config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const Conference& c) {
  j = nlohmann::json{{"true_scores", c.true_scores},
                     {"authorship", c.authorship},
                     {"assignment", c.assignment}};
}

void from_json(const nlohmann::json& j, Conference& c) {
  j.at("true_scores").get_to(c.true_scores);
  j.at("authorship").get_to(c.authorship);
  j.at("assignment").get_to(c.assignment);
  RebuildReverseAssignment(c);
  c.Validate();
}

GenConfig LoadGenConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open generator config");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  GenConfig config = j.get<GenConfig>();
  config.Validate();
  return config;
}

void SaveConference(const Conference& conference, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot write conference");
  out << nlohmann::json(conference).dump() << '\n';
  if (!out) throw IoError(path, "cannot write conference");
}

Conference LoadConference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open conference");
  nlohmann::json j;
  in >> j;
  return j.get<Conference>();
}

}  // namespace revcal
