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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "fixtures.h"
#include "revcal/errors.h"

namespace revcal {
namespace {

std::size_t CountAtLeast(const std::vector<int>& m, int k) {
  return static_cast<std::size_t>(
      std::count_if(m.begin(), m.end(), [k](int v) { return v >= k; }));
}

TEST(MultiplicityTest, DefaultTargetsAreHitExactly) {
  const GenConfig config;
  Rng rng = MakeStream(1);
  const auto m = SampleAuthorMultiplicities(config, rng);
  ASSERT_EQ(m.size(), config.n_authors);
  for (const auto& t : config.author_multiplicity_targets) {
    EXPECT_EQ(CountAtLeast(m, t.threshold), static_cast<std::size_t>(t.count))
        << "threshold " << t.threshold;
  }
  EXPECT_GE(*std::min_element(m.begin(), m.end()), 1);
  EXPECT_LE(*std::max_element(m.begin(), m.end()), config.max_papers_per_author);
}

TEST(MultiplicityTest, TargetsRescaleWithPopulation) {
  GenConfig config;
  config.n_authors = config.target_population / 2;
  Rng rng = MakeStream(2);
  const auto m = SampleAuthorMultiplicities(config, rng);
  ASSERT_EQ(m.size(), config.n_authors);
  EXPECT_NEAR(static_cast<double>(CountAtLeast(m, 2)), 4505 / 2.0, 1.0);
  EXPECT_NEAR(static_cast<double>(CountAtLeast(m, 5)), 508 / 2.0, 1.0);
}

TEST(MultiplicityTest, FittedExponent) {
  const double alpha = FitMultiplicityExponent(GenConfig{}.author_multiplicity_targets);
  EXPECT_GT(alpha, 3.0);
  EXPECT_LT(alpha, 4.0);
  EXPECT_EQ(FitMultiplicityExponent({{2, 10}}), 2.0);
  EXPECT_EQ(FitMultiplicityExponent({}), 2.0);
  // Exact power-law tail: counts t^(1-alpha) give back alpha.
  const double a = 2.5;
  std::vector<MultiplicityTarget> exact;
  for (int t : {2, 4, 8, 16}) {
    exact.push_back({t, static_cast<int>(std::lround(1e6 * std::pow(t, 1 - a)))});
  }
  EXPECT_NEAR(FitMultiplicityExponent(exact), a, 1e-4);
}

TEST(TrueScoresTest, ZeroSdAndBadSd) {
  Rng rng = MakeStream(1);
  EXPECT_EQ(GenTrueScores(4, 5.0, 0.0, rng), std::vector<double>(4, 5.0));
  EXPECT_THROW(GenTrueScores(4, 5.0, -1.0, rng), std::invalid_argument);
  const auto s = GenTrueScores(100000, 5.0, 0.9, rng);
  double mean = 0.0, var = 0.0;
  for (double v : s) mean += v / s.size();
  for (double v : s) var += (v - mean) * (v - mean) / (s.size() - 1);
  EXPECT_NEAR(mean, 5.0, 0.02);
  EXPECT_NEAR(std::sqrt(var), 0.9, 0.02);
}

TEST(GenConferenceTest, StructuralInvariants) {
  const GenConfig config = testing::SmallGenConfig();
  const Conference c = GenConference(config);
  EXPECT_NO_THROW(c.Validate());
  ASSERT_EQ(c.num_papers(), config.n_papers);
  EXPECT_EQ(c.num_authors(), config.n_authors);
  std::vector<int> authors_of(c.num_papers(), 0);
  for (const auto& papers : c.authorship) {
    EXPECT_TRUE(std::is_sorted(papers.begin(), papers.end()));
    EXPECT_EQ(std::set<PaperId>(papers.begin(), papers.end()).size(), papers.size());
    for (PaperId p : papers) ++authors_of[p];
  }
  for (int a : authors_of) {
    EXPECT_GE(a, 1);
    EXPECT_LE(a, 8);
  }
  for (PaperId p = 0; p < c.num_papers(); ++p) {
    const auto& rs = c.reverse_assignment[p];
    EXPECT_TRUE(rs.size() == 3 || rs.size() == 4) << "paper " << p;
  }
  for (const auto& load : c.assignment) {
    EXPECT_GE(load.size(), 1u);
    EXPECT_LE(load.size(), 3u);
    EXPECT_EQ(std::set<PaperId>(load.begin(), load.end()).size(), load.size());
  }
}

TEST(GenConferenceTest, DeterministicPerSeed) {
  EXPECT_EQ(testing::SmallConference(3), testing::SmallConference(3));
  EXPECT_NE(testing::SmallConference(3).true_scores, testing::SmallConference(4).true_scores);
}

TEST(GenConferenceTest, ValidateCatchesBrokenReverseIndex) {
  Conference c = testing::SmallConference();
  c.reverse_assignment[0].push_back(c.num_reviewers() + 5);
  EXPECT_THROW(c.Validate(), GenerationError);
  RebuildReverseAssignment(c);
  EXPECT_NO_THROW(c.Validate());
}

TEST(GenConferenceTest, CapacityDeficitIsAGenerationError) {
  GenConfig config = testing::SmallGenConfig();
  config.n_reviewers = 20;  // at most 60 review slots for ~1000 needed
  try {
    GenConference(config);
    FAIL() << "expected GenerationError";
  } catch (const GenerationError& e) {
    EXPECT_NE(std::string(e.what()).find("deficit"), std::string::npos);
  }
}

TEST(GenConfigTest, ValidationErrors) {
  auto expect_config_error = [](auto mutate) {
    GenConfig config = testing::SmallGenConfig();
    mutate(config);
    EXPECT_THROW(config.Validate(), ConfigError);
  };
  expect_config_error([](GenConfig& c) { c.n_papers = 0; });
  expect_config_error([](GenConfig& c) { c.n_authors = 0; });
  expect_config_error([](GenConfig& c) { c.true_score_sd = 0.0; });
  expect_config_error([](GenConfig& c) { c.true_score_sd = -1.0; });
  expect_config_error([](GenConfig& c) { c.capacity_slack = 0.5; });
  expect_config_error([](GenConfig& c) { c.max_matching_retries = -1; });
  expect_config_error([](GenConfig& c) { c.reviewer_capacity_dist = {{}, {}}; });
  expect_config_error([](GenConfig& c) { c.reviewer_capacity_dist = {{1, 2}, {1.0}}; });
  expect_config_error([](GenConfig& c) { c.reviewer_capacity_dist = {{0, 2}, {1, 1}}; });
  expect_config_error([](GenConfig& c) { c.reviewer_capacity_dist = {{1, 2}, {0, 0}}; });
  expect_config_error([](GenConfig& c) { c.reviewer_capacity_dist = {{1, 2}, {-1, 2}}; });
  expect_config_error(
      [](GenConfig& c) { c.author_multiplicity_targets = {{5, 10}, {2, 100}}; });
  expect_config_error(
      [](GenConfig& c) { c.author_multiplicity_targets = {{2, 100}, {5, 200}}; });
  expect_config_error([](GenConfig& c) { c.author_multiplicity_targets = {{1, 100}}; });
}

TEST(GenConfigTest, UnreachableThresholdIsAConfigError) {
  GenConfig config = testing::SmallGenConfig();
  config.max_papers_per_author = 4;  // the 5+ and 10+ bands cannot be filled
  Rng rng = MakeStream(1);
  EXPECT_THROW(SampleAuthorMultiplicities(config, rng), ConfigError);
}

TEST(GenConfigTest, InfeasibleAuthorSlotsIsAConfigError) {
  GenConfig config = testing::SmallGenConfig();
  config.authors_per_paper_dist = {{8}, {1.0}};  // 2400 slots, far above supply
  EXPECT_THROW(GenConference(config), ConfigError);
}

TEST(GenConfigJsonTest, RoundTripAndStrictKeys) {
  GenConfig config = testing::SmallGenConfig(77);
  config.true_score_sd = 1.25;
  nlohmann::json j = config;
  const GenConfig back = j.get<GenConfig>();
  EXPECT_EQ(nlohmann::json(back), j);

  nlohmann::json partial = {{"n_papers", 12}};
  const GenConfig merged = partial.get<GenConfig>();
  EXPECT_EQ(merged.n_papers, 12u);
  EXPECT_EQ(merged.true_score_mean, GenConfig{}.true_score_mean);

  const nlohmann::json as_objects = nlohmann::json::parse(
      R"({"author_multiplicity_targets": [{"threshold": 3, "count": 40}, [6, 4]]})");
  const std::vector<MultiplicityTarget> expected = {{3, 40}, {6, 4}};
  const GenConfig targets = as_objects.get<GenConfig>();
  ASSERT_EQ(targets.author_multiplicity_targets.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(targets.author_multiplicity_targets[k].threshold, expected[k].threshold);
    EXPECT_EQ(targets.author_multiplicity_targets[k].count, expected[k].count);
  }

  EXPECT_THROW((nlohmann::json{{"n_paper", 12}}.get<GenConfig>()), ConfigError);
  EXPECT_THROW((nlohmann::json{{"n_papers", "many"}}.get<GenConfig>()), ConfigError);
}

class ConferenceFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("revcal_conf_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(ConferenceFileTest, SaveLoadRoundTrip) {
  const Conference c = testing::SmallConference();
  const std::string path = (dir_ / "conf.json").string();
  SaveConference(c, path);
  EXPECT_EQ(LoadConference(path), c);
}

TEST_F(ConferenceFileTest, IoAndParseErrors) {
  const std::string missing = (dir_ / "missing.json").string();
  try {
    LoadConference(missing);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), missing);
  }
  EXPECT_THROW(LoadGenConfig(missing), IoError);
  EXPECT_THROW(SaveConference(Conference{}, (dir_ / "no" / "such" / "dir.json").string()),
               IoError);
  const std::string broken = (dir_ / "broken.json").string();
  std::ofstream(broken) << "{ not json";
  EXPECT_THROW(LoadGenConfig(broken), ConfigError);
}

}  // namespace
}  // namespace revcal
