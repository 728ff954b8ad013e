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

#ifndef REVCAL_EXPERIMENT_H_
#define REVCAL_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "revcal/conference.h"
#include "revcal/estimators.h"
#include "revcal/sgp.h"

namespace revcal {

enum class OutputFormat { kCsv, kJson, kTable };

OutputFormat ParseOutputFormat(std::string_view name);  // csv | json | table

struct ExperimentConfig {
  GenConfig gen;
  std::vector<std::string> cases = {"Base", "NoBias", "NoVariance", "BigBias",
                                    "BigVariance"};
  int repetitions = 10;
  double blend = 0.5;         // reviewer-ranking blend
  double author_blend = 0.5;  // author-ranking blend
  NoiseScale noise_scale = NoiseScale::kVariance;
  std::uint64_t master_seed = 2023;
  std::string output_path;  // empty: standard output
  OutputFormat output_format = OutputFormat::kTable;
  int workers = 1;

  // Throws ConfigError.
  void Validate() const;
};

struct ResultCell {
  std::string noise_case;
  Method method = Method::kAverage;
  double mean_rmse = 0.0;
  double sd_rmse = 0.0;  // sample standard deviation, 0 for one repetition
  std::vector<double> rmse_by_repetition;

  friend bool operator==(const ResultCell&, const ResultCell&) = default;
};

// Case-major, method-minor: cells[4 * c + m].
struct ResultsTable {
  std::vector<ResultCell> cells;

  std::vector<std::string> cases() const;
  // Throws std::out_of_range.
  const ResultCell& at(std::string_view noise_case, Method method) const;

  friend bool operator==(const ResultsTable&, const ResultsTable&) = default;
};

// RMSE of the four estimators on one simulated score table.
std::array<double, 4> RunCell(const Conference& conference, const OwnerPartition& owners,
                              const NoiseCase& noise_case, std::uint64_t seed,
                              double blend, double author_blend);

// Seed used for (noise case, repetition). Keyed by the case id rather than
// its position in the case list, and by the repetition counter, so subsets
// and longer runs reproduce the overlapping cells exactly.
std::uint64_t CellSeed(std::uint64_t master_seed, NoiseCaseId id, int repetition);

// One conference per call (derived from master_seed), a fresh score table per
// (case, repetition), cells spread over `workers` threads and reduced in a
// fixed order.
ResultsTable RunExperiment(const ExperimentConfig& config);
ResultsTable RunExperiment(const ExperimentConfig& config, const Conference& conference);

std::string FormatResults(const ResultsTable& table, OutputFormat format);

// Writes to `path`, or to standard output when the path is empty. Throws
// IoError naming the path when it cannot be written.
void EmitResults(const ResultsTable& table, OutputFormat format, const std::string& path);

void to_json(nlohmann::json& j, const ResultsTable& table);
void from_json(const nlohmann::json& j, ResultsTable& table);
void to_json(nlohmann::json& j, const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, ExperimentConfig& config);

ExperimentConfig LoadExperimentConfig(const std::string& path);

}  // namespace revcal

#endif  // REVCAL_EXPERIMENT_H_
