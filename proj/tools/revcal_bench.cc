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

// Runs the four-estimator RMSE comparison over the noise cases.
//
// Exit codes: 0 success, 2 configuration error, 3 generation infeasibility,
// 4 I/O failure.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revcal/errors.h"
#include "revcal/experiment.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitIo = 4;

std::vector<std::string> SplitCommaList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t ParseSeed(const std::string& text, const char* origin) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw revcal::ConfigError(std::string(origin) + ": '" + text +
                              "' is not an unsigned 64-bit seed");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer-review calibration benchmark: RMSE of four paper-quality "
               "estimators under simulated reviewer bias and noise"};
  std::string config_path, seed_text, cases_text, out_path, format_text, scale_text;
  int reps = 0, workers = 0;
  double blend = -1.0, author_blend = -1.0;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--seed", seed_text, "Master seed (REVIEW_CALIB_SEED overrides)");
  app.add_option("--cases", cases_text,
                 "Comma-separated noise cases: Base,NoBias,NoVariance,BigBias,BigVariance");
  app.add_option("--reps", reps, "Score-table repetitions per case")->check(CLI::PositiveNumber);
  app.add_option("--blend", blend, "Weight on the reviewer-ranking isotonic fit")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--author-blend", author_blend, "Weight on the author-ranking isotonic fit")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--noise-scale", scale_text,
                 "How the Gamma draw sets reviewer noise: variance (default) or sd");
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--format", format_text, "Output format: csv, json or table");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    revcal::ExperimentConfig config;
    if (!config_path.empty()) config = revcal::LoadExperimentConfig(config_path);
    if (!seed_text.empty()) config.master_seed = ParseSeed(seed_text, "--seed");
    if (const char* env = std::getenv("REVIEW_CALIB_SEED"); env && *env) {
      config.master_seed = ParseSeed(env, "REVIEW_CALIB_SEED");
    }
    if (!cases_text.empty()) config.cases = SplitCommaList(cases_text);
    if (reps > 0) config.repetitions = reps;
    if (blend >= 0.0) config.blend = blend;
    if (author_blend >= 0.0) config.author_blend = author_blend;
    if (!scale_text.empty()) config.noise_scale = revcal::NoiseScaleFromName(scale_text);
    if (!out_path.empty()) config.output_path = out_path;
    if (!format_text.empty()) config.output_format = revcal::ParseOutputFormat(format_text);
    if (workers > 0) config.workers = workers;
    config.Validate();

    const revcal::ResultsTable table = revcal::RunExperiment(config);
    revcal::EmitResults(table, config.output_format, config.output_path);
  } catch (const revcal::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const revcal::GenerationError& e) {
    std::cerr << "generation error: " << e.what() << '\n';
    return kExitGeneration;
  } catch (const revcal::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
