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

#include "revcal/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "revcal/errors.h"
#include "revcal/random.h"

namespace revcal {
namespace {

double Mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double SampleSd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::string FormatCsv(const ResultsTable& table) {
  std::string out = "case,method,mean_rmse,sd_rmse\n";
  for (const ResultCell& cell : table.cells) {
    out += fmt::format("{},{},{},{}\n", cell.noise_case, MethodName(cell.method),
                       cell.mean_rmse, cell.sd_rmse);
  }
  return out;
}

std::string FormatTable(const ResultsTable& table) {
  const std::vector<std::string> cases = table.cases();
  std::size_t reps = table.cells.empty() ? 0 : table.cells.front().rmse_by_repetition.size();
  std::string out = fmt::format(
      "RMSE, mean over {} repetition(s) with sd in parentheses; * marks the "
      "column minimum\n",
      reps);
  out += fmt::format("{:<32}", "Method");
  for (const auto& c : cases) out += fmt::format("{:>17}", c);
  out += '\n';
  for (Method m : kAllMethods) {
    out += fmt::format("{:<32}", MethodLabel(m));
    for (const auto& c : cases) {
      const ResultCell& cell = table.at(c, m);
      bool is_min = true;
      for (Method other : kAllMethods) {
        if (table.at(c, other).mean_rmse < cell.mean_rmse) is_min = false;
      }
      out += fmt::format("{:>17}", fmt::format("{}{:.3f} ({:.3f})", is_min ? "*" : "",
                                                cell.mean_rmse, cell.sd_rmse));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "csv" || name == "CSV") return OutputFormat::kCsv;
  if (name == "json" || name == "JSON") return OutputFormat::kJson;
  if (name == "table" || name == "text-table" || name == "text") return OutputFormat::kTable;
  throw ConfigError("unknown output format '" + std::string(name) +
                    "' (expected csv, json or table)");
}

void ExperimentConfig::Validate() const {
  gen.Validate();
  if (cases.empty()) throw ConfigError("at least one noise case is required");
  for (const auto& c : cases) NoiseCase::FromName(c);
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (!(blend >= 0.0 && blend <= 1.0)) throw ConfigError("blend must lie in [0, 1]");
  if (!(author_blend >= 0.0 && author_blend <= 1.0)) {
    throw ConfigError("author_blend must lie in [0, 1]");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
}

std::vector<std::string> ResultsTable::cases() const {
  std::vector<std::string> out;
  for (const ResultCell& cell : cells) {
    if (std::find(out.begin(), out.end(), cell.noise_case) == out.end()) {
      out.push_back(cell.noise_case);
    }
  }
  return out;
}

const ResultCell& ResultsTable::at(std::string_view noise_case, Method method) const {
  for (const ResultCell& cell : cells) {
    if (cell.noise_case == noise_case && cell.method == method) return cell;
  }
  throw std::out_of_range("no result for case '" + std::string(noise_case) +
                          "' and method '" + std::string(MethodName(method)) + "'");
}

std::array<double, 4> RunCell(const Conference& conference, const OwnerPartition& owners,
                              const NoiseCase& noise_case, std::uint64_t seed,
                              double blend, double author_blend) {
  const SgpDraw draw = GenerateFinalScores(conference, noise_case, seed);
  const EstimateVector avg = AvgScores(draw.final_scores, conference);
  const EstimateVector reviewer = CalibrateReviewer(avg, draw.rankings, blend);
  const EstimateVector author = CalibrateAuthor(avg, owners, author_blend);
  // Combined = author projection applied on top of the reviewer calibration.
  const EstimateVector combined = CalibrateAuthor(reviewer, owners, author_blend);
  const auto& truth = conference.true_scores;
  return {Rmse(avg, truth), Rmse(reviewer, truth), Rmse(author, truth),
          Rmse(combined, truth)};
}

std::uint64_t CellSeed(std::uint64_t master_seed, NoiseCaseId id, int repetition) {
  return DeriveSeed(master_seed, StreamTag::kCell,
                    {static_cast<std::uint64_t>(id),
                     static_cast<std::uint64_t>(repetition)});
}

ResultsTable RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  Rng rng = MakeStream(DeriveSeed(config.master_seed, StreamTag::kConference));
  const Conference conference = GenConference(config.gen, rng);
  return RunExperiment(config, conference);
}

ResultsTable RunExperiment(const ExperimentConfig& config, const Conference& conference) {
  config.Validate();
  std::vector<NoiseCase> cases;
  for (const auto& name : config.cases) {
    cases.push_back(NoiseCase::FromName(name));
    cases.back().scale = config.noise_scale;
  }
  const OwnerPartition owners = BuildOwnerPartition(conference);

  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t n_cells = cases.size() * reps;
  std::vector<std::array<double, 4>> rmse(n_cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < n_cells; k = next++) {
      try {
        const NoiseCase& noise_case = cases[k / reps];
        const int rep = static_cast<int>(k % reps);
        rmse[k] = RunCell(conference, owners, noise_case,
                          CellSeed(config.master_seed, noise_case.id, rep),
                          config.blend, config.author_blend);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_cells;
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.workers), n_cells);
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ResultsTable table;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (Method m : kAllMethods) {
      ResultCell cell;
      cell.noise_case = std::string(cases[c].name());
      cell.method = m;
      for (std::size_t r = 0; r < reps; ++r) {
        cell.rmse_by_repetition.push_back(rmse[c * reps + r][static_cast<int>(m)]);
      }
      cell.mean_rmse = Mean(cell.rmse_by_repetition);
      cell.sd_rmse = SampleSd(cell.rmse_by_repetition);
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

std::string FormatResults(const ResultsTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: return FormatCsv(table);
    case OutputFormat::kJson: return nlohmann::json(table).dump(2) + "\n";
    case OutputFormat::kTable: return FormatTable(table);
  }
  return {};
}

void EmitResults(const ResultsTable& table, OutputFormat format, const std::string& path) {
  const std::string text = FormatResults(table, format);
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open output file");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "failed writing output file");
}

void to_json(nlohmann::json& j, const ResultsTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ResultCell& cell : table.cells) {
    rows.push_back({{"case", cell.noise_case},
                    {"method", MethodName(cell.method)},
                    {"mean_rmse", cell.mean_rmse},
                    {"sd_rmse", cell.sd_rmse},
                    {"rmse_by_repetition", cell.rmse_by_repetition}});
  }
  j = nlohmann::json{{"results", rows}};
}

void from_json(const nlohmann::json& j, ResultsTable& table) {
  table.cells.clear();
  for (const auto& row : j.at("results")) {
    ResultCell cell;
    row.at("case").get_to(cell.noise_case);
    cell.method = MethodFromName(row.at("method").get<std::string>());
    row.at("mean_rmse").get_to(cell.mean_rmse);
    row.at("sd_rmse").get_to(cell.sd_rmse);
    if (row.contains("rmse_by_repetition")) {
      row.at("rmse_by_repetition").get_to(cell.rmse_by_repetition);
    }
    table.cells.push_back(std::move(cell));
  }
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  const char* format = c.output_format == OutputFormat::kCsv    ? "csv"
                       : c.output_format == OutputFormat::kJson ? "json"
                                                                : "table";
  j = nlohmann::json{{"gen", c.gen},
                     {"cases", c.cases},
                     {"repetitions", c.repetitions},
                     {"blend", c.blend},
                     {"author_blend", c.author_blend},
                     {"noise_scale", NoiseScaleName(c.noise_scale)},
                     {"master_seed", c.master_seed},
                     {"output_path", c.output_path},
                     {"output_format", format},
                     {"workers", c.workers}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "gen") value.get_to(c.gen);
      else if (key == "cases") value.get_to(c.cases);
      else if (key == "repetitions") value.get_to(c.repetitions);
      else if (key == "blend") value.get_to(c.blend);
      else if (key == "author_blend") value.get_to(c.author_blend);
      else if (key == "noise_scale") c.noise_scale = NoiseScaleFromName(value.get<std::string>());
      else if (key == "master_seed") value.get_to(c.master_seed);
      else if (key == "output_path") value.get_to(c.output_path);
      else if (key == "output_format") c.output_format = ParseOutputFormat(value.get<std::string>());
      else if (key == "workers") value.get_to(c.workers);
      else throw ConfigError("unknown experiment config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open experiment config");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  ExperimentConfig config = j.get<ExperimentConfig>();
  config.Validate();
  return config;
}

}  // namespace revcal
