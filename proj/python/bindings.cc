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


// Python bindings. Configs and result tables cross the boundary as plain
// dicts (through their JSON form); rankings are lists of paper-id lists
// indexed by reviewer.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "revcal/conference.h"
#include "revcal/errors.h"
#include "revcal/estimators.h"
#include "revcal/experiment.h"
#include "revcal/isotonic.h"
#include "revcal/random.h"
#include "revcal/rank_aggregation.h"
#include "revcal/sgp.h"

namespace py = pybind11;

namespace revcal {
namespace {

nlohmann::json ToJson(const py::handle& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return nlohmann::json::parse(text);
}

py::object FromJson(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<ReviewerRanking> ToRankings(const std::vector<std::vector<PaperId>>& orders) {
  std::vector<ReviewerRanking> out;
  out.reserve(orders.size());
  for (std::size_t r = 0; r < orders.size(); ++r) out.push_back({r, orders[r]});
  return out;
}

std::vector<std::vector<PaperId>> FromRankings(const std::vector<ReviewerRanking>& rankings) {
  std::vector<std::vector<PaperId>> out;
  out.reserve(rankings.size());
  for (const auto& r : rankings) out.push_back(r.order);
  return out;
}

std::vector<std::vector<std::pair<PaperId, double>>> Rows(const ScoreTable& table) {
  std::vector<std::vector<std::pair<PaperId, double>>> out(table.num_reviewers());
  for (ReviewerId r = 0; r < table.num_reviewers(); ++r) {
    for (const ScoreEntry& e : table.row(r)) out[r].emplace_back(e.paper, e.score);
  }
  return out;
}

OwnerPartition ToOwners(const std::vector<std::pair<AuthorId, std::vector<PaperId>>>& owners) {
  OwnerPartition part;
  for (const auto& [a, papers] : owners) part.owners.push_back({a, papers});
  return part;
}

ExperimentConfig ExperimentConfigFrom(const py::object& config, const py::kwargs& overrides) {
  nlohmann::json j = config.is_none() ? nlohmann::json::object() : ToJson(config);
  for (const auto& [key, value] : overrides) j[key.cast<std::string>()] = ToJson(value);
  return j.get<ExperimentConfig>();
}

}  // namespace
}  // namespace revcal

PYBIND11_MODULE(_revcal, m) {
  using namespace revcal;
  m.doc() = "Peer-review score simulation and ranking-based calibration";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Conference>(m, "Conference")
      .def_readonly("true_scores", &Conference::true_scores)
      .def_readonly("authorship", &Conference::authorship)
      .def_readonly("assignment", &Conference::assignment)
      .def_readonly("reverse_assignment", &Conference::reverse_assignment)
      .def_property_readonly("num_papers", &Conference::num_papers)
      .def_property_readonly("num_authors", &Conference::num_authors)
      .def_property_readonly("num_reviewers", &Conference::num_reviewers)
      .def("validate", &Conference::Validate)
      .def("to_dict", [](const Conference& c) { return FromJson(c); })
      .def_static("from_dict", [](const py::dict& d) {
        Conference c = ToJson(d).get<Conference>();
        c.Validate();
        return c;
      })
      .def("__eq__", [](const Conference& a, const Conference& b) { return a == b; })
      .def("__repr__", [](const Conference& c) {
        return "<Conference papers=" + std::to_string(c.num_papers()) +
               " authors=" + std::to_string(c.num_authors()) +
               " reviewers=" + std::to_string(c.num_reviewers()) + ">";
      });

  py::class_<SgpDraw>(m, "ScoreDraw")
      .def_property_readonly("rankings",
                             [](const SgpDraw& d) { return FromRankings(d.rankings); })
      .def_property_readonly("final_scores", [](const SgpDraw& d) { return Rows(d.final_scores); })
      .def_property_readonly("raw_scores", [](const SgpDraw& d) { return Rows(d.raw_scores); })
      .def_property_readonly("params", [](const SgpDraw& d) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : d.params) out.emplace_back(p.bias, p.noise_sd);
        return out;
      });

  m.def("default_gen_config", [] { return FromJson(GenConfig{}); },
        "Default generator configuration as a dict.");
  m.def("default_experiment_config", [] { return FromJson(ExperimentConfig{}); },
        "Default experiment configuration as a dict.");

  m.def(
      "gen_conference",
      [](const py::object& config, std::optional<std::uint64_t> seed) {
        GenConfig c = config.is_none() ? GenConfig{} : ToJson(config).get<GenConfig>();
        if (seed) c.master_seed = *seed;
        py::gil_scoped_release release;
        return GenConference(c);
      },
      py::arg("config") = py::none(), py::arg("seed") = py::none(),
      "Generate a synthetic conference. `config` is a (partial) generator config dict.");

  m.def(
      "generate_final_scores",
      [](const Conference& conf, const std::string& noise_case, std::uint64_t seed,
         const std::string& noise_scale) {
        NoiseCase c = NoiseCase::FromName(noise_case);
        c.scale = NoiseScaleFromName(noise_scale);
        py::gil_scoped_release release;
        return GenerateFinalScores(conf, c, seed);
      },
      py::arg("conference"), py::arg("noise_case") = "Base", py::arg("seed") = 0,
      py::arg("noise_scale") = "variance",
      "Draw raw scores, Plackett-Luce rankings and rank-consistent final scores.");

  m.def(
      "isotonic_fit",
      [](const std::vector<double>& values, const std::vector<double>& weights,
         bool increasing) {
        return IsotonicFit(values, weights,
                           increasing ? Direction::kNonDecreasing : Direction::kNonIncreasing);
      },
      py::arg("values"), py::arg("weights") = std::vector<double>{},
      py::arg("increasing") = false,
      "Weighted least-squares monotone fit (non-increasing unless `increasing`).");
  m.def(
      "isotonic_project",
      [](const std::vector<double>& scores, const std::vector<std::size_t>& order,
         double blend) { return IsotonicProjectIndexed(scores, order, blend); },
      py::arg("scores"), py::arg("order"),
        py::arg("blend") = 1.0,
        "Project scores onto the order (best first) and mix with the input by `blend`.");

  m.def(
      "pl_ranking_prob",
      [](const std::vector<double>& theta, const std::vector<std::size_t>& perm) {
        return PlRankingProb(theta, perm);
      },
      py::arg("theta"), py::arg("perm"));
  m.def(
      "sample_pl_ranking",
      [](const std::vector<double>& theta, std::uint64_t seed) {
        Rng rng = MakeStream(seed);
        return SamplePlRanking(theta, rng);
      },
      py::arg("theta"), py::arg("seed") = 0);

  m.def(
      "hierarchical_tiers",
      [](const std::vector<std::vector<PaperId>>& rankings, std::size_t n_papers) {
        return HierarchicalTiers(ToRankings(rankings), AllPapers(n_papers)).tiers;
      },
      py::arg("rankings"), py::arg("n_papers"));
  m.def(
      "stationary_distribution",
      [](const std::vector<std::vector<double>>& matrix, double tol, std::size_t max_iter) {
        return StationaryDistribution(TransitionMatrix::FromDense(matrix), tol, max_iter);
      },
      py::arg("matrix"), py::arg("tol") = 1e-10, py::arg("max_iter") = 100000);
  m.def(
      "rank_centrality",
      [](const std::vector<std::pair<PaperId, PaperId>>& outcomes, std::size_t n_items,
         double tol) {
        const ComparisonGraph g(outcomes);
        return StationaryDistribution(BuildTransitionMatrix(g, AllPapers(n_items)), tol);
      },
      py::arg("outcomes"), py::arg("n_items"), py::arg("tol") = 1e-10,
      "Stationary scores from (winner, loser) outcomes.");
  m.def(
      "kendall_tau",
      [](const std::vector<double>& a, const std::vector<double>& b) { return KendallTau(a, b); },
      py::arg("a"), py::arg("b"));

  m.def("avg_scores",
        [](const SgpDraw& d, const Conference& c) { return AvgScores(d.final_scores, c); },
        py::arg("draw"), py::arg("conference"));
  m.def(
      "calibrate_reviewer",
      [](const std::vector<double>& avg, const std::vector<std::vector<PaperId>>& rankings,
         double blend) { return CalibrateReviewer(avg, ToRankings(rankings), blend); },
      py::arg("avg"), py::arg("rankings"), py::arg("blend") = 0.5);
  m.def(
      "owner_partition",
      [](const Conference& c) {
        std::vector<std::pair<AuthorId, std::vector<PaperId>>> out;
        for (const Owner& o : BuildOwnerPartition(c).owners) out.emplace_back(o.author, o.papers);
        return out;
      },
      py::arg("conference"), "Greedy disjoint (author, papers best-first) owner sets.");
  m.def(
      "calibrate_author",
      [](const std::vector<double>& scores,
         const std::vector<std::pair<AuthorId, std::vector<PaperId>>>& owners, double blend) {
        return CalibrateAuthor(scores, ToOwners(owners), blend);
      },
      py::arg("scores"), py::arg("owners"), py::arg("blend") = 0.5);
  m.def(
      "rmse",
      [](const std::vector<double>& estimate, const std::vector<double>& truth) {
        return Rmse(estimate, truth);
      },
      py::arg("estimate"), py::arg("truth"));

  m.def(
      "run_experiment",
      [](const py::object& config, const py::kwargs& overrides) {
        const ExperimentConfig c = ExperimentConfigFrom(config, overrides);
        ResultsTable table;
        {
          py::gil_scoped_release release;
          table = RunExperiment(c);
        }
        return FromJson(table);
      },
      py::arg("config") = py::none(),
      "Run the benchmark. Keyword arguments override experiment config keys; "
      "returns {'results': [...]}.");
  m.def(
      "format_results",
      [](const py::object& results, const std::string& format) {
        return FormatResults(ToJson(results).get<ResultsTable>(), ParseOutputFormat(format));
      },
      py::arg("results"), py::arg("format") = "csv");
}
