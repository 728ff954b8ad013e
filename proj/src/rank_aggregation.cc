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

#include "revcal/rank_aggregation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "revcal/errors.h"

namespace revcal {
namespace {

std::size_t Bound(const PaperSet& active,
                  std::span<const ReviewerRanking> rankings) {
  std::size_t bound = active.empty() ? 0 : active.back() + 1;
  for (const auto& ranking : rankings) {
    for (PaperId p : ranking.order) bound = std::max(bound, p + 1);
  }
  return bound;
}

// Strongly connected components (iterative Tarjan). Returns a component id
// per node.
std::vector<std::size_t> StronglyConnectedComponents(
    const std::vector<std::vector<std::size_t>>& adjacency,
    std::size_t* num_components) {
  const std::size_t n = adjacency.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  std::size_t counter = 0;
  std::size_t components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < adjacency[v].size()) {
        const std::size_t w = adjacency[v][edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
      if (low[finished] == index[finished]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
        } while (w != finished);
        ++components;
      }
    }
  }
  *num_components = components;
  return component;
}

}  // namespace

PaperSet AllPapers(std::size_t n_papers) {
  PaperSet all(n_papers);
  std::iota(all.begin(), all.end(), PaperId{0});
  return all;
}

ComparisonGraph::ComparisonGraph(std::vector<std::pair<PaperId, PaperId>> outcomes) {
  std::sort(outcomes.begin(), outcomes.end());
  std::vector<Edge> edges;
  for (const auto& [w, l] : outcomes) {
    if (!edges.empty() && edges.back().winner == w && edges.back().loser == l) {
      ++edges.back().count;
    } else {
      edges.push_back({w, l, 1});
    }
  }
  Finish(std::move(edges));
}

ComparisonGraph ComparisonGraph::FromCounts(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.winner, a.loser) < std::tie(b.winner, b.loser);
  });
  std::vector<Edge> merged;
  for (const Edge& e : edges) {
    if (e.count < 0) throw std::invalid_argument("negative comparison count");
    if (e.count == 0) continue;
    if (!merged.empty() && merged.back().winner == e.winner &&
        merged.back().loser == e.loser) {
      merged.back().count += e.count;
    } else {
      merged.push_back(e);
    }
  }
  ComparisonGraph graph;
  graph.Finish(std::move(merged));
  return graph;
}

void ComparisonGraph::Finish(std::vector<Edge> edges) {
  std::size_t bound = 0;
  for (const Edge& e : edges) {
    if (e.winner == e.loser) throw std::invalid_argument("a paper cannot beat itself");
    bound = std::max({bound, e.winner + 1, e.loser + 1});
  }
  edges_ = std::move(edges);
  losses_.assign(bound, 0);
  degree_.assign(bound, 0);
  total_ = 0;
  std::vector<std::pair<PaperId, PaperId>> opponents;
  opponents.reserve(edges_.size());
  for (const Edge& e : edges_) {
    losses_[e.loser] += e.count;
    total_ += static_cast<std::size_t>(e.count);
    opponents.emplace_back(std::min(e.winner, e.loser), std::max(e.winner, e.loser));
  }
  std::sort(opponents.begin(), opponents.end());
  opponents.erase(std::unique(opponents.begin(), opponents.end()), opponents.end());
  for (const auto& [a, b] : opponents) {
    ++degree_[a];
    ++degree_[b];
  }
}

int ComparisonGraph::wins(PaperId i, PaperId j) const {
  const auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::make_pair(i, j),
      [](const Edge& e, const std::pair<PaperId, PaperId>& key) {
        return std::make_pair(e.winner, e.loser) < key;
      });
  return it != edges_.end() && it->winner == i && it->loser == j ? it->count : 0;
}

int ComparisonGraph::losses(PaperId i) const {
  return i < losses_.size() ? losses_[i] : 0;
}

int ComparisonGraph::degree(PaperId i) const {
  return i < degree_.size() ? degree_[i] : 0;
}

ComparisonGraph ExtractPairwise(std::span<const ReviewerRanking> rankings,
                                const PaperSet& active) {
  std::vector<bool> is_active(Bound(active, rankings), false);
  for (PaperId p : active) is_active[p] = true;
  std::vector<std::pair<PaperId, PaperId>> outcomes;
  std::vector<PaperId> kept;
  for (const ReviewerRanking& ranking : rankings) {
    kept.clear();
    for (PaperId p : ranking.order) {
      if (is_active[p]) kept.push_back(p);
    }
    for (std::size_t a = 0; a < kept.size(); ++a) {
      for (std::size_t b = a + 1; b < kept.size(); ++b) {
        outcomes.emplace_back(kept[a], kept[b]);
      }
    }
  }
  return ComparisonGraph(std::move(outcomes));
}

double TransitionMatrix::at(std::size_t from, std::size_t to) const {
  if (from == to) return diagonal[from];
  for (const auto& [col, p] : off_diagonal[from]) {
    if (col == to) return p;
  }
  return 0.0;
}

TransitionMatrix TransitionMatrix::FromDense(
    const std::vector<std::vector<double>>& rows) {
  TransitionMatrix chain;
  const std::size_t n = rows.size();
  chain.papers = AllPapers(n);
  chain.off_diagonal.resize(n);
  chain.diagonal.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("transition matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || rows[i][j] == 0.0) continue;
      if (rows[i][j] < 0.0) throw std::invalid_argument("negative transition probability");
      chain.off_diagonal[i].emplace_back(j, rows[i][j]);
      chain.diagonal[i] -= rows[i][j];
    }
  }
  return chain;
}

TransitionMatrix BuildTransitionMatrix(const ComparisonGraph& graph,
                                       const PaperSet& active) {
  TransitionMatrix chain;
  chain.papers = active;
  const std::size_t n = active.size();
  chain.off_diagonal.resize(n);
  chain.diagonal.assign(n, 1.0);
  auto state_of = [&](PaperId p) -> std::ptrdiff_t {
    const auto it = std::lower_bound(active.begin(), active.end(), p);
    return it != active.end() && *it == p ? it - active.begin() : -1;
  };

  int d_max = 0;
  for (PaperId p : active) d_max = std::max(d_max, graph.degree(p));
  if (d_max == 0) return chain;

  for (const auto& edge : graph.edges()) {
    const std::ptrdiff_t from = state_of(edge.loser);
    const std::ptrdiff_t to = state_of(edge.winner);
    if (from < 0 || to < 0) continue;
    const int n_ij = edge.count + graph.wins(edge.loser, edge.winner);
    const double p = static_cast<double>(edge.count) /
                     (static_cast<double>(d_max) * std::max(1, n_ij));
    chain.off_diagonal[from].emplace_back(static_cast<std::size_t>(to), p);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double leave = 0.0;
    for (const auto& [col, p] : chain.off_diagonal[i]) leave += p;
    chain.diagonal[i] = 1.0 - leave;
  }
  return chain;
}

std::vector<double> StationaryDistribution(const TransitionMatrix& chain,
                                           double tol, std::size_t max_iter) {
  const std::size_t n = chain.size();
  if (n == 0) return {};

  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [col, p] : chain.off_diagonal[i]) {
      if (p > 0.0) adjacency[i].push_back(col);
    }
  }
  std::size_t num_components = 0;
  const auto component = StronglyConnectedComponents(adjacency, &num_components);
  std::vector<bool> closed(num_components, true);
  std::vector<std::size_t> size(num_components, 0);
  std::vector<std::size_t> first(num_components, n);
  for (std::size_t i = 0; i < n; ++i) {
    ++size[component[i]];
    first[component[i]] = std::min(first[component[i]], i);
    for (std::size_t j : adjacency[i]) {
      if (component[j] != component[i]) closed[component[i]] = false;
    }
  }
  std::size_t best = num_components;
  for (std::size_t c = 0; c < num_components; ++c) {
    if (!closed[c]) continue;
    if (best == num_components || size[c] > size[best] ||
        (size[c] == size[best] && first[c] < first[best])) {
      best = c;
    }
  }

  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (component[i] == best) members.push_back(i);
  }
  std::vector<double> pi(n, 0.0);
  for (std::size_t i : members) pi[i] = 1.0 / static_cast<double>(members.size());
  std::vector<double> next(n, 0.0);
  double residual = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i : members) next[i] = pi[i] * chain.diagonal[i];
    for (std::size_t i : members) {
      for (const auto& [col, p] : chain.off_diagonal[i]) next[col] += pi[i] * p;
    }
    // next = pi P; check ||pi P - pi||_1, then take the lazy step.
    residual = 0.0;
    double total = 0.0;
    for (std::size_t i : members) {
      residual += std::abs(next[i] - pi[i]);
      next[i] = 0.5 * (next[i] + pi[i]);
      total += next[i];
    }
    for (std::size_t i : members) pi[i] = next[i] / total;
    if (residual < tol) return pi;
  }
  throw ConvergenceError("stationary distribution did not converge, residual " +
                             std::to_string(residual),
                         residual);
}

PaperSet FindNeverLosers(const ComparisonGraph& graph, const PaperSet& active) {
  PaperSet out;
  for (PaperId p : active) {
    if (graph.losses(p) == 0) out.push_back(p);
  }
  return out;
}

TierDecomposition HierarchicalTiers(std::span<const ReviewerRanking> rankings,
                                    const PaperSet& all_papers) {
  TierDecomposition result;
  PaperSet remaining = all_papers;
  while (!remaining.empty()) {
    const ComparisonGraph graph = ExtractPairwise(rankings, remaining);
    PaperSet tier = FindNeverLosers(graph, remaining);
    if (tier.empty()) {
      result.tiers.push_back(std::move(remaining));
      break;
    }
    PaperSet rest;
    rest.reserve(remaining.size() - tier.size());
    std::set_difference(remaining.begin(), remaining.end(), tier.begin(),
                        tier.end(), std::back_inserter(rest));
    result.tiers.push_back(std::move(tier));
    remaining = std::move(rest);
  }
  return result;
}

std::vector<PaperId> FullRanking(const TierDecomposition& tiers,
                                 std::span<const double> avg_scores) {
  std::vector<PaperId> ranking;
  for (const PaperSet& tier : tiers.tiers) {
    const std::size_t begin = ranking.size();
    for (PaperId p : tier) {
      if (p >= avg_scores.size()) {
        throw std::invalid_argument("no average score for paper " + std::to_string(p));
      }
      ranking.push_back(p);
    }
    std::sort(ranking.begin() + static_cast<std::ptrdiff_t>(begin), ranking.end(),
              [&](PaperId a, PaperId b) {
                if (avg_scores[a] != avg_scores[b]) return avg_scores[a] > avg_scores[b];
                return a < b;
              });
  }
  return ranking;
}

double KendallTau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("Kendall tau: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = (a[i] - a[j]) * (b[i] - b[j]);
      if (s > 0) ++concordant;
      else if (s < 0) ++discordant;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(concordant - discordant) / pairs;
}

void to_json(nlohmann::json& j, const TierDecomposition& tiers) {
  j = nlohmann::json{{"tiers", tiers.tiers}};
}

void from_json(const nlohmann::json& j, TierDecomposition& tiers) {
  j.at("tiers").get_to(tiers.tiers);
}

}  // namespace revcal
