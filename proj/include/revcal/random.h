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

#ifndef REVCAL_RANDOM_H_
#define REVCAL_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace revcal {

using Rng = std::mt19937_64;

// Purpose tags for derived streams. Values are part of the seeding contract:
// renumbering them changes every simulated number.
enum class StreamTag : std::uint64_t {
  kConference = 1,
  kReviewerParams = 2,
  kRawScores = 3,
  kRankings = 4,
  kCell = 5,
};

// Derives a child seed from `master` and a path of counters, e.g.
// {kCell, case_id, repetition}. Each path element is folded in with a
// SplitMix64 finalizer, so distinct paths give statistically independent
// seeds and adding a repetition never perturbs the seeds of earlier ones.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path);

inline std::uint64_t DeriveSeed(std::uint64_t master, StreamTag tag,
                                std::initializer_list<std::uint64_t> path = {}) {
  std::uint64_t seed = DeriveSeed(master, {static_cast<std::uint64_t>(tag)});
  return DeriveSeed(seed, path);
}

inline Rng MakeStream(std::uint64_t seed) { return Rng(seed); }

}  // namespace revcal

#endif  // REVCAL_RANDOM_H_
