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


// Small conferences shared by several test files.

#ifndef REVCAL_TESTS_FIXTURES_H_
#define REVCAL_TESTS_FIXTURES_H_

#include <cstdint>

#include "revcal/conference.h"

namespace revcal::testing {

// A few hundred papers with the default shape of every distribution.
inline GenConfig SmallGenConfig(std::uint64_t seed = 5) {
  GenConfig config;
  config.n_papers = 300;
  config.n_authors = 850;
  config.target_population = 850;
  config.author_multiplicity_targets = {{2, 207}, {5, 23}, {10, 3}};
  config.max_papers_per_author = 15;
  config.master_seed = seed;
  return config;
}

inline Conference SmallConference(std::uint64_t seed = 5) {
  return GenConference(SmallGenConfig(seed));
}

}  // namespace revcal::testing

#endif  // REVCAL_TESTS_FIXTURES_H_
