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

#ifndef REVCAL_ERRORS_H_
#define REVCAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace revcal {

// Invalid user-supplied configuration (bad distribution, unknown noise case,
// infeasible multiplicity targets, malformed JSON).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A valid configuration that nevertheless cannot be realised, e.g. reviewer
// capacity below the number of review slots.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace revcal

#endif  // REVCAL_ERRORS_H_
