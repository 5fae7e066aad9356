// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSLAB_VERIFY_HPP
#define SSLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sslab/field.hpp"

namespace sslab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyOptions {
  std::uint64_t seed = 2026;
  /// Reduced trial counts and grids, for fast developer runs.
  bool quick = false;
};

/// A deterministic family of >= 30 smooth test fields (manifold points,
/// Gaussian bumps, sech profiles, angular-sector and complex-phase mixtures).
std::vector<DiscreteField> make_corpus(const Params& p, const GridSpec& g, std::uint64_t seed);

/// Runs the acceptance checks; one result per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

/// Deterministic JSON for the whole run (embeds options, seed, results).
std::string acceptance_report_json(const std::vector<CriterionResult>& results,
                                   const VerifyOptions& opts);

}  // namespace sslab

#endif  // SSLAB_VERIFY_HPP
