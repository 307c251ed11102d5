// Copyright 2026 The byzrank Authors
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

#ifndef BYZRANK_KEMENY_H_
#define BYZRANK_KEMENY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "byzrank/ranking.h"
#include "byzrank/rational.h"
#include "byzrank/tournament.h"

namespace byzrank {

inline constexpr int kBruteForceMaxCandidates = 8;
inline constexpr int kExactMaxCandidates = 16;

struct MedianResult {
  // Every minimizer in lexicographic order (possibly truncated, see below).
  std::vector<Ranking> medians;
  std::int64_t cost = 0;
  // Lexicographically smallest minimizer.
  Ranking chosen;
  // True when the minimizer set was cut off at the enumeration limit.
  // cost and chosen are exact regardless.
  bool truncated = false;
};

// Scans all m! rankings, scoring each with TauProfile. Oracle for
// KemenyExact; m <= 8 or CapacityError.
MedianResult KemenyBrute(const PreferenceProfile& profile);

// Dynamic program over candidate subsets (2^m states) on the tournament
// graph. m <= 16 or CapacityError. At most `max_medians` minimizers are
// listed.
MedianResult KemenyExact(const PreferenceProfile& profile,
                         std::size_t max_medians = 4096);
MedianResult KemenyExact(const TournamentGraph& graph,
                         std::size_t max_medians = 4096);

// Candidate distance over optimal distance. `ratio` is empty when the
// optimum is zero but the candidate is not (the infinite ratio); a zero
// candidate against a zero optimum reports 1.
struct ApproxReport {
  std::int64_t candidate_cost = 0;
  std::int64_t optimal_cost = 0;
  std::optional<Rational> ratio;

  bool infinite() const { return !ratio.has_value(); }
  std::string RatioString() const {
    return ratio ? ratio->ToString() : std::string("inf");
  }
};

ApproxReport ApproxRatio(const Ranking& candidate,
                         const PreferenceProfile& profile);
ApproxReport ApproxRatio(std::int64_t candidate_cost,
                         std::int64_t optimal_cost);

}  // namespace byzrank

#endif  // BYZRANK_KEMENY_H_
