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

#ifndef BYZRANK_TOURNAMENT_H_
#define BYZRANK_TOURNAMENT_H_

#include <array>
#include <cstdint>
#include <vector>

#include "byzrank/ranking.h"

namespace byzrank {

enum class EdgeClass { kMajority, kMinority, kTied };

// Complete weighted digraph over candidates: weight(i, j) counts ballots
// ranking c_i above c_j. Invariants: weight(i, i) == 0 and
// weight(i, j) + weight(j, i) == voters() for i != j.
class TournamentGraph {
 public:
  static TournamentGraph FromProfile(const PreferenceProfile& profile);

  // Hand-built graph; row-major m x m weights. Checks the invariants but
  // not realizability, so the result is flagged !realized().
  static TournamentGraph FromWeights(int m, std::int64_t voters,
                                     std::vector<std::int64_t> weights);

  int candidates() const { return m_; }
  std::int64_t voters() const { return voters_; }
  bool realized() const { return realized_; }

  std::int64_t weight(CandidateId i, CandidateId j) const {
    return w_[static_cast<std::size_t>(i) * m_ + j];
  }
  const std::vector<std::int64_t>& weights() const { return w_; }

  EdgeClass Classify(CandidateId i, CandidateId j) const;

  // Graph of the profile with one more ballot. Keeps realized().
  TournamentGraph WithBallot(const Ranking& ballot) const;

  friend bool operator==(const TournamentGraph&,
                         const TournamentGraph&) = default;

 private:
  TournamentGraph(int m, std::int64_t voters, std::vector<std::int64_t> w,
                  bool realized)
      : m_(m), voters_(voters), w_(std::move(w)), realized_(realized) {}

  int m_ = 0;
  std::int64_t voters_ = 0;
  std::vector<std::int64_t> w_;
  bool realized_ = true;
};

// Sum of weight(j, i) over pairs that r ranks i above j. On a graph built
// from a profile this equals TauProfile(r, profile).
std::int64_t BackwardWeight(const TournamentGraph& g, const Ranking& r);

// Directed 3-cycles of strict majority edges, each reported once as
// (a, b, c) meaning a->b->c->a with a the smallest index.
std::vector<std::array<CandidateId, 3>> MajorityCycles3(
    const TournamentGraph& g);

// Ordered triples (i, j, k) with weight(i,j) + weight(j,k) < weight(i,k).
std::vector<std::array<CandidateId, 3>> CheckTriangleInequality(
    const TournamentGraph& g);

}  // namespace byzrank

#endif  // BYZRANK_TOURNAMENT_H_
