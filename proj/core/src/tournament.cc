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

#include "byzrank/tournament.h"

#include <string>
#include <utility>

#include "byzrank/errors.h"

namespace byzrank {

TournamentGraph TournamentGraph::FromProfile(
    const PreferenceProfile& profile) {
  const int m = profile.candidates();
  std::vector<std::int64_t> w(static_cast<std::size_t>(m) * m, 0);
  for (const Ranking& r : profile) {
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        ++w[static_cast<std::size_t>(r.at(a)) * m + r.at(b)];
      }
    }
  }
  return TournamentGraph(m, profile.size(), std::move(w), true);
}

TournamentGraph TournamentGraph::FromWeights(
    int m, std::int64_t voters, std::vector<std::int64_t> weights) {
  if (m < 0 || weights.size() != static_cast<std::size_t>(m) * m) {
    throw UsageError("weight matrix must be m x m");
  }
  for (int i = 0; i < m; ++i) {
    if (weights[static_cast<std::size_t>(i) * m + i] != 0) {
      throw UsageError("diagonal weight must be zero");
    }
    for (int j = 0; j < m; ++j) {
      const std::int64_t w = weights[static_cast<std::size_t>(i) * m + j];
      if (w < 0) throw UsageError("negative edge weight");
      if (i != j &&
          w + weights[static_cast<std::size_t>(j) * m + i] != voters) {
        throw UsageError("forward and backward weights of (" +
                         std::to_string(i) + "," + std::to_string(j) +
                         ") must sum to the voter count");
      }
    }
  }
  return TournamentGraph(m, voters, std::move(weights), false);
}

EdgeClass TournamentGraph::Classify(CandidateId i, CandidateId j) const {
  const std::int64_t forward = weight(i, j), backward = weight(j, i);
  if (forward > backward) return EdgeClass::kMajority;
  if (forward < backward) return EdgeClass::kMinority;
  return EdgeClass::kTied;
}

TournamentGraph TournamentGraph::WithBallot(const Ranking& ballot) const {
  if (ballot.size() != m_) throw UsageError("ballot over wrong universe");
  std::vector<std::int64_t> w = w_;
  for (int a = 0; a < m_; ++a) {
    for (int b = a + 1; b < m_; ++b) {
      ++w[static_cast<std::size_t>(ballot.at(a)) * m_ + ballot.at(b)];
    }
  }
  return TournamentGraph(m_, voters_ + 1, std::move(w), realized_);
}

std::int64_t BackwardWeight(const TournamentGraph& g, const Ranking& r) {
  if (r.size() != g.candidates()) {
    throw UsageError("ranking and graph over different universes");
  }
  std::int64_t total = 0;
  for (int a = 0; a < r.size(); ++a) {
    for (int b = a + 1; b < r.size(); ++b) total += g.weight(r.at(b), r.at(a));
  }
  return total;
}

std::vector<std::array<CandidateId, 3>> MajorityCycles3(
    const TournamentGraph& g) {
  auto beats = [&g](CandidateId i, CandidateId j) {
    return g.Classify(i, j) == EdgeClass::kMajority;
  };
  std::vector<std::array<CandidateId, 3>> cycles;
  const int m = g.candidates();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        if (beats(i, j) && beats(j, k) && beats(k, i)) {
          cycles.push_back({i, j, k});
        } else if (beats(i, k) && beats(k, j) && beats(j, i)) {
          cycles.push_back({i, k, j});
        }
      }
    }
  }
  return cycles;
}

std::vector<std::array<CandidateId, 3>> CheckTriangleInequality(
    const TournamentGraph& g) {
  std::vector<std::array<CandidateId, 3>> violations;
  const int m = g.candidates();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        if (g.weight(i, j) + g.weight(j, k) < g.weight(i, k)) {
          violations.push_back({i, j, k});
        }
      }
    }
  }
  return violations;
}

}  // namespace byzrank
