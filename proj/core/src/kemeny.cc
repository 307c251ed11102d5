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

#include "byzrank/kemeny.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "byzrank/errors.h"

namespace byzrank {

MedianResult KemenyBrute(const PreferenceProfile& profile) {
  const int m = profile.candidates();
  if (m > kBruteForceMaxCandidates) {
    throw CapacityError("brute-force Kemeny supports at most " +
                        std::to_string(kBruteForceMaxCandidates) +
                        " candidates, got " + std::to_string(m));
  }
  std::vector<CandidateId> order(m);
  std::iota(order.begin(), order.end(), 0);

  MedianResult result;
  result.cost = std::numeric_limits<std::int64_t>::max();
  // next_permutation walks the rankings in lexicographic order, so the
  // first minimizer seen is the chosen one.
  do {
    Ranking r(order);
    const std::int64_t cost = TauProfile(r, profile);
    if (cost < result.cost) {
      result.cost = cost;
      result.medians.clear();
    }
    if (cost == result.cost) result.medians.push_back(std::move(r));
  } while (std::next_permutation(order.begin(), order.end()));
  result.chosen = result.medians.front();
  return result;
}

namespace {

class SubsetProgram {
 public:
  explicit SubsetProgram(const TournamentGraph& g)
      : g_(g), m_(g.candidates()), full_((1u << m_) - 1) {
    cost_to_go_.assign(std::size_t{1} << m_, 0);
    for (std::uint32_t placed = full_; placed-- > 0;) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (int c = 0; c < m_; ++c) {
        if (placed & (1u << c)) continue;
        best = std::min(best, Step(placed, c) +
                                  cost_to_go_[placed | (1u << c)]);
      }
      cost_to_go_[placed] = best;
    }
  }

  std::int64_t optimum() const { return cost_to_go_[0]; }

  // Greedy walk taking the smallest feasible candidate at every place.
  Ranking Smallest() const {
    std::vector<CandidateId> order;
    std::uint32_t placed = 0;
    while (placed != full_) {
      for (int c = 0; c < m_; ++c) {
        if (Optimal(placed, c)) {
          order.push_back(c);
          placed |= 1u << c;
          break;
        }
      }
    }
    return Ranking(std::move(order));
  }

  // Depth-first listing in lexicographic order; false when cut off.
  bool Enumerate(std::size_t limit, std::vector<Ranking>& out) const {
    std::vector<CandidateId> prefix;
    return Walk(0, prefix, limit, out);
  }

 private:
  // Cost of placing c directly below `placed`: every remaining candidate
  // d now sits below c, contributing weight(d, c).
  std::int64_t Step(std::uint32_t placed, int c) const {
    std::int64_t cost = 0;
    for (int d = 0; d < m_; ++d) {
      if (d != c && !(placed & (1u << d))) cost += g_.weight(d, c);
    }
    return cost;
  }

  bool Optimal(std::uint32_t placed, int c) const {
    return !(placed & (1u << c)) &&
           Step(placed, c) + cost_to_go_[placed | (1u << c)] ==
               cost_to_go_[placed];
  }

  bool Walk(std::uint32_t placed, std::vector<CandidateId>& prefix,
            std::size_t limit, std::vector<Ranking>& out) const {
    if (placed == full_) {
      if (out.size() == limit) return false;
      out.emplace_back(prefix);
      return true;
    }
    for (int c = 0; c < m_; ++c) {
      if (!Optimal(placed, c)) continue;
      prefix.push_back(c);
      const bool complete = Walk(placed | (1u << c), prefix, limit, out);
      prefix.pop_back();
      if (!complete) return false;
    }
    return true;
  }

  const TournamentGraph& g_;
  int m_;
  std::uint32_t full_;
  std::vector<std::int64_t> cost_to_go_;
};

}  // namespace

MedianResult KemenyExact(const TournamentGraph& graph,
                         std::size_t max_medians) {
  const int m = graph.candidates();
  if (m > kExactMaxCandidates) {
    throw CapacityError("exact Kemeny supports at most " +
                        std::to_string(kExactMaxCandidates) +
                        " candidates, got " + std::to_string(m));
  }
  SubsetProgram program(graph);
  MedianResult result;
  result.cost = program.optimum();
  result.chosen = program.Smallest();
  result.truncated =
      !program.Enumerate(std::max<std::size_t>(max_medians, 1),
                         result.medians);
  return result;
}

MedianResult KemenyExact(const PreferenceProfile& profile,
                         std::size_t max_medians) {
  if (profile.candidates() > kExactMaxCandidates) {
    throw CapacityError("exact Kemeny supports at most " +
                        std::to_string(kExactMaxCandidates) +
                        " candidates, got " +
                        std::to_string(profile.candidates()));
  }
  return KemenyExact(TournamentGraph::FromProfile(profile), max_medians);
}

ApproxReport ApproxRatio(std::int64_t candidate_cost,
                         std::int64_t optimal_cost) {
  ApproxReport report{candidate_cost, optimal_cost, std::nullopt};
  if (optimal_cost > 0) {
    report.ratio = Rational(candidate_cost, optimal_cost);
  } else if (candidate_cost == 0) {
    report.ratio = Rational(1);
  }
  return report;
}

ApproxReport ApproxRatio(const Ranking& candidate,
                         const PreferenceProfile& profile) {
  const MedianResult median = KemenyExact(profile, 1);
  return ApproxRatio(TauProfile(candidate, profile), median.cost);
}

}  // namespace byzrank
