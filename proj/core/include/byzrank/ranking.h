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

#ifndef BYZRANK_RANKING_H_
#define BYZRANK_RANKING_H_

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace byzrank {

// Dense candidate index: a universe of m candidates uses exactly 0..m-1.
using CandidateId = int;

// A strict total order over m candidates, best first.
class Ranking {
 public:
  Ranking() = default;

  // Throws UsageError unless `order` is a permutation of 0..size-1.
  explicit Ranking(std::vector<CandidateId> order);

  static Ranking Identity(int m);

  int size() const { return static_cast<int>(order_.size()); }
  CandidateId at(int place) const { return order_[place]; }
  CandidateId top() const { return order_.front(); }
  int position(CandidateId c) const { return position_[c]; }
  bool Prefers(CandidateId a, CandidateId b) const {
    return position_[a] < position_[b];
  }
  const std::vector<CandidateId>& order() const { return order_; }

  // "c0>c1>c2" using 0-based indices.
  std::string ToString() const;

  // Lexicographic on order, which is the tie-break used everywhere a
  // deterministic representative is needed.
  friend bool operator==(const Ranking& a, const Ranking& b) {
    return a.order_ == b.order_;
  }
  friend auto operator<=>(const Ranking& a, const Ranking& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<CandidateId> order_;
  std::vector<int> position_;
};

// c_above is preferred to c_below.
struct PairRelation {
  CandidateId above = 0;
  CandidateId below = 0;

  PairRelation Reversed() const { return {below, above}; }
  friend auto operator<=>(const PairRelation&, const PairRelation&) = default;
};

using PairSet = std::set<PairRelation>;

// Ordered multiset of ballots over a common universe of m candidates.
class PreferenceProfile {
 public:
  // Throws UsageError if empty or if any ranking has size != m.
  PreferenceProfile(int m, std::vector<Ranking> rankings);

  int candidates() const { return m_; }
  int size() const { return static_cast<int>(rankings_.size()); }
  const Ranking& operator[](int i) const { return rankings_[i]; }
  const std::vector<Ranking>& rankings() const { return rankings_; }

  auto begin() const { return rankings_.begin(); }
  auto end() const { return rankings_.end(); }

  PreferenceProfile Concat(const PreferenceProfile& other) const;

 private:
  int m_;
  std::vector<Ranking> rankings_;
};

// Number of candidate pairs ordered differently by r and p, O(m^2).
std::int64_t KendallTau(const Ranking& r, const Ranking& p);

// Same value via merge-sort inversion counting, O(m log m).
std::int64_t KendallTauFast(const Ranking& r, const Ranking& p);

// Sum of KendallTau(r, p) over every ballot p.
std::int64_t TauProfile(const Ranking& r, const PreferenceProfile& profile);

Ranking Opposite(const Ranking& r);

// All m(m-1)/2 pairs ordered by r.
PairSet PairsOf(const Ranking& r);

// Pairs placed the same way by every ballot.
PairSet UnanimousPairs(std::span<const Ranking> rankings);
PairSet UnanimousPairs(const PreferenceProfile& profile);

// True iff r orders every pair in `pairs` as stated.
bool Respects(const Ranking& r, const PairSet& pairs);

constexpr std::int64_t PairCount(int m) {
  return static_cast<std::int64_t>(m) * (m - 1) / 2;
}

}  // namespace byzrank

#endif  // BYZRANK_RANKING_H_
