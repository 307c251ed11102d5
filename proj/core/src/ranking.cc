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

#include "byzrank/ranking.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "byzrank/errors.h"

namespace byzrank {

Ranking::Ranking(std::vector<CandidateId> order) : order_(std::move(order)) {
  const int m = size();
  position_.assign(m, -1);
  for (int place = 0; place < m; ++place) {
    const CandidateId c = order_[place];
    if (c < 0 || c >= m) {
      throw UsageError("ranking names candidate " + std::to_string(c) +
                       " outside 0.." + std::to_string(m - 1));
    }
    if (position_[c] != -1) {
      throw UsageError("ranking lists candidate " + std::to_string(c) +
                       " twice");
    }
    position_[c] = place;
  }
}

Ranking Ranking::Identity(int m) {
  std::vector<CandidateId> order(m);
  std::iota(order.begin(), order.end(), 0);
  return Ranking(std::move(order));
}

std::string Ranking::ToString() const {
  std::string out;
  for (int place = 0; place < size(); ++place) {
    if (place > 0) out += '>';
    out += 'c';
    out += std::to_string(order_[place]);
  }
  return out;
}

PreferenceProfile::PreferenceProfile(int m, std::vector<Ranking> rankings)
    : m_(m), rankings_(std::move(rankings)) {
  if (rankings_.empty()) {
    throw UsageError("preference profile must hold at least one ranking");
  }
  for (const Ranking& r : rankings_) {
    if (r.size() != m_) {
      throw UsageError("ranking over " + std::to_string(r.size()) +
                       " candidates in a profile over " + std::to_string(m_));
    }
  }
}

PreferenceProfile PreferenceProfile::Concat(
    const PreferenceProfile& other) const {
  if (other.m_ != m_) throw UsageError("profiles over different universes");
  std::vector<Ranking> all = rankings_;
  all.insert(all.end(), other.rankings_.begin(), other.rankings_.end());
  return PreferenceProfile(m_, std::move(all));
}

namespace {

void RequireSameUniverse(const Ranking& r, const Ranking& p) {
  if (r.size() != p.size()) {
    throw UsageError("rankings over " + std::to_string(r.size()) + " and " +
                     std::to_string(p.size()) + " candidates");
  }
}

std::int64_t MergeCount(std::vector<int>& a, std::vector<int>& scratch,
                        int lo, int hi) {
  if (hi - lo < 2) return 0;
  const int mid = lo + (hi - lo) / 2;
  std::int64_t inversions =
      MergeCount(a, scratch, lo, mid) + MergeCount(a, scratch, mid, hi);
  int i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      scratch[k++] = a[i++];
    } else {
      inversions += mid - i;
      scratch[k++] = a[j++];
    }
  }
  while (i < mid) scratch[k++] = a[i++];
  while (j < hi) scratch[k++] = a[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, a.begin() + lo);
  return inversions;
}

}  // namespace

std::int64_t KendallTau(const Ranking& r, const Ranking& p) {
  RequireSameUniverse(r, p);
  const int m = r.size();
  std::int64_t disagreements = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      // r places at(i) above at(j); count when p reverses it.
      if (p.position(r.at(i)) > p.position(r.at(j))) ++disagreements;
    }
  }
  return disagreements;
}

std::int64_t KendallTauFast(const Ranking& r, const Ranking& p) {
  RequireSameUniverse(r, p);
  const int m = r.size();
  std::vector<int> seq(m);
  for (int place = 0; place < m; ++place) seq[place] = p.position(r.at(place));
  std::vector<int> scratch(m);
  return MergeCount(seq, scratch, 0, m);
}

std::int64_t TauProfile(const Ranking& r, const PreferenceProfile& profile) {
  if (r.size() != profile.candidates()) {
    throw UsageError("ranking and profile over different universes");
  }
  std::int64_t total = 0;
  for (const Ranking& p : profile) total += KendallTau(r, p);
  return total;
}

Ranking Opposite(const Ranking& r) {
  std::vector<CandidateId> order(r.order().rbegin(), r.order().rend());
  return Ranking(std::move(order));
}

PairSet PairsOf(const Ranking& r) {
  PairSet pairs;
  for (int i = 0; i < r.size(); ++i) {
    for (int j = i + 1; j < r.size(); ++j) pairs.insert({r.at(i), r.at(j)});
  }
  return pairs;
}

PairSet UnanimousPairs(std::span<const Ranking> rankings) {
  if (rankings.empty()) return {};
  PairSet pairs = PairsOf(rankings.front());
  for (const Ranking& r : rankings.subspan(1)) {
    if (r.size() != rankings.front().size()) {
      throw UsageError("rankings over different universes");
    }
    std::erase_if(pairs, [&r](const PairRelation& p) {
      return !r.Prefers(p.above, p.below);
    });
  }
  return pairs;
}

PairSet UnanimousPairs(const PreferenceProfile& profile) {
  return UnanimousPairs(std::span<const Ranking>(profile.rankings()));
}

bool Respects(const Ranking& r, const PairSet& pairs) {
  return std::all_of(pairs.begin(), pairs.end(), [&r](const PairRelation& p) {
    return p.above >= 0 && p.below >= 0 && p.above < r.size() &&
           p.below < r.size() &&
           r.Prefers(p.above, p.below);
  });
}

}  // namespace byzrank
