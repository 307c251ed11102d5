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

// Slow, obviously-correct reference implementations. They share no code
// with the library beyond the Ranking value type.

#ifndef BYZRANK_TESTS_ORACLES_H_
#define BYZRANK_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "byzrank/ranking.h"

namespace byzrank::oracle {

using Order = std::vector<int>;

// True iff a comes before b in `order`, by linear scan.
inline bool Before(const Order& order, int a, int b) {
  for (int c : order) {
    if (c == a) return true;
    if (c == b) return false;
  }
  return false;
}

inline std::int64_t Tau(const Order& r, const Order& p) {
  std::int64_t d = 0;
  const int m = static_cast<int>(r.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (Before(r, a, b) != Before(p, a, b)) ++d;
    }
  }
  return d;
}

inline std::int64_t TauProfile(const Order& r, const std::vector<Order>& P) {
  std::int64_t d = 0;
  for (const Order& p : P) d += Tau(r, p);
  return d;
}

inline std::set<std::pair<int, int>> Unanimous(const std::vector<Order>& P,
                                                int m) {
  std::set<std::pair<int, int>> out;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      bool all = true;
      for (const Order& p : P) all = all && Before(p, a, b);
      if (all) out.insert({a, b});
    }
  }
  return out;
}

struct Median {
  std::int64_t cost = 0;
  std::vector<Order> all;  // lexicographic
};

inline Median BruteMedian(const std::vector<Order>& P, int m) {
  Order perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Median best;
  bool first = true;
  do {
    const std::int64_t c = TauProfile(perm, P);
    if (first || c < best.cost) {
      first = false;
      best.cost = c;
      best.all = {perm};
    } else if (c == best.cost) {
      best.all.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::int64_t MaxCost(const std::vector<Order>& P, int m) {
  Order perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    best = std::max(best, TauProfile(perm, P));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<Order> Orders(const std::vector<Ranking>& rs) {
  std::vector<Order> out;
  for (const Ranking& r : rs) out.push_back(r.order());
  return out;
}

inline Order RandomOrder(std::mt19937_64& rng, int m) {
  Order o(m);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

}  // namespace byzrank::oracle

#endif  // BYZRANK_TESTS_ORACLES_H_
