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

#include <gtest/gtest.h>

#include <random>

#include "byzrank/errors.h"
#include "byzrank/kemeny.h"
#include "byzrank/rational.h"
#include "oracles.h"
#include "test_util.h"

namespace byzrank {
namespace {

using testing::Profile;
using testing::R;
using testing::Repeat;

PreferenceProfile RandomProfile(std::mt19937_64& rng, int m, int n) {
  std::vector<Ranking> ballots;
  for (int i = 0; i < n; ++i) ballots.emplace_back(oracle::RandomOrder(rng, m));
  return PreferenceProfile(m, ballots);
}

TEST(RationalTest, ReducesAndOrders) {
  EXPECT_EQ(Rational(6, 4).ToString(), "3/2");
  EXPECT_EQ(Rational(3, -6).ToString(), "-1/2");
  EXPECT_EQ(Rational(2).ToString(), "2/1");
  EXPECT_THROW(Rational(1, 0), UsageError);
  EXPECT_LT(Rational(11, 9), Rational(5, 4));
  EXPECT_EQ(Rational(22, 18), Rational(11, 9));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(3, 2) - Rational(2), Rational(-1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 3), Rational(1, 2));
  EXPECT_DOUBLE_EQ(Rational(5, 4).ToDouble(), 1.25);
}

TEST(KemenyTest, BruteExamples) {
  const MedianResult u = KemenyBrute(Profile(Repeat(R({1, 2, 3}), 3)));
  EXPECT_EQ(u.cost, 0);
  EXPECT_EQ(u.medians, (std::vector<Ranking>{R({1, 2, 3})}));

  const MedianResult c =
      KemenyBrute(Profile({R({1, 2, 3}), R({2, 3, 1}), R({3, 1, 2})}));
  EXPECT_EQ(c.cost, 4);
  EXPECT_EQ(c.medians,
            (std::vector<Ranking>{R({1, 2, 3}), R({2, 3, 1}), R({3, 1, 2})}));
  EXPECT_EQ(c.chosen, R({1, 2, 3}));

  const MedianResult two = KemenyBrute(Profile({R({1, 2}), R({2, 1})}));
  EXPECT_EQ(two.cost, 1);
  EXPECT_EQ(two.medians.size(), 2u);
  EXPECT_EQ(two.chosen, R({1, 2}));
}

TEST(KemenyTest, ExactMatchesExamples) {
  const MedianResult c =
      KemenyExact(Profile({R({1, 2, 3}), R({2, 3, 1}), R({3, 1, 2})}));
  EXPECT_EQ(c.cost, 4);
  EXPECT_EQ(c.medians.size(), 3u);
  EXPECT_EQ(c.chosen, R({1, 2, 3}));
  EXPECT_EQ(KemenyExact(Profile(Repeat(R({4, 2, 3, 1}), 7))).chosen,
            R({4, 2, 3, 1}));
}

TEST(KemenyTest, BinaryLeftViewMedian) {
  // 6 x r and 3 x opposite(r): r costs 3 * C(m,2).
  for (int m = 2; m <= 6; ++m) {
    const Ranking r = Ranking::Identity(m);
    std::vector<Ranking> ballots = Repeat(r, 6);
    for (int i = 0; i < 3; ++i) ballots.push_back(Opposite(r));
    const MedianResult res = KemenyExact(PreferenceProfile(m, ballots));
    EXPECT_EQ(res.chosen, r);
    EXPECT_EQ(res.cost, 3 * PairCount(m));
  }
}

TEST(KemenyTest, ExactAndBruteAgreeWithOracle) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 500; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const int n = 1 + static_cast<int>(rng() % 9);
    const PreferenceProfile p = RandomProfile(rng, m, n);
    const oracle::Median want = oracle::BruteMedian(oracle::Orders(p.rankings()), m);
    const MedianResult exact = KemenyExact(p);
    const MedianResult brute = KemenyBrute(p);
    ASSERT_EQ(exact.cost, want.cost);
    ASSERT_EQ(brute.cost, want.cost);
    ASSERT_EQ(exact.chosen.order(), want.all.front());
    ASSERT_EQ(brute.chosen.order(), want.all.front());
    ASSERT_EQ(oracle::Orders(exact.medians), want.all);
    ASSERT_EQ(oracle::Orders(brute.medians), want.all);
    ASSERT_FALSE(exact.truncated);
  }
}

TEST(KemenyTest, CondorcetWinnerRankedFirst) {
  std::mt19937_64 rng(32);
  int checked = 0;
  for (int iter = 0; iter < 600; ++iter) {
    const int m = 3 + static_cast<int>(rng() % 4);
    const PreferenceProfile p = RandomProfile(rng, m, 1 + rng() % 9);
    const TournamentGraph g = TournamentGraph::FromProfile(p);
    for (int c = 0; c < m; ++c) {
      bool wins = true;
      for (int d = 0; d < m && wins; ++d) {
        if (d != c) wins = g.weight(c, d) > g.weight(d, c);
      }
      if (wins) {
        ++checked;
        for (const Ranking& med : KemenyExact(p).medians) {
          ASSERT_EQ(med.top(), c);
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(KemenyTest, OppositeOfMedianIsWorst) {
  std::mt19937_64 rng(33);
  for (int iter = 0; iter < 200; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const PreferenceProfile p = RandomProfile(rng, m, 1 + rng() % 8);
    const Ranking worst = Opposite(KemenyExact(p).chosen);
    ASSERT_EQ(TauProfile(worst, p),
              oracle::MaxCost(oracle::Orders(p.rankings()), m));
  }
}

TEST(KemenyTest, ReinforcementOnUniqueMedians) {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int iter = 0; iter < 400 && checked < 50; ++iter) {
    const int m = 3 + static_cast<int>(rng() % 3);
    const PreferenceProfile p1 = RandomProfile(rng, m, 3 + rng() % 5);
    const MedianResult r1 = KemenyExact(p1);
    if (r1.medians.size() != 1) continue;
    std::vector<Ranking> b2 = Repeat(r1.chosen, 2);
    b2.emplace_back(oracle::RandomOrder(rng, m));
    b2.emplace_back(oracle::RandomOrder(rng, m));
    const PreferenceProfile p2(m, b2);
    const MedianResult r2 = KemenyExact(p2);
    if (r2.medians.size() != 1 || r2.chosen != r1.chosen) continue;
    ++checked;
    const MedianResult both = KemenyExact(p1.Concat(p2));
    ASSERT_EQ(both.cost, TauProfile(r1.chosen, p1.Concat(p2)));
  }
  EXPECT_GE(checked, 20);
}

TEST(KemenyTest, Capacity) {
  EXPECT_THROW(KemenyBrute(Profile({Ranking::Identity(9)})), CapacityError);
  EXPECT_THROW(KemenyExact(Profile({Ranking::Identity(17)})), CapacityError);
  EXPECT_NO_THROW(KemenyExact(Profile({Ranking::Identity(16)})));
}

TEST(KemenyTest, TruncatedTieSetKeepsExactCost) {
  const Ranking r = Ranking::Identity(10);
  const MedianResult res = KemenyExact(Profile({r, Opposite(r)}), 100);
  EXPECT_TRUE(res.truncated);
  EXPECT_EQ(res.medians.size(), 100u);
  EXPECT_EQ(res.cost, PairCount(10));
  EXPECT_EQ(res.chosen, r);
  EXPECT_TRUE(std::is_sorted(res.medians.begin(), res.medians.end()));
}

TEST(ApproxRatioTest, Examples) {
  const PreferenceProfile cycle =
      Profile({R({1, 2, 3}), R({2, 3, 1}), R({3, 1, 2})});
  EXPECT_EQ(*ApproxRatio(KemenyExact(cycle).chosen, cycle).ratio, Rational(1));

  const PreferenceProfile unanimous = Profile(Repeat(R({1, 2, 3}), 4));
  const ApproxReport inf = ApproxRatio(R({3, 2, 1}), unanimous);
  EXPECT_TRUE(inf.infinite());
  EXPECT_EQ(inf.candidate_cost, 4 * 3);
  EXPECT_EQ(inf.RatioString(), "inf");

  // 6 x c2>c1 and 3 x c1>c2, candidate c1>c2: 6 against 3.
  std::vector<Ranking> ballots = Repeat(R({2, 1}), 6);
  for (int i = 0; i < 3; ++i) ballots.push_back(R({1, 2}));
  const ApproxReport two = ApproxRatio(R({1, 2}), Profile(ballots));
  EXPECT_EQ(two.RatioString(), "2/1");

  EXPECT_EQ(ApproxRatio(0, 0).RatioString(), "1/1");
}

}  // namespace
}  // namespace byzrank
