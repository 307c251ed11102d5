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
#include "byzrank/ranking.h"
#include "oracles.h"
#include "test_util.h"

namespace byzrank {
namespace {

using testing::P;
using testing::Profile;
using testing::R;
using testing::Repeat;

TEST(RankingTest, RejectsNonPermutations) {
  EXPECT_THROW(Ranking({0, 0, 1}), UsageError);
  EXPECT_THROW(Ranking({0, 2}), UsageError);
  EXPECT_THROW(Ranking({-1, 0}), UsageError);
  EXPECT_NO_THROW(Ranking({2, 0, 1}));
}

TEST(RankingTest, PositionsAndPreference) {
  const Ranking r = R({2, 3, 1});
  EXPECT_EQ(r.top(), 1);
  EXPECT_EQ(r.position(0), 2);
  EXPECT_TRUE(r.Prefers(1, 0));
  EXPECT_FALSE(r.Prefers(0, 2));
  EXPECT_EQ(r.ToString(), "c1>c2>c0");
}

TEST(KendallTauTest, Examples) {
  EXPECT_EQ(KendallTau(R({1, 2, 3}), R({1, 2, 3})), 0);
  EXPECT_EQ(KendallTau(R({1, 2, 3}), R({3, 2, 1})), 3);
  EXPECT_EQ(KendallTau(R({1, 2, 3}), R({2, 3, 1})), 2);
}

TEST(KendallTauTest, MismatchedUniverses) {
  EXPECT_THROW(KendallTau(R({1, 2}), R({1, 2, 3})), UsageError);
  EXPECT_THROW(KendallTauFast(R({1, 2}), R({1, 2, 3})), UsageError);
}

TEST(KendallTauTest, MatchesOracleAndFastVersion) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    const int m = 1 + static_cast<int>(rng() % 12);
    const Ranking r(oracle::RandomOrder(rng, m));
    const Ranking p(oracle::RandomOrder(rng, m));
    const std::int64_t expect = oracle::Tau(r.order(), p.order());
    ASSERT_EQ(KendallTau(r, p), expect);
    ASSERT_EQ(KendallTauFast(r, p), expect);
  }
}

TEST(KendallTauTest, MetricProperties) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 1000; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const Ranking r(oracle::RandomOrder(rng, m));
    const Ranking p(oracle::RandomOrder(rng, m));
    const Ranking q(oracle::RandomOrder(rng, m));
    ASSERT_EQ(KendallTau(r, p), KendallTau(p, r));
    ASSERT_EQ(KendallTau(r, Opposite(r)), PairCount(m));
    ASSERT_LE(KendallTau(r, q), KendallTau(r, p) + KendallTau(p, q));
    ASSERT_GE(KendallTau(r, p), 0);
    ASSERT_LE(KendallTau(r, p), PairCount(m));
  }
}

TEST(TauProfileTest, Examples) {
  const PreferenceProfile cycle =
      Profile({R({1, 2, 3}), R({2, 3, 1}), R({3, 1, 2})});
  EXPECT_EQ(TauProfile(R({1, 2, 3}), cycle), 4);
  EXPECT_EQ(TauProfile(R({1, 2, 3}), Profile(Repeat(R({1, 2, 3}), 5))), 0);
  EXPECT_THROW(PreferenceProfile(3, {}), UsageError);
}

TEST(TauProfileTest, OppositeIdentity) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Ranking> ballots;
    for (int i = 0; i < n; ++i) ballots.emplace_back(oracle::RandomOrder(rng, m));
    const PreferenceProfile profile(m, ballots);
    const Ranking r(oracle::RandomOrder(rng, m));
    ASSERT_EQ(TauProfile(r, profile) + TauProfile(Opposite(r), profile),
              n * PairCount(m));
  }
}

TEST(OppositeTest, Examples) {
  EXPECT_EQ(Opposite(R({1, 2, 3})), R({3, 2, 1}));
  EXPECT_EQ(Opposite(R({1})), R({1}));
  EXPECT_EQ(Opposite(R({2, 1, 4, 3})), R({3, 4, 1, 2}));
  EXPECT_EQ(Opposite(Opposite(R({2, 4, 1, 3}))), R({2, 4, 1, 3}));
}

TEST(UnanimousPairsTest, Examples) {
  EXPECT_EQ(UnanimousPairs(Profile(Repeat(R({1, 2, 3}), 4))),
            (PairSet{P(1, 2), P(1, 3), P(2, 3)}));
  EXPECT_TRUE(UnanimousPairs(Profile({R({1, 2, 3}), R({3, 2, 1})})).empty());
  EXPECT_EQ(UnanimousPairs(Profile({R({1, 2, 3}), R({1, 3, 2})})),
            (PairSet{P(1, 2), P(1, 3)}));
}

TEST(UnanimousPairsTest, SingletonGivesAllPairs) {
  const Ranking r = R({3, 1, 4, 2});
  EXPECT_EQ(UnanimousPairs(Profile({r})), PairsOf(r));
  EXPECT_EQ(PairsOf(r).size(), 6u);
}

TEST(UnanimousPairsTest, MatchesOracleAndIsRespected) {
  std::mt19937_64 rng(14);
  for (int iter = 0; iter < 500; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<Ranking> ballots;
    for (int i = 0; i < n; ++i) ballots.emplace_back(oracle::RandomOrder(rng, m));
    const PairSet got = UnanimousPairs(PreferenceProfile(m, ballots));
    std::set<std::pair<int, int>> as_pairs;
    for (const PairRelation& p : got) as_pairs.insert({p.above, p.below});
    ASSERT_EQ(as_pairs, oracle::Unanimous(oracle::Orders(ballots), m));
    for (const Ranking& b : ballots) ASSERT_TRUE(Respects(b, got));
  }
}

TEST(RespectsTest, RangeChecked) {
  EXPECT_TRUE(Respects(R({1, 2, 3}), {P(1, 3)}));
  EXPECT_FALSE(Respects(R({1, 2, 3}), {P(3, 1)}));
  EXPECT_FALSE(Respects(R({1, 2}), {P(1, 3)}));
}

TEST(ProfileTest, ConcatKeepsOrder) {
  const PreferenceProfile a = Profile({R({1, 2})});
  const PreferenceProfile b = Profile({R({2, 1}), R({1, 2})});
  const PreferenceProfile c = a.Concat(b);
  ASSERT_EQ(c.size(), 3);
  EXPECT_EQ(c[1], R({2, 1}));
  EXPECT_THROW(a.Concat(Profile({R({1, 2, 3})})), UsageError);
}

}  // namespace
}  // namespace byzrank
