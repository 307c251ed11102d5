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

#include <optional>
#include <random>

#include "byzrank/errors.h"
#include "byzrank/protocol.h"
#include "test_util.h"

namespace byzrank {
namespace {

using testing::P;
using testing::R;

std::vector<std::optional<Ranking>> Received(std::vector<Ranking> rs) {
  return {rs.begin(), rs.end()};
}

std::optional<ProposeBatch> Batch(std::vector<PairRelation> pairs) {
  return ProposeBatch{std::move(pairs)};
}

TEST(ProtocolConfigTest, ValidatesResilienceBound) {
  EXPECT_NO_THROW(ProtocolConfig::Make(4, 1, 3).Validate());
  try {
    ProtocolConfig::Make(6, 2, 3).Validate();
    FAIL() << "expected a usage error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("t < n/3"), std::string::npos);
  }
  EXPECT_NO_THROW(ProtocolConfig::Make(6, 2, 3).Validate(false));
  EXPECT_THROW(ProtocolConfig::Make(4, 1, 0).Validate(), UsageError);
}

TEST(ProtocolConfigTest, DictatorSchedule) {
  ProtocolConfig cfg = ProtocolConfig::Make(7, 2, 3);
  EXPECT_EQ(cfg.dictator_schedule, (std::vector<NodeId>{0, 1, 2}));
  cfg.dictator_schedule = {4, 4, 1};
  EXPECT_THROW(cfg.Validate(), UsageError);
  cfg.dictator_schedule = {4, 1};
  EXPECT_THROW(cfg.Validate(), UsageError);
  cfg.dictator_schedule = {4, 1, 7};
  EXPECT_THROW(cfg.Validate(), UsageError);
  cfg.dictator_schedule = {6, 5, 0};
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.dictator(1), 5);
}

TEST(ProtocolConfigTest, RoundCounts) {
  const ProtocolConfig cfg = ProtocolConfig::Make(10, 3, 5);
  EXPECT_EQ(RoundCount(ProtocolKind::kParetoKing, cfg), 4);
  EXPECT_EQ(RoundCount(ProtocolKind::kKemenyMedian, cfg), 6);
  EXPECT_EQ(RoundCount(ProtocolKind::kSequentialStv, cfg), 16);
  EXPECT_EQ(RoundCount(ProtocolKind::kSequentialStv,
                       ProtocolConfig::Make(4, 1, 3)),
            4);
}

TEST(ProtocolConfigTest, ScheduleCoversEveryRound) {
  const ProtocolConfig cfg = ProtocolConfig::Make(7, 2, 4);
  for (ProtocolKind kind :
       {ProtocolKind::kParetoKing, ProtocolKind::kKemenyMedian,
        ProtocolKind::kSequentialStv}) {
    const auto steps = Schedule(kind, cfg);
    ASSERT_FALSE(steps.empty());
    EXPECT_EQ(steps.front().round, 1);
    EXPECT_EQ(steps.back().round, RoundCount(kind, cfg));
    for (std::size_t i = 1; i < steps.size(); ++i) {
      EXPECT_GE(steps[i].round, steps[i - 1].round);
      EXPECT_LE(steps[i].round, steps[i - 1].round + 1);
    }
  }
}

TEST(ProtocolConfigTest, Names) {
  EXPECT_EQ(ParseProtocolKind("alg1"), ProtocolKind::kParetoKing);
  EXPECT_EQ(ParseProtocolKind("alg2"), ProtocolKind::kKemenyMedian);
  EXPECT_EQ(ParseProtocolKind("stv-baseline"), ProtocolKind::kSequentialStv);
  EXPECT_EQ(ToString(ProtocolKind::kKemenyMedian), "alg2");
  EXPECT_THROW(ParseProtocolKind("alg3"), UsageError);
}

TEST(ComputeProposalsTest, Examples) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  const Ranking r = R({2, 1, 3});
  EXPECT_EQ(ComputeProposals(Received({r, r, r, r}), cfg), PairsOf(r));

  const ProtocolConfig two = ProtocolConfig::Make(4, 1, 2);
  EXPECT_EQ(ComputeProposals(
                Received({R({1, 2}), R({1, 2}), R({1, 2}), R({2, 1})}), two),
            (PairSet{P(1, 2)}));
  EXPECT_TRUE(ComputeProposals(
                  Received({R({1, 2}), R({1, 2}), R({2, 1}), R({2, 1})}), two)
                  .empty());
}

TEST(ComputeProposalsTest, AbsentRankingsSupportNothing) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 2);
  std::vector<std::optional<Ranking>> got = {R({1, 2}), R({1, 2}), std::nullopt,
                                             R({1, 2})};
  EXPECT_EQ(ComputeProposals(got, cfg), (PairSet{P(1, 2)}));
  got[0] = std::nullopt;
  EXPECT_TRUE(ComputeProposals(got, cfg).empty());
}

TEST(CollectFixedPairsTest, Threshold) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  std::vector<std::optional<ProposeBatch>> batches = {
      Batch({P(1, 2)}), Batch({P(1, 2), P(2, 3)}), Batch({}), std::nullopt};
  EXPECT_EQ(CollectFixedPairs(batches, cfg), (PairSet{P(1, 2)}));
}

TEST(CollectFixedPairsTest, OpposingPairsRaiseIntegrityError) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 2);
  std::vector<std::optional<ProposeBatch>> batches = {
      Batch({P(1, 2)}), Batch({P(1, 2)}), Batch({P(2, 1)}), Batch({P(2, 1)})};
  EXPECT_THROW(CollectFixedPairs(batches, cfg), IntegrityError);
}

TEST(CollectFixedPairsTest, CycleRaisesIntegrityError) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  const std::vector<PairRelation> cycle = {P(1, 2), P(2, 3), P(3, 1)};
  std::vector<std::optional<ProposeBatch>> batches = {
      Batch(cycle), Batch(cycle), std::nullopt, std::nullopt};
  EXPECT_THROW(CollectFixedPairs(batches, cfg), IntegrityError);
}

TEST(CollectFixedPairsTest, BothOrientationsInOneBatchAreDropped) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  std::vector<std::optional<ProposeBatch>> batches = {
      Batch({P(1, 2), P(2, 1), P(1, 3)}), Batch({P(1, 2), P(1, 3)}),
      std::nullopt, std::nullopt};
  EXPECT_EQ(CollectFixedPairs(batches, cfg), (PairSet{P(1, 3)}));
}

TEST(CollectFixedPairsTest, DuplicatePairsInABatchCountOnce) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  std::vector<std::optional<ProposeBatch>> batches = {
      Batch({P(1, 2), P(1, 2)}), std::nullopt, std::nullopt, std::nullopt};
  EXPECT_TRUE(CollectFixedPairs(batches, cfg).empty());
}

TEST(HasCycleTest, Basic) {
  EXPECT_FALSE(HasCycle({P(1, 2), P(2, 3)}, 3));
  EXPECT_TRUE(HasCycle({P(1, 2), P(2, 3), P(3, 1)}, 3));
  EXPECT_TRUE(HasCycle({P(1, 2), P(2, 1)}, 2));
}

TEST(AcyclicSubsetTest, KeepsAcyclicInputWhole) {
  const PairSet pairs = {P(1, 2), P(2, 3), P(1, 3)};
  EXPECT_EQ(AcyclicSubset(pairs, 3), pairs);
}

TEST(AcyclicSubsetTest, DropsTheWeakestPairOfACycle) {
  const PairSet cycle = {P(1, 2), P(2, 3), P(3, 4), P(4, 1)};
  // Support for 4>1 is lowest, so it is the pair left out.
  std::vector<int> support(16, 3);
  support[3 * 4 + 0] = 2;
  EXPECT_EQ(AcyclicSubset(cycle, 4, support),
            (PairSet{P(1, 2), P(2, 3), P(3, 4)}));
  // Equal support falls back to pair order: 1>2, 2>3, 3>4 go first.
  EXPECT_EQ(AcyclicSubset(cycle, 4), (PairSet{P(1, 2), P(2, 3), P(3, 4)}));
}

TEST(AcyclicSubsetTest, ResultIsAlwaysAcyclic) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    PairSet pairs;
    std::vector<int> support(m * m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        support[a * m + b] = static_cast<int>(rng() % 5);
        if (a != b && rng() % 2 == 0) pairs.insert({a, b});
      }
    }
    const PairSet kept = AcyclicSubset(pairs, m, support);
    EXPECT_FALSE(HasCycle(kept, m));
    for (const PairRelation& p : kept) EXPECT_TRUE(pairs.contains(p));
    // Maximal: every dropped pair would close a cycle.
    for (const PairRelation& p : pairs) {
      if (kept.contains(p)) continue;
      PairSet more = kept;
      more.insert(p);
      EXPECT_TRUE(HasCycle(more, m));
    }
  }
}

TEST(PairSupportTest, CountsRankingsPerOrderedPair) {
  const std::vector<std::optional<Ranking>> received = {
      R({1, 2, 3}), R({2, 1, 3}), std::nullopt};
  const std::vector<int> support = PairSupport(received, 3);
  EXPECT_EQ(support[0 * 3 + 1], 1);
  EXPECT_EQ(support[1 * 3 + 0], 1);
  EXPECT_EQ(support[0 * 3 + 2], 2);
  EXPECT_EQ(support[2 * 3 + 0], 0);
}

TEST(AdjustRankingTest, Examples) {
  EXPECT_EQ(AdjustRanking(R({1, 2, 3}), {}), R({1, 2, 3}));
  EXPECT_EQ(AdjustRanking(R({1, 2, 3}), {P(3, 1)}), R({3, 1, 2}));
  EXPECT_EQ(AdjustRanking(R({3, 2, 1}), {P(1, 2), P(2, 3)}), R({1, 2, 3}));
}

TEST(AdjustRankingTest, TwoBlocks) {
  // Fixed candidates c2, c4 go first (c4 before c2), rest keep own order.
  EXPECT_EQ(AdjustRanking(R({1, 2, 3, 4, 5}), {P(4, 2)}),
            R({4, 2, 1, 3, 5}));
  // Unconstrained fixed-block candidates keep their own relative order.
  EXPECT_EQ(AdjustRanking(R({5, 4, 3, 2, 1}), {P(1, 2), P(3, 4)}),
            R({3, 4, 1, 2, 5}));
}

TEST(AdjustRankingTest, OutputRespectsFixedPairs) {
  const PairSet fixed = {P(5, 1), P(1, 3), P(2, 4)};
  const Ranking out = AdjustRanking(R({1, 2, 3, 4, 5}), fixed);
  EXPECT_TRUE(Respects(out, fixed));
  EXPECT_THROW(AdjustRanking(R({1, 2, 3}), {P(1, 2), P(2, 3), P(3, 1)}),
               IntegrityError);
}

TEST(DecideDictatorTest, Examples) {
  const Ranking own = R({2, 3, 1});
  EXPECT_EQ(DecideDictator(own, {P(1, 2)}, R({1, 3, 2})), R({1, 3, 2}));
  EXPECT_EQ(DecideDictator(own, {P(1, 2)}, R({2, 1, 3})), own);
  EXPECT_EQ(DecideDictator(own, {P(1, 2)}, std::nullopt), own);
  EXPECT_EQ(DecideDictator(own, {}, R({1, 2})), own);
}

TEST(MessageCountTest, ClosedForm) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(KingRoundCorrectMessages(n, n, true), 2LL * n * n + n);
  }
  EXPECT_EQ(KingRoundCorrectMessages(7, 5, false), 70);

  const ProtocolConfig cfg = ProtocolConfig::Make(7, 2, 3);
  const std::vector<NodeId> byz = {1, 6};
  const auto alg1 = CorrectMessagesClosedForm(ProtocolKind::kParetoKing, cfg, byz);
  EXPECT_EQ(alg1, (std::vector<std::int64_t>{77, 70, 77}));
  const auto alg2 =
      CorrectMessagesClosedForm(ProtocolKind::kKemenyMedian, cfg, byz);
  EXPECT_EQ(alg2, (std::vector<std::int64_t>{35, 0, 77, 70, 77}));
  EXPECT_TRUE(
      CorrectMessagesClosedForm(ProtocolKind::kSequentialStv, cfg, byz).empty());
}

// Drives Pareto King nodes directly, without the simulator.
std::vector<Ranking> RunNodes(ProtocolKind kind, const ProtocolConfig& cfg,
                              const std::vector<Ranking>& inputs) {
  std::vector<std::unique_ptr<Node>> nodes;
  for (NodeId id = 0; id < cfg.n; ++id) {
    nodes.push_back(MakeNode(kind, id, cfg, inputs[id]));
  }
  for (const PhaseStep& step : Schedule(kind, cfg)) {
    std::vector<std::vector<const Payload*>> inbox(
        cfg.n, std::vector<const Payload*>(cfg.n, nullptr));
    std::vector<std::vector<Outgoing>> outs(cfg.n);
    for (NodeId id = 0; id < cfg.n; ++id) outs[id] = nodes[id]->Emit(step);
    for (NodeId id = 0; id < cfg.n; ++id) {
      for (const Outgoing& o : outs[id]) {
        EXPECT_EQ(o.recipient, kBroadcast);
        for (NodeId to = 0; to < cfg.n; ++to) inbox[to][id] = &o.payload;
      }
    }
    for (NodeId id = 0; id < cfg.n; ++id) nodes[id]->Receive(step, inbox[id]);
  }
  std::vector<Ranking> out;
  for (const auto& node : nodes) {
    EXPECT_TRUE(node->integrity_errors().empty());
    out.push_back(node->Current());
  }
  return out;
}

TEST(ParetoKingNodeTest, SingleRoundWithoutFaults) {
  const ProtocolConfig cfg = ProtocolConfig::Make(3, 0, 3);
  const auto out = RunNodes(ProtocolKind::kParetoKing, cfg,
                            {R({1, 2, 3}), R({2, 1, 3}), R({1, 2, 3})});
  for (const Ranking& r : out) EXPECT_EQ(r, R({1, 2, 3}));
  EXPECT_EQ(out[0].at(2), 2);
}

TEST(ParetoKingNodeTest, UnanimousInputsStay) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 4);
  const Ranking r = R({3, 1, 4, 2});
  for (const Ranking& out :
       RunNodes(ProtocolKind::kParetoKing, cfg, {r, r, r, r})) {
    EXPECT_EQ(out, r);
  }
}

TEST(KemenyMedianNodeTest, AllNodesTakeTheMedian) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  const auto out = RunNodes(ProtocolKind::kKemenyMedian, cfg,
                            {R({1, 2, 3}), R({2, 3, 1}), R({1, 3, 2}),
                             R({1, 2, 3})});
  for (const Ranking& r : out) EXPECT_EQ(r, R({1, 2, 3}));
}

TEST(SequentialStvNodeTest, PicksTopsInTurn) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 3);
  const Ranking r = R({2, 3, 1});
  for (const Ranking& out :
       RunNodes(ProtocolKind::kSequentialStv, cfg, {r, r, r, r})) {
    EXPECT_EQ(out, r);
  }
}

TEST(NodeTest, SingleCandidate) {
  const ProtocolConfig cfg = ProtocolConfig::Make(4, 1, 1);
  const Ranking r = R({1});
  for (ProtocolKind kind :
       {ProtocolKind::kParetoKing, ProtocolKind::kKemenyMedian,
        ProtocolKind::kSequentialStv}) {
    for (const Ranking& out : RunNodes(kind, cfg, {r, r, r, r})) {
      EXPECT_EQ(out, r);
    }
  }
}

}  // namespace
}  // namespace byzrank
