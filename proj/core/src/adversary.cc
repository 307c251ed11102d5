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

#include <algorithm>
#include <array>
#include <utility>

#include "byzrank/errors.h"
#include "byzrank/kemeny.h"
#include "byzrank/simnet.h"
#include "byzrank/tournament.h"

namespace byzrank {

void Adversary::Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
                      std::span<const Ranking> inputs, std::uint64_t seed) {
  protocol_ = protocol;
  cfg_ = cfg;
  inputs_.assign(inputs.begin(), inputs.end());
  rng_.seed(seed ^ 0x9e3779b97f4a7c15ULL);
  shadows_.clear();
  for (NodeId id : ids_) {
    shadows_.push_back(MakeNode(protocol, id, cfg_, inputs_[id]));
  }
}

void Adversary::Observe(const PhaseStep& step, NodeId id, Inbox inbox) {
  if (Node* node = shadow(id)) node->Receive(step, inbox);
}

Node* Adversary::shadow(NodeId id) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id && i < shadows_.size()) return shadows_[i].get();
  }
  return nullptr;
}

void Adversary::ResetShadow(NodeId id, Ranking input) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) {
      shadows_[i] = MakeNode(protocol_, id, cfg_, std::move(input));
    }
  }
}

std::vector<ByzantineSend> Adversary::HonestSends(const PhaseStep& step,
                                                  NodeId id) {
  std::vector<ByzantineSend> sends;
  if (Node* node = shadow(id)) {
    for (Outgoing& out : node->Emit(step)) {
      sends.push_back({id, out.recipient, std::move(out.payload)});
    }
  }
  return sends;
}

std::string ToString(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kHonest:
      return "honest";
    case StrategyKind::kSilent:
      return "silent";
    case StrategyKind::kOppositeMedian:
      return "opposite-median";
    case StrategyKind::kEquivocate:
      return "equivocate";
    case StrategyKind::kScripted:
      return "scripted";
    case StrategyKind::kRandom:
      return "random";
    case StrategyKind::kCycleAttack:
      return "cycle-attack";
  }
  return "unknown";
}

StrategyKind ParseStrategyKind(const std::string& name) {
  for (StrategyKind kind : AllStrategies()) {
    if (ToString(kind) == name) return kind;
  }
  throw UsageError("unknown strategy '" + name + "'");
}

std::vector<StrategyKind> AllStrategies() {
  return {StrategyKind::kHonest,     StrategyKind::kSilent,
          StrategyKind::kOppositeMedian, StrategyKind::kEquivocate,
          StrategyKind::kScripted,   StrategyKind::kRandom,
          StrategyKind::kCycleAttack};
}

ViewScript UniformScript(std::span<const Ranking> ballots, int n) {
  ViewScript script;
  for (const Ranking& b : ballots) script.emplace_back(n, b);
  return script;
}

namespace {

Ranking Shuffled(std::mt19937_64& rng, int m) {
  std::vector<CandidateId> order(m);
  for (int c = 0; c < m; ++c) order[c] = c;
  std::shuffle(order.begin(), order.end(), rng);
  return Ranking(std::move(order));
}

CandidateId FirstIn(const Ranking& r, std::span<const CandidateId> remaining) {
  for (CandidateId c : r.order()) {
    if (std::find(remaining.begin(), remaining.end(), c) != remaining.end()) {
      return c;
    }
  }
  return r.top();
}

// Median of the correct inputs, which several strategies pivot around.
Ranking CorrectMedian(const ProtocolConfig& cfg,
                      std::span<const Ranking> inputs,
                      std::span<const NodeId> byzantine) {
  std::vector<Ranking> correct;
  for (NodeId id = 0; id < cfg.n; ++id) {
    if (std::find(byzantine.begin(), byzantine.end(), id) == byzantine.end()) {
      correct.push_back(inputs[id]);
    }
  }
  if (correct.empty()) return Ranking::Identity(cfg.m);
  if (cfg.m > kExactMaxCandidates) return correct.front();
  return KemenyExact(PreferenceProfile(cfg.m, correct), 1).chosen;
}

// Turns a per-recipient ranking choice into the payload each phase needs.
class ChoiceAdversary : public Adversary {
 public:
  using Adversary::Adversary;

  std::vector<ByzantineSend> Act(const AdversaryView& view) override {
    std::vector<ByzantineSend> sends;
    const PhaseStep& step = view.step;
    for (NodeId sender : ids()) {
      const bool dictator =
          (step.phase == Phase::kDictator ||
           step.phase == Phase::kDictatorValue) &&
          view.cfg.dictator(step.king_round) == sender;
      if ((step.phase == Phase::kDictator ||
           step.phase == Phase::kDictatorValue) &&
          !dictator) {
        continue;
      }
      if (step.phase == Phase::kCompute) continue;
      for (NodeId to = 0; to < view.cfg.n; ++to) {
        if (auto payload = Make(view, sender, to)) {
          sends.push_back({sender, to, std::move(*payload)});
        }
      }
    }
    return sends;
  }

 protected:
  virtual Ranking Choose(const AdversaryView& view, NodeId sender,
                         NodeId recipient) = 0;

  virtual std::optional<Payload> Make(const AdversaryView& view,
                                      NodeId sender, NodeId recipient) {
    const Ranking choice = Choose(view, sender, recipient);
    switch (view.step.phase) {
      case Phase::kBallot:
      case Phase::kRanking:
        return RankingBroadcast{choice};
      case Phase::kPropose: {
        const PairSet pairs = PairsOf(choice);
        return ProposeBatch{{pairs.begin(), pairs.end()}};
      }
      case Phase::kDictator:
        return DictatorRanking{choice};
      case Phase::kVote:
        return CandidateVote{FirstIn(choice, view.remaining), choice};
      case Phase::kProposeValue:
        return ProposeCandidate{FirstIn(choice, view.remaining)};
      case Phase::kDictatorValue:
        return DictatorCandidate{FirstIn(choice, view.remaining)};
      case Phase::kCompute:
        return std::nullopt;
    }
    return std::nullopt;
  }
};

class HonestAdversary final : public Adversary {
 public:
  using Adversary::Adversary;
  std::string name() const override { return "honest"; }
  std::vector<ByzantineSend> Act(const AdversaryView& view) override {
    std::vector<ByzantineSend> sends;
    for (NodeId id : ids()) {
      auto mine = HonestSends(view.step, id);
      sends.insert(sends.end(), std::make_move_iterator(mine.begin()),
                   std::make_move_iterator(mine.end()));
    }
    return sends;
  }
};

class SilentAdversary final : public Adversary {
 public:
  using Adversary::Adversary;
  std::string name() const override { return "silent"; }
  std::vector<ByzantineSend> Act(const AdversaryView&) override { return {}; }
};

class OppositeMedianAdversary final : public ChoiceAdversary {
 public:
  using ChoiceAdversary::ChoiceAdversary;
  std::string name() const override { return "opposite-median"; }
  void Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
             std::span<const Ranking> inputs, std::uint64_t seed) override {
    ChoiceAdversary::Begin(protocol, cfg, inputs, seed);
    target_ = Opposite(CorrectMedian(cfg, inputs, ids()));
  }

 protected:
  Ranking Choose(const AdversaryView&, NodeId, NodeId) override {
    return target_;
  }

 private:
  Ranking target_;
};

// Shows each recipient either the correct median or its opposite.
class EquivocateAdversary final : public ChoiceAdversary {
 public:
  using ChoiceAdversary::ChoiceAdversary;
  std::string name() const override { return "equivocate"; }
  void Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
             std::span<const Ranking> inputs, std::uint64_t seed) override {
    ChoiceAdversary::Begin(protocol, cfg, inputs, seed);
    median_ = CorrectMedian(cfg, inputs, ids());
    opposite_ = Opposite(median_);
  }

 protected:
  Ranking Choose(const AdversaryView&, NodeId, NodeId) override {
    return (rng_() & 1) ? median_ : opposite_;
  }

 private:
  Ranking median_;
  Ranking opposite_;
};

class RandomAdversary final : public ChoiceAdversary {
 public:
  using ChoiceAdversary::ChoiceAdversary;
  std::string name() const override { return "random"; }

 protected:
  Ranking Choose(const AdversaryView& view, NodeId, NodeId) override {
    return Shuffled(rng_, view.cfg.m);
  }
};

// Shows scripted ballots in the input-broadcast phase and otherwise acts
// like an honest node holding the first scripted ballot.
class ScriptedAdversary final : public Adversary {
 public:
  ScriptedAdversary(std::vector<NodeId> ids, ViewScript script)
      : Adversary(std::move(ids)), script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }

  void Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
             std::span<const Ranking> inputs, std::uint64_t seed) override {
    Adversary::Begin(protocol, cfg, inputs, seed);
    if (script_.empty()) {
      for (std::size_t i = 0; i < ids().size(); ++i) {
        std::vector<Ranking> views;
        for (int to = 0; to < cfg.n; ++to) views.push_back(Shuffled(rng_, cfg.m));
        script_.push_back(std::move(views));
      }
    }
    if (script_.size() < ids().size()) {
      throw UsageError("view script covers fewer nodes than the adversary");
    }
    for (std::size_t i = 0; i < ids().size(); ++i) {
      if (static_cast<int>(script_[i].size()) != cfg.n) {
        throw UsageError("view script needs one ballot per recipient");
      }
      ResetShadow(ids()[i], script_[i][0]);
    }
  }

  std::vector<ByzantineSend> Act(const AdversaryView& view) override {
    std::vector<ByzantineSend> sends;
    for (std::size_t i = 0; i < ids().size(); ++i) {
      if (view.step.phase == Phase::kBallot) {
        for (NodeId to = 0; to < view.cfg.n; ++to) {
          sends.push_back({ids()[i], to, RankingBroadcast{script_[i][to]}});
        }
        continue;
      }
      auto mine = HonestSends(view.step, ids()[i]);
      sends.insert(sends.end(), std::make_move_iterator(mine.begin()),
                   std::make_move_iterator(mine.end()));
    }
    return sends;
  }

 private:
  ViewScript script_;
};

// Tries to get a Condorcet cycle fixed: rotates the three cyclic rankings
// of a majority cycle among recipients and proposes all three cyclic pairs
// to everybody.
class CycleAttackAdversary final : public ChoiceAdversary {
 public:
  using ChoiceAdversary::ChoiceAdversary;
  std::string name() const override { return "cycle-attack"; }

  void Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
             std::span<const Ranking> inputs, std::uint64_t seed) override {
    ChoiceAdversary::Begin(protocol, cfg, inputs, seed);
    rotations_.clear();
    cycle_.clear();
    if (cfg.m < 3) return;
    std::array<CandidateId, 3> triple{0, 1, 2};
    std::vector<Ranking> correct;
    for (NodeId id = 0; id < cfg.n; ++id) {
      if (std::find(ids().begin(), ids().end(), id) == ids().end()) {
        correct.push_back(inputs[id]);
      }
    }
    if (!correct.empty()) {
      const auto cycles = MajorityCycles3(
          TournamentGraph::FromProfile(PreferenceProfile(cfg.m, correct)));
      if (!cycles.empty()) triple = cycles.front();
    }
    for (int shift = 0; shift < 3; ++shift) {
      std::vector<CandidateId> order = {triple[shift % 3],
                                        triple[(shift + 1) % 3],
                                        triple[(shift + 2) % 3]};
      for (CandidateId c = 0; c < cfg.m; ++c) {
        if (c != triple[0] && c != triple[1] && c != triple[2]) {
          order.push_back(c);
        }
      }
      rotations_.emplace_back(std::move(order));
    }
    cycle_ = {{triple[0], triple[1]}, {triple[1], triple[2]},
              {triple[2], triple[0]}};
  }

 protected:
  Ranking Choose(const AdversaryView& view, NodeId sender,
                 NodeId recipient) override {
    if (rotations_.empty()) return Shuffled(rng_, view.cfg.m);
    return rotations_[(recipient + sender + view.step.round) % 3];
  }

  std::optional<Payload> Make(const AdversaryView& view, NodeId sender,
                              NodeId recipient) override {
    if (view.step.phase == Phase::kPropose && !cycle_.empty()) {
      return ProposeBatch{cycle_};
    }
    return ChoiceAdversary::Make(view, sender, recipient);
  }

 private:
  std::vector<Ranking> rotations_;
  std::vector<PairRelation> cycle_;
};

}  // namespace

std::unique_ptr<Adversary> MakeAdversary(StrategyKind kind,
                                         std::vector<NodeId> ids,
                                         ViewScript script) {
  switch (kind) {
    case StrategyKind::kHonest:
      return std::make_unique<HonestAdversary>(std::move(ids));
    case StrategyKind::kSilent:
      return std::make_unique<SilentAdversary>(std::move(ids));
    case StrategyKind::kOppositeMedian:
      return std::make_unique<OppositeMedianAdversary>(std::move(ids));
    case StrategyKind::kEquivocate:
      return std::make_unique<EquivocateAdversary>(std::move(ids));
    case StrategyKind::kScripted:
      return std::make_unique<ScriptedAdversary>(std::move(ids),
                                                 std::move(script));
    case StrategyKind::kRandom:
      return std::make_unique<RandomAdversary>(std::move(ids));
    case StrategyKind::kCycleAttack:
      return std::make_unique<CycleAttackAdversary>(std::move(ids));
  }
  throw UsageError("unknown strategy");
}

}  // namespace byzrank
