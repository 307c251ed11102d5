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

#include "byzrank/protocol.h"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "byzrank/errors.h"
#include "byzrank/kemeny.h"

namespace byzrank {

std::string ToString(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kParetoKing:
      return "alg1";
    case ProtocolKind::kKemenyMedian:
      return "alg2";
    case ProtocolKind::kSequentialStv:
      return "stv-baseline";
  }
  return "unknown";
}

ProtocolKind ParseProtocolKind(const std::string& name) {
  if (name == "alg1") return ProtocolKind::kParetoKing;
  if (name == "alg2") return ProtocolKind::kKemenyMedian;
  if (name == "stv-baseline") return ProtocolKind::kSequentialStv;
  throw UsageError("unknown protocol '" + name +
                   "' (expected alg1, alg2 or stv-baseline)");
}

ProtocolConfig ProtocolConfig::Make(int n, int t, int m) {
  ProtocolConfig cfg{n, t, m, {}};
  for (NodeId id = 0; id <= t; ++id) cfg.dictator_schedule.push_back(id);
  return cfg;
}

void ProtocolConfig::Validate(bool require_resilience) const {
  if (n < 1) throw UsageError("need at least one node");
  if (t < 0) throw UsageError("t must be non-negative");
  if (require_resilience && 3 * t >= n) {
    throw UsageError("t < n/3 required, got n=" + std::to_string(n) +
                     " t=" + std::to_string(t));
  }
  if (m < 1) throw UsageError("need at least one candidate");
  if (static_cast<int>(dictator_schedule.size()) != t + 1) {
    throw UsageError("dictator schedule must list t+1 nodes");
  }
  std::set<NodeId> seen;
  for (NodeId id : dictator_schedule) {
    if (id < 0 || id >= n) throw UsageError("dictator id out of range");
    if (!seen.insert(id).second) {
      throw UsageError("dictator schedule repeats node " + std::to_string(id));
    }
  }
}

int RoundCount(ProtocolKind kind, const ProtocolConfig& cfg) {
  switch (kind) {
    case ProtocolKind::kParetoKing:
      return cfg.t + 1;
    case ProtocolKind::kKemenyMedian:
      return cfg.t + 3;
    case ProtocolKind::kSequentialStv:
      return std::max(cfg.m - 1, 0) * (cfg.t + 1);
  }
  return 0;
}

std::string PayloadKind(const Payload& payload) {
  static constexpr const char* kNames[] = {
      "RankingBroadcast", "ProposeBatch",     "DictatorRanking",
      "CandidateVote",    "ProposeCandidate", "DictatorCandidate"};
  return kNames[payload.index()];
}

std::string ToString(Phase phase) {
  switch (phase) {
    case Phase::kBallot:
      return "ballot";
    case Phase::kCompute:
      return "compute";
    case Phase::kRanking:
      return "ranking";
    case Phase::kPropose:
      return "propose";
    case Phase::kDictator:
      return "dictator";
    case Phase::kVote:
      return "vote";
    case Phase::kProposeValue:
      return "propose-value";
    case Phase::kDictatorValue:
      return "dictator-value";
  }
  return "unknown";
}

bool IsConsistentBroadcast(Phase phase) {
  return phase == Phase::kRanking || phase == Phase::kVote;
}

namespace {

void AppendKingRounds(int first_round, const ProtocolConfig& cfg,
                      std::vector<PhaseStep>& steps) {
  for (int r = 0; r <= cfg.t; ++r) {
    for (Phase p : {Phase::kRanking, Phase::kPropose, Phase::kDictator}) {
      steps.push_back({first_round + r, p, r, 0, false});
    }
  }
}

}  // namespace

std::vector<PhaseStep> Schedule(ProtocolKind kind, const ProtocolConfig& cfg) {
  std::vector<PhaseStep> steps;
  switch (kind) {
    case ProtocolKind::kParetoKing:
      AppendKingRounds(1, cfg, steps);
      break;
    case ProtocolKind::kKemenyMedian:
      steps.push_back({1, Phase::kBallot, 0, 0, false});
      steps.push_back({2, Phase::kCompute, 0, 0, false});
      AppendKingRounds(3, cfg, steps);
      break;
    case ProtocolKind::kSequentialStv:
      for (int inst = 0; inst + 1 < cfg.m; ++inst) {
        for (int r = 0; r <= cfg.t; ++r) {
          const int round = inst * (cfg.t + 1) + r + 1;
          steps.push_back({round, Phase::kVote, r, inst, false});
          steps.push_back({round, Phase::kProposeValue, r, inst, false});
          steps.push_back(
              {round, Phase::kDictatorValue, r, inst, r == cfg.t});
        }
      }
      break;
  }
  return steps;
}

// ---------------------------------------------------------------------------

std::vector<int> PairSupport(std::span<const std::optional<Ranking>> received,
                             int m) {
  std::vector<int> support(static_cast<std::size_t>(m) * m, 0);
  for (const auto& r : received) {
    if (!r || r->size() != m) continue;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        ++support[static_cast<std::size_t>(r->at(a)) * m + r->at(b)];
      }
    }
  }
  return support;
}

PairSet ComputeProposals(std::span<const std::optional<Ranking>> received,
                         const ProtocolConfig& cfg) {
  const int m = cfg.m;
  const std::vector<int> support = PairSupport(received, m);
  PairSet proposals;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && support[static_cast<std::size_t>(i) * m + j] >=
                        cfg.n - cfg.t) {
        proposals.insert({i, j});
      }
    }
  }
  return proposals;
}

bool HasCycle(const PairSet& pairs, int m) {
  std::vector<std::vector<CandidateId>> out(m);
  std::vector<int> indegree(m, 0);
  for (const PairRelation& p : pairs) {
    if (p.above == p.below) return true;
    out[p.above].push_back(p.below);
    ++indegree[p.below];
  }
  std::vector<CandidateId> ready;
  for (int c = 0; c < m; ++c) {
    if (indegree[c] == 0) ready.push_back(c);
  }
  int visited = 0;
  while (!ready.empty()) {
    const CandidateId c = ready.back();
    ready.pop_back();
    ++visited;
    for (CandidateId d : out[c]) {
      if (--indegree[d] == 0) ready.push_back(d);
    }
  }
  return visited != m;
}

PairSet AcyclicSubset(const PairSet& pairs, int m,
                      std::span<const int> support) {
  std::vector<PairRelation> order(pairs.begin(), pairs.end());
  auto weight = [&](const PairRelation& p) {
    return support.empty() ? 0
                           : support[static_cast<std::size_t>(p.above) * m +
                                     p.below];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const PairRelation& a, const PairRelation& b) {
                     return weight(a) > weight(b);
                   });
  // reach[i][j]: j is below i in the transitive closure of what is kept.
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  PairSet kept;
  for (const PairRelation& p : order) {
    if (p.above == p.below || reach[p.below][p.above]) continue;
    kept.insert(p);
    for (int i = 0; i < m; ++i) {
      if (i != p.above && !reach[i][p.above]) continue;
      reach[i][p.below] = true;
      for (int j = 0; j < m; ++j) {
        if (reach[p.below][j]) reach[i][j] = true;
      }
    }
  }
  return kept;
}

namespace {

std::string DescribePairs(const PairSet& pairs) {
  std::string out;
  for (const PairRelation& p : pairs) {
    if (!out.empty()) out += ", ";
    out += "c" + std::to_string(p.above) + ">c" + std::to_string(p.below);
  }
  return "{" + out + "}";
}

bool InRange(const PairRelation& p, int m) {
  return p.above >= 0 && p.below >= 0 && p.above < m && p.below < m &&
         p.above != p.below;
}

}  // namespace

PairSet CountFixedPairs(
    std::span<const std::optional<ProposeBatch>> batches,
    const ProtocolConfig& cfg) {
  std::map<PairRelation, int> senders;
  for (const auto& batch : batches) {
    if (!batch) continue;
    PairSet distinct;
    for (const PairRelation& p : batch->pairs) {
      if (InRange(p, cfg.m)) distinct.insert(p);
    }
    for (const PairRelation& p : distinct) {
      if (!distinct.contains(p.Reversed())) ++senders[p];
    }
  }
  PairSet fixed;
  for (const auto& [pair, count] : senders) {
    if (count >= cfg.t + 1) fixed.insert(pair);
  }
  return fixed;
}

PairSet CollectFixedPairs(
    std::span<const std::optional<ProposeBatch>> batches,
    const ProtocolConfig& cfg) {
  PairSet fixed = CountFixedPairs(batches, cfg);
  if (HasCycle(fixed, cfg.m)) {
    throw IntegrityError("fixed pairs contain a cycle: " +
                         DescribePairs(fixed));
  }
  return fixed;
}

Ranking AdjustRanking(const Ranking& own, const PairSet& fixed) {
  const int m = own.size();
  for (const PairRelation& p : fixed) {
    if (!InRange(p, m)) throw UsageError("fixed pair outside the universe");
  }
  if (HasCycle(fixed, m)) {
    throw IntegrityError("cannot adjust to cyclic fixed pairs " +
                         DescribePairs(fixed));
  }
  std::vector<bool> constrained(m, false);
  std::vector<std::vector<CandidateId>> out(m);
  std::vector<int> indegree(m, 0);
  for (const PairRelation& p : fixed) {
    constrained[p.above] = constrained[p.below] = true;
    out[p.above].push_back(p.below);
    ++indegree[p.below];
  }

  // Kahn's algorithm, releasing the candidate the node itself ranks highest.
  using Entry = std::pair<int, CandidateId>;  // (position in own, candidate)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (CandidateId c = 0; c < m; ++c) {
    if (constrained[c] && indegree[c] == 0) ready.push({own.position(c), c});
  }
  std::vector<CandidateId> order;
  order.reserve(m);
  while (!ready.empty()) {
    const CandidateId c = ready.top().second;
    ready.pop();
    order.push_back(c);
    for (CandidateId d : out[c]) {
      if (--indegree[d] == 0) ready.push({own.position(d), d});
    }
  }
  for (CandidateId c : own.order()) {
    if (!constrained[c]) order.push_back(c);
  }
  return Ranking(std::move(order));
}

Ranking DecideDictator(const Ranking& own, const PairSet& fixed,
                       const std::optional<Ranking>& dictator) {
  if (dictator && dictator->size() == own.size() &&
      Respects(*dictator, fixed)) {
    return *dictator;
  }
  return own;
}

// ---------------------------------------------------------------------------

std::vector<CandidateId> Node::Remaining() const {
  std::vector<CandidateId> all(cfg_.m);
  for (int c = 0; c < cfg_.m; ++c) all[c] = c;
  return all;
}

void Node::RecordIntegrityError(const PhaseStep& step,
                                const std::string& what) {
  integrity_errors_.push_back("node " + std::to_string(id_) + " round " +
                              std::to_string(step.round) + ": " + what);
}

namespace {

template <typename T>
const T* As(const Payload* payload) {
  return payload ? std::get_if<T>(payload) : nullptr;
}

// One participant's view of the ranking-valued King rounds.
class KingCore {
 public:
  KingCore(NodeId id, const ProtocolConfig& cfg, Ranking input)
      : id_(id), cfg_(cfg), current_(std::move(input)) {}

  const Ranking& current() const { return current_; }

  std::vector<Outgoing> Emit(const PhaseStep& step) const {
    switch (step.phase) {
      case Phase::kRanking:
        return {{kBroadcast, RankingBroadcast{current_}}};
      case Phase::kPropose:
        return {{kBroadcast, ProposeBatch{{proposals_.begin(),
                                           proposals_.end()}}}};
      case Phase::kDictator:
        if (cfg_.dictator(step.king_round) == id_) {
          return {{kBroadcast, DictatorRanking{current_}}};
        }
        return {};
      default:
        return {};
    }
  }

  // Returns an integrity error description, if one occurred.
  std::optional<std::string> Receive(const PhaseStep& step, Inbox inbox) {
    switch (step.phase) {
      case Phase::kRanking: {
        std::vector<std::optional<Ranking>> received(inbox.size());
        for (std::size_t s = 0; s < inbox.size(); ++s) {
          if (const auto* msg = As<RankingBroadcast>(inbox[s])) {
            received[s] = msg->ranking;
          }
        }
        proposals_ = ComputeProposals(received, cfg_);
        support_ = PairSupport(received, cfg_.m);
        return std::nullopt;
      }
      case Phase::kPropose: {
        std::vector<std::optional<ProposeBatch>> batches(inbox.size());
        for (std::size_t s = 0; s < inbox.size(); ++s) {
          if (const auto* msg = As<ProposeBatch>(inbox[s])) batches[s] = *msg;
        }
        fixed_ = CountFixedPairs(batches, cfg_);
        std::optional<std::string> error;
        if (HasCycle(fixed_, cfg_.m)) {
          error = "fixed pairs contain a cycle: " + DescribePairs(fixed_);
          // Correct nodes share the fixed set and the ranking view when
          // rankings are broadcast consistently, so they all keep the same
          // subset.
          fixed_ = AcyclicSubset(fixed_, cfg_.m, support_);
        }
        current_ = AdjustRanking(current_, fixed_);
        return error;
      }
      case Phase::kDictator: {
        const NodeId dictator = cfg_.dictator(step.king_round);
        std::optional<Ranking> suggestion;
        if (const auto* msg = As<DictatorRanking>(inbox[dictator])) {
          suggestion = msg->ranking;
        }
        current_ = DecideDictator(current_, fixed_, suggestion);
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

 private:
  NodeId id_;
  const ProtocolConfig& cfg_;
  Ranking current_;
  PairSet proposals_;
  std::vector<int> support_;  // rankings per ordered pair, this round
  PairSet fixed_;  // reset every King round
};

class ParetoKingNode final : public Node {
 public:
  ParetoKingNode(NodeId id, const ProtocolConfig& cfg, Ranking input)
      : Node(id, cfg), core_(id, cfg_, std::move(input)) {}

  std::vector<Outgoing> Emit(const PhaseStep& step) override {
    return core_.Emit(step);
  }
  void Receive(const PhaseStep& step, Inbox inbox) override {
    if (auto err = core_.Receive(step, inbox)) RecordIntegrityError(step, *err);
  }
  Ranking Current() const override { return core_.current(); }

 private:
  KingCore core_;
};

class KemenyMedianNode final : public Node {
 public:
  KemenyMedianNode(NodeId id, const ProtocolConfig& cfg, Ranking input)
      : Node(id, cfg), input_(std::move(input)) {}

  std::vector<Outgoing> Emit(const PhaseStep& step) override {
    if (step.phase == Phase::kBallot) {
      return {{kBroadcast, RankingBroadcast{input_}}};
    }
    return core_ ? core_->Emit(step) : std::vector<Outgoing>{};
  }

  void Receive(const PhaseStep& step, Inbox inbox) override {
    switch (step.phase) {
      case Phase::kBallot:
        ballots_.clear();
        for (const Payload* p : inbox) {
          const auto* msg = As<RankingBroadcast>(p);
          if (msg && msg->ranking.size() == cfg_.m) {
            ballots_.push_back(msg->ranking);
          }
        }
        return;
      case Phase::kCompute: {
        // Silent senders add no weight; the profile has one ballot per
        // message actually received (own ballot included).
        if (ballots_.empty()) ballots_.push_back(input_);
        const PreferenceProfile received(cfg_.m, ballots_);
        core_.emplace(id_, cfg_, KemenyExact(received, 1).chosen);
        return;
      }
      default:
        if (core_) {
          if (auto err = core_->Receive(step, inbox)) {
            RecordIntegrityError(step, *err);
          }
        }
    }
  }

  Ranking Current() const override {
    return core_ ? core_->current() : input_;
  }

 private:
  Ranking input_;
  std::vector<Ranking> ballots_;
  std::optional<KingCore> core_;
};

// Agrees on the top remaining candidate m-1 times.
class SequentialStvNode final : public Node {
 public:
  SequentialStvNode(NodeId id, const ProtocolConfig& cfg, Ranking input)
      : Node(id, cfg), input_(std::move(input)), remaining_(cfg.m, true) {
    value_ = FirstRemaining({});
  }

  std::vector<Outgoing> Emit(const PhaseStep& step) override {
    switch (step.phase) {
      case Phase::kVote:
        return {{kBroadcast, CandidateVote{value_, input_}}};
      case Phase::kProposeValue:
        if (proposal_) return {{kBroadcast, ProposeCandidate{*proposal_}}};
        return {};
      case Phase::kDictatorValue:
        if (cfg_.dictator(step.king_round) == id_) {
          return {{kBroadcast, DictatorCandidate{value_}}};
        }
        return {};
      default:
        return {};
    }
  }

  void Receive(const PhaseStep& step, Inbox inbox) override {
    switch (step.phase) {
      case Phase::kVote:
        ReceiveVotes(inbox);
        return;
      case Phase::kProposeValue:
        ReceiveProposals(step, inbox);
        return;
      case Phase::kDictatorValue: {
        const auto* msg =
            As<DictatorCandidate>(inbox[cfg_.dictator(step.king_round)]);
        if (msg && IsRemaining(msg->candidate)) {
          const bool accept = fixed_ ? msg->candidate == *fixed_
                                     : !dominated_[msg->candidate];
          if (accept) value_ = msg->candidate;
        }
        if (step.last_in_instance) Decide();
        return;
      }
      default:
        return;
    }
  }

  Ranking Current() const override {
    std::vector<CandidateId> order = decided_;
    for (CandidateId c : input_.order()) {
      if (remaining_[c]) order.push_back(c);
    }
    return Ranking(std::move(order));
  }

  std::vector<CandidateId> Remaining() const override {
    std::vector<CandidateId> out;
    for (int c = 0; c < cfg_.m; ++c) {
      if (remaining_[c]) out.push_back(c);
    }
    return out;
  }

 private:
  bool IsRemaining(CandidateId c) const {
    return c >= 0 && c < cfg_.m && remaining_[c];
  }

  // Highest remaining candidate in the node's own ballot, skipping the
  // flagged ones when possible.
  CandidateId FirstRemaining(const std::vector<bool>& skip) const {
    for (CandidateId c : input_.order()) {
      if (remaining_[c] && (skip.empty() || !skip[c])) return c;
    }
    for (CandidateId c : input_.order()) {
      if (remaining_[c]) return c;
    }
    return input_.top();
  }

  void ReceiveVotes(Inbox inbox) {
    const int m = cfg_.m;
    const int threshold = cfg_.n - cfg_.t;
    std::vector<int> votes(m, 0);
    std::vector<int> support(static_cast<std::size_t>(m) * m, 0);
    for (const Payload* p : inbox) {
      const auto* msg = As<CandidateVote>(p);
      if (!msg) continue;
      if (IsRemaining(msg->candidate)) ++votes[msg->candidate];
      if (msg->ballot.size() != m) continue;
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          ++support[static_cast<std::size_t>(msg->ballot.at(a)) * m +
                    msg->ballot.at(b)];
        }
      }
    }
    dominated_.assign(m, false);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a != b && remaining_[a] && remaining_[b] &&
            support[static_cast<std::size_t>(a) * m + b] >= threshold) {
          dominated_[b] = true;
        }
      }
    }
    proposal_.reset();
    for (int c = 0; c < m; ++c) {
      if (votes[c] >= threshold) proposal_ = c;
    }
  }

  void ReceiveProposals(const PhaseStep& step, Inbox inbox) {
    std::vector<int> count(cfg_.m, 0);
    for (const Payload* p : inbox) {
      const auto* msg = As<ProposeCandidate>(p);
      if (msg && IsRemaining(msg->candidate)) ++count[msg->candidate];
    }
    fixed_.reset();
    int fixed_values = 0;
    for (int c = 0; c < cfg_.m; ++c) {
      if (count[c] >= cfg_.t + 1) {
        fixed_ = c;
        ++fixed_values;
      }
    }
    if (fixed_values > 1) {
      RecordIntegrityError(step, "several candidate values fixed at once");
      fixed_.reset();
    }
    if (fixed_) {
      value_ = *fixed_;
    } else if (dominated_[value_]) {
      value_ = FirstRemaining(dominated_);
    }
  }

  void Decide() {
    decided_.push_back(value_);
    remaining_[value_] = false;
    if (static_cast<int>(decided_.size()) == cfg_.m - 1) {
      for (int c = 0; c < cfg_.m; ++c) {
        if (remaining_[c]) {
          decided_.push_back(c);
          remaining_[c] = false;
        }
      }
      return;
    }
    value_ = FirstRemaining({});
    fixed_.reset();
    dominated_.assign(cfg_.m, false);
  }

  Ranking input_;
  std::vector<bool> remaining_;
  std::vector<CandidateId> decided_;
  CandidateId value_ = 0;
  std::optional<CandidateId> proposal_;
  std::optional<CandidateId> fixed_;
  std::vector<bool> dominated_;
};

}  // namespace

std::unique_ptr<Node> MakeNode(ProtocolKind kind, NodeId id,
                               const ProtocolConfig& cfg, Ranking input) {
  if (input.size() != cfg.m) {
    throw UsageError("node input ranks " + std::to_string(input.size()) +
                     " candidates, expected " + std::to_string(cfg.m));
  }
  switch (kind) {
    case ProtocolKind::kParetoKing:
      return std::make_unique<ParetoKingNode>(id, cfg, std::move(input));
    case ProtocolKind::kKemenyMedian:
      return std::make_unique<KemenyMedianNode>(id, cfg, std::move(input));
    case ProtocolKind::kSequentialStv:
      return std::make_unique<SequentialStvNode>(id, cfg, std::move(input));
  }
  throw UsageError("unknown protocol");
}

std::vector<std::int64_t> CorrectMessagesClosedForm(
    ProtocolKind kind, const ProtocolConfig& cfg,
    std::span<const NodeId> byzantine) {
  const int correct = cfg.n - static_cast<int>(byzantine.size());
  auto is_correct = [&](NodeId id) {
    return std::find(byzantine.begin(), byzantine.end(), id) ==
           byzantine.end();
  };
  std::vector<std::int64_t> per_round;
  if (kind == ProtocolKind::kSequentialStv) return per_round;
  if (kind == ProtocolKind::kKemenyMedian) {
    per_round.push_back(static_cast<std::int64_t>(correct) * cfg.n);
    per_round.push_back(0);
  }
  for (int r = 0; r <= cfg.t; ++r) {
    per_round.push_back(KingRoundCorrectMessages(
        cfg.n, correct, is_correct(cfg.dictator(r))));
  }
  return per_round;
}

}  // namespace byzrank
