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

#ifndef BYZRANK_PROTOCOL_H_
#define BYZRANK_PROTOCOL_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "byzrank/ranking.h"

namespace byzrank {

using NodeId = int;

enum class ProtocolKind {
  kParetoKing,     // agreement on rankings, t+1 rounds
  kKemenyMedian,   // local Kemeny median, then kParetoKing: t+3 rounds
  kSequentialStv,  // m-1 candidate-valued King instances: (m-1)(t+1) rounds
};

std::string ToString(ProtocolKind kind);
// Accepts "alg1", "alg2", "stv-baseline".
ProtocolKind ParseProtocolKind(const std::string& name);

struct ProtocolConfig {
  int n = 0;
  int t = 0;
  int m = 0;
  // t+1 distinct node ids; entry r is the dictator of King round r.
  std::vector<NodeId> dictator_schedule;

  // Schedule defaults to nodes 0..t.
  static ProtocolConfig Make(int n, int t, int m);

  // Throws UsageError unless 3t < n, m >= 1 and the schedule is valid.
  // Passing false skips the 3t < n check (exploratory runs only).
  void Validate(bool require_resilience = true) const;

  NodeId dictator(int king_round) const {
    return dictator_schedule[king_round];
  }

  friend bool operator==(const ProtocolConfig&,
                         const ProtocolConfig&) = default;
};

int RoundCount(ProtocolKind kind, const ProtocolConfig& cfg);

// ---------------------------------------------------------------------------
// Messages

struct RankingBroadcast {
  Ranking ranking;
  friend bool operator==(const RankingBroadcast&,
                         const RankingBroadcast&) = default;
};
// Every pair the sender saw supported by at least n-t rankings. A
// well-formed batch never holds both orientations of a pair.
struct ProposeBatch {
  std::vector<PairRelation> pairs;
  friend bool operator==(const ProposeBatch&, const ProposeBatch&) = default;
};
struct DictatorRanking {
  Ranking ranking;
  friend bool operator==(const DictatorRanking&,
                         const DictatorRanking&) = default;
};
// Sequential baseline: current top-candidate value plus the sender's input
// ballot (the ballot lets receivers recognize dominated candidates).
struct CandidateVote {
  CandidateId candidate = 0;
  Ranking ballot;
  friend bool operator==(const CandidateVote&, const CandidateVote&) = default;
};
struct ProposeCandidate {
  CandidateId candidate = 0;
  friend bool operator==(const ProposeCandidate&,
                         const ProposeCandidate&) = default;
};
struct DictatorCandidate {
  CandidateId candidate = 0;
  friend bool operator==(const DictatorCandidate&,
                         const DictatorCandidate&) = default;
};

using Payload = std::variant<RankingBroadcast, ProposeBatch, DictatorRanking,
                             CandidateVote, ProposeCandidate,
                             DictatorCandidate>;

std::string PayloadKind(const Payload& payload);

// ---------------------------------------------------------------------------
// Round structure

enum class Phase {
  kBallot,         // Kemeny round 1: broadcast the input ranking
  kCompute,        // Kemeny round 2: local median, no messages
  kRanking,        // King: broadcast current ranking
  kPropose,        // King: broadcast proposal batch
  kDictator,       // King: dictator broadcasts its ranking
  kVote,           // baseline: broadcast value + ballot
  kProposeValue,   // baseline: propose a value
  kDictatorValue,  // baseline: dictator broadcasts its value
};

std::string ToString(Phase phase);

// Ranking/value broadcasts in these phases go over a consistent broadcast
// channel: a Byzantine sender commits to one payload for all recipients.
bool IsConsistentBroadcast(Phase phase);

struct PhaseStep {
  int round = 0;       // 1-based protocol round
  Phase phase = Phase::kRanking;
  int king_round = 0;  // index into the dictator schedule
  int instance = 0;    // baseline candidate instance, 0-based
  bool last_in_instance = false;
};

std::vector<PhaseStep> Schedule(ProtocolKind kind, const ProtocolConfig& cfg);

inline constexpr NodeId kBroadcast = -1;

struct Outgoing {
  NodeId recipient = kBroadcast;
  Payload payload;
};

// inbox[sender]: first payload that sender addressed to this node in the
// current phase, or null.
using Inbox = std::span<const Payload* const>;

// ---------------------------------------------------------------------------
// King-round step functions

// Pairs ranked the same way by at least n-t of the received rankings.
// Absent entries are placeholders that support no pair.
PairSet ComputeProposals(std::span<const std::optional<Ranking>> received,
                         const ProtocolConfig& cfg);

// Pairs proposed by at least t+1 distinct senders. Both orientations of a
// pair inside one batch are ignored.
PairSet CountFixedPairs(
    std::span<const std::optional<ProposeBatch>> batches,
    const ProtocolConfig& cfg);

// CountFixedPairs, but throws IntegrityError if the result holds a cycle
// (including two opposite pairs).
PairSet CollectFixedPairs(
    std::span<const std::optional<ProposeBatch>> batches,
    const ProtocolConfig& cfg);

// Number of received rankings placing i above j, at index i*m+j.
std::vector<int> PairSupport(std::span<const std::optional<Ranking>> received,
                             int m);

// Greedy acyclic subset of `pairs`: pairs are taken by descending support
// (ties in pair order) and skipped when they would close a cycle. An empty
// `support` weighs every pair equally. Nodes fall back to this when the
// fixed set is cyclic, which can happen once a cycle spans n/t candidates.
PairSet AcyclicSubset(const PairSet& pairs, int m,
                      std::span<const int> support = {});

// True iff `pairs` contains a directed cycle.
bool HasCycle(const PairSet& pairs, int m);

// Candidates that occur in `fixed` come first, topologically ordered with
// ties broken by their position in `own`; the rest follow in `own` order.
// Throws IntegrityError on cyclic input.
Ranking AdjustRanking(const Ranking& own, const PairSet& fixed);

// The dictator's ranking if it is a ranking over the same universe that
// orders every fixed pair as fixed; otherwise `own`.
Ranking DecideDictator(const Ranking& own, const PairSet& fixed,
                       const std::optional<Ranking>& dictator);

// ---------------------------------------------------------------------------
// Node state machines

class Node {
 public:
  virtual ~Node() = default;

  NodeId id() const { return id_; }

  virtual std::vector<Outgoing> Emit(const PhaseStep& step) = 0;
  virtual void Receive(const PhaseStep& step, Inbox inbox) = 0;

  // Ranking held right now (the decision once the schedule completes).
  virtual Ranking Current() const = 0;

  // Candidates not yet decided (baseline); everyone otherwise.
  virtual std::vector<CandidateId> Remaining() const;

  const std::vector<std::string>& integrity_errors() const {
    return integrity_errors_;
  }

 protected:
  Node(NodeId id, const ProtocolConfig& cfg) : id_(id), cfg_(cfg) {}

  void RecordIntegrityError(const PhaseStep& step, const std::string& what);

  NodeId id_;
  ProtocolConfig cfg_;
  std::vector<std::string> integrity_errors_;
};

std::unique_ptr<Node> MakeNode(ProtocolKind kind, NodeId id,
                               const ProtocolConfig& cfg, Ranking input);

// ---------------------------------------------------------------------------
// Message accounting

// Messages sent by correct nodes in one King round: a ranking broadcast and
// a proposal batch from each of them to all n nodes, plus the dictator's
// broadcast when the dictator is correct.
constexpr std::int64_t KingRoundCorrectMessages(int n, int correct,
                                                bool dictator_correct) {
  return 2LL * n * correct + (dictator_correct ? n : 0);
}

// Per-round correct-node message counts for kParetoKing / kKemenyMedian.
// Empty for kSequentialStv, whose proposal traffic depends on the inputs.
std::vector<std::int64_t> CorrectMessagesClosedForm(
    ProtocolKind kind, const ProtocolConfig& cfg,
    std::span<const NodeId> byzantine);

}  // namespace byzrank

#endif  // BYZRANK_PROTOCOL_H_
