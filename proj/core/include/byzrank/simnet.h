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

#ifndef BYZRANK_SIMNET_H_
#define BYZRANK_SIMNET_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "byzrank/protocol.h"
#include "byzrank/ranking.h"
#include "byzrank/rational.h"

namespace byzrank {

// One point-to-point delivery.
struct Envelope {
  int round = 0;
  Phase phase = Phase::kRanking;
  NodeId sender = 0;
  NodeId recipient = 0;
  std::shared_ptr<const Payload> payload;

  friend bool operator==(const Envelope& a, const Envelope& b) {
    return a.round == b.round && a.phase == b.phase && a.sender == b.sender &&
           a.recipient == b.recipient && *a.payload == *b.payload;
  }
};

struct RunStats {
  int rounds = 0;
  std::int64_t messages_total = 0;
  std::vector<std::int64_t> messages_per_round;
  std::vector<std::int64_t> correct_messages_per_round;
  std::vector<std::string> integrity_errors;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

struct SimOptions {
  bool record_transcript = false;
  // Lets Byzantine senders send different rankings/values to different
  // recipients even in consistent-broadcast phases. Off by default; the
  // King rounds' threshold arguments need every node to see the same
  // Byzantine ranking.
  bool allow_ranking_equivocation = false;
  // Accepts configurations with 3t >= n, where no guarantee holds.
  bool allow_unsafe_resilience = false;
};

// What the adversary sees when it picks its messages for one phase: the
// whole configuration, every input, every correct node's current ranking,
// and the messages correct nodes just sent (rushing).
struct AdversaryView {
  ProtocolKind protocol;
  const ProtocolConfig& cfg;
  const PhaseStep& step;
  std::span<const NodeId> byzantine;
  std::span<const Ranking> inputs;
  // current[id] for correct ids; nullopt for Byzantine ids.
  std::span<const std::optional<Ranking>> current;
  std::span<const Envelope> correct_outgoing;
  std::span<const CandidateId> remaining;
};

struct ByzantineSend {
  NodeId sender = 0;
  NodeId recipient = kBroadcast;
  Payload payload;
};

// Controls a fixed set of node ids for one run.
class Adversary {
 public:
  explicit Adversary(std::vector<NodeId> ids) : ids_(std::move(ids)) {}
  virtual ~Adversary() = default;

  const std::vector<NodeId>& ids() const { return ids_; }

  virtual std::string name() const = 0;

  // Called once before the first phase.
  virtual void Begin(ProtocolKind protocol, const ProtocolConfig& cfg,
                     std::span<const Ranking> inputs, std::uint64_t seed);

  virtual std::vector<ByzantineSend> Act(const AdversaryView& view) = 0;

  // Delivers what a controlled node received; keeps shadow nodes in sync.
  virtual void Observe(const PhaseStep& step, NodeId id, Inbox inbox);

 protected:
  // Messages an honest node in `id`'s position would send now.
  std::vector<ByzantineSend> HonestSends(const PhaseStep& step, NodeId id);
  Node* shadow(NodeId id);

  // Replaces the input a shadow node starts from (before Begin returns).
  void ResetShadow(NodeId id, Ranking input);

  ProtocolKind protocol_ = ProtocolKind::kParetoKing;
  ProtocolConfig cfg_;
  std::vector<Ranking> inputs_;
  std::mt19937_64 rng_;

 private:
  std::vector<NodeId> ids_;
  std::vector<std::unique_ptr<Node>> shadows_;  // parallel to ids_
};

enum class StrategyKind {
  kHonest,
  kSilent,
  kOppositeMedian,
  kEquivocate,
  kScripted,
  kRandom,
  kCycleAttack,
};

std::string ToString(StrategyKind kind);
// "honest", "silent", "opposite-median", "equivocate", "scripted",
// "random", "cycle-attack".
StrategyKind ParseStrategyKind(const std::string& name);
std::vector<StrategyKind> AllStrategies();

// script[i][recipient]: ballot controlled node ids[i] shows `recipient`
// when broadcasting its input ranking.
using ViewScript = std::vector<std::vector<Ranking>>;

// Script where every controlled node shows one ballot to everybody.
ViewScript UniformScript(std::span<const Ranking> ballots, int n);

// kScripted uses `script`, or draws a random one from the run seed when it
// is empty.
std::unique_ptr<Adversary> MakeAdversary(StrategyKind kind,
                                         std::vector<NodeId> ids,
                                         ViewScript script = {});

struct RunResult {
  ProtocolKind protocol = ProtocolKind::kParetoKing;
  ProtocolConfig cfg;
  std::vector<NodeId> byzantine;
  std::vector<Ranking> inputs;
  // Final rankings by node id; nullopt for Byzantine nodes.
  std::vector<std::optional<Ranking>> outputs;
  RunStats stats;
  std::vector<Envelope> transcript;

  bool IsByzantine(NodeId id) const;
  std::vector<NodeId> CorrectIds() const;
  std::vector<Ranking> CorrectInputs() const;
  PreferenceProfile CorrectProfile() const;

  // All correct nodes hold the same valid ranking.
  bool Agreement() const;
  // Every correct output orders every unanimous pair of correct inputs.
  bool ParetoValid() const;
  // The common correct output; nullopt without agreement.
  std::optional<Ranking> Consensus() const;
};

// Lockstep synchronous execution. For every phase: correct nodes emit,
// the adversary observes those messages and then emits its own, and all
// messages are delivered before the next phase. Identical arguments give
// identical transcripts.
RunResult RunSync(ProtocolKind protocol, std::vector<Ranking> inputs,
                  Adversary& adversary, const ProtocolConfig& cfg,
                  std::uint64_t seed, const SimOptions& options = {});

// ---------------------------------------------------------------------------
// Seeded run descriptions (sweeps, replay).

enum class Placement { kLast, kFirst, kRandom };

struct RunSpec {
  ProtocolKind protocol = ProtocolKind::kParetoKing;
  ProtocolConfig cfg;
  StrategyKind strategy = StrategyKind::kHonest;
  std::uint64_t seed = 0;
  std::vector<NodeId> byzantine;
  std::vector<Ranking> inputs;
  ViewScript script;  // only for kScripted; empty means seed-derived

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

std::vector<Ranking> RandomRankings(std::mt19937_64& rng, int m, int count);

// Inputs uniformly random from the seed; `byzantine_count` defaults to t.
RunSpec MakeRandomRunSpec(ProtocolKind protocol, const ProtocolConfig& cfg,
                          StrategyKind strategy, std::uint64_t seed,
                          Placement placement = Placement::kLast,
                          std::optional<int> byzantine_count = std::nullopt);

RunResult Execute(const RunSpec& spec, const SimOptions& options = {});

// ---------------------------------------------------------------------------
// Adversary search

enum class SearchObjective { kMaxRatio, kTriggerIntegrity, kBreakValidity };

struct SearchOptions {
  std::uint64_t seed = 1;
  // Fixed correct inputs (assigned to the non-Byzantine ids in order) and
  // an optional script to include among the candidates tried.
  std::optional<std::vector<Ranking>> correct_inputs;
  ViewScript script;
  SimOptions sim;
};

struct SearchResult {
  int runs = 0;
  // Runs whose score was positive (violations, integrity errors, or ratio
  // above 1 for kMaxRatio).
  int hits = 0;
  // Approximation ratio for kMaxRatio, violation/error count otherwise.
  double worst_score = 0;
  std::optional<Rational> worst_ratio;
  std::optional<RunSpec> worst_spec;
  std::optional<RunResult> worst;
};

// Randomized search over Byzantine placement, dictator schedule, strategy,
// and inputs (biased toward Condorcet cycles); `budget` runs in total.
SearchResult AdversarySearch(ProtocolKind protocol, const ProtocolConfig& cfg,
                             SearchObjective objective, int budget,
                             const SearchOptions& options = {});

}  // namespace byzrank

#endif  // BYZRANK_SIMNET_H_
