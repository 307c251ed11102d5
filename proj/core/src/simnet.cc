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

#include "byzrank/simnet.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "byzrank/errors.h"
#include "byzrank/kemeny.h"

namespace byzrank {
namespace {

void CheckByzantine(const ProtocolConfig& cfg, std::span<const NodeId> ids) {
  if (static_cast<int>(ids.size()) > cfg.t) {
    throw UsageError("more Byzantine nodes than t");
  }
  std::vector<bool> seen(cfg.n, false);
  for (NodeId id : ids) {
    if (id < 0 || id >= cfg.n) {
      throw UsageError("Byzantine id " + std::to_string(id) + " out of range");
    }
    if (seen[id]) throw UsageError("duplicate Byzantine id");
    seen[id] = true;
  }
}

}  // namespace

RunResult RunSync(ProtocolKind protocol, std::vector<Ranking> inputs,
                  Adversary& adversary, const ProtocolConfig& cfg,
                  std::uint64_t seed, const SimOptions& options) {
  cfg.Validate(!options.allow_unsafe_resilience);
  if (static_cast<int>(inputs.size()) != cfg.n) {
    throw UsageError("need one input ranking per node");
  }
  for (const Ranking& r : inputs) {
    if (r.size() != cfg.m) throw UsageError("input ranking has wrong size");
  }
  CheckByzantine(cfg, adversary.ids());

  RunResult result;
  result.protocol = protocol;
  result.cfg = cfg;
  result.byzantine = adversary.ids();
  std::sort(result.byzantine.begin(), result.byzantine.end());
  result.inputs = inputs;

  const int n = cfg.n;
  std::vector<std::unique_ptr<Node>> nodes(n);
  for (NodeId id = 0; id < n; ++id) {
    if (!result.IsByzantine(id)) {
      nodes[id] = MakeNode(protocol, id, cfg, inputs[id]);
    }
  }
  adversary.Begin(protocol, cfg, result.inputs, seed);

  const NodeId first_correct = [&] {
    for (NodeId id = 0; id < n; ++id) {
      if (nodes[id]) return id;
    }
    return NodeId{-1};
  }();

  RunStats& stats = result.stats;
  stats.rounds = RoundCount(protocol, cfg);
  stats.messages_per_round.assign(stats.rounds, 0);
  stats.correct_messages_per_round.assign(stats.rounds, 0);

  std::vector<std::optional<Ranking>> current(n);
  for (const PhaseStep& step : Schedule(protocol, cfg)) {
    std::vector<Envelope> envelopes;
    auto post = [&](NodeId from, NodeId to, Payload payload) {
      auto shared = std::make_shared<const Payload>(std::move(payload));
      if (to == kBroadcast) {
        for (NodeId r = 0; r < n; ++r) {
          envelopes.push_back({step.round, step.phase, from, r, shared});
        }
      } else {
        if (to < 0 || to >= n) throw UsageError("recipient out of range");
        envelopes.push_back({step.round, step.phase, from, to, shared});
      }
    };

    for (NodeId id = 0; id < n; ++id) {
      if (!nodes[id]) continue;
      for (Outgoing& out : nodes[id]->Emit(step)) {
        post(id, out.recipient, std::move(out.payload));
      }
    }
    const std::size_t correct_count = envelopes.size();

    for (NodeId id = 0; id < n; ++id) {
      current[id] = nodes[id] ? std::optional(nodes[id]->Current())
                              : std::nullopt;
    }
    std::vector<CandidateId> remaining;
    if (first_correct >= 0) {
      remaining = nodes[first_correct]->Remaining();
    } else {
      remaining.resize(cfg.m);
      std::iota(remaining.begin(), remaining.end(), 0);
    }
    std::vector<Envelope> correct_outgoing(envelopes.begin(), envelopes.end());
    const AdversaryView view{protocol,         cfg,
                             step,             result.byzantine,
                             result.inputs,    current,
                             correct_outgoing, remaining};

    std::vector<ByzantineSend> sends = adversary.Act(view);
    const bool consistent = IsConsistentBroadcast(step.phase) &&
                            !options.allow_ranking_equivocation;
    if (consistent) {
      // A sender commits to the payload it addressed to its lowest
      // recipient; everybody receives that one.
      std::vector<std::optional<std::pair<NodeId, std::size_t>>> pick(n);
      for (std::size_t i = 0; i < sends.size(); ++i) {
        const ByzantineSend& s = sends[i];
        if (!result.IsByzantine(s.sender)) {
          throw UsageError("adversary sent as correct node " +
                           std::to_string(s.sender));
        }
        const NodeId to = s.recipient == kBroadcast ? -1 : s.recipient;
        if (!pick[s.sender] || to < pick[s.sender]->first) {
          pick[s.sender] = {to, i};
        }
      }
      for (NodeId id = 0; id < n; ++id) {
        if (pick[id]) post(id, kBroadcast, sends[pick[id]->second].payload);
      }
    } else {
      for (ByzantineSend& s : sends) {
        if (!result.IsByzantine(s.sender)) {
          throw UsageError("adversary sent as correct node " +
                           std::to_string(s.sender));
        }
        post(s.sender, s.recipient, std::move(s.payload));
      }
    }

    std::vector<std::vector<const Payload*>> inbox(
        n, std::vector<const Payload*>(n, nullptr));
    for (const Envelope& e : envelopes) {
      const Payload*& slot = inbox[e.recipient][e.sender];
      if (!slot) slot = e.payload.get();
    }
    for (NodeId id = 0; id < n; ++id) {
      if (nodes[id]) {
        nodes[id]->Receive(step, inbox[id]);
      } else {
        adversary.Observe(step, id, inbox[id]);
      }
    }

    stats.messages_per_round[step.round - 1] +=
        static_cast<std::int64_t>(envelopes.size());
    stats.correct_messages_per_round[step.round - 1] +=
        static_cast<std::int64_t>(correct_count);
    stats.messages_total += static_cast<std::int64_t>(envelopes.size());
    if (options.record_transcript) {
      result.transcript.insert(result.transcript.end(),
                               std::make_move_iterator(envelopes.begin()),
                               std::make_move_iterator(envelopes.end()));
    }
  }

  result.outputs.resize(n);
  for (NodeId id = 0; id < n; ++id) {
    if (!nodes[id]) continue;
    result.outputs[id] = nodes[id]->Current();
    for (const std::string& e : nodes[id]->integrity_errors()) {
      stats.integrity_errors.push_back("node " + std::to_string(id) + ": " +
                                       e);
    }
  }
  return result;
}

bool RunResult::IsByzantine(NodeId id) const {
  return std::find(byzantine.begin(), byzantine.end(), id) != byzantine.end();
}

std::vector<NodeId> RunResult::CorrectIds() const {
  std::vector<NodeId> ids;
  for (NodeId id = 0; id < cfg.n; ++id) {
    if (!IsByzantine(id)) ids.push_back(id);
  }
  return ids;
}

std::vector<Ranking> RunResult::CorrectInputs() const {
  std::vector<Ranking> out;
  for (NodeId id : CorrectIds()) out.push_back(inputs[id]);
  return out;
}

PreferenceProfile RunResult::CorrectProfile() const {
  return PreferenceProfile(cfg.m, CorrectInputs());
}

std::optional<Ranking> RunResult::Consensus() const {
  std::optional<Ranking> common;
  for (NodeId id : CorrectIds()) {
    if (id >= static_cast<int>(outputs.size()) || !outputs[id]) {
      return std::nullopt;
    }
    if (!common) {
      common = outputs[id];
    } else if (*common != *outputs[id]) {
      return std::nullopt;
    }
  }
  return common;
}

bool RunResult::Agreement() const { return Consensus().has_value(); }

bool RunResult::ParetoValid() const {
  const PairSet unanimous = UnanimousPairs(CorrectProfile());
  for (NodeId id : CorrectIds()) {
    if (id >= static_cast<int>(outputs.size()) || !outputs[id]) return false;
    if (!Respects(*outputs[id], unanimous)) return false;
  }
  return true;
}

std::vector<Ranking> RandomRankings(std::mt19937_64& rng, int m, int count) {
  std::vector<Ranking> out;
  out.reserve(count);
  std::vector<CandidateId> order(m);
  for (int i = 0; i < count; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    out.emplace_back(order);
  }
  return out;
}

namespace {

std::vector<NodeId> PlaceByzantine(std::mt19937_64& rng, int n, int count,
                                   Placement placement) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  switch (placement) {
    case Placement::kLast:
      ids.erase(ids.begin(), ids.end() - count);
      break;
    case Placement::kFirst:
      ids.resize(count);
      break;
    case Placement::kRandom:
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(count);
      std::sort(ids.begin(), ids.end());
      break;
  }
  return ids;
}

}  // namespace

RunSpec MakeRandomRunSpec(ProtocolKind protocol, const ProtocolConfig& cfg,
                          StrategyKind strategy, std::uint64_t seed,
                          Placement placement,
                          std::optional<int> byzantine_count) {
  cfg.Validate();
  const int count = byzantine_count.value_or(cfg.t);
  if (count < 0 || count > cfg.t) {
    throw UsageError("Byzantine count must lie in [0, t]");
  }
  std::mt19937_64 rng(seed);
  RunSpec spec;
  spec.protocol = protocol;
  spec.cfg = cfg;
  spec.strategy = strategy;
  spec.seed = seed;
  spec.inputs = RandomRankings(rng, cfg.m, cfg.n);
  spec.byzantine = PlaceByzantine(rng, cfg.n, count, placement);
  return spec;
}

RunResult Execute(const RunSpec& spec, const SimOptions& options) {
  auto adversary = MakeAdversary(spec.strategy, spec.byzantine, spec.script);
  return RunSync(spec.protocol, spec.inputs, *adversary, spec.cfg, spec.seed,
                 options);
}

namespace {

// Profile built around rotations of a cycle over 3..m random candidates, with
// some uniformly random ballots mixed in.
std::vector<Ranking> CycleBiased(std::mt19937_64& rng, int m, int count) {
  if (m < 3) return RandomRankings(rng, m, count);
  std::vector<CandidateId> base(m);
  std::iota(base.begin(), base.end(), 0);
  std::shuffle(base.begin(), base.end(), rng);
  const int len = std::uniform_int_distribution<int>(3, m)(rng);
  std::vector<Ranking> rotations;
  for (int shift = 0; shift < len; ++shift) {
    std::vector<CandidateId> order = base;
    std::rotate(order.begin(), order.begin() + shift, order.begin() + len);
    rotations.emplace_back(std::move(order));
  }
  std::vector<Ranking> out;
  std::uniform_int_distribution<int> pick(0, len);
  for (int i = 0; i < count; ++i) {
    const int k = pick(rng);
    out.push_back(k < len ? rotations[k] : RandomRankings(rng, m, 1).front());
  }
  return out;
}

double Score(SearchObjective objective, const RunResult& run,
             std::optional<Rational>* ratio) {
  switch (objective) {
    case SearchObjective::kTriggerIntegrity:
      return static_cast<double>(run.stats.integrity_errors.size());
    case SearchObjective::kBreakValidity:
      return (run.Agreement() ? 0.0 : 1.0) + (run.ParetoValid() ? 0.0 : 1.0);
    case SearchObjective::kMaxRatio: {
      const PreferenceProfile profile = run.CorrectProfile();
      const std::int64_t opt = KemenyExact(profile, 1).cost;
      double worst = 0;
      *ratio = std::nullopt;
      for (NodeId id : run.CorrectIds()) {
        const ApproxReport report =
            ApproxRatio(TauProfile(*run.outputs[id], profile), opt);
        if (report.infinite()) {
          *ratio = std::nullopt;
          return std::numeric_limits<double>::infinity();
        }
        if (report.ratio->ToDouble() > worst) {
          worst = report.ratio->ToDouble();
          *ratio = report.ratio;
        }
      }
      return worst;
    }
  }
  return 0;
}

}  // namespace

SearchResult AdversarySearch(ProtocolKind protocol, const ProtocolConfig& cfg,
                             SearchObjective objective, int budget,
                             const SearchOptions& options) {
  cfg.Validate(!options.sim.allow_unsafe_resilience);
  if (objective == SearchObjective::kMaxRatio && cfg.m > kExactMaxCandidates) {
    throw CapacityError("ratio search needs m <= " +
                        std::to_string(kExactMaxCandidates));
  }
  if (options.correct_inputs &&
      static_cast<int>(options.correct_inputs->size()) != cfg.n - cfg.t) {
    throw UsageError("fixed correct inputs must cover exactly n-t nodes");
  }
  std::mt19937_64 rng(options.seed);
  const std::vector<StrategyKind> strategies = AllStrategies();
  const double hit_floor = objective == SearchObjective::kMaxRatio ? 1.0 : 0.0;

  SearchResult result;
  for (int run = 0; run < budget; ++run) {
    RunSpec spec;
    spec.protocol = protocol;
    spec.cfg = cfg;
    spec.seed = rng();
    spec.strategy = strategies[rng() % strategies.size()];

    const Placement placement = static_cast<Placement>(rng() % 3);
    spec.byzantine = PlaceByzantine(rng, cfg.n, cfg.t, placement);

    // Dictator schedule: default, Byzantine nodes first, or random.
    switch (rng() % 3) {
      case 0:
        break;
      case 1: {
        std::vector<NodeId> order = spec.byzantine;
        for (NodeId id = 0; id < cfg.n; ++id) {
          if (std::find(order.begin(), order.end(), id) == order.end()) {
            order.push_back(id);
          }
        }
        order.resize(cfg.t + 1);
        spec.cfg.dictator_schedule = order;
        break;
      }
      default: {
        std::vector<NodeId> order(cfg.n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        order.resize(cfg.t + 1);
        spec.cfg.dictator_schedule = order;
        break;
      }
    }

    if (options.correct_inputs) {
      spec.inputs = RandomRankings(rng, cfg.m, cfg.n);
      std::size_t next = 0;
      for (NodeId id = 0; id < cfg.n; ++id) {
        if (std::find(spec.byzantine.begin(), spec.byzantine.end(), id) ==
            spec.byzantine.end()) {
          spec.inputs[id] = (*options.correct_inputs)[next++];
        }
      }
    } else if (rng() % 2 == 0) {
      spec.inputs = CycleBiased(rng, cfg.m, cfg.n);
    } else {
      spec.inputs = RandomRankings(rng, cfg.m, cfg.n);
    }

    if (!options.script.empty() && rng() % 2 == 0) {
      spec.strategy = StrategyKind::kScripted;
      spec.script = options.script;
    }

    RunResult outcome = Execute(spec, options.sim);
    std::optional<Rational> ratio;
    const double score = Score(objective, outcome, &ratio);
    ++result.runs;
    if (score > hit_floor) ++result.hits;
    if (!result.worst_spec || score > result.worst_score) {
      result.worst_score = score;
      result.worst_ratio = ratio;
      result.worst_spec = std::move(spec);
      result.worst = std::move(outcome);
    }
  }
  return result;
}

}  // namespace byzrank
