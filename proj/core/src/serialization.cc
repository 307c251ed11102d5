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

#include "byzrank/serialization.h"

#include <chrono>
#include <utility>

#include "byzrank/errors.h"

namespace byzrank {

using nlohmann::json;

json ToJson(const Ranking& r) { return r.order(); }

Ranking RankingFromJson(const json& j) {
  return Ranking(j.get<std::vector<CandidateId>>());
}

json ToJson(const TournamentGraph& g) {
  const int m = g.candidates();
  json rows = json::array();
  for (int i = 0; i < m; ++i) {
    json row = json::array();
    for (int j = 0; j < m; ++j) row.push_back(g.weight(i, j));
    rows.push_back(std::move(row));
  }
  return {{"m", m}, {"voters", g.voters()}, {"weights", std::move(rows)}};
}

TournamentGraph GraphFromJson(const json& j) {
  const int m = j.at("m").get<int>();
  const auto rows = j.at("weights").get<std::vector<std::vector<std::int64_t>>>();
  if (static_cast<int>(rows.size()) != m) {
    throw UsageError("weights must have m rows");
  }
  std::vector<std::int64_t> flat;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m) {
      throw UsageError("weights must have m columns");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return TournamentGraph::FromWeights(m, j.at("voters").get<std::int64_t>(),
                                      std::move(flat));
}

json ToJson(const ProtocolConfig& cfg) {
  return {{"n", cfg.n},
          {"t", cfg.t},
          {"m", cfg.m},
          {"dictator_schedule", cfg.dictator_schedule}};
}

ProtocolConfig ConfigFromJson(const json& j) {
  ProtocolConfig cfg = ProtocolConfig::Make(
      j.at("n").get<int>(), j.at("t").get<int>(), j.at("m").get<int>());
  if (j.contains("dictator_schedule")) {
    cfg.dictator_schedule =
        j.at("dictator_schedule").get<std::vector<NodeId>>();
  }
  cfg.Validate();
  return cfg;
}

json ToJson(const RunStats& stats) {
  return {{"rounds", stats.rounds},
          {"messages_total", stats.messages_total},
          {"messages_per_round", stats.messages_per_round},
          {"correct_messages_per_round", stats.correct_messages_per_round},
          {"integrity_errors", stats.integrity_errors}};
}

namespace {

json PairsJson(const std::vector<PairRelation>& pairs) {
  json out = json::array();
  for (const PairRelation& p : pairs) out.push_back({p.above, p.below});
  return out;
}

}  // namespace

json ToJson(const Payload& payload) {
  json j = {{"kind", PayloadKind(payload)}};
  std::visit(
      [&j](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, RankingBroadcast> ||
                      std::is_same_v<T, DictatorRanking>) {
          j["ranking"] = ToJson(msg.ranking);
        } else if constexpr (std::is_same_v<T, ProposeBatch>) {
          j["pairs"] = PairsJson(msg.pairs);
        } else if constexpr (std::is_same_v<T, CandidateVote>) {
          j["candidate"] = msg.candidate;
          j["ballot"] = ToJson(msg.ballot);
        } else {
          j["candidate"] = msg.candidate;
        }
      },
      payload);
  return j;
}

json ToJson(const Envelope& e) {
  return {{"round", e.round},
          {"phase", ToString(e.phase)},
          {"sender", e.sender},
          {"recipient", e.recipient},
          {"message", ToJson(*e.payload)}};
}

json ToJson(const ApproxReport& report) {
  return {{"candidate_cost", report.candidate_cost},
          {"optimal_cost", report.optimal_cost},
          {"ratio", report.RatioString()}};
}

json ToJson(const RunSpec& spec) {
  json inputs = json::array();
  for (const Ranking& r : spec.inputs) inputs.push_back(ToJson(r));
  json j = {{"protocol", ToString(spec.protocol)},
            {"config", ToJson(spec.cfg)},
            {"strategy", ToString(spec.strategy)},
            {"seed", spec.seed},
            {"byzantine", spec.byzantine},
            {"inputs", std::move(inputs)}};
  if (!spec.script.empty()) {
    json script = json::array();
    for (const auto& views : spec.script) {
      json row = json::array();
      for (const Ranking& r : views) row.push_back(ToJson(r));
      script.push_back(std::move(row));
    }
    j["script"] = std::move(script);
  }
  return j;
}

RunSpec RunSpecFromJson(const json& j) {
  RunSpec spec;
  spec.protocol = ParseProtocolKind(j.at("protocol").get<std::string>());
  spec.cfg = ConfigFromJson(j.at("config"));
  spec.strategy = ParseStrategyKind(j.at("strategy").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.byzantine = j.at("byzantine").get<std::vector<NodeId>>();
  for (const json& r : j.at("inputs")) spec.inputs.push_back(RankingFromJson(r));
  if (j.contains("script")) {
    for (const json& views : j.at("script")) {
      std::vector<Ranking> row;
      for (const json& r : views) row.push_back(RankingFromJson(r));
      spec.script.push_back(std::move(row));
    }
  }
  return spec;
}

Rational SweepRatioBound(const ProtocolConfig& cfg) {
  return Rational(cfg.n, cfg.n - 2 * cfg.t);
}

bool RunRecord::Passed() const {
  return agreement && pareto_valid && rounds_ok && messages_ok && ratio_ok &&
         stats.integrity_errors.empty();
}

RunRecord RecordRun(const RunSpec& spec, const SimOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunResult run = Execute(spec, options);
  RunRecord record;
  record.spec = spec;
  record.outputs = std::move(run.outputs);
  run.outputs = record.outputs;
  record.stats = run.stats;
  record.agreement = run.Agreement();
  record.pareto_valid = run.ParetoValid();
  record.rounds_ok = run.stats.rounds == RoundCount(spec.protocol, spec.cfg);
  const std::vector<std::int64_t> expected =
      CorrectMessagesClosedForm(spec.protocol, spec.cfg, spec.byzantine);
  record.messages_ok = expected.empty() ||
                       expected == run.stats.correct_messages_per_round;
  if (const auto consensus = run.Consensus();
      consensus && spec.cfg.m <= kExactMaxCandidates) {
    record.ratio = ApproxRatio(*consensus, run.CorrectProfile());
    if (spec.protocol == ProtocolKind::kKemenyMedian) {
      record.ratio_bound = SweepRatioBound(spec.cfg);
      record.ratio_ok =
          !record.ratio->infinite() && *record.ratio->ratio <= *record.ratio_bound;
    }
  }
  record.transcript = std::move(run.transcript);
  record.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return record;
}

json ToJson(const RunRecord& record) {
  json outputs = json::array();
  for (const auto& out : record.outputs) {
    outputs.push_back(out ? ToJson(*out) : json(nullptr));
  }
  json j = {{"schema_version", kRunRecordSchemaVersion},
            {"spec", ToJson(record.spec)},
            {"outputs", std::move(outputs)},
            {"stats", ToJson(record.stats)},
            {"agreement", record.agreement},
            {"pareto_valid", record.pareto_valid},
            {"rounds_ok", record.rounds_ok},
            {"messages_ok", record.messages_ok},
            {"ratio", record.ratio ? ToJson(*record.ratio) : json(nullptr)},
            {"ratio_bound", record.ratio_bound
                                ? json(record.ratio_bound->ToString())
                                : json(nullptr)},
            {"ratio_ok", record.ratio_ok},
            {"passed", record.Passed()},
            {"wall_time_ms", record.wall_time_ms}};
  if (!record.transcript.empty()) {
    json transcript = json::array();
    for (const Envelope& e : record.transcript) transcript.push_back(ToJson(e));
    j["transcript"] = std::move(transcript);
  }
  return j;
}

RunSpec RunSpecFromRecordJson(const json& j) {
  if (j.contains("spec")) {
    const int version = j.value("schema_version", kRunRecordSchemaVersion);
    if (version != kRunRecordSchemaVersion) {
      throw UsageError("unsupported record schema_version " +
                       std::to_string(version));
    }
    return RunSpecFromJson(j.at("spec"));
  }
  return RunSpecFromJson(j);
}

json Deterministic(const json& record) {
  json copy = record;
  copy.erase("wall_time_ms");
  return copy;
}

json ToJson(const LowerBoundReport& report) {
  return {{"measured", ToJson(report.measured)},
          {"ratio_measured", report.measured.RatioString()},
          {"ratio_closed_form", report.closed_form.ToString()},
          {"witness", ToJson(report.witness)},
          {"witness_side", ToString(report.witness_side)},
          {"witness_schedule", report.witness_schedule},
          {"runs", report.runs},
          {"agreement", report.agreement},
          {"upper_bound_ok", report.upper_bound_ok},
          {"tight", report.tight}};
}

json ToJson(const GridSearchResult& result) {
  json j = {{"n", result.n},
            {"t", result.t},
            {"case", ToString(result.grid_case)},
            {"feasible", result.feasible},
            {"points", result.points}};
  if (!result.feasible) return j;
  json argmax_cf = json::array();
  for (const Rational& v : result.closed_form_argmax) {
    argmax_cf.push_back(v.ToString());
  }
  j["max_ratio"] = result.max_ratio ? json(result.max_ratio->ToString())
                                    : json(nullptr);
  j["argmax"] = result.argmax;
  j["closed_form"] = result.closed_form.ToString();
  j["closed_form_argmax"] = std::move(argmax_cf);
  j["closed_form_argmax_integer"] = result.closed_form_argmax_integer;
  return j;
}

}  // namespace byzrank
