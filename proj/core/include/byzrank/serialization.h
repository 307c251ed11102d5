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

// JSON encodings for graphs, run descriptions, run records and reports.
// Candidates are written as dense indices; ratios as "num/den" strings.

#ifndef BYZRANK_SERIALIZATION_H_
#define BYZRANK_SERIALIZATION_H_

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "byzrank/kemeny.h"
#include "byzrank/protocol.h"
#include "byzrank/ranking.h"
#include "byzrank/scenarios.h"
#include "byzrank/simnet.h"
#include "byzrank/tournament.h"

namespace byzrank {

inline constexpr int kRunRecordSchemaVersion = 1;

nlohmann::json ToJson(const Ranking& r);
Ranking RankingFromJson(const nlohmann::json& j);

// {"m": .., "voters": .., "weights": [[..], ..]} with exact integers.
nlohmann::json ToJson(const TournamentGraph& g);
TournamentGraph GraphFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const ProtocolConfig& cfg);
ProtocolConfig ConfigFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const RunStats& stats);
nlohmann::json ToJson(const Payload& payload);
nlohmann::json ToJson(const Envelope& e);
nlohmann::json ToJson(const ApproxReport& report);

nlohmann::json ToJson(const RunSpec& spec);
RunSpec RunSpecFromJson(const nlohmann::json& j);

// One simulation outcome. Everything except wall_time_ms is a function of
// the run spec, so replaying `spec` reproduces the record.
struct RunRecord {
  RunSpec spec;
  std::vector<std::optional<Ranking>> outputs;
  RunStats stats;
  bool agreement = false;
  bool pareto_valid = false;
  bool rounds_ok = false;
  // Correct-node messages per round equal CorrectMessagesClosedForm
  // (always true for the baseline, which has no closed form).
  bool messages_ok = false;
  // Consensus against the correct-node profile; absent without agreement
  // or when m exceeds the exact solver.
  std::optional<ApproxReport> ratio;
  std::optional<Rational> ratio_bound;
  bool ratio_ok = true;
  std::vector<Envelope> transcript;
  double wall_time_ms = 0;

  bool Passed() const;
};

// Runs `spec` and fills in every derived field.
RunRecord RecordRun(const RunSpec& spec, const SimOptions& options = {});

// Approximation bound used for sweep runs: n/(n-2t).
Rational SweepRatioBound(const ProtocolConfig& cfg);

nlohmann::json ToJson(const RunRecord& record);
// Accepts a full record or a bare spec object.
RunSpec RunSpecFromRecordJson(const nlohmann::json& j);
// The record without wall_time_ms, for replay comparison.
nlohmann::json Deterministic(const nlohmann::json& record);

nlohmann::json ToJson(const LowerBoundReport& report);
nlohmann::json ToJson(const GridSearchResult& result);

}  // namespace byzrank

#endif  // BYZRANK_SERIALIZATION_H_
