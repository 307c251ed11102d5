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

// Worst-case indistinguishable views for rank aggregation under Byzantine
// ballots, ratio measurement through the simulator, and the integer grid
// search over realizable three-candidate tournament weights.

#ifndef BYZRANK_SCENARIOS_H_
#define BYZRANK_SCENARIOS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "byzrank/kemeny.h"
#include "byzrank/protocol.h"
#include "byzrank/ranking.h"
#include "byzrank/rational.h"

namespace byzrank {

enum class ScenarioKind { kBinaryWorstCase, kCycleWorstCase };
enum class Side { kLeft, kRight };

std::string ToString(ScenarioKind kind);  // "binary-worst", "cycle-worst"
ScenarioKind ParseScenarioKind(const std::string& name);
std::string ToString(Side side);          // "left", "right"
Side ParseSide(const std::string& name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kBinaryWorstCase;
  int n = 0;
  int t = 0;
  int m = 2;
  Side side = Side::kLeft;

  // Binary: n even, 3t < n, m >= 1. Cycle: additionally m >= 3 and
  // n >= 4t so that every ballot count is non-negative.
  void Validate() const;
};

struct ScenarioProfiles {
  PreferenceProfile correct;
  std::vector<Ranking> byzantine;

  // Correct ballots followed by the Byzantine ones.
  PreferenceProfile Completed() const;
};

// Left: n/2 x r and n/2-t x opposite(r) correct, t x opposite(r) Byzantine,
// with r the identity. Right swaps r and opposite(r).
ScenarioProfiles GenBinaryWorst(const ScenarioSpec& spec);

// With A = c1>c2>cm>..>c3, B = cm>..>c3>c1>c2 and C = c2>cm>..>c3>c1:
// Left is A x (n/2-t), B x (n/2-2t), C x 2t plus t x B Byzantine; Right is
// A x (n/2-2t), B x (n/2-t), C x 2t plus t x A Byzantine.
ScenarioProfiles GenCycleWorst(const ScenarioSpec& spec);

ScenarioProfiles Generate(const ScenarioSpec& spec);

// True iff both sides complete to the same multiset of n ballots.
bool Indistinguishable(ScenarioKind kind, int n, int t, int m);

// Binary: n/(n-2t). Cycle: (2t+(m-2)n)/(2t+(m-2)(n-2t)).
Rational ScenarioClosedForm(const ScenarioSpec& spec);

struct LowerBoundReport {
  // Worst ratio over the runs tried, against that run's correct profile.
  ApproxReport measured;
  Rational closed_form;
  Ranking witness;
  Side witness_side = Side::kLeft;
  std::vector<NodeId> witness_schedule;
  int runs = 0;
  bool agreement = true;  // every run reached agreement
  bool upper_bound_ok = false;
  bool tight = false;

  Rational ratio_measured() const;  // UsageError when unbounded
};

// Runs `protocol` with correct ids 0..n-t-1 holding the side's correct
// ballots and ids n-t..n-1 controlled by a scripted adversary showing its
// Byzantine ballots to everyone. Tries the default dictator schedule and
// one that starts with the Byzantine ids, on spec.side or on both sides.
LowerBoundReport MeasureScenario(ProtocolKind protocol,
                                 const ScenarioSpec& spec,
                                 bool both_sides = true);

// ---------------------------------------------------------------------------
// Three-candidate grid search

// C231 scores the ranking c2>c3>c1, C312 the ranking c3>c1>c2.
enum class GridCase { kC231, kC312 };

std::string ToString(GridCase c);  // "C231", "C312"
GridCase ParseGridCase(const std::string& name);

struct GridSearchResult {
  int n = 0;
  int t = 0;
  GridCase grid_case = GridCase::kC231;
  bool feasible = false;  // false when n/t < 4
  std::int64_t points = 0;
  std::optional<Rational> max_ratio;
  std::array<int, 3> argmax{};  // lexicographically smallest (x, y, z)
  Rational closed_form;
  std::array<Rational, 3> closed_form_argmax;
  bool closed_form_argmax_integer = false;
};

// Closed-form maximum for k = n/t, and the point attaining it.
Rational GridClosedForm(int n, int t, GridCase c);
std::array<Rational, 3> GridClosedFormArgmax(int n, int t, GridCase c);

// Maximizes the case's ratio over integers n/2 <= z <= y <= x <= n-t with
// n-t <= x+y+z <= 2(n-t), plus x-z <= t (C231) or y-z <= t (C312).
// t >= 1 required.
GridSearchResult GridSearch(int n, int t, GridCase c);

}  // namespace byzrank

#endif  // BYZRANK_SCENARIOS_H_
