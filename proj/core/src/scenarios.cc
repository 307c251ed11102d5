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

#include "byzrank/scenarios.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "byzrank/errors.h"
#include "byzrank/simnet.h"

namespace byzrank {

std::string ToString(ScenarioKind kind) {
  return kind == ScenarioKind::kBinaryWorstCase ? "binary-worst"
                                                : "cycle-worst";
}

ScenarioKind ParseScenarioKind(const std::string& name) {
  if (name == "binary-worst") return ScenarioKind::kBinaryWorstCase;
  if (name == "cycle-worst") return ScenarioKind::kCycleWorstCase;
  throw UsageError("unknown scenario '" + name + "'");
}

std::string ToString(Side side) {
  return side == Side::kLeft ? "left" : "right";
}

Side ParseSide(const std::string& name) {
  if (name == "left") return Side::kLeft;
  if (name == "right") return Side::kRight;
  throw UsageError("side must be 'left' or 'right', got '" + name + "'");
}

void ScenarioSpec::Validate() const {
  if (n <= 0 || n % 2 != 0) {
    throw UsageError("scenario needs an even n > 0, got n=" +
                     std::to_string(n));
  }
  if (t < 0 || 3 * t >= n) {
    throw UsageError("t < n/3 required, got n=" + std::to_string(n) +
                     " t=" + std::to_string(t));
  }
  if (m < 1) throw UsageError("m >= 1 required");
  if (kind == ScenarioKind::kCycleWorstCase) {
    if (m < 3) throw UsageError("cycle-worst needs m >= 3");
    if (n < 4 * t) {
      throw UsageError("cycle-worst needs n >= 4t, got n=" +
                       std::to_string(n) + " t=" + std::to_string(t));
    }
  }
}

PreferenceProfile ScenarioProfiles::Completed() const {
  std::vector<Ranking> all = correct.rankings();
  all.insert(all.end(), byzantine.begin(), byzantine.end());
  return PreferenceProfile(correct.candidates(), std::move(all));
}

namespace {

void Append(std::vector<Ranking>& out, const Ranking& r, int count) {
  out.insert(out.end(), count, r);
}

}  // namespace

ScenarioProfiles GenBinaryWorst(const ScenarioSpec& spec) {
  spec.Validate();
  if (spec.kind != ScenarioKind::kBinaryWorstCase) {
    throw UsageError("not a binary-worst spec");
  }
  const int half = spec.n / 2;
  Ranking major = Ranking::Identity(spec.m);
  Ranking minor = Opposite(major);
  if (spec.side == Side::kRight) std::swap(major, minor);
  std::vector<Ranking> correct;
  Append(correct, major, half);
  Append(correct, minor, half - spec.t);
  return {PreferenceProfile(spec.m, std::move(correct)),
          std::vector<Ranking>(spec.t, minor)};
}

ScenarioProfiles GenCycleWorst(const ScenarioSpec& spec) {
  spec.Validate();
  if (spec.kind != ScenarioKind::kCycleWorstCase) {
    throw UsageError("not a cycle-worst spec");
  }
  const int m = spec.m;
  std::vector<CandidateId> block;  // cm > ... > c3
  for (CandidateId c = m - 1; c >= 2; --c) block.push_back(c);

  std::vector<CandidateId> a = {0, 1};
  a.insert(a.end(), block.begin(), block.end());
  std::vector<CandidateId> b = block;
  b.push_back(0);
  b.push_back(1);
  std::vector<CandidateId> c = {1};
  c.insert(c.end(), block.begin(), block.end());
  c.push_back(0);
  const Ranking ra(a), rb(b), rc(c);

  const int half = spec.n / 2;
  const int t = spec.t;
  std::vector<Ranking> correct;
  if (spec.side == Side::kLeft) {
    Append(correct, ra, half - t);
    Append(correct, rb, half - 2 * t);
    Append(correct, rc, 2 * t);
    return {PreferenceProfile(m, std::move(correct)),
            std::vector<Ranking>(t, rb)};
  }
  Append(correct, ra, half - 2 * t);
  Append(correct, rb, half - t);
  Append(correct, rc, 2 * t);
  return {PreferenceProfile(m, std::move(correct)),
          std::vector<Ranking>(t, ra)};
}

ScenarioProfiles Generate(const ScenarioSpec& spec) {
  return spec.kind == ScenarioKind::kBinaryWorstCase ? GenBinaryWorst(spec)
                                                     : GenCycleWorst(spec);
}

bool Indistinguishable(ScenarioKind kind, int n, int t, int m) {
  auto sorted = [&](Side side) {
    std::vector<Ranking> all =
        Generate({kind, n, t, m, side}).Completed().rankings();
    std::sort(all.begin(), all.end());
    return all;
  };
  return sorted(Side::kLeft) == sorted(Side::kRight);
}

Rational ScenarioClosedForm(const ScenarioSpec& spec) {
  spec.Validate();
  const std::int64_t n = spec.n, t = spec.t, m = spec.m;
  if (spec.kind == ScenarioKind::kBinaryWorstCase) {
    return Rational(n, n - 2 * t);
  }
  return Rational(2 * t + (m - 2) * n, 2 * t + (m - 2) * (n - 2 * t));
}

Rational LowerBoundReport::ratio_measured() const {
  if (measured.infinite()) throw UsageError("measured ratio is unbounded");
  return *measured.ratio;
}

namespace {

bool Worse(const ApproxReport& a, const ApproxReport& b) {
  if (a.infinite()) return !b.infinite();
  if (b.infinite()) return false;
  return *a.ratio > *b.ratio;
}

}  // namespace

LowerBoundReport MeasureScenario(ProtocolKind protocol,
                                 const ScenarioSpec& spec, bool both_sides) {
  spec.Validate();
  LowerBoundReport report;
  report.closed_form = ScenarioClosedForm(spec);

  const int n = spec.n, t = spec.t;
  std::vector<NodeId> byzantine(t);
  std::iota(byzantine.begin(), byzantine.end(), n - t);

  std::vector<std::vector<NodeId>> schedules;
  schedules.push_back(ProtocolConfig::Make(n, t, spec.m).dictator_schedule);
  if (t > 0) {
    std::vector<NodeId> byz_first = byzantine;
    byz_first.push_back(0);
    schedules.push_back(byz_first);
  }

  std::vector<Side> sides = {spec.side};
  if (both_sides) sides = {Side::kLeft, Side::kRight};

  bool first = true;
  for (Side side : sides) {
    ScenarioSpec s = spec;
    s.side = side;
    const ScenarioProfiles views = Generate(s);
    std::vector<Ranking> inputs = views.correct.rankings();
    inputs.insert(inputs.end(), views.byzantine.begin(),
                  views.byzantine.end());
    const ViewScript script = UniformScript(views.byzantine, n);

    for (const std::vector<NodeId>& schedule : schedules) {
      ProtocolConfig cfg = ProtocolConfig::Make(n, t, spec.m);
      cfg.dictator_schedule = schedule;
      auto adversary =
          MakeAdversary(StrategyKind::kScripted, byzantine, script);
      const RunResult run = RunSync(protocol, inputs, *adversary, cfg, 0);
      ++report.runs;
      if (!run.Agreement()) report.agreement = false;
      for (NodeId id : run.CorrectIds()) {
        const ApproxReport r = ApproxRatio(*run.outputs[id], views.correct);
        if (first || Worse(r, report.measured)) {
          first = false;
          report.measured = r;
          report.witness = *run.outputs[id];
          report.witness_side = side;
          report.witness_schedule = schedule;
        }
      }
    }
  }
  report.upper_bound_ok =
      !report.measured.infinite() && *report.measured.ratio <= report.closed_form;
  report.tight =
      !report.measured.infinite() && *report.measured.ratio == report.closed_form;
  return report;
}

// ---------------------------------------------------------------------------

std::string ToString(GridCase c) {
  return c == GridCase::kC231 ? "C231" : "C312";
}

GridCase ParseGridCase(const std::string& name) {
  if (name == "C231" || name == "c231") return GridCase::kC231;
  if (name == "C312" || name == "c312") return GridCase::kC312;
  throw UsageError("case must be C231 or C312, got '" + name + "'");
}

namespace {

void CheckGridArgs(int n, int t) {
  if (t < 1) throw UsageError("grid search needs t >= 1");
  if (n < 1) throw UsageError("grid search needs n >= 1");
}

}  // namespace

Rational GridClosedForm(int n, int t, GridCase c) {
  CheckGridArgs(n, t);
  // Regimes by k = n/t, compared as n against multiples of t.
  const std::int64_t N = n, T = t;
  if (c == GridCase::kC231) {
    if (N <= 6 * T) return Rational(2 * N - 4 * T, N);
    if (N <= 8 * T) return Rational(N + 2 * T, N);
    return Rational(2 * N - T, 2 * N - 4 * T);
  }
  if (N <= 8 * T) return Rational(3 * N - 4 * T, 2 * N);
  return Rational(N + 2 * T, N);
}

std::array<Rational, 3> GridClosedFormArgmax(int n, int t, GridCase c) {
  CheckGridArgs(n, t);
  const std::int64_t N = n, T = t;
  const Rational half(N, 2);
  if (c == GridCase::kC231) {
    if (N <= 6 * T) return {Rational(N - 2 * T), half, half};
    if (N <= 8 * T) return {half + Rational(T), Rational(N - 3 * T), half};
    const Rational xy(2 * N - T, 3);
    return {xy, xy, Rational(2 * N - 4 * T, 3)};
  }
  if (N <= 8 * T) {
    const Rational xy = Rational(3 * N, 4) - Rational(T);
    return {xy, xy, half};
  }
  return {Rational(N - 3 * T), half + Rational(T), half};
}

GridSearchResult GridSearch(int n, int t, GridCase c) {
  CheckGridArgs(n, t);
  GridSearchResult result;
  result.n = n;
  result.t = t;
  result.grid_case = c;
  result.feasible = n >= 4 * t;
  if (!result.feasible) return result;
  result.closed_form = GridClosedForm(n, t, c);
  result.closed_form_argmax = GridClosedFormArgmax(n, t, c);
  result.closed_form_argmax_integer =
      std::all_of(result.closed_form_argmax.begin(),
                  result.closed_form_argmax.end(),
                  [](const Rational& v) { return v.den() == 1; });

  const int s = n - t;
  const int lo = (n + 1) / 2;
  for (int x = lo; x <= s; ++x) {
    for (int y = lo; y <= x; ++y) {
      for (int z = lo; z <= y; ++z) {
        const int sum = x + y + z;
        if (sum < s || sum > 2 * s) continue;
        if (c == GridCase::kC231 ? x - z > t : y - z > t) continue;
        ++result.points;
        const int num = c == GridCase::kC231 ? 2 * s + x - y - z
                                             : 2 * s - x + y - z;
        const Rational ratio(num, 2 * s - x - y + z);
        if (!result.max_ratio || ratio > *result.max_ratio) {
          result.max_ratio = ratio;
          result.argmax = {x, y, z};
        }
      }
    }
  }
  return result;
}

}  // namespace byzrank
