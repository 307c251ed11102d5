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

#include "cli.h"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "byzrank/errors.h"
#include "byzrank/kemeny.h"
#include "byzrank/profile_io.h"
#include "byzrank/scenarios.h"
#include "byzrank/serialization.h"
#include "byzrank/simnet.h"

namespace byzrank::cli {
namespace {

using nlohmann::json;

// BYZRANK_LOG: unset/0/off is quiet, 1/info prints one line per run,
// 2/trace also records transcripts and prints every delivery.
int LogLevel() {
  const char* env = std::getenv("BYZRANK_LOG");
  if (!env) return 0;
  const std::string v = env;
  if (v == "1" || v == "info") return 1;
  if (v == "2" || v == "trace" || v == "transcript") return 2;
  return 0;
}

std::string Fixed(const Rational& r) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << r.ToDouble();
  return s.str();
}

std::string Fixed(const ApproxReport& r) {
  return r.infinite() ? "inf" : Fixed(*r.ratio);
}

// JSON sink: a file, or stdout for "-".
class JsonSink {
 public:
  JsonSink(const std::string& path, std::ostream& out) {
    if (path.empty()) return;
    if (path == "-") {
      stream_ = &out;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  bool enabled() const { return stream_ != nullptr; }
  bool to_stdout() const { return stream_ && !file_; }
  void Write(const json& j) {
    if (stream_) *stream_ << j.dump() << "\n";
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

// ---------------------------------------------------------------------------

struct KemenyArgs {
  std::string profile;
  bool all = false;
  bool verify = false;
  std::string json_path;
};

int CmdKemeny(const KemenyArgs& args, std::ostream& out, std::ostream&) {
  const ParsedProfile parsed = ReadProfileFile(args.profile);
  const PreferenceProfile& profile = parsed.profile;
  const CandidateNames& names = parsed.names;
  const MedianResult result = KemenyExact(profile);

  JsonSink sink(args.json_path, out);
  std::ostream& text = out;
  const bool quiet = sink.to_stdout();

  if (!quiet) {
    text << "candidates: " << profile.candidates()
         << "  ballots: " << profile.size() << "\n";
    text << "median: " << names.Format(result.chosen) << "\n";
    text << "cost: " << result.cost << "\n";
    text << "medians: " << result.medians.size()
         << (result.truncated ? " (listing truncated)" : "") << "\n";
    if (args.all) {
      for (const Ranking& r : result.medians) {
        text << "  " << names.Format(r) << "\n";
      }
    }
  }

  int code = kOk;
  json verify = nullptr;
  if (args.verify) {
    if (profile.candidates() > kBruteForceMaxCandidates) {
      if (!quiet) {
        text << "verify: skipped (brute force needs m <= "
             << kBruteForceMaxCandidates << ")\n";
      }
      verify = "skipped";
    } else {
      const MedianResult brute = KemenyBrute(profile);
      bool ok = brute.cost == result.cost && brute.chosen == result.chosen;
      if (!result.truncated) ok = ok && brute.medians == result.medians;
      if (!quiet) {
        text << "verify: brute force "
             << (ok ? "agrees" : "DISAGREES") << " (cost " << brute.cost
             << ", chosen " << names.Format(brute.chosen) << ")\n";
      }
      verify = ok;
      if (!ok) code = kPropertyFailed;
    }
  }

  if (sink.enabled()) {
    json medians = json::array();
    for (const Ranking& r : result.medians) {
      if (!args.all && medians.size() >= 1) break;
      medians.push_back(names.Format(r));
    }
    sink.Write({{"candidates", names.names()},
                {"ballots", profile.size()},
                {"median", names.Format(result.chosen)},
                {"median_indices", ToJson(result.chosen)},
                {"cost", result.cost},
                {"median_count", result.medians.size()},
                {"truncated", result.truncated},
                {"medians", medians},
                {"verify", verify}});
  }
  return code;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string protocol = "alg1";
  std::string strategy = "honest";
  std::string placement = "last";
  int n = 4;
  int t = 1;
  int m = 3;
  bool m_given = false;
  int seeds = 1;
  std::uint64_t seed_start = 0;
  std::string profile;
  std::string json_path;
  std::string replay;
};

Placement ParsePlacement(const std::string& name) {
  if (name == "last") return Placement::kLast;
  if (name == "first") return Placement::kFirst;
  if (name == "random") return Placement::kRandom;
  throw UsageError("placement must be last, first or random");
}

int CmdReplay(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  std::ifstream in(args.replay);
  if (!in) throw UsageError("cannot open '" + args.replay + "'");
  JsonSink sink(args.json_path, out);
  int total = 0;
  int same = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json original;
    try {
      original = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    SimOptions options;
    options.record_transcript = original.contains("transcript");
    const json replayed =
        ToJson(RecordRun(RunSpecFromRecordJson(original), options));
    sink.Write(replayed);
    ++total;
    const json diff =
        json::diff(Deterministic(original), Deterministic(replayed));
    if (diff.empty()) {
      ++same;
    } else {
      err << "replay: line " << line_no << " differs: " << diff.dump()
          << "\n";
    }
  }
  std::ostream& text = sink.to_stdout() ? err : out;
  text << "replay: " << same << "/" << total << " records reproduced\n";
  return same == total ? kOk : kPropertyFailed;
}

int CmdSimulate(const SimulateArgs& args, std::ostream& out,
                std::ostream& err) {
  if (!args.replay.empty()) return CmdReplay(args, out, err);

  const ProtocolKind protocol = ParseProtocolKind(args.protocol);
  const StrategyKind strategy = ParseStrategyKind(args.strategy);
  const Placement placement = ParsePlacement(args.placement);
  if (args.seeds < 1) throw UsageError("--seeds must be at least 1");

  std::optional<ParsedProfile> parsed;
  int m = args.m;
  if (!args.profile.empty()) {
    parsed = ReadProfileFile(args.profile);
    if (args.m_given && args.m != parsed->profile.candidates()) {
      throw UsageError("--m disagrees with the profile's candidate count");
    }
    m = parsed->profile.candidates();
  }
  const ProtocolConfig cfg = ProtocolConfig::Make(args.n, args.t, m);
  cfg.Validate();
  if (parsed) {
    const int count = static_cast<int>(parsed->profile.size());
    if (count != cfg.n && count != cfg.n - cfg.t) {
      throw UsageError("profile must hold n or n-t ballots, got " +
                       std::to_string(count));
    }
  }
  const CandidateNames names =
      parsed ? parsed->names : CandidateNames::Default(m);

  const int log = LogLevel();
  SimOptions options;
  options.record_transcript = log >= 2;
  JsonSink sink(args.json_path, out);
  std::ostream& text = sink.to_stdout() ? err : out;

  int agreement = 0, pareto = 0, rounds = 0, messages = 0, ratio_ok = 0;
  int passed = 0;
  std::size_t integrity = 0;
  std::int64_t min_messages = -1, max_messages = 0;
  std::optional<ApproxReport> worst;
  std::optional<Ranking> first_consensus;

  for (int i = 0; i < args.seeds; ++i) {
    const std::uint64_t seed = args.seed_start + static_cast<std::uint64_t>(i);
    RunSpec spec = MakeRandomRunSpec(protocol, cfg, strategy, seed, placement);
    if (parsed) {
      const auto& ballots = parsed->profile.rankings();
      if (static_cast<int>(ballots.size()) == cfg.n) {
        spec.inputs = ballots;
      } else {
        std::size_t next = 0;
        for (NodeId id = 0; id < cfg.n; ++id) {
          if (std::find(spec.byzantine.begin(), spec.byzantine.end(), id) ==
              spec.byzantine.end()) {
            spec.inputs[id] = ballots[next++];
          }
        }
      }
    }
    const RunRecord record = RecordRun(spec, options);
    sink.Write(ToJson(record));

    agreement += record.agreement;
    pareto += record.pareto_valid;
    rounds += record.rounds_ok;
    messages += record.messages_ok;
    ratio_ok += record.ratio_ok;
    passed += record.Passed();
    integrity += record.stats.integrity_errors.size();
    if (min_messages < 0 || record.stats.messages_total < min_messages) {
      min_messages = record.stats.messages_total;
    }
    max_messages = std::max(max_messages, record.stats.messages_total);
    if (record.ratio &&
        (!worst || (!worst->infinite() &&
                    (record.ratio->infinite() ||
                     *record.ratio->ratio > *worst->ratio)))) {
      worst = record.ratio;
    }
    std::optional<Ranking> consensus;
    for (const auto& o : record.outputs) {
      if (o) {
        consensus = o;
        break;
      }
    }
    if (i == 0 && record.agreement) first_consensus = consensus;

    if (log >= 1) {
      err << "seed " << seed << ": agreement=" << record.agreement
          << " pareto=" << record.pareto_valid
          << " rounds=" << record.stats.rounds
          << " messages=" << record.stats.messages_total;
      if (record.ratio) err << " ratio=" << record.ratio->RatioString();
      if (record.agreement && consensus) {
        err << " consensus=" << names.Format(*consensus);
      }
      err << "\n";
    }
    if (log >= 2) {
      for (const Envelope& e : record.transcript) {
        err << "  " << ToJson(e).dump() << "\n";
      }
    }
  }

  const int s = args.seeds;
  text << "protocol=" << ToString(protocol) << " strategy="
       << ToString(strategy) << " n=" << cfg.n << " t=" << cfg.t
       << " m=" << cfg.m << " seeds=" << s << "\n";
  text << "agreement: " << agreement << "/" << s << "  pareto: " << pareto
       << "/" << s << "  rounds: " << RoundCount(protocol, cfg)
       << " expected, matched " << rounds << "/" << s << "\n";
  text << "messages per run: " << min_messages;
  if (max_messages != min_messages) text << ".." << max_messages;
  if (protocol != ProtocolKind::kSequentialStv) {
    text << "  correct-node closed form matched " << messages << "/" << s;
  }
  text << "\n";
  text << "integrity errors: " << integrity << "\n";
  if (worst) {
    text << "worst ratio: " << worst->RatioString() << " (" << Fixed(*worst)
         << ")";
    if (protocol == ProtocolKind::kKemenyMedian) {
      text << "  bound " << SweepRatioBound(cfg).ToString() << ", within "
           << ratio_ok << "/" << s;
    }
    text << "\n";
  }
  if (first_consensus) {
    text << "consensus (seed " << args.seed_start
         << "): " << names.Format(*first_consensus) << "\n";
  }
  const bool ok = passed == s;
  text << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kPropertyFailed;
}

// ---------------------------------------------------------------------------

struct ScenarioArgs {
  std::string name;
  int n = 12;
  int t = 3;
  int m = 0;  // 0 picks the scenario default
  std::string side;
  std::string grid_case = "all";
  std::string protocol = "alg2";
  std::string json_path;
};

int CmdGrid(const ScenarioArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<GridCase> cases;
  if (args.grid_case == "all") {
    cases = {GridCase::kC231, GridCase::kC312};
  } else {
    cases = {ParseGridCase(args.grid_case)};
  }
  if (args.t < 1) throw UsageError("appendix-c needs t >= 1");
  JsonSink sink(args.json_path, out);
  std::ostream& text = sink.to_stdout() ? err : out;
  bool ok = true;
  for (GridCase c : cases) {
    const GridSearchResult r = GridSearch(args.n, args.t, c);
    if (!r.feasible) {
      throw UsageError("infeasible: appendix-c needs n/t >= 4, got n=" +
                       std::to_string(args.n) + " t=" +
                       std::to_string(args.t));
    }
    sink.Write(ToJson(r));
    const auto& a = r.argmax;
    const auto& p = r.closed_form_argmax;
    text << ToString(c) << " n=" << r.n << " t=" << r.t << ": max "
         << r.max_ratio->ToString() << " (" << Fixed(*r.max_ratio) << ") at ("
         << a[0] << "," << a[1] << "," << a[2] << "); closed form "
         << r.closed_form.ToString() << " at (" << p[0].ToString() << ","
         << p[1].ToString() << "," << p[2].ToString() << ")\n";
    const bool match = r.closed_form_argmax_integer
                           ? *r.max_ratio == r.closed_form
                           : *r.max_ratio <= r.closed_form;
    text << "  " << (r.closed_form_argmax_integer ? "equal" : "at most")
         << " closed form: " << (match ? "yes" : "NO") << "\n";
    ok = ok && match;
  }
  text << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kPropertyFailed;
}

int CmdScenario(const ScenarioArgs& args, std::ostream& out,
                std::ostream& err) {
  if (args.name == "appendix-c") return CmdGrid(args, out, err);
  ScenarioSpec spec;
  spec.kind = ParseScenarioKind(args.name);
  spec.n = args.n;
  spec.t = args.t;
  spec.m = args.m > 0 ? args.m
                      : (spec.kind == ScenarioKind::kBinaryWorstCase ? 2 : 3);
  const bool both = args.side.empty();
  spec.side = both ? Side::kLeft : ParseSide(args.side);
  const ProtocolKind protocol = ParseProtocolKind(args.protocol);
  spec.Validate();

  const bool same_views = Indistinguishable(spec.kind, spec.n, spec.t, spec.m);
  const LowerBoundReport report = MeasureScenario(protocol, spec, both);

  JsonSink sink(args.json_path, out);
  std::ostream& text = sink.to_stdout() ? err : out;
  const CandidateNames names = CandidateNames::Default(spec.m);

  // The ratio bound holds for the median protocol; equality is expected
  // when both sides are measured, except for cycle views with m >= 5.
  const bool bound_asserted = protocol == ProtocolKind::kKemenyMedian;
  const bool tight_asserted =
      bound_asserted && both &&
      (spec.kind == ScenarioKind::kBinaryWorstCase || spec.m <= 4);
  const bool ok = same_views && report.agreement &&
                  (!bound_asserted || report.upper_bound_ok) &&
                  (!tight_asserted || report.tight);

  if (sink.enabled()) {
    json j = ToJson(report);
    j["scenario"] = ToString(spec.kind);
    j["n"] = spec.n;
    j["t"] = spec.t;
    j["m"] = spec.m;
    j["protocol"] = ToString(protocol);
    j["indistinguishable"] = same_views;
    j["passed"] = ok;
    sink.Write(j);
  }

  text << "scenario: " << ToString(spec.kind) << " n=" << spec.n
       << " t=" << spec.t << " m=" << spec.m
       << " protocol=" << ToString(protocol)
       << (both ? "" : " side=" + ToString(spec.side)) << "\n";
  text << "indistinguishable views: " << (same_views ? "yes" : "NO") << "\n";
  text << "agreement: " << (report.agreement ? "yes" : "NO") << " ("
       << report.runs << " runs)\n";
  text << "ratio: " << report.measured.RatioString() << " ("
       << Fixed(report.measured) << ")\n";
  text << "closed form: " << report.closed_form.ToString() << " ("
       << Fixed(report.closed_form) << ")\n";
  text << "witness: side=" << ToString(report.witness_side) << " ranking "
       << names.Format(report.witness) << "\n";
  text << "upper bound: " << (report.upper_bound_ok ? "ok" : "exceeded")
       << (bound_asserted ? "" : " (not asserted for this protocol)") << "\n";
  text << "tight: " << (report.tight ? "yes" : "no")
       << (tight_asserted ? "" : " (not asserted)") << "\n";
  text << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kPropertyFailed;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Byzantine agreement on preference rankings"};
  app.require_subcommand(1);

  KemenyArgs kemeny;
  auto* kemeny_cmd = app.add_subcommand("kemeny", "Kemeny median of a profile");
  kemeny_cmd->add_option("profile", kemeny.profile, "Profile file")
      ->required();
  kemeny_cmd->add_flag("--all", kemeny.all, "List every median");
  kemeny_cmd->add_flag("--verify", kemeny.verify,
                       "Check against brute force (m <= 8)");
  kemeny_cmd->add_option("--json", kemeny.json_path,
                         "Write JSON to a file ('-' for stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run seeded simulations");
  sim_cmd->add_option("--protocol", sim.protocol, "alg1, alg2, stv-baseline")
      ->capture_default_str();
  sim_cmd
      ->add_option("--strategy", sim.strategy,
                   "honest, silent, opposite-median, equivocate, scripted, "
                   "random, cycle-attack")
      ->capture_default_str();
  sim_cmd->add_option("--placement", sim.placement,
                      "Byzantine ids: last, first, random")
      ->capture_default_str();
  sim_cmd->add_option("--n", sim.n, "Nodes")->capture_default_str();
  sim_cmd->add_option("--t", sim.t, "Byzantine nodes")->capture_default_str();
  auto* m_opt =
      sim_cmd->add_option("--m", sim.m, "Candidates")->capture_default_str();
  sim_cmd->add_option("--seeds", sim.seeds, "Number of seeds")
      ->capture_default_str();
  sim_cmd->add_option("--seed-start", sim.seed_start, "First seed")
      ->capture_default_str();
  sim_cmd->add_option("--profile", sim.profile,
                      "Input ballots (n, or n-t for the correct nodes)");
  sim_cmd->add_option("--json", sim.json_path,
                      "Write one JSON record per run ('-' for stdout)");
  sim_cmd->add_option("--replay", sim.replay,
                      "Re-run the records of a JSON-lines file and compare");

  ScenarioArgs scen;
  auto* scen_cmd = app.add_subcommand("scenario", "Worst-case constructions");
  scen_cmd->add_option("name", scen.name,
                       "binary-worst, cycle-worst, appendix-c")
      ->required();
  scen_cmd->add_option("--n", scen.n, "Nodes")->capture_default_str();
  scen_cmd->add_option("--t", scen.t, "Byzantine nodes")->capture_default_str();
  scen_cmd->add_option("--m", scen.m, "Candidates (default 2 or 3)");
  scen_cmd->add_option("--side", scen.side, "left or right (default both)");
  scen_cmd->add_option("--case", scen.grid_case, "C231, C312 or all")
      ->capture_default_str();
  scen_cmd->add_option("--protocol", scen.protocol, "alg1, alg2, stv-baseline")
      ->capture_default_str();
  scen_cmd->add_option("--json", scen.json_path,
                       "Write the report as JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  sim.m_given = m_opt->count() > 0;

  try {
    if (*kemeny_cmd) return CmdKemeny(kemeny, out, err);
    if (*sim_cmd) return CmdSimulate(sim, out, err);
    if (*scen_cmd) return CmdScenario(scen, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kPropertyFailed;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace byzrank::cli
