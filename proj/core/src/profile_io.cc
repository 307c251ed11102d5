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

#include "byzrank/profile_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "byzrank/errors.h"

namespace byzrank {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

CandidateNames CandidateNames::Default(int m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (int c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));
  return CandidateNames(std::move(names));
}

std::string CandidateNames::Format(const Ranking& r) const {
  std::string out;
  for (int place = 0; place < r.size(); ++place) {
    if (place > 0) out += " > ";
    out += names_.at(r.at(place));
  }
  return out;
}

ParsedProfile ParseProfile(std::istream& in) {
  std::map<std::string, CandidateId, std::less<>> index;
  std::vector<std::string> names;
  std::vector<std::vector<CandidateId>> ballots;
  std::vector<std::size_t> ballot_lines;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::vector<CandidateId> order;
    std::vector<bool> seen(names.size(), false);
    std::size_t start = 0;
    while (true) {
      const std::size_t sep = body.find('>', start);
      const std::string_view token = Trim(body.substr(
          start, sep == std::string_view::npos ? std::string_view::npos
                                               : sep - start));
      if (token.empty()) throw ParseError(line_no, "empty candidate name");
      auto it = index.find(token);
      if (it == index.end()) {
        it = index.emplace(std::string(token),
                           static_cast<CandidateId>(names.size()))
                 .first;
        names.emplace_back(token);
        seen.push_back(false);
      }
      if (seen[it->second]) {
        throw ParseError(line_no,
                         "candidate '" + it->first + "' appears twice");
      }
      seen[it->second] = true;
      order.push_back(it->second);
      if (sep == std::string_view::npos) break;
      start = sep + 1;
    }
    ballots.push_back(std::move(order));
    ballot_lines.push_back(line_no);
  }

  if (ballots.empty()) throw ParseError(line_no, "profile holds no rankings");

  const int m = static_cast<int>(names.size());
  std::vector<Ranking> rankings;
  rankings.reserve(ballots.size());
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    if (static_cast<int>(ballots[b].size()) != m) {
      throw ParseError(ballot_lines[b],
                       "ranking lists " + std::to_string(ballots[b].size()) +
                           " of " + std::to_string(m) + " candidates");
    }
    rankings.emplace_back(std::move(ballots[b]));
  }
  return {PreferenceProfile(m, std::move(rankings)),
          CandidateNames(std::move(names))};
}

ParsedProfile ParseProfileText(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseProfile(in);
}

ParsedProfile ReadProfileFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open profile '" + path + "'");
  return ParseProfile(in);
}

}  // namespace byzrank
