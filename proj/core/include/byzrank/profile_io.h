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

#ifndef BYZRANK_PROFILE_IO_H_
#define BYZRANK_PROFILE_IO_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "byzrank/ranking.h"

namespace byzrank {

// Candidate names in index order; names[c] is the label of candidate c.
class CandidateNames {
 public:
  CandidateNames() = default;
  explicit CandidateNames(std::vector<std::string> names)
      : names_(std::move(names)) {}

  // c1, c2, ... for a universe without external names.
  static CandidateNames Default(int m);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& operator[](CandidateId c) const { return names_[c]; }
  const std::vector<std::string>& names() const { return names_; }

  // "a > b > c"
  std::string Format(const Ranking& r) const;

 private:
  std::vector<std::string> names_;
};

struct ParsedProfile {
  PreferenceProfile profile;
  CandidateNames names;
};

// One ballot per line, names separated by '>' with optional whitespace.
// '#' starts a comment line; blank lines are skipped. Candidates are
// indexed by first appearance and every ballot must rank all of them.
// Throws ParseError carrying the 1-based line number.
ParsedProfile ParseProfile(std::istream& in);
ParsedProfile ParseProfileText(std::string_view text);
ParsedProfile ReadProfileFile(const std::string& path);

}  // namespace byzrank

#endif  // BYZRANK_PROFILE_IO_H_
