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

#ifndef BYZRANK_ERRORS_H_
#define BYZRANK_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace byzrank {

// Bad arguments: mismatched candidate universes, invalid configs, etc.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input exceeds what an exact solver is willing to enumerate.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A protocol invariant that the correctness argument says cannot break
// (e.g. cyclic fixed pairs) did break.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace byzrank

#endif  // BYZRANK_ERRORS_H_
