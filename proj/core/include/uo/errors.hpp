// Copyright 2026 The uo Authors
//
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

#ifndef UO_ERRORS_HPP_
#define UO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace uo {

// Argument outside an operation's domain (bad probability, unsorted grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Density queried on a discrete distribution, or the reverse.
class KindMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Conditioning event whose probability is below the mass floor.
class DegenerateIntervalError : public std::runtime_error {
 public:
  DegenerateIntervalError(const std::string& what, double mass)
      : std::runtime_error(what), mass_(mass) {}
  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

// Malformed distribution spec or input file. `line` is 1-based, 0 if n/a.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace uo

#endif  // UO_ERRORS_HPP_
