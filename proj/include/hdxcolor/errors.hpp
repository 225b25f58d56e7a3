// Copyright 2026 The Authors.
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

#ifndef HDXCOLOR_ERRORS_HPP_
#define HDXCOLOR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hdxcolor {

// Malformed input: bad graph, bad lists, improper partial coloring, unknown
// edge, a face that is not in the complex.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or memory budget exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance has no proper coloring at all.
class EmptyComplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation's precondition failed on otherwise well-formed input
// (non-reversible chain, codimension mismatch, disconnected local walk).
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certificate formulas evaluated outside the range where they are defined.
class RegimeViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix family fails the block independence required for f_x assembly.
class InvalidFamily : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Greedy initialisation of a chain could not find a proper coloring.
class InitializationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdxcolor

#endif  // HDXCOLOR_ERRORS_HPP_
