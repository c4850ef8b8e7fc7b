// Copyright 2026 The qfiopt Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qfiopt {

/// A parameter lies outside its admissible box.
class RangeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Noise parameters violate mu2^2 <= mu1.
class CpError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A formula is evaluated outside the branch it is defined on.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Dense oracle requested beyond its qubit cap.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Threshold search bracket does not straddle a change of the predicate.
class BracketError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A comparison against the separable baseline is undefined (mu2 = 0).
class DegenerateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An output file cannot be opened or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qfiopt
