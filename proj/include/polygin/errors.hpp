// Copyright 2026 The polygin Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polygin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a documented numeric or size limit (degree budget,
/// raw-kernel overflow guard, factorial range).
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Arguments violate an operation's preconditions.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Numerical breakdown during sampling (rejection budget, degenerate pivot).
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Test-function expression could not be parsed.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace polygin
