// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qabench {

/// Base class of all library errors that are not plain argument validation
/// failures (those are reported as std::invalid_argument).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Raised by exact oracles when the instance exceeds the configured limit.
class InstanceTooLarge : public Error {
  public:
    using Error::Error;
};

/// An embedding or physical problem violates a structural invariant.
class EmbeddingError : public Error {
  public:
    using Error::Error;
};

/// A remote sampler could not be reached, or its reply did not follow the
/// wire format.
class TransportError : public Error {
  public:
    using Error::Error;
};

/// A remote sampler understood the request but failed to solve it.
class SolverError : public Error {
  public:
    using Error::Error;
};

}  // namespace qabench
