// Copyright 2026 The qann Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by all qann modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qann {

/// Invalid argument to a library call (bad index, empty set, ...).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Structurally inconsistent network, packet or run configuration.
class ConfigurationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                  : msg),
          line_{line} {}

    [[nodiscard]] auto line() const -> std::size_t { return line_; }

  private:
    std::size_t line_;
};

/// A network did not reproduce the expected truth table.
class VerificationFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qann
