// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace npforge {

/// Malformed input text or arguments. Carries an optional 1-based line number.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line == 0 ? what
                                        : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The instance exceeds the size an exhaustive routine is willing to enumerate.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace npforge
