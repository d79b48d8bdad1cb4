// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace npforge {

/// Seedable generator with a platform-independent output stream.
///
/// std::mt19937_64 is bit-exact across standard libraries; the distributions
/// in <random> are not, so all conversions to reals are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (fixed formula, no cached second value).
  double normal();

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a root seed, a label and an index.
/// FNV-1a over the label, then splitmix64 finalisation.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label, std::uint64_t index = 0);

}  // namespace npforge
