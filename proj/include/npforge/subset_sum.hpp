// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace npforge {

/// Does some subset of `values` sum to `target`?
struct SubsetSumInstance {
  std::vector<Integer> values;
  Integer target = 0;
};

/// Signed form: is there a in {-1,1}^n with sum a_i y_i = 0? All y_i >= 1.
struct SignedInstance {
  std::vector<Integer> values;

  Integer total() const;
  /// Throws InputError unless every value is positive.
  void validate() const;
};

struct NormalizedInstance {
  SignedInstance signed_form;
  /// 2 * target - sum(values); appended as |s| when nonzero.
  Integer s = 0;
  /// Zero values are free choices and are dropped.
  std::size_t dropped_zeros = 0;
};

NormalizedInstance normalize(const SubsetSumInstance& inst);

inline constexpr std::size_t kDirectEnumMax = 24;
inline constexpr std::size_t kMeetInMiddleMax = 40;

/// Number of sign patterns with zero signed sum. Direct enumeration up to 24
/// values, meet-in-the-middle up to 40, InstanceTooLarge beyond.
std::uint64_t brute_force_zero(const SignedInstance& si);

/// A subset (bit i set = value i taken) hitting the target, if any.
/// Meet-in-the-middle; at most 40 values.
std::optional<std::vector<bool>> solve_subset_sum(const SubsetSumInstance& inst);

/// t_k = sum over sign patterns of (sum a_i y_i)^k from the closed forms in
/// the power sums s_k = sum y_i^k. k in {0..6}; odd k gives 0.
Integer power_sum_identity(unsigned k, const SignedInstance& si);
/// The same quantity by enumeration (n <= 24, any k).
Integer power_sum_brute(unsigned k, const SignedInstance& si);

enum class QuadratureMethod { Trapezoid, Simpson, MonteCarlo };

struct Quadrature {
  QuadratureMethod method = QuadratureMethod::Trapezoid;
  /// 0 picks 4 * sum(y) + 1 nodes.
  std::size_t samples = 0;
  std::uint64_t seed = 1;  // Monte Carlo only
};

/// Integral over [0, 2pi] of prod_i cos(phi y_i). Refuses node counts below
/// 2 * sum(y) + 1 for the deterministic rules.
double cosine_integral(const SignedInstance& si, const Quadrature& q = {});
/// Closed form 2pi * 2^-n * brute_force_zero(si).
double cosine_integral_exact(const SignedInstance& si);

/// Exists c in {-1,1}^n with sum |y_i/d - c_i| = n (within 1e-12 * n)?
/// Requires d > max y_i and n <= 24.
bool l1_sphere_check(const SignedInstance& si, double d);

struct InverseSquareResult {
  bool infinite = false;
  Rational exact = 0;  // meaningful when !infinite
  double value = 0.0;
};

/// Sum over sign patterns of (sum a_i y_i)^-2; infinite when a zero sum exists.
InverseSquareResult inverse_square_probe(const SignedInstance& si);

struct SignedSum {
  std::uint64_t pattern;  // bit i set means a_i = +1
  Integer sum;
};

/// Sign patterns with positive signed sum, ascending by sum then pattern.
std::vector<SignedSum> ordered_signed_sums(const SignedInstance& si);

/// One integer per line, '#' comments, optional "t <target>" line.
SubsetSumInstance parse_subset_sum(std::string_view text);
std::string format_subset_sum(const SubsetSumInstance& inst);

/// FNV-1a over the decimal values, printed as 16 hex digits.
std::string instance_hash(const SignedInstance& si);

}  // namespace npforge
