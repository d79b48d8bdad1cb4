// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/graph.hpp"
#include "npforge/integer.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace npforge {

/// Element of the exterior algebra on up to 64 generators. A term is a
/// bitmask of generators (product in increasing index order) with an integer
/// coefficient; zero coefficients are never stored.
class GrassmannElement {
 public:
  using TermMap = std::map<std::uint64_t, std::int64_t>;

  GrassmannElement() = default;
  static GrassmannElement scalar(std::int64_t c);
  static GrassmannElement generator(unsigned i);
  /// c * theta_{i1} theta_{i2} ... for the generators in `mask`, increasing.
  static GrassmannElement monomial(std::uint64_t mask, std::int64_t c = 1);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coefficient(std::uint64_t mask) const;
  void add_term(std::uint64_t mask, std::int64_t c);

  GrassmannElement& operator+=(const GrassmannElement& o);
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  bool operator==(const GrassmannElement&) const = default;

 private:
  TermMap terms_;
};

/// Sign of theta_A * theta_B relative to theta_{A u B}: (-1)^#{i in A, j in B : i > j}.
/// Only meaningful for disjoint masks.
int merge_sign(std::uint64_t a, std::uint64_t b);

/// Coefficients are checked; ArithmeticOverflow on int64 overflow.
GrassmannElement gmul(const GrassmannElement& a, const GrassmannElement& b);

/// Element i is theta_{2i} theta_{2i+1}.
std::vector<GrassmannElement> paired_diag(std::size_t n);

inline constexpr std::size_t kHamiltonMax = 16;

/// Coefficient of theta_0 ... theta_{2n-1} in Tr((A D')^n). Equals n times the
/// number of directed Hamilton cycles. Requires 3 <= n <= 16.
std::int64_t hamilton_trace(const Graph& g);

/// Coefficient of theta_0 ... theta_{n-1} in Tr((A D)^n) with D = diag(theta_i):
/// Hamilton cycles weighted by permutation signs, so cancellations occur.
std::int64_t single_diag_trace(const Graph& g);

/// Top coefficient of Tr((A D)^n) for an arbitrary diagonal of monomials,
/// evaluated with explicit Grassmann matrix products. Small n only (n <= 7).
std::int64_t symbolic_trace(const Graph& g, const std::vector<GrassmannElement>& diag);

/// d^n / dx_1 ... dx_n Tr((A diag(x))^n), via sparse polynomial row-vector
/// products truncated to multilinear terms. n <= 14.
Integer derivative_trace(const Graph& g);

/// Directed Hamilton cycles by DFS from vertex 0 (each undirected cycle
/// counted twice for n >= 3). n <= 16.
std::uint64_t hamilton_oracle(const Graph& g);

/// One directed Hamilton cycle starting at 0, if any.
std::vector<std::size_t> hamilton_cycle(const Graph& g);

/// Sparse integer matrix, row-major map of (row, col) -> value.
struct SparseIntMatrix {
  std::size_t size = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> entries;

  std::int64_t at(std::size_t r, std::size_t c) const;
  std::vector<std::vector<std::int64_t>> dense() const;
  bool is_zero() const { return entries.empty(); }
  bool operator==(const SparseIntMatrix&) const = default;
};

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b);

enum class RepConvention {
  /// theta_i = Z^(x)i (x) L (x) I^(x)(k-i-1)
  JordanWigner,
  /// Mirrored factor order, theta_i = I^(x)(k-i-1) (x) L (x) Z^(x)i; matches
  /// the classic 4x4 pair for k = 2.
  Mirrored,
};

struct GrassmannMatrixRep {
  std::size_t k = 0;
  RepConvention convention = RepConvention::JordanWigner;
  std::vector<SparseIntMatrix> mats;  // each of size 2^k
  std::size_t dimension() const { return std::size_t{1} << k; }
  /// Bytes needed to store all k matrices densely as 8-byte integers.
  std::size_t dense_bytes() const { return k * dimension() * dimension() * 8; }
};

inline constexpr std::size_t kMatrixRepMax = 12;

/// L = [[0,0],[1,0]], Z = diag(1,-1). Throws InstanceTooLarge above k = 12.
GrassmannMatrixRep matrix_rep(std::size_t k, RepConvention conv = RepConvention::JordanWigner);

/// {n, trace, directed_cycles, has_hamilton}
nlohmann::json hamilton_report(const Graph& g);

}  // namespace npforge
