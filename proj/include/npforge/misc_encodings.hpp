// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/graph.hpp"
#include "npforge/integer.hpp"
#include "npforge/optimize.hpp"
#include "npforge/polynomial.hpp"
#include "npforge/sat_encode.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace npforge {

// ---- Factorization as a periodic penalty -----------------------------------

/// cos(2 pi x) + cos(2 pi n / x). Both arguments are reduced mod 1 first, so
/// integer x dividing n gives exactly 2.0. Throws InputError unless x > 0 and
/// n > 0.
double factorization_objective(std::uint64_t n, double x);
/// d/dx of factorization_objective.
double factorization_derivative(std::uint64_t n, double x);

// ---- Sigmoid substitution --------------------------------------------------

enum class SigmoidKind { Logistic, Arctan };
std::string to_string(SigmoidKind k);
SigmoidKind parse_sigmoid_kind(const std::string& s);

/// 1/(1+e^-z) or atan(z)/pi + 1/2; both map R onto (0,1) monotonically.
double sigmoid(SigmoidKind k, double z);
double sigmoid_derivative(SigmoidKind k, double z);

/// z -> p(f(z_1), ..., f(z_N)) with the chain-rule gradient.
Objective sigmoid_substitute(const SparsePolynomial& p, SigmoidKind kind);

// ---- Clique ----------------------------------------------------------------

/// v^T A v with zero diagonal, i.e. twice the number of edges inside v. A
/// k-clique scores k(k-1). Throws InputError if v has the wrong size or its
/// weight differs from k.
std::int64_t clique_objective(const Graph& g, std::span<const std::uint8_t> v, std::size_t k);

struct CliqueSearch {
  std::int64_t best = 0;
  std::vector<std::uint64_t> argmax;  // vertex masks, ascending
};

inline constexpr std::size_t kCliqueBruteMax = 24;

/// Maximum of clique_objective over all weight-k vectors (n <= kCliqueBruteMax).
CliqueSearch clique_objective_max(const Graph& g, std::size_t k);
bool is_clique(const Graph& g, std::uint64_t mask);

// ---- Vertex cover cone -----------------------------------------------------

/// (A + I) v >= 1 componentwise, A the adjacency matrix. Throws InputError on
/// size or weight mismatch. This is the unit-diagonal shifted-cone test; it
/// holds exactly when v dominates every vertex.
bool vertex_cover_feasible(const Graph& g, std::span<const std::uint8_t> v, std::size_t k);

/// Edge-incidence cone M v >= 1 (one row per edge): exactly the vertex covers.
bool vertex_cover_incidence_feasible(const Graph& g, std::span<const std::uint8_t> v,
                                     std::size_t k);

bool is_vertex_cover(const Graph& g, std::span<const std::uint8_t> v);
bool is_dominating_set(const Graph& g, std::span<const std::uint8_t> v);

// ---- 3-colouring spin glass ------------------------------------------------

/// One angle (radians) per vertex.
using AngleAssignment = std::vector<double>;

/// Sum over edges of (cos(phi_i - phi_j) + 1/2)^2.
double coloring_objective(const Graph& g, std::span<const double> angles);

/// Smooth objective on R^n (angles) for the optimizer.
Objective coloring_function(const Graph& g);

/// Rounds to colours {0,1,2} = nearest of {0, 2pi/3, 4pi/3} after rotating
/// each connected component so its lowest vertex sits at angle 0.
std::vector<std::uint8_t> round_coloring(const Graph& g, std::span<const double> angles);
bool is_proper_coloring(const Graph& g, std::span<const std::uint8_t> colors);

// ---- Monomial counting -----------------------------------------------------

inline constexpr std::size_t kMonomialCountMaxClauses = 14;

/// Sum over v in {0,1}^n of prod over clauses of (sum of literal values),
/// computed by expanding the product into one literal per clause: a choice
/// with complementary literals contributes 0, otherwise 2^(n-k) for k
/// distinct variables. Positive iff f is satisfiable. Throws
/// InstanceTooLarge above kMonomialCountMaxClauses clauses.
Integer sat_monomial_count(const CnfFormula& f, unsigned threads = 1);

/// Same sum by direct enumeration of all 2^n assignments (n <= 30).
Integer sat_product_sum_direct(const CnfFormula& f);

}  // namespace npforge
