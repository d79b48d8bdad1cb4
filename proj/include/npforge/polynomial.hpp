// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/integer.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace npforge {

/// Product of variable powers. Factors are kept sorted by variable index with
/// strictly positive exponents; the empty monomial is the constant 1.
class Monomial {
 public:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
    bool operator==(const Factor&) const = default;
  };

  Monomial() = default;
  /// Sorts, merges repeated variables and drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(std::uint32_t var, std::uint32_t exp = 1);

  std::span<const Factor> factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t exponent(std::uint32_t var) const;
  bool is_constant() const noexcept { return factors_.empty(); }
  /// One past the largest variable index used (0 for the constant).
  std::size_t var_bound() const noexcept {
    return factors_.empty() ? 0 : factors_.back().var + 1;
  }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with x0 > x1 > ... inside a degree; lower total
/// degree sorts first.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored and every variable index
/// is below num_vars().
class SparsePolynomial {
 public:
  using TermMap = std::map<Monomial, Integer, GrlexLess>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static SparsePolynomial constant(const Integer& c, std::size_t num_vars = 0);
  /// The polynomial x_var; num_vars is raised to var + 1 if needed.
  static SparsePolynomial variable(std::uint32_t var, std::size_t num_vars = 0);
  static SparsePolynomial monomial(const Monomial& m, const Integer& c,
                                   std::size_t num_vars = 0);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Integer coefficient(const Monomial& m) const;
  /// Largest absolute coefficient (0 for the zero polynomial).
  Integer max_abs_coefficient() const;

  /// Same polynomial viewed in a larger variable space.
  SparsePolynomial widened(std::size_t num_vars) const;

  /// Adds c * m in place.
  void add_term(const Monomial& m, const Integer& c);

  SparsePolynomial& operator+=(const SparsePolynomial& q);
  SparsePolynomial& operator-=(const SparsePolynomial& q);
  SparsePolynomial& operator*=(const Integer& c);

  friend SparsePolynomial operator+(SparsePolynomial p, const SparsePolynomial& q) {
    return p += q;
  }
  friend SparsePolynomial operator-(SparsePolynomial p, const SparsePolynomial& q) {
    return p -= q;
  }
  friend SparsePolynomial operator*(const SparsePolynomial& p, const SparsePolynomial& q);
  friend SparsePolynomial operator*(SparsePolynomial p, const Integer& c) { return p *= c; }
  friend SparsePolynomial operator*(const Integer& c, SparsePolynomial p) { return p *= c; }
  SparsePolynomial operator-() const;

  /// Compares terms only; num_vars is not part of equality.
  bool operator==(const SparsePolynomial& q) const { return terms_ == q.terms_; }

 private:
  std::size_t num_vars_ = 0;
  TermMap terms_;
};

SparsePolynomial add(const SparsePolynomial& p, const SparsePolynomial& q);
SparsePolynomial mul(const SparsePolynomial& p, const SparsePolynomial& q);
SparsePolynomial pow(const SparsePolynomial& p, unsigned e);
/// (p)^2, the building block of every sum-of-squares encoding.
SparsePolynomial square(const SparsePolynomial& p);

/// Float evaluation, summing terms in grlex order. Throws DimensionMismatch
/// unless pt.size() == num_vars().
double evaluate(const SparsePolynomial& p, std::span<const double> pt);

/// Exact evaluation at an integer point.
Integer evaluate_exact(const SparsePolynomial& p, std::span<const std::int64_t> pt);

/// Exact evaluation at a 0/1 point given as a bitmask over variables (< 64).
/// A monomial contributes iff all its variables are set.
Integer evaluate_boolean(const SparsePolynomial& p, std::uint64_t ones);

SparsePolynomial derivative(const SparsePolynomial& p, std::uint32_t var);
std::vector<SparsePolynomial> gradient(const SparsePolynomial& p);
SparsePolynomial laplacian(const SparsePolynomial& p);

/// Rename variables: variable v becomes map[v]. The result has `num_vars`
/// variables.
SparsePolynomial substitute_vars(const SparsePolynomial& p,
                                 std::span<const std::uint32_t> map, std::size_t num_vars);

/// Coefficients c_0..c_deg of t -> p(base + t * dir).
std::vector<double> restrict_to_line(const SparsePolynomial& p, std::span<const double> base,
                                     std::span<const double> dir);

double evaluate_univariate(std::span<const double> coeffs, double t);
std::vector<double> differentiate_univariate(std::span<const double> coeffs);

struct UnivariateMinimum {
  double t;
  double value;
};

/// All real local minima of a univariate polynomial of degree <= 6, sorted by
/// t. Critical points come from the companion-matrix eigenvalues of p' with a
/// Newton polish. Throws UnsupportedDegree above degree 6.
std::vector<UnivariateMinimum> univariate_minima(std::span<const double> coeffs);

std::string to_string(const SparsePolynomial& p);

/// {"num_vars": n, "terms": [{"exps": [[var, exp], ...], "coeff": "decimal"}]}
nlohmann::json to_json(const SparsePolynomial& p);
/// Throws InputError on schema violations.
SparsePolynomial polynomial_from_json(const nlohmann::json& j);

/// Double-precision evaluator for repeated use in numeric loops.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const SparsePolynomial& p);

  std::size_t num_vars() const noexcept { return num_vars_; }
  double operator()(std::span<const double> x) const;

 private:
  struct Term {
    double coeff;
    std::uint32_t first;  // into factors_
    std::uint32_t count;
  };
  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
  std::vector<Monomial::Factor> factors_;
};

}  // namespace npforge
