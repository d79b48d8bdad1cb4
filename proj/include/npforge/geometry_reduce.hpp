// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/integer.hpp"
#include "npforge/polynomial.hpp"
#include "npforge/subset_sum.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace npforge {

using IntMatrix = std::vector<std::vector<Integer>>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// p(x) = 1/2 x^T A x - x^T b + a0 with A symmetric.
struct QuadraticForm {
  std::size_t n = 0;
  IntMatrix A;
  IntVector b;
  Integer a0 = 0;
};

/// A_ii = 2 * coeff(x_i^2), A_ij = coeff(x_i x_j), b = -linear part.
/// Throws UnsupportedDegree above degree 2.
QuadraticForm to_quadratic_form(const SparsePolynomial& p);
SparsePolynomial to_polynomial(const QuadraticForm& q);

/// Exact symmetric elimination test.
bool is_positive_semidefinite(const IntMatrix& A);

/// {x in R^n : A x = b} with linearly independent rows.
struct PlaneSystem {
  std::size_t n = 0;
  IntMatrix A;
  IntVector b;

  std::size_t rank() const { return A.size(); }
  /// Largest |A_ij| (0 for an empty system).
  Integer max_abs_entry() const;
  Integer max_abs_rhs() const;
};

struct PlaneReduction {
  enum class Verdict { Plane, NoZero };
  Verdict verdict = Verdict::NoZero;
  PlaneSystem plane;   // only meaningful for Verdict::Plane
  Rational min_value;  // minimum of the quadratic over R^n (if consistent)
  bool consistent = false;
};

/// Zero set of a positive semidefinite quadratic: the argmin plane A x = b
/// when the minimum is 0, otherwise NoZero. Rows are chosen by exact
/// rational Gram-Schmidt. Throws InputError when A is not PSD.
PlaneReduction reduce_plane(const QuadraticForm& q);

/// Re-run rank selection on an existing system. Throws InputError if the
/// system is inconsistent.
PlaneSystem reduce_system(const PlaneSystem& ps);

/// Indices of a maximal independent subset of rows, in input order.
std::vector<std::size_t> independent_rows(const IntMatrix& A);

/// Some rational solution of A x = b, or nullopt when inconsistent.
std::optional<RatVector> solve_rational(const IntMatrix& A, const IntVector& b);

struct Sphere {
  RatVector center;
  Rational radius_sq;
  /// Set when the sphere is empty (radius_sq < 0).
  bool empty() const { return radius_sq < 0; }
};

/// Orthogonal projection of (1/2, ..., 1/2) onto the d-row plane with
/// r^2 = n/4 - |c - c'|^2. For d >= 2 this sphere can meet boolean points
/// that are not on the plane.
Sphere project_onto_plane(const PlaneSystem& ps);

/// Sphere whose boolean points are exactly the plane's boolean points. For
/// d >= 2 the plane is collapsed to the hyperplane weighted by the packing
/// base first, then projected as above.
Sphere plane_to_sphere(const PlaneSystem& ps);

/// Single equation w x = t with the same boolean solutions as ps.
PlaneSystem collapse_to_hyperplane(const PlaneSystem& ps);

/// Smallest power of two above 2 * max(n * M, max |b|) + 1.
Integer packing_base(const PlaneSystem& ps);

/// Column j packs to sum_i A_ij B^(d-1-i) using balanced digits; the target
/// packs b the same way. Default base: packing_base(ps).
SubsetSumInstance pack_subset_sum(const PlaneSystem& ps,
                                  const std::optional<Integer>& base = std::nullopt);

/// Balanced base-B digits of v, most significant first, exactly `digits` long.
IntVector unpack_balanced(const Integer& v, const Integer& base, std::size_t digits);

inline constexpr std::size_t kHypercubeOracleMax = 26;

/// Boolean points of the plane (bit i = x_i), up to `limit` of them.
std::vector<std::uint64_t> plane_hypercube_points(const PlaneSystem& ps,
                                                  std::size_t limit = SIZE_MAX);
std::optional<std::uint64_t> plane_hypercube_oracle(const PlaneSystem& ps);

/// Boolean points on the sphere. On {0,1}^n the sphere equation is linear,
/// so this is exact integer arithmetic after clearing denominators.
std::vector<std::uint64_t> sphere_hypercube_points(const Sphere& s,
                                                   std::size_t limit = SIZE_MAX);

nlohmann::json to_json(const QuadraticForm& q);
nlohmann::json to_json(const PlaneSystem& ps);
nlohmann::json to_json(const Sphere& s);
PlaneSystem plane_from_json(const nlohmann::json& j);

}  // namespace npforge
