// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/graph.hpp"
#include "npforge/rng.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace npforge {

// ---- Parameters and analytic spectrum --------------------------------------

struct SrgParams {
  std::size_t m = 0, k = 0, nu = 0, mu = 0;
  bool operator==(const SrgParams&) const = default;
  /// (m-k-1) mu == k (k-nu-1)
  bool feasible() const;
};

struct SrgCheck {
  std::optional<SrgParams> params;  // empty: not strongly regular
  std::string reason;               // why not, when params is empty
};

/// Direct counting of degrees and common neighbours. Disconnected and
/// complete graphs are reported as not strongly regular.
SrgCheck check_srg(const Graph& g);

struct EigenPair {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

struct SrgSpectrum {
  EigenPair principal;  // (k, 1)
  EigenPair plus;       // larger restricted eigenvalue
  EigenPair minus;
};

/// Closed-form eigenvalues and multiplicities. Throws InputError when the
/// discriminant is not positive or a multiplicity is not an integer within
/// 1e-6.
SrgSpectrum srg_eigen(const SrgParams& p);

/// The restricted eigenvalue with the smaller multiplicity (the plus one on
/// a tie).
EigenPair smaller_eigenspace(const SrgSpectrum& s);

/// Eigenvalues of the adjacency matrix grouped at tolerance 1e-6, ascending.
std::vector<EigenPair> numeric_spectrum(const Graph& g);

Eigen::MatrixXd adjacency_matrix(const Graph& g);

// ---- Point clouds ----------------------------------------------------------

/// One unit vector per vertex: row i of an orthonormal eigenspace basis,
/// rescaled to norm 1.
struct PointCloud {
  std::size_t n = 0;          // eigenspace dimension
  Eigen::MatrixXd points;     // m x n, row i is x^i
  double beta = 0.0;          // mean dot product over adjacent pairs
  double gamma = 0.0;         // over non-adjacent pairs
  double lambda = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  Eigen::MatrixXd gram() const { return points * points.transpose(); }
};

inline constexpr double kEigenGroupTol = 1e-6;

/// Throws InputError unless lambda is an eigenvalue (within kEigenGroupTol),
/// or when g is strongly regular and the numeric multiplicity disagrees with
/// srg_eigen.
PointCloud eigenspace_points(const Graph& g, double lambda);
/// Uses the smaller restricted eigenspace. Throws InputError if g is not
/// strongly regular.
PointCloud eigenspace_points(const Graph& g);

/// Largest |G_ij - expected_ij| with expected 1, beta or gamma by adjacency.
double three_angle_residual(const PointCloud& pc, const Graph& g);

/// Same cloud after x -> Q x.
PointCloud rotated(const PointCloud& pc, const Eigen::MatrixXd& q);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
/// fix on R's diagonal).
Eigen::MatrixXd random_orthogonal(std::size_t n, Rng& rng);

// ---- Affine matrix spaces --------------------------------------------------

/// (P_11..P_nn, sqrt2 P_12, ..., sqrt2 P_{n-1,n}). Throws InputError unless P
/// is square and symmetric within 1e-12.
Eigen::VectorXd vectorize_symmetric(const Eigen::MatrixXd& p);
Eigen::MatrixXd unvectorize_symmetric(const Eigen::VectorXd& v, std::size_t n);
/// (x_1^2, ..., x_n^2, sqrt2 x_1 x_2, ...), so V(P).v(x) = x^T P x.
Eigen::VectorXd vectorize_point(const Eigen::VectorXd& x);

/// Homogeneous part {P : x^T P x = 0 for every cloud point} of the affine
/// space of symmetric matrices with x^T P x = 1 on the cloud (the particular
/// solution is the identity, as every point is a unit vector).
struct AffineMatrixSpace {
  std::size_t n = 0;
  std::size_t ambient = 0;  // D = n(n+1)/2
  std::size_t rank = 0;     // rank of the point constraints
  std::vector<Eigen::MatrixXd> basis;  // Frobenius-orthonormal

  std::size_t dim() const { return basis.size(); }
  bool empty() const { return basis.empty(); }
};

/// Gram-Schmidt over the m constraint vectors followed by the D canonical
/// vectors; surviving canonical outputs form the basis.
AffineMatrixSpace build_affine_space(const PointCloud& pc);

// ---- Invariants ------------------------------------------------------------

struct InvariantVector {
  std::vector<std::pair<std::string, double>> entries;

  void add(std::string label, double value) { entries.emplace_back(std::move(label), value); }
  std::optional<double> get(const std::string& label) const;
};

/// Tr(P^l) for l = 1..n.
InvariantVector invariants_deg2(const Eigen::MatrixXd& p, std::size_t n);

/// p_ijk = Tr(P_i P_j P_k) as a flat d^3 array.
std::vector<double> cubic_tensor(const AffineMatrixSpace& space);

/// Connected-diagram contractions of p_ijk (each index summed twice):
///   theta   sum p_ijk p_ijk
///   loops   sum_j (sum_i p_iij)^2
///   bubble  Tr(M^2), M_kl = sum_ij p_ijk p_ijl
///   tetra   sum p_ijk p_ilm p_jln p_kmn
/// Throws InputError for an empty space.
InvariantVector invariants_deg3(const AffineMatrixSpace& space);

/// p(x) = sum_i (x.x^i - 1)^2 (x.x^i - beta)^2 (x.x^i - gamma)^2 kept in
/// point form.
struct Deg6Description {
  Eigen::MatrixXd points;
  double beta = 0.0, gamma = 0.0;

  double operator()(const Eigen::VectorXd& x) const;
  /// w_0..w_6 with p(x) = sum_r w_r sum_i (x.x^i)^r.
  std::vector<double> weights() const;
  /// Dense symmetric coefficient tensor of the degree-r homogeneous part,
  /// flattened row-major (n^r entries). Throws InstanceTooLarge above 2^24.
  std::vector<double> homogeneous_tensor(unsigned r) const;
};

Deg6Description deg6_description(const PointCloud& pc);

struct ThickCycles {
  std::vector<double> values;     // values[k-1] for k = 1..kmax
  std::vector<double> log_scale;  // value_k * exp(log_scale[k-1]) is the raw invariant
  bool normalized = false;        // some log_scale is nonzero
};

/// Thick-cycle invariants of the degree-6 homogeneous part, computed as
/// Tr(H^k) with H the elementwise cube of the Gram matrix. Rescales once
/// entries pass 1e150.
ThickCycles thick_cycle_invariants(const PointCloud& pc, std::size_t kmax);

/// Reference: contracts the dense n^6 tensor as an n^3 x n^3 matrix power.
ThickCycles thick_cycle_invariants_dense(const PointCloud& pc, std::size_t kmax);

/// Tetrahedral diagram of the cubic tensor sum_i (x^i)^{(x)3}:
/// sum over point 4-tuples of the six pairwise Gram entries.
double cloud_tetrahedral_invariant(const PointCloud& pc);

struct SrgInvariantConfig {
  std::optional<double> lambda;  // default: smaller restricted eigenspace
  std::size_t kmax = 6;
  std::size_t trace_powers = 6;  // Tr(M^l) for l up to min(d, trace_powers)
};

/// Everything exported for one graph, with stable labels.
InvariantVector srg_invariants(const Graph& g, const SrgInvariantConfig& cfg = {});
InvariantVector srg_invariants(const PointCloud& pc, const SrgInvariantConfig& cfg = {});

enum class Comparison { Distinct, Indistinguishable };
std::string to_string(Comparison c);

struct InvariantComparison {
  Comparison verdict = Comparison::Indistinguishable;
  double max_rel_delta = 0.0;
  struct Item {
    std::string label;
    double a = 0.0, b = 0.0, rel_delta = 0.0;
  };
  std::vector<Item> items;
};

/// rel_delta = |a-b| / max(1, |a|, |b|). Distinct when some rel_delta > tol.
/// Throws InputError if the label lists differ.
InvariantComparison compare_invariants(const InvariantVector& a, const InvariantVector& b,
                                       double tol = 1e-6);

nlohmann::json to_json(const InvariantComparison& c);
/// "graph,label,value" rows.
std::string invariants_csv(const std::vector<std::pair<std::string, InvariantVector>>& rows);

// ---- Orders and permutation scores -----------------------------------------

inline constexpr double kProjectionTieTol = 1e-9;

/// Vertex indices sorted ascending by x^i . v. On ties, v is perturbed with
/// rng (up to 10 times); without rng, or if ties persist, throws InputError.
std::vector<std::size_t> directional_order(const PointCloud& pc, const Eigen::VectorXd& v,
                                           Rng* rng = nullptr);

double permutation_score(const Eigen::MatrixXd& p, int power);
/// sum_ij P_ij^3
inline double permutation_score_s3(const Eigen::MatrixXd& p) { return permutation_score(p, 3); }

// ---- Fixtures --------------------------------------------------------------

/// Vertices (i,j) -> 4i+j, adjacent iff same row or column.
Graph rook_graph(std::size_t side);
/// Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.
Graph shrikhande_graph();
std::pair<Graph, Graph> generate_srg_pair_16();

/// Number of connected components of each vertex's neighbourhood subgraph;
/// an isomorphism invariant (2 everywhere for the rook's graph, 1 for
/// Shrikhande).
std::vector<std::size_t> neighborhood_components(const Graph& g);

}  // namespace npforge
