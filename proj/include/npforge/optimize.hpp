// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/polynomial.hpp"
#include "npforge/sat_encode.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace npforge {

/// Smooth objective on R^dim. Polynomial objectives also carry the exact
/// polynomial so line-restriction steps can be used.
struct Objective {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  std::shared_ptr<const SparsePolynomial> poly;
};

Objective polynomial_objective(const SparsePolynomial& p);

enum class StepStrategy { Backtracking, LineMinima };

struct OptimizerConfig {
  double step = 0.05;
  std::size_t max_iters = 5000;
  /// Tighter values hit the double noise floor of expanded polynomials near
  /// their zeros (|p| ~ 1e-16 once |grad| ~ 1e-8).
  double grad_tol = 1e-6;
  double vertex_tol = 0.05;
  std::uint64_t seed = 1;
  std::vector<double> lambda_schedule{0.0};
  /// Stop once every coordinate is within vertex_tol of {0,1} and the rounded
  /// vertex is a zero (or satisfies the formula, when one is given). The
  /// report then carries the vertex itself as final point.
  bool stop_at_vertex = true;
  /// Values below this count as zeros; 0 disables the early stop.
  double zero_tol = 1e-9;
  /// 0 means default_thread_count().
  unsigned threads = 0;
  StepStrategy strategy = StepStrategy::Backtracking;

  /// Throws InputError on out-of-range fields.
  void validate() const;
};

nlohmann::json to_json(const OptimizerConfig& cfg);
/// Missing fields keep their defaults; unknown fields are rejected.
OptimizerConfig config_from_json(const nlohmann::json& j);

enum class Verdict { ZeroFound, LocalMin, Budget, Diverged };
std::string to_string(Verdict v);

struct RunReport {
  std::vector<double> final_point;
  double final_value = 0.0;
  std::size_t iters = 0;
  Verdict verdict = Verdict::Budget;
  std::optional<std::vector<std::uint8_t>> rounded_assignment;
  /// Objective value and gradient norm per accepted iterate (index 0 = start).
  std::vector<double> values;
  std::vector<double> grad_norms;

  /// True when values never increase.
  bool monotone() const;
};

nlohmann::json to_json(const RunReport& r);
/// "iter,value,grad_norm" lines with a header.
std::string run_log_csv(const RunReport& r);

/// Rounds each of the first f.num_vars coordinates (x >= 0.5 -> 1) and
/// returns the assignment when it satisfies f.
std::optional<std::vector<std::uint8_t>> round_and_test(std::span<const double> pt,
                                                        const CnfFormula& f);
std::vector<std::uint8_t> round_point(std::span<const double> pt);

/// Fixed step with halving on increase. A non-finite value gives Diverged.
/// With a formula, vertex proximity triggers rounding and ZeroFound when the
/// rounded point satisfies it.
RunReport gradient_descent(const Objective& obj, std::span<const double> start,
                           const OptimizerConfig& cfg, const CnfFormula* formula = nullptr);

/// Descends p + lambda * laplacian(p) for each lambda in the schedule, the
/// last phase being lambda = 0. iters counts all phases; values and
/// grad_norms describe the last phase.
RunReport smoothed_descent(const SparsePolynomial& p, std::span<const double> start,
                           const OptimizerConfig& cfg, const CnfFormula* formula = nullptr);

struct LineStep {
  double t = 0.0;
  std::vector<double> point;
  double value = 0.0;
  std::vector<UnivariateMinimum> minima;
};

/// Global minimum of p restricted to pt + t * dir among its local minima and
/// t = 0. Degree <= 6, else UnsupportedDegree.
LineStep line_minima_step(const SparsePolynomial& p, std::span<const double> pt,
                          std::span<const double> dir);

struct MultiStartSummary {
  std::vector<RunReport> runs;  // in start-index order
  double best_value = 0.0;
  std::size_t best_index = 0;
  std::size_t distinct_minima = 0;
  std::size_t zeros_found = 0;
};

/// Start point i is uniform in [0,1]^dim from derive_seed(cfg.seed, "start", i).
std::vector<double> start_point(std::size_t dim, std::uint64_t seed, std::size_t index);

MultiStartSummary multi_start(const Objective& obj, std::size_t k, const OptimizerConfig& cfg,
                              const CnfFormula* formula = nullptr);

/// Greedy clustering in index order: a point joins the first representative
/// within l-infinity distance `radius`.
std::vector<std::size_t> dedupe_points(const std::vector<std::vector<double>>& pts, double radius);

struct CensusResult {
  std::size_t count = 0;
  std::vector<std::vector<double>> representatives;
  std::vector<double> values;
  std::size_t rejected = 0;  // clusters failing the local-minimum check
};

inline constexpr std::size_t kCensusMaxDim = 12;

/// Multi-start descent without vertex or zero stops, deduplicated by
/// l-infinity distance < 2 vertex_tol. A representative counts when its
/// gradient norm is below grad_tol and all 2N axis probes at radius
/// vertex_tol are higher.
CensusResult local_minima_census(const Objective& obj, std::size_t samples,
                                 const OptimizerConfig& cfg);

nlohmann::json to_json(const MultiStartSummary& s);
nlohmann::json to_json(const CensusResult& c);

}  // namespace npforge
