// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/errors.hpp"
#include "npforge/misc_encodings.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

using namespace npforge;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::uint8_t> mask_to_vec(std::uint64_t mask, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
  return v;
}

// Largest clique size by plain subset enumeration, independent of the
// objective code.
std::size_t clique_number(const Graph& g) {
  std::size_t best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < g.size() && ok; ++i)
      for (std::size_t j = i + 1; j < g.size() && ok; ++j)
        if (((m >> i) & 1) && ((m >> j) & 1) && !g.adjacent(i, j)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(m));
  }
  return best;
}

}  // namespace

TEST_CASE("factorization objective") {
  CHECK(factorization_objective(15, 3.0) == 2.0);
  CHECK(factorization_objective(15, 5.0) == 2.0);
  CHECK(factorization_objective(35, 5.0) == 2.0);
  CHECK(factorization_objective(15, 4.0) < 2.0);
  CHECK_THROWS_AS(factorization_objective(15, 0.0), InputError);
  CHECK_THROWS_AS(factorization_objective(15, -1.0), InputError);

  // Bounded by 2 everywhere; equality on the integer grid only at divisors.
  for (std::uint64_t n : {12u, 15u, 35u, 97u}) {
    for (std::uint64_t x = 1; x <= n; ++x) {
      const double v = factorization_objective(n, static_cast<double>(x));
      CHECK(v <= 2.0);
      if (n % x == 0)
        CHECK(v == 2.0);
      else
        CHECK(v < 2.0 - 1e-9);
      for (double off : {-1e-3, 1e-3}) CHECK(factorization_objective(n, x + off) < 2.0);
    }
  }
  // Derivative against central differences.
  for (double x : {1.3, 2.7, 4.1}) {
    const double h = 1e-6;
    const double fd =
        (factorization_objective(35, x + h) - factorization_objective(35, x - h)) / (2 * h);
    CHECK(factorization_derivative(35, x) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("sigmoid substitution") {
  for (auto k : {SigmoidKind::Logistic, SigmoidKind::Arctan}) {
    CHECK(sigmoid(k, 0.0) == 0.5);
    CHECK(sigmoid(k, 1e9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sigmoid(k, -1e9) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(parse_sigmoid_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_sigmoid_kind("tanh"), InputError);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_polynomial(rng, 3, 4, 6);
    for (auto k : {SigmoidKind::Logistic, SigmoidKind::Arctan}) {
      auto obj = sigmoid_substitute(p, k);
      REQUIRE(obj.dim == 3);
      const std::vector<double> zero(3, 0.0), half(3, 0.5);
      CHECK(obj.value(zero) == doctest::Approx(evaluate(p, half)));
      // The +infinity limit approaches p at all-ones.
      const std::vector<double> big(3, 40.0), ones(3, 1.0);
      if (k == SigmoidKind::Logistic)
        CHECK(obj.value(big) == doctest::Approx(evaluate(p, ones)).epsilon(1e-9));

      auto z = testing::random_point(rng, 3, -2.0, 2.0);
      std::vector<double> g(3);
      obj.gradient(z, g);
      for (std::size_t i = 0; i < 3; ++i) {
        auto zp = z, zm = z;
        const double h = 1e-5;
        zp[i] += h;
        zm[i] -= h;
        const double fd = (obj.value(zp) - obj.value(zm)) / (2 * h);
        CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("clique objective") {
  const auto tri = Graph::complete(3);
  const std::vector<std::uint8_t> all{1, 1, 1};
  CHECK(clique_objective(tri, all, 3) == 6);
  CHECK_THROWS_AS(clique_objective(tri, all, 2), InputError);
  const Graph empty(5);
  for (std::uint64_t m = 0; m < 32; ++m)
    CHECK(clique_objective(empty, mask_to_vec(m, 5), std::popcount(m)) == 0);

  // Maximum over weight-k vectors is k(k-1), attained exactly at cliques,
  // whenever the graph has a k-clique.
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng.below(7);
    const auto g = testing::random_graph(rng, n, 0.6);
    const std::size_t omega = clique_number(g);
    for (std::size_t k = 1; k <= omega; ++k) {
      const auto res = clique_objective_max(g, k);
      CHECK(res.best == static_cast<std::int64_t>(k * (k - 1)));
      for (auto mask : res.argmax) CHECK(is_clique(g, mask));
      std::size_t cliques = 0;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if (std::popcount(m) == static_cast<int>(k) && is_clique(g, m)) ++cliques;
      CHECK(res.argmax.size() == cliques);
    }
    if (omega < n) {
      const auto res = clique_objective_max(g, omega + 1);
      CHECK(res.best < static_cast<std::int64_t>((omega + 1) * omega));
    }
  }
}

TEST_CASE("vertex cover cone") {
  const auto edge = Graph::complete(2);
  CHECK(vertex_cover_feasible(edge, std::vector<std::uint8_t>{1, 0}, 1));
  CHECK_FALSE(vertex_cover_feasible(edge, std::vector<std::uint8_t>{0, 0}, 0));
  CHECK_THROWS_AS(vertex_cover_feasible(edge, std::vector<std::uint8_t>{0, 0}, 1), InputError);

  // The unit-diagonal cone accepts dominating sets; the path 0-1-2-3 with
  // {0,3} is one but leaves edge 1-2 uncovered.
  const auto p4 = Graph::path(4);
  const std::vector<std::uint8_t> ends{1, 0, 0, 1};
  CHECK(vertex_cover_feasible(p4, ends, 2));
  CHECK_FALSE(is_vertex_cover(p4, ends));
  CHECK_FALSE(vertex_cover_incidence_feasible(p4, ends, 2));

  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    const auto g = testing::random_graph(rng, n, 0.3);
    bool isolated = false;
    for (std::size_t i = 0; i < n; ++i) isolated = isolated || g.degree(i) == 0;
    for (int s = 0; s < 20; ++s) {
      std::vector<std::uint8_t> v(n);
      std::size_t k = 0;
      for (auto& b : v) k += (b = rng.coin());
      const bool cone = vertex_cover_feasible(g, v, k);
      CHECK(cone == is_dominating_set(g, v));
      CHECK(vertex_cover_incidence_feasible(g, v, k) == is_vertex_cover(g, v));
      if (!isolated && is_vertex_cover(g, v)) CHECK(cone);
    }
  }
}

TEST_CASE("coloring objective") {
  const auto tri = Graph::complete(3);
  const std::vector<double> spaced{0.0, 2 * kPi / 3, 4 * kPi / 3};
  CHECK(coloring_objective(tri, spaced) == doctest::Approx(0.0).scale(1.0));
  CHECK(is_proper_coloring(tri, round_coloring(tri, spaced)));
  const auto edge = Graph::complete(2);
  CHECK(coloring_objective(edge, std::vector<double>{0.7, 0.7}) == doctest::Approx(2.25));

  // Rotating everything leaves the rounded colouring proper.
  std::vector<double> shifted = spaced;
  for (auto& a : shifted) a += 1.234;
  CHECK(is_proper_coloring(tri, round_coloring(tri, shifted)));

  // Gradient against central differences.
  Rng rng(8);
  const auto g = testing::random_graph(rng, 6, 0.5);
  auto obj = coloring_function(g);
  auto a = testing::random_point(rng, 6, 0.0, 2 * kPi);
  std::vector<double> grad(6);
  obj.gradient(a, grad);
  for (std::size_t i = 0; i < 6; ++i) {
    auto ap = a, am = a;
    ap[i] += 1e-6;
    am[i] -= 1e-6;
    CHECK(grad[i] == doctest::Approx((obj.value(ap) - obj.value(am)) / 2e-6).epsilon(1e-5));
  }

  // Zeros found by descent round to proper colourings; K4 never reaches zero.
  OptimizerConfig cfg;
  cfg.stop_at_vertex = false;
  cfg.zero_tol = 1e-12;
  cfg.max_iters = 3000;
  cfg.threads = 1;
  std::size_t zeros = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const auto h = testing::random_graph(rng, 7, 0.35);
    auto ho = coloring_function(h);
    for (std::size_t s = 0; s < 10; ++s) {
      auto start = start_point(7, trial, s);
      for (auto& x : start) x *= 2 * kPi;
      const auto r = gradient_descent(ho, start, cfg);
      if (r.final_value < 1e-12) {
        ++zeros;
        CHECK(is_proper_coloring(h, round_coloring(h, r.final_point)));
      }
    }
  }
  CHECK(zeros > 0);

  const auto k4 = Graph::complete(4);
  auto k4o = coloring_function(k4);
  double best = 1e9;
  for (std::size_t s = 0; s < 1000; ++s) {
    auto start = start_point(4, 99, s);
    for (auto& x : start) x *= 2 * kPi;
    best = std::min(best, gradient_descent(k4o, start, cfg).final_value);
  }
  CHECK(best > 1e-3);
}

TEST_CASE("sat monomial count") {
  CnfFormula one{3, {{{0, false}, {1, false}, {2, false}}}};
  // Sum of the clause sum over 8 assignments: 3 * 4.
  CHECK(sat_monomial_count(one) == 12);
  CHECK(sat_product_sum_direct(one) == 12);
  std::size_t satisfying = 0;
  for (std::uint8_t v = 0; v < 8; ++v) satisfying += v != 0;
  CHECK(satisfying == 7);

  CnfFormula contra{1, {{{0, false}}, {{0, true}}}};
  CHECK(sat_monomial_count(contra) == 0);

  CnfFormula none{4, {}};
  CHECK_THROWS_AS(sat_monomial_count(none), InputError);

  CnfFormula big{3, std::vector<Clause>(15, Clause{{0, false}})};
  CHECK_THROWS_AS(sat_monomial_count(big), InstanceTooLarge);

  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng.below(8);
    const std::size_t m = 1 + rng.below(6);
    const auto f = testing::random_cnf(rng, n, m, 1 + rng.below(3));
    const auto c = sat_monomial_count(f, 1 + trial % 3);
    CHECK(c == sat_product_sum_direct(f));
    CHECK((c > 0) == sat_oracle(f).satisfiable);
  }
  // Unsatisfiable: all eight sign patterns over three variables.
  CnfFormula unsat{3, {}};
  for (int s = 0; s < 8; ++s)
    unsat.clauses.push_back({{0, (s & 1) != 0}, {1, (s & 2) != 0}, {2, (s & 4) != 0}});
  CHECK(sat_monomial_count(unsat) == 0);
  CHECK_FALSE(sat_oracle(unsat).satisfiable);
}
