// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/errors.hpp"
#include "npforge/grassmann.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace npforge;

namespace {

// Sign of the permutation sorting `seq` (bubble-sort inversion count).
int perm_sign(std::vector<int> seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
  return inv % 2 == 0 ? 1 : -1;
}

// Directed Hamilton cycle count and signed trace by enumerating vertex
// sequences (v_1, ..., v_n) with edges v_k -> v_{k+1} and v_n -> v_1.
struct PermOracle {
  std::uint64_t walks = 0;  // closed walks through all vertices = n * directed cycles
  std::int64_t signed_sum = 0;
};

PermOracle perm_oracle(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  PermOracle out;
  do {
    bool ok = g.adjacent(seq[n - 1], seq[0]);
    for (std::size_t k = 0; k + 1 < n && ok; ++k) ok = g.adjacent(seq[k], seq[k + 1]);
    if (!ok) continue;
    ++out.walks;
    out.signed_sum += perm_sign(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

Graph graph_from_bits(std::size_t n, std::uint64_t bits) {
  Graph g(n);
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++e)
      if ((bits >> e) & 1u) g.add_edge(i, j);
  return g;
}

GrassmannElement random_element(Rng& rng, unsigned gens) {
  GrassmannElement e;
  for (int t = 0; t < 4; ++t)
    e.add_term(rng.below(std::uint64_t{1} << gens), static_cast<std::int64_t>(rng.below(7)) - 3);
  return e;
}

}  // namespace

TEST_CASE("gmul basics") {
  auto t1 = GrassmannElement::generator(1);
  auto t2 = GrassmannElement::generator(2);
  CHECK(gmul(t1, t2) == GrassmannElement::monomial(0b110, 1));
  CHECK(gmul(t2, t1) == GrassmannElement::monomial(0b110, -1));
  CHECK(gmul(t1, t1).is_zero());
  CHECK(gmul(t1 + t2, t1 + t2).is_zero());
  CHECK(gmul(GrassmannElement::scalar(3), t2) == GrassmannElement::monomial(0b100, 3));
}

TEST_CASE("merge_sign matches explicit sorting") {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t a = rng.below(std::uint64_t{1} << 20);
    const std::uint64_t b = rng.below(std::uint64_t{1} << 20) & ~a;
    std::vector<int> seq;
    for (int i = 0; i < 20; ++i)
      if ((a >> i) & 1u) seq.push_back(i);
    for (int i = 0; i < 20; ++i)
      if ((b >> i) & 1u) seq.push_back(i);
    CHECK(merge_sign(a, b) == perm_sign(seq));
  }
  CHECK(merge_sign(std::uint64_t{1} << 63, 1) == -1);
}

TEST_CASE("algebra laws") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    auto a = random_element(rng, 6), b = random_element(rng, 6), c = random_element(rng, 6);
    CHECK(gmul(gmul(a, b), c) == gmul(a, gmul(b, c)));
    CHECK(gmul(a, b + c) == gmul(a, b) + gmul(a, c));
  }
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      auto ti = GrassmannElement::generator(i), tj = GrassmannElement::generator(j);
      CHECK((gmul(ti, tj) + gmul(tj, ti)).is_zero());
    }
  auto big = GrassmannElement::scalar(std::int64_t{1} << 62);
  CHECK_THROWS_AS(gmul(big, GrassmannElement::scalar(4)), ArithmeticOverflow);
}

TEST_CASE("paired diagonal") {
  auto d1 = paired_diag(1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == GrassmannElement::monomial(0b11));
  auto d = paired_diag(4);
  std::vector<int> order{0, 1, 2, 3};
  do {
    GrassmannElement p = GrassmannElement::scalar(1);
    for (int v : order) p = gmul(p, d[v]);
    CHECK(p == GrassmannElement::monomial(0xff));
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(gmul(d[2], d[2]).is_zero());
  // Pairs commute with each other.
  CHECK(gmul(d[0], d[3]) == gmul(d[3], d[0]));
}

TEST_CASE("hamilton trace examples") {
  CHECK(hamilton_trace(Graph::complete(3)) == 6);
  CHECK(hamilton_trace(Graph::path(3)) == 0);
  CHECK(hamilton_trace(Graph::complete(4)) == 24);
  CHECK(hamilton_oracle(Graph::complete(3)) == 2);
  CHECK(hamilton_oracle(Graph::cycle(5)) == 2);
  CHECK(hamilton_oracle(Graph::complete(4)) == 6);
  CHECK(hamilton_oracle(Graph::complete(6)) == 120);  // (n-1)!
  CHECK_THROWS_AS(hamilton_trace(Graph::complete(2)), InputError);
  CHECK_THROWS_AS(hamilton_trace(Graph::complete(kHamiltonMax + 1)), InstanceTooLarge);
  auto cyc = hamilton_cycle(Graph::cycle(6));
  CHECK(cyc.size() == 6);
  CHECK(hamilton_cycle(Graph::path(4)).empty());
}

TEST_CASE("all graphs up to 5 vertices") {
  for (std::size_t n = 3; n <= 5; ++n) {
    const std::size_t e = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << e); ++bits) {
      auto g = graph_from_bits(n, bits);
      const auto oracle = perm_oracle(g);
      const auto trace = hamilton_trace(g);
      CHECK(trace == static_cast<std::int64_t>(oracle.walks));
      CHECK(trace == static_cast<std::int64_t>(n * hamilton_oracle(g)));
      CHECK((trace != 0) == (hamilton_oracle(g) > 0));
      CHECK(single_diag_trace(g) == oracle.signed_sum);
    }
  }
}

TEST_CASE("random graphs up to 8 vertices") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + rng.below(6);
    auto g = testing::random_graph(rng, n, 0.3 + 0.5 * rng.uniform());
    const auto oracle = perm_oracle(g);
    const auto trace = hamilton_trace(g);
    CHECK(trace == static_cast<std::int64_t>(n * hamilton_oracle(g)));
    CHECK(trace == static_cast<std::int64_t>(oracle.walks));
    const auto single = single_diag_trace(g);
    CHECK(single == oracle.signed_sum);
    CHECK(std::llabs(single) <= trace);
    if (n % 2 == 0) CHECK(single == 0);  // rotations cancel pairwise
    if (n <= 8) CHECK(derivative_trace(g) == trace);
  }
}

TEST_CASE("symbolic matrix route agrees") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + rng.below(3);
    auto g = testing::random_graph(rng, n, 0.7);
    CHECK(symbolic_trace(g, paired_diag(n)) == hamilton_trace(g));
    std::vector<GrassmannElement> single;
    for (unsigned i = 0; i < n; ++i) single.push_back(GrassmannElement::generator(i));
    CHECK(symbolic_trace(g, single) == single_diag_trace(g));
  }
  // On the triangle the two orientations carry opposite signs and cancel.
  CHECK(symbolic_trace(Graph::complete(3), {GrassmannElement::generator(0), GrassmannElement::generator(1),
                                            GrassmannElement::generator(2)}) == 0);
  CHECK(single_diag_trace(Graph::complete(3)) == 0);
}

TEST_CASE("derivative trace") {
  CHECK(derivative_trace(Graph::complete(3)) == 6);
  CHECK(derivative_trace(Graph(5)) == 0);
  CHECK(derivative_trace(Graph::cycle(7)) == 14);
}

TEST_CASE("matrix representation") {
  auto classic = matrix_rep(2, RepConvention::Mirrored);
  using D = std::vector<std::vector<std::int64_t>>;
  CHECK(classic.mats[0].dense() == D{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  CHECK(classic.mats[1].dense() == D{{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  auto jw = matrix_rep(2);
  CHECK(jw.mats[0].dense() == D{{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(jw.mats[1].dense() == D{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, -1, 0}});

  for (auto conv : {RepConvention::JordanWigner, RepConvention::Mirrored})
    for (std::size_t k = 1; k <= 6; ++k) {
      auto rep = matrix_rep(k, conv);
      CHECK(rep.dimension() == (std::size_t{1} << k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          CHECK((rep.mats[i] * rep.mats[j] + rep.mats[j] * rep.mats[i]).is_zero());
      SparseIntMatrix prod = rep.mats[0];
      for (std::size_t i = 1; i < k; ++i) prod = prod * rep.mats[i];
      CHECK_FALSE(prod.is_zero());
      CHECK(prod.entries.size() == 1);  // maps the vacuum to the filled state
    }
  CHECK_THROWS_AS(matrix_rep(kMatrixRepMax + 1), InstanceTooLarge);
  CHECK(matrix_rep(3).dense_bytes() == 3 * 64 * 8);
}

TEST_CASE("report json") {
  auto j = hamilton_report(Graph::complete(4));
  CHECK(j["n"] == 4);
  CHECK(j["trace"] == 24);
  CHECK(j["directed_cycles"] == 6);
  CHECK(j["has_hamilton"] == true);
}
