// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/errors.hpp"
#include "npforge/polynomial.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace npforge;

namespace {

SparsePolynomial x(std::uint32_t i, std::size_t n = 3) { return SparsePolynomial::variable(i, n); }
SparsePolynomial c(long v, std::size_t n = 3) { return SparsePolynomial::constant(v, n); }

// Central differences, used as the independent oracle for gradient().
double central_difference(const SparsePolynomial& p, std::vector<double> pt, std::size_t i,
                          double h) {
  pt[i] += h;
  const double up = evaluate(p, pt);
  pt[i] -= 2 * h;
  const double down = evaluate(p, pt);
  return (up - down) / (2 * h);
}

}  // namespace

TEST_CASE("add cancels and merges") {
  CHECK((x(0) + (-x(0))).is_zero());
  CHECK(x(0) * x(0) + x(0) * x(0) == c(2) * square(x(0)));
  CHECK((x(0) + x(1)) + (x(0) - x(1)) == c(2) * x(0));
}

TEST_CASE("mul basics and the ten-term square") {
  CHECK(x(0) * x(0) == SparsePolynomial::monomial(Monomial::variable(0, 2), 1, 3));
  CHECK((x(0) - c(1)) * (x(0) + c(1)) == square(x(0)) - c(1));

  const auto s = square(x(0) + x(1) + x(2) - c(1));
  CHECK(s.size() == 10);
  CHECK(s.degree() == 2);
  // hand expansion: x^2+y^2+z^2+2xy+2xz+2yz-2x-2y-2z+1
  const SparsePolynomial expected = square(x(0)) + square(x(1)) + square(x(2)) +
                                    c(2) * (x(0) * x(1) + x(0) * x(2) + x(1) * x(2)) -
                                    c(2) * (x(0) + x(1) + x(2)) + c(1);
  CHECK(s == expected);
}

TEST_CASE("degree adds under multiplication") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_polynomial(rng, 4, 3, 5);
    const auto q = testing::random_polynomial(rng, 4, 3, 5);
    if (p.is_zero() || q.is_zero()) continue;
    CHECK((p * q).degree() == p.degree() + q.degree());
  }
}

TEST_CASE("ring laws on random triples") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_polynomial(rng, 4, 3, 6);
    const auto q = testing::random_polynomial(rng, 4, 3, 6);
    const auto r = testing::random_polynomial(rng, 4, 3, 6);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
  }
}

TEST_CASE("evaluate") {
  const auto f = square(x(0, 1)) * square(c(1, 1) - x(0, 1));
  CHECK(evaluate(f, std::vector<double>{0.5}) == doctest::Approx(0.0625));
  CHECK(evaluate(f, std::vector<double>{1.0}) == 0.0);

  const auto s = x(0) + x(1) + x(2);
  const auto p3 = square(s - c(1)) * square(s - c(2)) * square(s - c(3));
  CHECK(evaluate(p3, std::vector<double>{0, 0, 0}) == 36.0);
  CHECK(evaluate_exact(p3, std::vector<std::int64_t>{0, 0, 0}) == 36);
  CHECK(evaluate_boolean(p3, 0) == 36);
  CHECK(evaluate_boolean(p3, 0b001) == 0);

  CHECK_THROWS_AS(evaluate(p3, std::vector<double>{0, 0}), DimensionMismatch);
}

TEST_CASE("boolean and exact evaluation agree with float evaluation") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_polynomial(rng, 5, 4, 8);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      std::vector<double> pt(5);
      std::vector<std::int64_t> ipt(5);
      for (int i = 0; i < 5; ++i) ipt[i] = static_cast<std::int64_t>((mask >> i) & 1U);
      for (int i = 0; i < 5; ++i) pt[i] = static_cast<double>(ipt[i]);
      const Integer b = evaluate_boolean(p, mask);
      CHECK(b == evaluate_exact(p, ipt));
      CHECK(to_double(b) == evaluate(p, pt));
    }
  }
}

TEST_CASE("gradient") {
  const auto g1 = gradient(square(x(0, 1)));
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == c(2, 1) * x(0, 1));

  const auto g2 = gradient(x(0, 2) * x(1, 2));
  CHECK(g2[0] == x(1, 2));
  CHECK(g2[1] == x(0, 2));
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const auto p = testing::random_polynomial(rng, n, 6, 12, 3);
    const auto g = gradient(p);
    for (int k = 0; k < 100; ++k) {
      const auto pt = testing::random_point(rng, n);
      for (std::size_t i = 0; i < n; ++i) {
        const double exact = evaluate(g[i], pt);
        const double fd = central_difference(p, pt, i, 1e-5);
        CHECK(std::abs(exact - fd) <= 1e-6 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("laplacian") {
  CHECK(laplacian(square(x(0, 2)) + square(x(1, 2))) == c(4, 2));
  CHECK(laplacian(x(0, 1)).is_zero());
  const auto f = square(x(0, 1)) * square(c(1, 1) - x(0, 1));
  // d^2/dx^2 (x^2 - 2x^3 + x^4) = 2 - 12x + 12x^2
  CHECK(laplacian(f) == c(12, 1) * square(x(0, 1)) - c(12, 1) * x(0, 1) + c(2, 1));
}

TEST_CASE("restrict_to_line") {
  const auto t2 = restrict_to_line(square(x(0, 1)), std::vector<double>{0.0},
                                   std::vector<double>{1.0});
  CHECK(t2 == std::vector<double>{0.0, 0.0, 1.0});

  const auto r = restrict_to_line(square(x(0, 2)) + square(x(1, 2)),
                                  std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0});
  CHECK(r == std::vector<double>{1.0, 0.0, 1.0});

  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_polynomial(rng, 4, 5, 10);
    const auto base = testing::random_point(rng, 4);
    const auto dir = testing::random_point(rng, 4);
    const auto coeffs = restrict_to_line(p, base, dir);
    for (int k = 0; k < 10; ++k) {
      const double t = rng.uniform(-2.0, 2.0);
      std::vector<double> pt(4);
      for (int i = 0; i < 4; ++i) pt[i] = base[i] + t * dir[i];
      const double direct = evaluate(p, pt);
      CHECK(std::abs(evaluate_univariate(coeffs, t) - direct) <=
            1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("univariate_minima") {
  const auto m1 = univariate_minima(std::vector<double>{0, 0, 1});
  REQUIRE(m1.size() == 1);
  CHECK(m1[0].t == doctest::Approx(0.0));
  CHECK(m1[0].value == doctest::Approx(0.0));

  // t^2 (1-t)^2 = t^2 - 2t^3 + t^4
  const auto m2 = univariate_minima(std::vector<double>{0, 0, 1, -2, 1});
  REQUIRE(m2.size() == 2);
  CHECK(m2[0].t == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m2[1].t == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(m2[0].value) < 1e-12);
  CHECK(std::abs(m2[1].value) < 1e-12);

  // flat minimum of t^4
  const auto m3 = univariate_minima(std::vector<double>{0, 0, 0, 0, 1});
  REQUIRE(m3.size() == 1);
  CHECK(std::abs(m3[0].t) < 1e-3);

  CHECK(univariate_minima(std::vector<double>{1, 2}).empty());
  CHECK_THROWS_AS(univariate_minima(std::vector<double>{0, 0, 0, 0, 0, 0, 0, 1}),
                  UnsupportedDegree);

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> q(5);
    for (double& v : q) v = rng.uniform(-3, 3);
    q[4] = 0.5 + rng.uniform();
    const auto d1 = differentiate_univariate(q);
    const auto d2 = differentiate_univariate(d1);
    const auto mins = univariate_minima(q);
    CHECK(!mins.empty());  // positive leading coefficient quartic
    for (const auto& m : mins) {
      CHECK(std::abs(evaluate_univariate(d1, m.t)) < 1e-8);
      CHECK(evaluate_univariate(d2, m.t) > 0.0);
    }
  }
}

TEST_CASE("json round trip preserves the polynomial") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = testing::random_polynomial(rng, 6, 4, 10, 1000);
    p *= Integer("123456789012345678901234567890");
    const auto back = polynomial_from_json(nlohmann::json::parse(to_json(p).dump()));
    CHECK(back == p);
    CHECK(back.num_vars() == p.num_vars());
  }
  CHECK_THROWS_AS(polynomial_from_json(nlohmann::json::parse(
                      R"({"num_vars":1,"terms":[{"exps":[[3,1]],"coeff":"2"}]})")),
                  InputError);
}

TEST_CASE("grlex order: degree first, then x0 > x1") {
  GrlexLess less;
  CHECK(less(Monomial(), Monomial::variable(0)));
  CHECK(less(Monomial::variable(1), Monomial::variable(0)));
  CHECK(less(Monomial::variable(0, 2), Monomial::variable(0, 3)));
  CHECK(less(Monomial({{0, 1}, {2, 1}}), Monomial({{0, 1}, {1, 1}})));
  CHECK(!less(Monomial::variable(0), Monomial::variable(0)));
}
