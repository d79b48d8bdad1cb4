// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/errors.hpp"
#include "npforge/sat_encode.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace npforge;

namespace {

std::uint64_t mask_of(std::initializer_list<int> bits) {
  std::uint64_t m = 0;
  int i = 0;
  for (int b : bits) {
    if (b) m |= std::uint64_t{1} << i;
    ++i;
  }
  return m;
}

std::vector<std::uint8_t> bits_of(std::uint64_t m, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (m >> i) & 1u;
  return out;
}

// Independent satisfiability check by enumeration.
bool brute_sat(const CnfFormula& f) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.num_vars); ++m)
    if (satisfies(f, bits_of(m, f.num_vars))) return true;
  return false;
}

CnfFormula single_clause(Clause c, std::size_t n = 3) {
  CnfFormula f;
  f.num_vars = n;
  f.clauses.push_back(std::move(c));
  return f;
}

}  // namespace

TEST_CASE("parse_dimacs basics and errors") {
  auto f = parse_dimacs("p cnf 2 1\n1 -2 0\n");
  CHECK(f.num_vars == 2);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == Clause{{0, false}, {1, true}});

  auto g = parse_dimacs("c comment\np cnf 3 2\n1 2\n 3 0 -1 -2 -3 0\n");
  CHECK(g.clauses.size() == 2);
  CHECK(g.clauses[0].size() == 3);

  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3 4 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -1 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), InputError);

  try {
    parse_dimacs("p cnf 3 2\n1 2 0\n1 2 3 -1 0\n");
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    auto r = testing::random_cnf(rng, 6, 8);
    auto back = parse_dimacs(format_dimacs(r));
    CHECK(back.num_vars == r.num_vars);
    CHECK(back.clauses == r.clauses);
  }
}

TEST_CASE("encode_or2") {
  auto p = encode_or2({0, false}, {1, false}, 2);
  CHECK(p.degree() == 6);
  CHECK(evaluate_boolean(p, mask_of({0, 0})) == 2);
  CHECK(evaluate_boolean(p, mask_of({1, 0})) == 0);
  CHECK(evaluate_boolean(p, mask_of({0, 1})) == 0);
  CHECK(evaluate_boolean(p, mask_of({1, 1})) == 0);
  // Negation moves the zero set: (not x) or y fails only at x=1, y=0.
  auto q = encode_or2({0, true}, {1, false}, 2);
  for (int m = 0; m < 4; ++m) CHECK((evaluate_boolean(q, m) == 0) == (m != 1));
  CHECK_THROWS_AS(encode_or2({0, false}, {0, true}, 2), InputError);
}

TEST_CASE("deg14 single clause") {
  auto inst = encode_deg14(single_clause({{0, false}, {1, false}, {2, false}}));
  CHECK(inst.poly.degree() == 14);
  CHECK(inst.aux_vars == 0);
  // At the origin each factor is the popcount of the pattern.
  Integer expect = 1;
  for (int m = 1; m < 8; ++m) expect *= __builtin_popcount(m);
  CHECK(expect == 24);
  CHECK(evaluate_boolean(inst.poly, 0) == expect);
  for (int m = 1; m < 8; ++m) CHECK(evaluate_boolean(inst.poly, m) == 0);

  // Real-point oracle: direct product of squared distances.
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    auto x = testing::random_point(rng, 3, -1, 2);
    double direct = 1;
    for (int m = 1; m < 8; ++m) {
      double d = 0;
      for (int k = 0; k < 3; ++k) {
        double xi = k == 1 ? 1 - x[k] : x[k];
        double pk = (m >> k) & 1;
        d += (xi - pk) * (xi - pk);
      }
      direct *= d;
    }
    auto neg = encode_deg14(single_clause({{0, false}, {1, true}, {2, false}}));
    CHECK(evaluate(neg.poly, x) == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK_THROWS_AS(encode_deg14(single_clause({{0, false}, {1, false}})), InputError);
}

TEST_CASE("deg8 projection equals satisfying assignments") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + rng.below(5);
    const std::size_t m = 1 + rng.below(20 - n < 6 ? 20 - n : 6);
    auto f = testing::random_cnf(rng, n, m);
    auto inst = encode_deg8(f);
    CHECK(inst.poly.degree() == 8);
    CHECK(inst.aux_vars == m);
    CHECK(inst.poly.num_vars() == n + m);
    std::vector<bool> zero_proj(std::size_t{1} << n, false);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n + m)); ++x)
      if (evaluate_boolean(inst.poly, x) == 0) zero_proj[x & ((std::uint64_t{1} << n) - 1)] = true;
    for (std::uint64_t x = 0; x < zero_proj.size(); ++x)
      CHECK(zero_proj[x] == satisfies(f, bits_of(x, n)));
  }
  // v playing the role of x or y zeroes a satisfied clause.
  auto inst = encode_deg8(single_clause({{0, false}, {1, false}, {2, false}}));
  CHECK(evaluate_boolean(inst.poly, mask_of({1, 0, 0, 1})) == 0);
  CHECK(evaluate_boolean(inst.poly, mask_of({1, 0, 0, 0})) > 0);
  CHECK(inst.var_names.back() == "v0");
}

TEST_CASE("deg6 examples and zero set") {
  auto inst = encode_deg6(single_clause({{0, false}, {1, false}, {2, false}}));
  CHECK(inst.poly.degree() == 6);
  CHECK(inst.aux_vars == 0);
  CHECK(evaluate_boolean(inst.poly, 0) == 36);
  CHECK(evaluate_boolean(inst.poly, mask_of({0, 1, 0})) == 0);

  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng.below(10);
    auto f = testing::random_cnf(rng, n, 1 + rng.below(4 * n));
    auto e = encode_deg6(f);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      CHECK((evaluate_boolean(e.poly, x) == 0) == satisfies(f, bits_of(x, n)));
  }
}

TEST_CASE("narrow clauses in deg6 and deg4") {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {{{0, false}}, {{1, true}, {2, false}}, {{0, true}, {1, false}, {2, true}}};
  for (auto id : {EncodingId::Deg6, EncodingId::Deg4}) {
    auto e = encode(f, id);
    CHECK(e.poly.degree() == expected_degree(id));
    for (std::uint64_t x = 0; x < 8; ++x) {
      bool zero = false;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << e.aux_vars); ++a)
        zero = zero || evaluate_boolean(e.poly, x | (a << 3)) == 0;
      CHECK(zero == satisfies(f, bits_of(x, 3)));
    }
  }
  CHECK(encode_deg4(f).aux_vars == 1);
  CHECK_THROWS_AS(encode_deg8(f), InputError);
}

TEST_CASE("deg4 local behaviour") {
  auto inst = encode_deg4(single_clause({{0, false}, {1, false}, {2, false}}));
  CHECK(inst.poly.degree() == 4);
  CHECK(inst.aux_vars == 1);
  // bits: x y z v
  for (int m = 0; m < 16; ++m) {
    const int x = m & 1, y = (m >> 1) & 1, z = (m >> 2) & 1, v = (m >> 3) & 1;
    const bool zero = evaluate_boolean(inst.poly, m) == 0;
    const bool expect = (x + y + v >= 1 && x + y + v <= 2) && (z - v == 0 || z - v == 1);
    CHECK(zero == expect);
    if (x == 0 && y == 0 && zero) {
      CHECK(v == 1);
      CHECK(z == 1);
    }
  }
  for (int m = 0; m < 8; ++m) {
    bool some = evaluate_boolean(inst.poly, m) == 0 || evaluate_boolean(inst.poly, m | 8) == 0;
    CHECK(some == (m != 0));
  }
}

TEST_CASE("boolean_penalty") {
  std::vector<std::uint32_t> vars{0, 1, 2};
  auto p = boolean_penalty(vars, 3);
  for (int m = 0; m < 8; ++m) CHECK(evaluate_boolean(p, m) == 0);
  std::vector<std::uint32_t> one{0};
  auto q = boolean_penalty(one, 1);
  std::vector<double> half{0.5};
  CHECK(evaluate(q, half) == doctest::Approx(0.0625));
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto x = testing::random_point(rng, 3, -1, 2);
    bool lattice = true;
    for (double v : x) lattice = lattice && (v == 0.0 || v == 1.0);
    if (!lattice) CHECK(evaluate(p, x) > 0);
  }
}

TEST_CASE("gate truth tables") {
  std::vector<std::uint32_t> in{0, 1}, out{2};
  auto and_p = encode_gate(GateKind::And, in, out, {}, 3);
  auto or_p = encode_gate(GateKind::Or, in, out, {}, 3);
  auto xor_p = encode_gate(GateKind::Xor, in, out, {}, 3);
  CHECK(evaluate_boolean(and_p, mask_of({1, 1, 1})) == 0);
  CHECK(evaluate_boolean(xor_p, mask_of({1, 0, 1})) == 0);
  for (int m = 0; m < 8; ++m) {
    const int x = m & 1, y = (m >> 1) & 1, z = (m >> 2) & 1;
    CHECK((evaluate_boolean(and_p, m) == 0) == (z == (x & y)));
    CHECK((evaluate_boolean(or_p, m) == 0) == (z == (x | y)));
    CHECK((evaluate_boolean(xor_p, m) == 0) == (z == (x ^ y)));
  }
  std::vector<std::uint32_t> carries{3, 4};
  auto add = encode_gate(GateKind::AdderBit, in, out, carries, 5);
  for (int m = 0; m < 32; ++m) {
    const int x = m & 1, y = (m >> 1) & 1, z = (m >> 2) & 1, ci = (m >> 3) & 1, co = (m >> 4) & 1;
    const int s = x + y + ci;
    CHECK((evaluate_boolean(add, m) == 0) == (z == (s & 1) && co == (s >> 1)));
  }
  CHECK_THROWS_AS(encode_gate(GateKind::AdderBit, in, out, {}, 5), InputError);
  std::vector<std::uint32_t> dup{0, 0};
  CHECK_THROWS_AS(encode_gate(GateKind::And, dup, out, {}, 3), InputError);
}

TEST_CASE("quadratic encoding") {
  auto f = single_clause({{0, false}, {1, false}, {2, false}});
  auto inst = encode_quadratic(f);
  CHECK(inst.poly.degree() == 2);
  CHECK(inst.aux_vars == 3);
  CHECK(inst.num_vars() == 6);
  CHECK(inst.var_names[3] == "u0");
  CHECK(inst.var_names[5] == "w0");
  // s = 2 with v = 1
  CHECK(evaluate_boolean(inst.poly, mask_of({1, 1, 0, 0, 1, 0})) == 0);
  for (int a = 0; a < 8; ++a) CHECK(evaluate_boolean(inst.poly, std::uint64_t(a) << 3) > 0);

  Rng rng(9);
  auto g = testing::random_cnf(rng, 5, 4);
  CHECK(encode_quadratic(g).num_vars() == 5 + 3 * 4);
}

TEST_CASE("sat_oracle") {
  CnfFormula contra;
  contra.num_vars = 1;
  contra.clauses = {{{0, false}}, {{0, true}}};
  CHECK_FALSE(sat_oracle(contra).satisfiable);

  auto one = single_clause({{0, true}, {1, false}, {2, true}});
  auto r = sat_oracle(one);
  REQUIRE(r.satisfiable);
  CHECK(satisfies(one, r.witness));

  Rng rng(77);
  int sat_count = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 4 + rng.below(7);
    auto f = testing::random_cnf(rng, n, 2 + rng.below(6 * n));
    auto res = sat_oracle(f);
    CHECK(res.satisfiable == brute_sat(f));
    if (res.satisfiable) {
      ++sat_count;
      CHECK(satisfies(f, res.witness));
    }
    CHECK((boolean_lattice_minimum(encode_deg6(f)) == 0) == res.satisfiable);
  }
  CHECK(sat_count > 5);
  CHECK(sat_count < 95);

  CnfFormula big;
  big.num_vars = kSatOracleMaxVars + 1;
  big.clauses = {{{0, false}}};
  CHECK_THROWS_AS(sat_oracle(big), InstanceTooLarge);
}

TEST_CASE("lattice minimum is zero iff satisfiable, every encoding") {
  Rng rng(1234);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + rng.below(5);
    const std::size_t m = 1 + rng.below(5 * n);
    auto f = testing::random_cnf(rng, n, m);
    const bool sat = sat_oracle(f).satisfiable;
    for (auto id : {EncodingId::Deg14, EncodingId::Deg8, EncodingId::Deg6, EncodingId::Deg4,
                    EncodingId::Quadratic}) {
      auto inst = encode(f, id);
      CAPTURE(to_string(id));
      CHECK(inst.poly.degree() == expected_degree(id));
      CHECK(inst.poly.num_vars() == inst.original_vars + inst.aux_vars);
      CHECK(inst.var_names.size() == inst.num_vars());
      const Integer fast = boolean_lattice_minimum(inst);
      CHECK((fast == 0) == sat);
      if (inst.num_vars() <= 12) CHECK(boolean_lattice_minimum_direct(inst.poly) == fast);
    }
  }
}

TEST_CASE("encodings are nonnegative at real points") {
  Rng rng(99);
  auto f = testing::random_cnf(rng, 6, 10);
  for (auto id : {EncodingId::Deg14, EncodingId::Deg8, EncodingId::Deg6, EncodingId::Deg4,
                  EncodingId::Quadratic}) {
    auto inst = encode(f, id);
    CompiledPolynomial c(inst.poly);
    for (int t = 0; t < 1000; ++t) {
      auto x = testing::random_point(rng, inst.num_vars(), -1, 2);
      CHECK(c(x) >= -1e-9 * (1 + inst.poly.max_abs_coefficient().convert_to<double>()));
    }
  }
}

TEST_CASE("deg4 and deg6 zeros are isolated lattice points") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    auto f = testing::random_cnf(rng, 5, 6);
    auto res = sat_oracle(f);
    if (!res.satisfiable) continue;
    for (auto id : {EncodingId::Deg6, EncodingId::Deg4}) {
      auto inst = encode(f, id);
      // Complete the witness with zeroing aux values.
      std::uint64_t base = 0;
      for (std::size_t i = 0; i < f.num_vars; ++i)
        if (res.witness[i]) base |= std::uint64_t{1} << i;
      std::optional<std::uint64_t> zero;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << inst.aux_vars) && !zero; ++a)
        if (evaluate_boolean(inst.poly, base | (a << f.num_vars)) == 0) zero = base | (a << f.num_vars);
      REQUIRE(zero);
      for (std::size_t k = 0; k < inst.num_vars(); ++k) {
        std::vector<double> x(inst.num_vars());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*zero >> i) & 1u;
        x[k] += 0.25;
        CHECK(evaluate(inst.poly, x) > 0);
      }
    }
  }
}

TEST_CASE("components sum to the encoding and sidecar") {
  Rng rng(8);
  auto f = testing::random_cnf(rng, 5, 7);
  for (auto id : {EncodingId::Deg14, EncodingId::Deg8, EncodingId::Deg6, EncodingId::Deg4,
                  EncodingId::Quadratic}) {
    auto inst = encode(f, id);
    SparsePolynomial sum(inst.num_vars());
    for (const auto& c : inst.components) sum += c.poly;
    CHECK(sum == inst.poly);
    auto side = sidecar_json(inst);
    CHECK(side["original"] == 5);
    CHECK(side["aux"] == inst.aux_vars);
    CHECK(side["encoding"] == to_string(id));
  }
  CHECK(parse_encoding_id("deg8") == EncodingId::Deg8);
  CHECK_THROWS_AS(parse_encoding_id("deg9"), InputError);
}

TEST_CASE("factorization circuit") {
  auto enc = encode_factorization(15, 3, 3);
  CHECK(enc.poly.degree() == 4);
  int zeros = 0;
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b) {
      auto w = factorization_witness(enc, a, b);
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) mask |= std::uint64_t{1} << i;
      const bool zero = evaluate_boolean(enc.poly, mask) == 0;
      CHECK(zero == (a * b == 15));
      if (zero) {
        ++zeros;
        CHECK(decode_factors(enc, w) == std::pair<std::uint64_t, std::uint64_t>{a, b});
      }
    }
  CHECK(zeros == 2);  // 3*5 and 5*3
  CHECK_THROWS_AS(encode_factorization(64, 3, 3), InputError);
}
