// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npforge/integer.hpp"
#include "npforge/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace npforge {

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

/// CNF instance with 1..3 literals per clause, no clause repeating a variable.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws InputError when an invariant is violated.
  void validate() const;
  std::size_t max_width() const;
};

/// Reads DIMACS CNF ("p cnf n m", 0-terminated clauses, 'c' comments).
/// Clauses wider than three literals, repeated variables inside a clause,
/// empty clauses and out-of-range variables are rejected with the line number.
CnfFormula parse_dimacs(std::string_view text);
std::string format_dimacs(const CnfFormula& f);

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment);

enum class EncodingId { Deg14, Deg8, Deg6, Deg4, Quadratic };

std::string to_string(EncodingId id);
/// Accepts "deg14", "deg8", "deg6", "deg4", "quadratic".
EncodingId parse_encoding_id(std::string_view name);
/// Exact total degree each encoding produces on width-3 input.
int expected_degree(EncodingId id);

/// A summand of an encoding together with the variables it touches.
/// Auxiliary variables appear in exactly one component.
struct EncodingComponent {
  SparsePolynomial poly;
  std::vector<std::uint32_t> vars;
};

struct EncodedInstance {
  SparsePolynomial poly;
  std::size_t original_vars = 0;
  std::size_t aux_vars = 0;
  std::vector<std::string> var_names;
  EncodingId encoding = EncodingId::Deg6;
  /// poly == sum of component polys (checked by boolean_lattice_minimum).
  std::vector<EncodingComponent> components;

  std::size_t num_vars() const { return original_vars + aux_vars; }
};

/// x for a positive literal, 1 - x for a negated one.
SparsePolynomial literal_form(const Literal& lit, std::size_t num_vars);

/// Product of squared distances to the patterns 01, 10, 11: degree 6, zero on
/// a boolean point iff x or y holds.
SparsePolynomial encode_or2(const Literal& x, const Literal& y, std::size_t num_vars);

/// Sum of x_j^2 (1 - x_j)^2 over `vars`.
SparsePolynomial boolean_penalty(std::span<const std::uint32_t> vars, std::size_t num_vars);

/// Sum over clauses of the product of squared distances to the seven
/// satisfying patterns. Width-3 clauses only.
EncodedInstance encode_deg14(const CnfFormula& f);
/// One auxiliary v per clause standing for (x or y), paired with (v or z).
EncodedInstance encode_deg8(const CnfFormula& f);
/// (s-1)^2 (s-2)^2 (s-3)^2 per clause on the clause sum s, plus boolean
/// penalties. Narrower clauses use the factors (s-1)^2 ... (s-w)^2.
EncodedInstance encode_deg6(const CnfFormula& f);
/// (x+y+v-1)^2 (x+y+v-2)^2 + (z-v)^2 (z-v-1)^2 per width-3 clause plus
/// penalties on all variables; narrower clauses keep the plain product form.
EncodedInstance encode_deg4(const CnfFormula& f);
/// (x+y+z-3u-2v-w)^2 + (u+v+w-1)^2 per clause, degree 2, no penalty terms.
EncodedInstance encode_quadratic(const CnfFormula& f);

EncodedInstance encode(const CnfFormula& f, EncodingId id);

enum class GateKind { And, Or, Xor, AdderBit };

/// Gate constraint polynomials over boolean variables:
///   And:      inputs {x, y}, outputs {z}        -> (z - xy)^2
///   Or:       inputs {x, y}, outputs {z}        -> (z - 1 + (1-x)(1-y))^2
///   Xor:      inputs {x, y}, outputs {z}        -> ((x - y)^2 - z)^2
///   AdderBit: inputs {x, y}, outputs {z}, carries {c_in, c_out}
///                                               -> (x + y + c_in - 2 c_out - z)^2
/// Throws InputError on arity mismatch or repeated variables.
SparsePolynomial encode_gate(GateKind kind, std::span<const std::uint32_t> inputs,
                             std::span<const std::uint32_t> outputs,
                             std::span<const std::uint32_t> carries, std::size_t num_vars);

struct SatResult {
  bool satisfiable = false;
  std::vector<std::uint8_t> witness;  // empty when unsatisfiable
};

inline constexpr std::size_t kSatOracleMaxVars = 64;

/// DPLL with unit propagation. Throws InstanceTooLarge above kSatOracleMaxVars.
SatResult sat_oracle(const CnfFormula& f);

/// Exact minimum of inst.poly over {0,1}^N. Enumerates the original variables
/// and, per component, minimises over that component's private auxiliary
/// variables. Throws if the components do not sum to poly.
Integer boolean_lattice_minimum(const EncodedInstance& inst);

/// Same minimum by direct enumeration of all 2^N points (N <= 26).
Integer boolean_lattice_minimum_direct(const SparsePolynomial& p);

/// {"original": n, "aux": k, "encoding": id}
nlohmann::json sidecar_json(const EncodedInstance& inst);

/// Multiplier circuit a * b = product, built from And and AdderBit gates plus
/// boolean penalties on every wire (degree 4). Its boolean zeros are exactly
/// the circuit-consistent assignments with a * b == product.
struct FactorizationEncoding {
  struct AndGate {
    std::uint32_t x, y, z;
  };
  struct AdderGate {
    std::optional<std::uint32_t> x, y, carry_in;
    std::uint32_t sum, carry_out;
  };

  SparsePolynomial poly;
  std::uint64_t product = 0;
  std::vector<std::uint32_t> a_bits;  // least significant first
  std::vector<std::uint32_t> b_bits;
  std::vector<AndGate> and_gates;     // in evaluation order
  std::vector<AdderGate> adder_gates;
  std::size_t num_vars() const { return poly.num_vars(); }
};

FactorizationEncoding encode_factorization(std::uint64_t product, unsigned a_width,
                                           unsigned b_width);

/// Full wire assignment obtained by simulating the circuit on inputs a, b.
std::vector<std::uint8_t> factorization_witness(const FactorizationEncoding& enc,
                                                std::uint64_t a, std::uint64_t b);

/// Reads the factors back from a (rounded) wire assignment.
std::pair<std::uint64_t, std::uint64_t> decode_factors(const FactorizationEncoding& enc,
                                                       std::span<const std::uint8_t> bits);

}  // namespace npforge
