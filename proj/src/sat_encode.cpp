// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/sat_encode.hpp"

#include "npforge/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace npforge {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_ll(std::string_view tok, std::size_t line_no) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw InputError("expected an integer, got '" + std::string(tok) + "'", line_no);
  return v;
}

void check_clause(const Clause& c, std::size_t num_vars, std::size_t line) {
  if (c.empty()) throw InputError("empty clause", line);
  if (c.size() > 3)
    throw InputError("clause width " + std::to_string(c.size()) + " exceeds 3", line);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].var >= num_vars)
      throw InputError("variable " + std::to_string(c[i].var + 1) + " out of range", line);
    for (std::size_t j = 0; j < i; ++j)
      if (c[i].var == c[j].var)
        throw InputError("clause repeats variable " + std::to_string(c[i].var + 1), line);
  }
}

SparsePolynomial linear_sum(const Clause& c, std::size_t n) {
  SparsePolynomial s(n);
  for (const auto& lit : c) s += literal_form(lit, n);
  return s;
}

SparsePolynomial shifted(const SparsePolynomial& p, long long k) {
  return p - SparsePolynomial::constant(Integer(k), p.num_vars());
}

// Squared distance from the point (forms...) to a 0/1 pattern.
SparsePolynomial squared_distance(std::span<const SparsePolynomial> forms,
                                  std::span<const int> pattern, std::size_t n) {
  SparsePolynomial acc(n);
  for (std::size_t i = 0; i < forms.size(); ++i) acc += square(shifted(forms[i], pattern[i]));
  return acc;
}

SparsePolynomial product_over_patterns(std::span<const SparsePolynomial> forms,
                                       const std::vector<std::vector<int>>& patterns,
                                       std::size_t n) {
  SparsePolynomial acc = SparsePolynomial::constant(Integer(1), n);
  for (const auto& pat : patterns) acc = acc * squared_distance(forms, pat, n);
  return acc;
}

SparsePolynomial penalty_one(std::uint32_t v, std::size_t n) {
  auto x = SparsePolynomial::variable(v, n);
  return square(x) * square(SparsePolynomial::constant(Integer(1), n) - x);
}

void require_width3(const CnfFormula& f, const char* name) {
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    if (f.clauses[i].size() != 3)
      throw InputError(std::string(name) + " needs width-3 clauses; clause " + std::to_string(i) +
                       " has width " + std::to_string(f.clauses[i].size()));
}

std::vector<std::uint32_t> clause_vars(const Clause& c) {
  std::vector<std::uint32_t> v;
  for (const auto& lit : c) v.push_back(lit.var);
  return v;
}

EncodedInstance start_instance(const CnfFormula& f, EncodingId id) {
  f.validate();
  EncodedInstance inst;
  inst.original_vars = f.num_vars;
  inst.encoding = id;
  for (std::size_t j = 0; j < f.num_vars; ++j) inst.var_names.push_back("x" + std::to_string(j));
  return inst;
}

void finish_instance(EncodedInstance& inst) {
  const std::size_t n = inst.num_vars();
  SparsePolynomial total(n);
  for (auto& c : inst.components) {
    c.poly = c.poly.widened(n);
    std::sort(c.vars.begin(), c.vars.end());
    c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
    total += c.poly;
  }
  inst.poly = std::move(total);
}

// Clause product (s-1)^2 ... (s-w)^2 on the signed clause sum.
SparsePolynomial sum_product(const Clause& c, std::size_t n) {
  const auto s = linear_sum(c, n);
  SparsePolynomial acc = SparsePolynomial::constant(Integer(1), n);
  for (std::size_t k = 1; k <= c.size(); ++k) acc = acc * square(shifted(s, static_cast<long long>(k)));
  return acc;
}

}  // namespace

void CnfFormula::validate() const {
  if (clauses.empty()) throw InputError("formula has no clauses");
  for (const auto& c : clauses) check_clause(c, num_vars, 0);
}

std::size_t CnfFormula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses) w = std::max(w, c.size());
  return w;
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause current;
  std::size_t current_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0][0] == 'c') continue;
    if (toks[0] == "%") break;  // some benchmark files end this way
    if (toks[0] == "p") {
      if (have_header) throw InputError("duplicate header", line_no);
      if (toks.size() != 4 || toks[1] != "cnf") throw InputError("malformed header", line_no);
      long long n = parse_ll(toks[2], line_no);
      declared_clauses = parse_ll(toks[3], line_no);
      if (n < 0 || declared_clauses < 0) throw InputError("negative header count", line_no);
      f.num_vars = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw InputError("clause before header", line_no);
    for (auto tok : toks) {
      long long v = parse_ll(tok, line_no);
      if (current.empty()) current_line = line_no;
      if (v == 0) {
        check_clause(current, f.num_vars, current_line ? current_line : line_no);
        f.clauses.push_back(std::move(current));
        current.clear();
        current_line = 0;
        continue;
      }
      long long a = v < 0 ? -v : v;
      if (a > static_cast<long long>(f.num_vars))
        throw InputError("variable " + std::to_string(a) + " out of range", line_no);
      current.push_back(Literal{static_cast<std::uint32_t>(a - 1), v < 0});
      if (current.size() > 3)
        throw InputError("clause width exceeds 3", line_no);
    }
    if (pos > text.size()) break;
  }
  if (!have_header) throw InputError("missing 'p cnf' header");
  if (!current.empty()) throw InputError("clause not terminated by 0", current_line);
  if (static_cast<long long>(f.clauses.size()) != declared_clauses)
    throw InputError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  if (f.clauses.empty()) throw InputError("formula has no clauses");
  return f;
}

std::string format_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& lit : c) os << (lit.negated ? "-" : "") << lit.var + 1 << ' ';
    os << "0\n";
  }
  return os.str();
}

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment) {
  if (assignment.size() < f.num_vars) throw DimensionMismatch("assignment too short");
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (const auto& lit : c) ok = ok || ((assignment[lit.var] != 0) != lit.negated);
    if (!ok) return false;
  }
  return true;
}

std::string to_string(EncodingId id) {
  switch (id) {
    case EncodingId::Deg14: return "deg14";
    case EncodingId::Deg8: return "deg8";
    case EncodingId::Deg6: return "deg6";
    case EncodingId::Deg4: return "deg4";
    case EncodingId::Quadratic: return "quadratic";
  }
  return "?";
}

EncodingId parse_encoding_id(std::string_view name) {
  for (auto id : {EncodingId::Deg14, EncodingId::Deg8, EncodingId::Deg6, EncodingId::Deg4,
                  EncodingId::Quadratic})
    if (to_string(id) == name) return id;
  throw InputError("unknown encoding '" + std::string(name) + "'");
}

int expected_degree(EncodingId id) {
  switch (id) {
    case EncodingId::Deg14: return 14;
    case EncodingId::Deg8: return 8;
    case EncodingId::Deg6: return 6;
    case EncodingId::Deg4: return 4;
    case EncodingId::Quadratic: return 2;
  }
  return -1;
}

SparsePolynomial literal_form(const Literal& lit, std::size_t num_vars) {
  auto x = SparsePolynomial::variable(lit.var, num_vars);
  if (!lit.negated) return x;
  return SparsePolynomial::constant(Integer(1), x.num_vars()) - x;
}

SparsePolynomial encode_or2(const Literal& x, const Literal& y, std::size_t num_vars) {
  if (x.var == y.var) throw InputError("encode_or2 needs two distinct variables");
  const std::size_t n = std::max<std::size_t>({num_vars, x.var + 1u, y.var + 1u});
  const std::array<SparsePolynomial, 2> forms{literal_form(x, n), literal_form(y, n)};
  return product_over_patterns(forms, {{0, 1}, {1, 0}, {1, 1}}, n);
}

SparsePolynomial boolean_penalty(std::span<const std::uint32_t> vars, std::size_t num_vars) {
  SparsePolynomial acc(num_vars);
  for (auto v : vars) acc += penalty_one(v, num_vars);
  return acc;
}

EncodedInstance encode_deg14(const CnfFormula& f) {
  auto inst = start_instance(f, EncodingId::Deg14);
  require_width3(f, "deg14");
  const std::size_t n = f.num_vars;
  std::vector<std::vector<int>> patterns;
  for (int m = 1; m < 8; ++m) patterns.push_back({(m >> 2) & 1, (m >> 1) & 1, m & 1});
  for (const auto& c : f.clauses) {
    std::vector<SparsePolynomial> forms;
    for (const auto& lit : c) forms.push_back(literal_form(lit, n));
    inst.components.push_back({product_over_patterns(forms, patterns, n), clause_vars(c)});
  }
  finish_instance(inst);
  return inst;
}

EncodedInstance encode_deg8(const CnfFormula& f) {
  auto inst = start_instance(f, EncodingId::Deg8);
  require_width3(f, "deg8");
  const std::size_t m = f.clauses.size();
  const std::size_t n = f.num_vars + m;
  inst.aux_vars = m;
  for (std::size_t i = 0; i < m; ++i) inst.var_names.push_back("v" + std::to_string(i));
  // (x, y, v) patterns of v == (x or y)
  const std::vector<std::vector<int>> patterns{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = f.clauses[i];
    const Literal v{static_cast<std::uint32_t>(f.num_vars + i), false};
    const std::array<SparsePolynomial, 3> forms{literal_form(c[0], n), literal_form(c[1], n),
                                                literal_form(v, n)};
    auto poly = product_over_patterns(forms, patterns, n) + encode_or2(v, c[2], n);
    auto vars = clause_vars(c);
    vars.push_back(v.var);
    inst.components.push_back({std::move(poly), std::move(vars)});
  }
  finish_instance(inst);
  return inst;
}

EncodedInstance encode_deg6(const CnfFormula& f) {
  auto inst = start_instance(f, EncodingId::Deg6);
  const std::size_t n = f.num_vars;
  for (const auto& c : f.clauses) inst.components.push_back({sum_product(c, n), clause_vars(c)});
  for (std::uint32_t j = 0; j < n; ++j) inst.components.push_back({penalty_one(j, n), {j}});
  finish_instance(inst);
  return inst;
}

EncodedInstance encode_deg4(const CnfFormula& f) {
  auto inst = start_instance(f, EncodingId::Deg4);
  std::vector<std::size_t> wide;
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    if (f.clauses[i].size() == 3) wide.push_back(i);
  inst.aux_vars = wide.size();
  for (auto i : wide) inst.var_names.push_back("v" + std::to_string(i));
  const std::size_t n = f.num_vars + wide.size();
  const auto one = SparsePolynomial::constant(Integer(1), n);

  std::size_t next_aux = 0;
  for (const auto& c : f.clauses) {
    if (c.size() < 3) {
      inst.components.push_back({sum_product(c, n), clause_vars(c)});
      continue;
    }
    const auto v_index = static_cast<std::uint32_t>(f.num_vars + next_aux++);
    const auto v = SparsePolynomial::variable(v_index, n);
    const auto s = literal_form(c[0], n) + literal_form(c[1], n) + v;
    const auto d = literal_form(c[2], n) - v;
    auto poly = square(shifted(s, 1)) * square(shifted(s, 2)) + square(d) * square(d - one) +
                penalty_one(v_index, n);
    auto vars = clause_vars(c);
    vars.push_back(v_index);
    inst.components.push_back({std::move(poly), std::move(vars)});
  }
  for (std::uint32_t j = 0; j < f.num_vars; ++j) inst.components.push_back({penalty_one(j, n), {j}});
  finish_instance(inst);
  return inst;
}

EncodedInstance encode_quadratic(const CnfFormula& f) {
  auto inst = start_instance(f, EncodingId::Quadratic);
  const std::size_t m = f.clauses.size();
  const std::size_t n = f.num_vars + 3 * m;
  inst.aux_vars = 3 * m;
  for (std::size_t i = 0; i < m; ++i)
    for (const char* p : {"u", "v", "w"}) inst.var_names.push_back(p + std::to_string(i));
  const auto one = SparsePolynomial::constant(Integer(1), n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto base = static_cast<std::uint32_t>(f.num_vars + 3 * i);
    const auto u = SparsePolynomial::variable(base, n);
    const auto v = SparsePolynomial::variable(base + 1, n);
    const auto w = SparsePolynomial::variable(base + 2, n);
    const auto s = linear_sum(f.clauses[i], n);
    auto poly = square(s - Integer(3) * u - Integer(2) * v - w) + square(u + v + w - one);
    auto vars = clause_vars(f.clauses[i]);
    vars.insert(vars.end(), {base, base + 1, base + 2});
    inst.components.push_back({std::move(poly), std::move(vars)});
  }
  finish_instance(inst);
  return inst;
}

EncodedInstance encode(const CnfFormula& f, EncodingId id) {
  switch (id) {
    case EncodingId::Deg14: return encode_deg14(f);
    case EncodingId::Deg8: return encode_deg8(f);
    case EncodingId::Deg6: return encode_deg6(f);
    case EncodingId::Deg4: return encode_deg4(f);
    case EncodingId::Quadratic: return encode_quadratic(f);
  }
  throw InputError("unknown encoding");
}

SparsePolynomial encode_gate(GateKind kind, std::span<const std::uint32_t> inputs,
                             std::span<const std::uint32_t> outputs,
                             std::span<const std::uint32_t> carries, std::size_t num_vars) {
  const std::size_t want_carries = kind == GateKind::AdderBit ? 2 : 0;
  if (inputs.size() != 2 || outputs.size() != 1 || carries.size() != want_carries)
    throw InputError("gate arity mismatch");
  std::set<std::uint32_t> seen;
  std::size_t n = num_vars;
  for (auto group : {inputs, outputs, carries})
    for (auto v : group) {
      if (!seen.insert(v).second) throw InputError("gate repeats variable " + std::to_string(v));
      n = std::max<std::size_t>(n, v + 1u);
    }
  const auto x = SparsePolynomial::variable(inputs[0], n);
  const auto y = SparsePolynomial::variable(inputs[1], n);
  const auto z = SparsePolynomial::variable(outputs[0], n);
  const auto one = SparsePolynomial::constant(Integer(1), n);
  switch (kind) {
    case GateKind::And: return square(z - x * y);
    case GateKind::Or: return square(z - one + (one - x) * (one - y));
    case GateKind::Xor: return square(square(x - y) - z);
    case GateKind::AdderBit: {
      const auto cin = SparsePolynomial::variable(carries[0], n);
      const auto cout = SparsePolynomial::variable(carries[1], n);
      return square(x + y + cin - Integer(2) * cout - z);
    }
  }
  throw InputError("unknown gate");
}

namespace {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f) : f_(f), value_(f.num_vars, -1) {}

  bool solve() { return search(); }
  std::vector<std::uint8_t> witness() const {
    std::vector<std::uint8_t> out(value_.size());
    for (std::size_t i = 0; i < value_.size(); ++i) out[i] = value_[i] == 1 ? 1 : 0;
    return out;
  }

 private:
  enum class State { Sat, Conflict, Open };

  int lit_value(const Literal& l) const {
    int v = value_[l.var];
    if (v < 0) return -1;
    return (v == 1) != l.negated ? 1 : 0;
  }

  // Returns Conflict, or Open with the branching literal set, or Sat.
  State propagate(std::vector<std::uint32_t>& trail, Literal& branch) {
    for (;;) {
      bool changed = false;
      bool all_sat = true;
      bool have_branch = false;
      for (const auto& c : f_.clauses) {
        int unassigned = 0;
        Literal last{};
        bool sat = false;
        for (const auto& l : c) {
          int v = lit_value(l);
          if (v == 1) { sat = true; break; }
          if (v < 0) { ++unassigned; last = l; }
        }
        if (sat) continue;
        all_sat = false;
        if (unassigned == 0) return State::Conflict;
        if (unassigned == 1) {
          value_[last.var] = last.negated ? 0 : 1;
          trail.push_back(last.var);
          changed = true;
        } else if (!have_branch) {
          branch = last;
          have_branch = true;
        }
      }
      if (!changed) return all_sat ? State::Sat : State::Open;
    }
  }

  bool search() {
    std::vector<std::uint32_t> trail;
    Literal branch{};
    State st = propagate(trail, branch);
    if (st == State::Sat) return true;
    if (st == State::Open) {
      for (int val : {branch.negated ? 0 : 1, branch.negated ? 1 : 0}) {
        value_[branch.var] = static_cast<std::int8_t>(val);
        if (search()) return true;
      }
      value_[branch.var] = -1;
    }
    for (auto v : trail) value_[v] = -1;
    return false;
  }

  const CnfFormula& f_;
  std::vector<std::int8_t> value_;
};

}  // namespace

SatResult sat_oracle(const CnfFormula& f) {
  if (f.num_vars > kSatOracleMaxVars)
    throw InstanceTooLarge("sat oracle handles at most " + std::to_string(kSatOracleMaxVars) +
                           " variables");
  f.validate();
  Dpll solver(f);
  SatResult r;
  r.satisfiable = solver.solve();
  if (r.satisfiable) r.witness = solver.witness();
  return r;
}

Integer boolean_lattice_minimum(const EncodedInstance& inst) {
  const std::size_t n = inst.original_vars;
  const std::size_t total = inst.num_vars();
  if (n > 30) throw InstanceTooLarge("boolean lattice minimum enumerates at most 30 originals");

  SparsePolynomial sum(total);
  std::vector<int> aux_owner(inst.aux_vars, -1);
  for (std::size_t ci = 0; ci < inst.components.size(); ++ci) {
    const auto& c = inst.components[ci];
    sum += c.poly;
    for (auto v : c.vars) {
      if (v < n) continue;
      auto& owner = aux_owner.at(v - n);
      if (owner >= 0) throw InputError("auxiliary variable shared between components");
      owner = static_cast<int>(ci);
    }
  }
  if (!(sum == inst.poly)) throw InputError("components do not sum to the encoding");

  // Per component: table over its original variables, min over private aux.
  struct Table {
    std::vector<std::uint32_t> orig;
    std::vector<Integer> best;
  };
  std::vector<Table> tables;
  for (const auto& c : inst.components) {
    Table t;
    std::vector<std::uint32_t> aux;
    for (auto v : c.vars) (v < n ? t.orig : aux).push_back(v);
    if (t.orig.size() > 20 || aux.size() > 20)
      throw InstanceTooLarge("component too wide for tabulation");
    // Local indices: originals occupy the low bits, aux the high bits.
    std::vector<std::uint32_t> rename(total, 0);
    for (std::size_t k = 0; k < t.orig.size(); ++k) rename[t.orig[k]] = static_cast<std::uint32_t>(k);
    for (std::size_t k = 0; k < aux.size(); ++k)
      rename[aux[k]] = static_cast<std::uint32_t>(t.orig.size() + k);
    const auto local = substitute_vars(c.poly, rename, t.orig.size() + aux.size());
    t.best.resize(std::size_t{1} << t.orig.size());
    for (std::uint64_t p = 0; p < t.best.size(); ++p) {
      std::optional<Integer> best;
      for (std::uint64_t q = 0; q < (std::uint64_t{1} << aux.size()); ++q) {
        Integer val = evaluate_boolean(local, p | (q << t.orig.size()));
        if (!best || val < *best) best = val;
      }
      t.best[p] = *best;
    }
    tables.push_back(std::move(t));
  }

  std::optional<Integer> best;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    Integer acc = 0;
    for (const auto& t : tables) {
      std::uint64_t idx = 0;
      for (std::size_t k = 0; k < t.orig.size(); ++k)
        if ((x >> t.orig[k]) & 1u) idx |= std::uint64_t{1} << k;
      acc += t.best[idx];
    }
    if (!best || acc < *best) best = acc;
    if (*best == 0) break;
  }
  return *best;
}

Integer boolean_lattice_minimum_direct(const SparsePolynomial& p) {
  const std::size_t n = p.num_vars();
  if (n > 26) throw InstanceTooLarge("direct enumeration limited to 26 variables");
  std::optional<Integer> best;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    Integer v = evaluate_boolean(p, x);
    if (!best || v < *best) best = v;
  }
  return best.value_or(Integer(0));
}

nlohmann::json sidecar_json(const EncodedInstance& inst) {
  return {{"original", inst.original_vars},
          {"aux", inst.aux_vars},
          {"encoding", to_string(inst.encoding)},
          {"var_names", inst.var_names}};
}

FactorizationEncoding encode_factorization(std::uint64_t product, unsigned a_width,
                                           unsigned b_width) {
  if (a_width == 0 || b_width == 0) throw InputError("factor widths must be positive");
  const unsigned w = a_width + b_width;
  if (w > 62) throw InstanceTooLarge("factor widths too large");
  if ((product >> w) != 0) throw InputError("product does not fit in the combined width");

  FactorizationEncoding enc;
  enc.product = product;
  std::uint32_t next = 0;
  for (unsigned i = 0; i < a_width; ++i) enc.a_bits.push_back(next++);
  for (unsigned j = 0; j < b_width; ++j) enc.b_bits.push_back(next++);

  std::vector<std::vector<std::uint32_t>> pp(a_width, std::vector<std::uint32_t>(b_width));
  for (unsigned j = 0; j < b_width; ++j)
    for (unsigned i = 0; i < a_width; ++i) {
      pp[i][j] = next++;
      enc.and_gates.push_back({enc.a_bits[i], enc.b_bits[j], pp[i][j]});
    }

  // Accumulator bits; nullopt stands for the constant 0.
  std::vector<std::optional<std::uint32_t>> acc(w);
  for (unsigned i = 0; i < a_width; ++i) acc[i] = pp[i][0];
  for (unsigned j = 1; j < b_width; ++j) {
    std::optional<std::uint32_t> carry;
    for (unsigned k = j; k < w; ++k) {
      std::optional<std::uint32_t> y;
      if (k - j < a_width) y = pp[k - j][j];
      if (!acc[k] && !y && !carry) continue;
      FactorizationEncoding::AdderGate g{acc[k], y, carry, next, next + 1};
      next += 2;
      enc.adder_gates.push_back(g);
      acc[k] = g.sum;
      carry = g.carry_out;
    }
    // A carry out of the top bit would mean overflow; the final constraint
    // below forces it to zero through the product bits.
    if (carry) acc.push_back(carry);
  }

  const std::size_t n = next;
  SparsePolynomial poly(n);
  for (const auto& g : enc.and_gates) {
    const std::array<std::uint32_t, 2> in{g.x, g.y};
    const std::array<std::uint32_t, 1> out{g.z};
    poly += encode_gate(GateKind::And, in, out, {}, n);
  }
  auto form = [&](const std::optional<std::uint32_t>& v) {
    return v ? SparsePolynomial::variable(*v, n) : SparsePolynomial(n);
  };
  for (const auto& g : enc.adder_gates)
    poly += square(form(g.x) + form(g.y) + form(g.carry_in) -
                   Integer(2) * SparsePolynomial::variable(g.carry_out, n) -
                   SparsePolynomial::variable(g.sum, n));
  for (std::size_t k = 0; k < acc.size(); ++k) {
    const long long bit = k < 64 ? static_cast<long long>((product >> k) & 1u) : 0;
    poly += square(form(acc[k]) - SparsePolynomial::constant(Integer(bit), n));
  }
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
  poly += boolean_penalty(all, n);
  enc.poly = std::move(poly);
  return enc;
}

std::vector<std::uint8_t> factorization_witness(const FactorizationEncoding& enc,
                                                std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint8_t> bits(enc.num_vars(), 0);
  for (std::size_t i = 0; i < enc.a_bits.size(); ++i) bits[enc.a_bits[i]] = (a >> i) & 1u;
  for (std::size_t j = 0; j < enc.b_bits.size(); ++j) bits[enc.b_bits[j]] = (b >> j) & 1u;
  for (const auto& g : enc.and_gates) bits[g.z] = bits[g.x] & bits[g.y];
  auto get = [&](const std::optional<std::uint32_t>& v) { return v ? bits[*v] : 0; };
  for (const auto& g : enc.adder_gates) {
    const int s = get(g.x) + get(g.y) + get(g.carry_in);
    bits[g.sum] = static_cast<std::uint8_t>(s & 1);
    bits[g.carry_out] = static_cast<std::uint8_t>(s >> 1);
  }
  return bits;
}

std::pair<std::uint64_t, std::uint64_t> decode_factors(const FactorizationEncoding& enc,
                                                       std::span<const std::uint8_t> bits) {
  if (bits.size() < enc.num_vars()) throw DimensionMismatch("wire assignment too short");
  std::uint64_t a = 0, b = 0;
  for (std::size_t i = 0; i < enc.a_bits.size(); ++i)
    if (bits[enc.a_bits[i]]) a |= std::uint64_t{1} << i;
  for (std::size_t j = 0; j < enc.b_bits.size(); ++j)
    if (bits[enc.b_bits[j]]) b |= std::uint64_t{1} << j;
  return {a, b};
}

}  // namespace npforge
