// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/misc_encodings.hpp"

#include "npforge/errors.hpp"
#include "npforge/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>

namespace npforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) { return x - std::floor(x); }

void check_factor_args(std::uint64_t n, double x) {
  if (n == 0) throw InputError("factorization objective needs n > 0");
  if (!(x > 0) || !std::isfinite(x)) throw InputError("factorization objective needs x > 0");
}

void check_selection(const Graph& g, std::span<const std::uint8_t> v, std::size_t k) {
  if (v.size() != g.size())
    throw InputError("selection has " + std::to_string(v.size()) + " entries, graph has " +
                     std::to_string(g.size()) + " vertices");
  std::size_t w = 0;
  for (auto b : v) {
    if (b > 1) throw InputError("selection entries must be 0 or 1");
    w += b;
  }
  if (w != k)
    throw InputError("selection weight " + std::to_string(w) + " differs from k = " +
                     std::to_string(k));
}

}  // namespace

double factorization_objective(std::uint64_t n, double x) {
  check_factor_args(n, x);
  const double q = static_cast<double>(n) / x;
  return std::cos(kTwoPi * frac(x)) + std::cos(kTwoPi * frac(q));
}

double factorization_derivative(std::uint64_t n, double x) {
  check_factor_args(n, x);
  const double nd = static_cast<double>(n);
  const double q = nd / x;
  return -kTwoPi * std::sin(kTwoPi * frac(x)) + kTwoPi * nd / (x * x) * std::sin(kTwoPi * frac(q));
}

std::string to_string(SigmoidKind k) { return k == SigmoidKind::Logistic ? "logistic" : "arctan"; }

SigmoidKind parse_sigmoid_kind(const std::string& s) {
  if (s == "logistic") return SigmoidKind::Logistic;
  if (s == "arctan") return SigmoidKind::Arctan;
  throw InputError("unknown sigmoid kind '" + s + "' (expected logistic or arctan)");
}

double sigmoid(SigmoidKind k, double z) {
  if (k == SigmoidKind::Logistic) {
    // Split by sign so exp never overflows.
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
  }
  return std::atan(z) / std::numbers::pi + 0.5;
}

double sigmoid_derivative(SigmoidKind k, double z) {
  if (k == SigmoidKind::Logistic) {
    const double s = sigmoid(k, z);
    return s * (1.0 - s);
  }
  return 1.0 / (std::numbers::pi * (1.0 + z * z));
}

Objective sigmoid_substitute(const SparsePolynomial& p, SigmoidKind kind) {
  Objective base = polynomial_objective(p);
  const std::size_t n = base.dim;
  Objective obj;
  obj.dim = n;
  obj.value = [base, kind, n](std::span<const double> z) {
    if (z.size() != n) throw DimensionMismatch("sigmoid objective dimension mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = sigmoid(kind, z[i]);
    return base.value(x);
  };
  obj.gradient = [base, kind, n](std::span<const double> z, std::span<double> g) {
    if (z.size() != n || g.size() != n)
      throw DimensionMismatch("sigmoid objective dimension mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = sigmoid(kind, z[i]);
    base.gradient(x, g);
    for (std::size_t i = 0; i < n; ++i) g[i] *= sigmoid_derivative(kind, z[i]);
  };
  return obj;
}

std::int64_t clique_objective(const Graph& g, std::span<const std::uint8_t> v, std::size_t k) {
  check_selection(g, v, k);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!v[i]) continue;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (v[j] && g.adjacent(i, j)) ++s;
  }
  return s;
}

bool is_clique(const Graph& g, std::uint64_t mask) {
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    const std::uint64_t others = mask & ~(std::uint64_t{1} << i);
    if ((g.neighbor_mask(i) & others) != others) return false;
  }
  return true;
}

CliqueSearch clique_objective_max(const Graph& g, std::size_t k) {
  const std::size_t n = g.size();
  if (n > kCliqueBruteMax)
    throw InstanceTooLarge("clique brute force supports at most " +
                           std::to_string(kCliqueBruteMax) + " vertices");
  if (k > n) throw InputError("k exceeds the number of vertices");
  std::vector<std::uint64_t> nbr(n);
  for (std::size_t i = 0; i < n; ++i) nbr[i] = g.neighbor_mask(i);

  CliqueSearch out;
  out.best = -1;
  auto score = [&](std::uint64_t mask) {
    std::int64_t s = 0;
    for (std::uint64_t m = mask; m; m &= m - 1)
      s += std::popcount(nbr[static_cast<std::size_t>(std::countr_zero(m))] & mask);
    return s;
  };
  auto visit = [&](std::uint64_t mask) {
    const auto s = score(mask);
    if (s > out.best) {
      out.best = s;
      out.argmax.clear();
    }
    if (s == out.best) out.argmax.push_back(mask);
  };
  if (k == 0) {
    visit(0);
    return out;
  }
  // Gosper's hack walks the weight-k masks in increasing order.
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = (std::uint64_t{1} << k) - 1; mask < limit;) {
    visit(mask);
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

bool vertex_cover_feasible(const Graph& g, std::span<const std::uint8_t> v, std::size_t k) {
  check_selection(g, v, k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    int row = v[i];
    for (std::size_t j = 0; j < g.size() && row == 0; ++j)
      if (g.adjacent(i, j)) row += v[j];
    if (row < 1) return false;
  }
  return true;
}

bool vertex_cover_incidence_feasible(const Graph& g, std::span<const std::uint8_t> v,
                                     std::size_t k) {
  check_selection(g, v, k);
  for (const auto& [a, b] : g.edges())
    if (v[a] + v[b] < 1) return false;
  return true;
}

bool is_vertex_cover(const Graph& g, std::span<const std::uint8_t> v) {
  if (v.size() != g.size()) throw InputError("selection size differs from vertex count");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g.adjacent(i, j) && !v[i] && !v[j]) return false;
  return true;
}

bool is_dominating_set(const Graph& g, std::span<const std::uint8_t> v) {
  if (v.size() != g.size()) throw InputError("selection size differs from vertex count");
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool hit = v[i] != 0;
    for (std::size_t j = 0; j < g.size() && !hit; ++j) hit = g.adjacent(i, j) && v[j];
    if (!hit) return false;
  }
  return true;
}

double coloring_objective(const Graph& g, std::span<const double> angles) {
  if (angles.size() != g.size()) throw DimensionMismatch("one angle per vertex expected");
  double s = 0;
  for (const auto& [i, j] : g.edges()) {
    const double t = std::cos(angles[i] - angles[j]) + 0.5;
    s += t * t;
  }
  return s;
}

Objective coloring_function(const Graph& g) {
  auto edges = std::make_shared<const std::vector<Graph::Edge>>(g.edges());
  const std::size_t n = g.size();
  Objective obj;
  obj.dim = n;
  obj.value = [g](std::span<const double> a) { return coloring_objective(g, a); };
  obj.gradient = [edges, n](std::span<const double> a, std::span<double> grad) {
    if (a.size() != n || grad.size() != n) throw DimensionMismatch("one angle per vertex expected");
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& [i, j] : *edges) {
      const double d = a[i] - a[j];
      const double w = -2.0 * (std::cos(d) + 0.5) * std::sin(d);
      grad[i] += w;
      grad[j] -= w;
    }
  };
  return obj;
}

std::vector<std::uint8_t> round_coloring(const Graph& g, std::span<const double> angles) {
  const std::size_t n = g.size();
  if (angles.size() != n) throw DimensionMismatch("one angle per vertex expected");
  std::vector<double> base(n, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    std::vector<std::size_t> stack{r};
    seen[r] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      base[u] = angles[r];
      for (std::size_t w = 0; w < n; ++w)
        if (!seen[w] && g.adjacent(u, w)) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  std::vector<std::uint8_t> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rel = frac((angles[i] - base[i]) / kTwoPi) * 3.0;
    colors[i] = static_cast<std::uint8_t>(static_cast<long>(std::lround(rel)) % 3);
  }
  return colors;
}

bool is_proper_coloring(const Graph& g, std::span<const std::uint8_t> colors) {
  if (colors.size() != g.size()) throw InputError("one colour per vertex expected");
  for (const auto& [i, j] : g.edges())
    if (colors[i] == colors[j]) return false;
  return true;
}

namespace {

// Per-variable state during the expansion: 0 unused, 1 positive, 2 negated.
struct MonomialCounter {
  const CnfFormula& f;
  std::vector<std::uint8_t> state;
  std::vector<std::uint64_t> by_support;  // choices using k distinct variables

  explicit MonomialCounter(const CnfFormula& formula)
      : f(formula), state(formula.num_vars, 0), by_support(formula.num_vars + 1, 0) {}

  void descend(std::size_t ci, std::size_t used) {
    if (ci == f.clauses.size()) {
      ++by_support[used];
      return;
    }
    for (const auto& lit : f.clauses[ci]) {
      const std::uint8_t want = lit.negated ? 2 : 1;
      auto& s = state[lit.var];
      if (s == 0) {
        s = want;
        descend(ci + 1, used + 1);
        s = 0;
      } else if (s == want) {
        descend(ci + 1, used);
      }
      // complementary literal: the monomial vanishes.
    }
  }
};

Integer combine(const std::vector<std::uint64_t>& by_support, std::size_t n) {
  Integer total = 0;
  for (std::size_t k = 0; k < by_support.size(); ++k)
    if (by_support[k]) total += Integer(by_support[k]) << static_cast<unsigned>(n - k);
  return total;
}

}  // namespace

Integer sat_monomial_count(const CnfFormula& f, unsigned threads) {
  f.validate();
  if (f.clauses.size() > kMonomialCountMaxClauses)
    throw InstanceTooLarge("monomial count supports at most " +
                           std::to_string(kMonomialCountMaxClauses) + " clauses, got " +
                           std::to_string(f.clauses.size()));
  const std::size_t n = f.num_vars;
  const auto& first = f.clauses.front();
  // One task per literal of the first clause.
  std::vector<std::vector<std::uint64_t>> parts(first.size());
  parallel_for(first.size(), threads == 0 ? default_thread_count() : threads,
               [&](std::size_t b) {
                 MonomialCounter c(f);
                 c.state[first[b].var] = first[b].negated ? 2 : 1;
                 c.descend(1, 1);
                 parts[b] = std::move(c.by_support);
               });
  std::vector<std::uint64_t> sum(n + 1, 0);
  for (const auto& p : parts)
    for (std::size_t k = 0; k <= n; ++k) sum[k] += p[k];
  return combine(sum, n);
}

Integer sat_product_sum_direct(const CnfFormula& f) {
  f.validate();
  const std::size_t n = f.num_vars;
  if (n > 30) throw InstanceTooLarge("direct product sum supports at most 30 variables");
  const bool small = f.clauses.size() <= 39;  // 3^39 < 2^64
  Integer total = 0;
  std::uint64_t acc = 0;  // flushed into total before it can wrap
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::uint64_t prod = 1;
    Integer big = 1;
    for (const auto& cl : f.clauses) {
      unsigned s = 0;
      for (const auto& lit : cl) s += (((v >> lit.var) & 1) != 0) != lit.negated;
      if (small)
        prod *= s;
      else
        big *= s;
      if (s == 0) break;
    }
    if (!small) {
      total += big;
      continue;
    }
    if (acc > UINT64_MAX - prod) {
      total += acc;
      acc = 0;
    }
    acc += prod;
  }
  return total + acc;
}

}  // namespace npforge
