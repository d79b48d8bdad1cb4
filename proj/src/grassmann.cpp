// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/grassmann.hpp"

#include "npforge/errors.hpp"
#include "npforge/polynomial.hpp"

#include <bit>

namespace npforge {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("Grassmann coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("Grassmann coefficient overflow");
  return r;
}

void require_size(const Graph& g, std::size_t max, const char* what) {
  if (g.size() < 3) throw InputError(std::string(what) + " needs at least 3 vertices");
  if (g.size() > max)
    throw InstanceTooLarge(std::string(what) + " limited to " + std::to_string(max) + " vertices");
}

// Coefficient of the full monomial in Tr((A D)^n) for D = diag(theta_{masks[v]}),
// masks pairwise disjoint and nonzero. Walks are tracked by their visited
// vertex set, which fixes the accumulated monomial; only the sign varies.
std::int64_t monomial_diag_trace(const Graph& g, const std::vector<std::uint64_t>& masks) {
  const std::size_t n = g.size();
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::uint64_t> gmask(states, 0);
  for (std::size_t vis = 1; vis < states; ++vis) {
    const auto low = static_cast<std::size_t>(std::countr_zero(vis));
    gmask[vis] = gmask[vis & (vis - 1)] | masks[low];
  }
  std::vector<std::uint64_t> nbr(n);
  for (std::size_t v = 0; v < n; ++v) nbr[v] = g.neighbor_mask(v);

  std::int64_t trace = 0;
  std::vector<std::int64_t> dp(states * n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dp.begin(), dp.end(), 0);
    dp[s] = 1;  // visited = {}, at s
    for (std::size_t vis = 0; vis < states; ++vis) {
      for (std::size_t cur = 0; cur < n; ++cur) {
        const std::int64_t val = dp[vis * n + cur];
        if (val == 0) continue;
        // Vertices already on the walk would repeat a generator: theta^2 = 0.
        std::uint64_t next = nbr[cur] & ~static_cast<std::uint64_t>(vis);
        while (next) {
          const auto v = static_cast<std::size_t>(std::countr_zero(next));
          next &= next - 1;
          const std::size_t to = vis | (std::size_t{1} << v);
          const std::int64_t term = merge_sign(gmask[vis], masks[v]) > 0 ? val : -val;
          dp[to * n + v] = checked_add(dp[to * n + v], term);
        }
      }
    }
    trace = checked_add(trace, dp[(states - 1) * n + s]);
  }
  return trace;
}

}  // namespace

GrassmannElement GrassmannElement::scalar(std::int64_t c) { return monomial(0, c); }

GrassmannElement GrassmannElement::generator(unsigned i) {
  if (i >= 64) throw InputError("at most 64 Grassmann generators");
  return monomial(std::uint64_t{1} << i, 1);
}

GrassmannElement GrassmannElement::monomial(std::uint64_t mask, std::int64_t c) {
  GrassmannElement e;
  e.add_term(mask, c);
  return e;
}

std::int64_t GrassmannElement::coefficient(std::uint64_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0 : it->second;
}

void GrassmannElement::add_term(std::uint64_t mask, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
  GrassmannElement r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, checked_mul(c, -1));
  return r;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) { return gmul(a, b); }

int merge_sign(std::uint64_t a, std::uint64_t b) {
  unsigned inversions = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    inversions += static_cast<unsigned>(std::popcount(j == 63 ? 0 : a >> (j + 1)));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

GrassmannElement gmul(const GrassmannElement& a, const GrassmannElement& b) {
  GrassmannElement r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      r.add_term(ma | mb, checked_mul(checked_mul(ca, cb), merge_sign(ma, mb)));
    }
  return r;
}

std::vector<GrassmannElement> paired_diag(std::size_t n) {
  if (2 * n > 64) throw InstanceTooLarge("paired diagonal limited to 32 vertices");
  std::vector<GrassmannElement> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(GrassmannElement::monomial(std::uint64_t{3} << (2 * i)));
  return d;
}

std::int64_t hamilton_trace(const Graph& g) {
  require_size(g, kHamiltonMax, "hamilton_trace");
  std::vector<std::uint64_t> masks(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) masks[i] = std::uint64_t{3} << (2 * i);
  return monomial_diag_trace(g, masks);
}

std::int64_t single_diag_trace(const Graph& g) {
  require_size(g, kHamiltonMax, "single_diag_trace");
  std::vector<std::uint64_t> masks(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) masks[i] = std::uint64_t{1} << i;
  return monomial_diag_trace(g, masks);
}

std::int64_t symbolic_trace(const Graph& g, const std::vector<GrassmannElement>& diag) {
  const std::size_t n = g.size();
  if (n > 7) throw InstanceTooLarge("symbolic trace limited to 7 vertices");
  if (diag.size() != n) throw DimensionMismatch("diagonal length differs from vertex count");
  using Mat = std::vector<std::vector<GrassmannElement>>;
  Mat m(n, std::vector<GrassmannElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacent(i, j)) m[i][j] = diag[j];
  Mat p = m;
  for (std::size_t step = 1; step < n; ++step) {
    Mat next(n, std::vector<GrassmannElement>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (p[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!m[k][j].is_zero()) next[i][j] += p[i][k] * m[k][j];
      }
    p = std::move(next);
  }
  std::uint64_t full = 0;
  for (const auto& d : diag)
    for (const auto& [mask, c] : d.terms()) full |= mask;
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) t = checked_add(t, p[i][i].coefficient(full));
  return t;
}

Integer derivative_trace(const Graph& g) {
  const std::size_t n = g.size();
  if (n > 14) throw InstanceTooLarge("derivative_trace limited to 14 vertices");
  if (n < 3) throw InputError("derivative_trace needs at least 3 vertices");
  Integer total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<SparsePolynomial> row(n, SparsePolynomial(n));
    row[s] = SparsePolynomial::constant(Integer(1), n);
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<SparsePolynomial> next(n, SparsePolynomial(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (row[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!g.adjacent(i, j)) continue;
          const auto xj = static_cast<std::uint32_t>(j);
          // Multiply by x_j; squares never survive the final derivative at 0.
          for (const auto& [mono, c] : row[i].terms())
            if (mono.exponent(xj) == 0) next[j].add_term(mono * Monomial::variable(xj), c);
        }
      }
      row = std::move(next);
    }
    SparsePolynomial p = row[s];
    for (std::uint32_t v = 0; v < n; ++v) p = derivative(p, v);
    total += p.coefficient(Monomial());
  }
  return total;
}

namespace {

struct CycleSearch {
  std::vector<std::uint64_t> nbr;
  std::size_t n = 0;
  std::uint64_t count = 0;
  bool stop_at_first = false;
  std::vector<std::size_t> path, found;

  void dfs(std::size_t cur, std::uint64_t vis) {
    if (stop_at_first && !found.empty()) return;
    if (path.size() == n) {
      if (nbr[cur] & 1u) {
        ++count;
        if (found.empty()) found = path;
      }
      return;
    }
    std::uint64_t next = nbr[cur] & ~vis;
    while (next) {
      const auto v = static_cast<std::size_t>(std::countr_zero(next));
      next &= next - 1;
      path.push_back(v);
      dfs(v, vis | (std::uint64_t{1} << v));
      path.pop_back();
    }
  }
};

CycleSearch run_search(const Graph& g, bool first_only) {
  CycleSearch cs;
  cs.n = g.size();
  for (std::size_t v = 0; v < cs.n; ++v) cs.nbr.push_back(g.neighbor_mask(v));
  cs.stop_at_first = first_only;
  cs.path = {0};
  cs.dfs(0, 1);
  return cs;
}

}  // namespace

std::uint64_t hamilton_oracle(const Graph& g) {
  require_size(g, kHamiltonMax, "hamilton_oracle");
  return run_search(g, false).count;
}

std::vector<std::size_t> hamilton_cycle(const Graph& g) {
  require_size(g, kHamiltonMax, "hamilton_cycle");
  return run_search(g, true).found;
}

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::vector<std::int64_t>> SparseIntMatrix::dense() const {
  std::vector<std::vector<std::int64_t>> d(size, std::vector<std::int64_t>(size, 0));
  for (const auto& [rc, v] : entries) d[rc.first][rc.second] = v;
  return d;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.size != b.size) throw DimensionMismatch("matrix sizes differ");
  // Index b by row for the inner product.
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> brows(b.size);
  for (const auto& [rc, v] : b.entries) brows[rc.first].push_back({rc.second, v});
  SparseIntMatrix r{a.size, {}};
  for (const auto& [rc, v] : a.entries)
    for (const auto& [col, w] : brows[rc.second]) {
      auto& slot = r.entries[{rc.first, col}];
      slot = checked_add(slot, checked_mul(v, w));
    }
  std::erase_if(r.entries, [](const auto& e) { return e.second == 0; });
  return r;
}

SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.size != b.size) throw DimensionMismatch("matrix sizes differ");
  SparseIntMatrix r = a;
  for (const auto& [rc, v] : b.entries) r.entries[rc] = checked_add(r.entries[rc], v);
  std::erase_if(r.entries, [](const auto& e) { return e.second == 0; });
  return r;
}

GrassmannMatrixRep matrix_rep(std::size_t k, RepConvention conv) {
  if (k == 0) throw InputError("matrix_rep needs k >= 1");
  if (k > kMatrixRepMax)
    throw InstanceTooLarge("matrix_rep limited to k = " + std::to_string(kMatrixRepMax));
  GrassmannMatrixRep rep;
  rep.k = k;
  rep.convention = conv;
  const std::size_t dim = std::size_t{1} << k;
  for (std::size_t i = 0; i < k; ++i) {
    SparseIntMatrix m{dim, {}};
    // Factor f of the tensor product is bit (k-1-f) of the basis index.
    const std::size_t bit = conv == RepConvention::JordanWigner ? k - 1 - i : i;
    for (std::size_t col = 0; col < dim; ++col) {
      if ((col >> bit) & 1u) continue;
      // Z factors sit on the bits above (JW) or below (mirrored) the L factor.
      const std::size_t z_bits =
          conv == RepConvention::JordanWigner ? col >> (bit + 1) : col & ((std::size_t{1} << bit) - 1);
      const std::int64_t sign = std::popcount(z_bits) % 2 == 0 ? 1 : -1;
      m.entries[{col | (std::size_t{1} << bit), col}] = sign;
    }
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

nlohmann::json hamilton_report(const Graph& g) {
  const auto trace = hamilton_trace(g);
  const auto directed = hamilton_oracle(g);
  return {{"n", g.size()},
          {"trace", trace},
          {"directed_cycles", directed},
          {"has_hamilton", trace != 0}};
}

}  // namespace npforge
