// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/geometry_reduce.hpp"

#include "npforge/errors.hpp"

#include <algorithm>
#include <limits>

namespace npforge {

namespace {

using RatMatrix = std::vector<RatVector>;

Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

Rational dot(const RatVector& a, const RatVector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

// Reduced row echelon solve; free variables set to zero.
std::optional<RatVector> solve_rat(RatMatrix M, RatVector rhs, std::size_t n) {
  const std::size_t rows = M.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = 1 / M[r][c];
    for (std::size_t k = c; k < n; ++k) M[r][k] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      const Rational f = M[i][c];
      for (std::size_t k = c; k < n; ++k)
        if (M[r][k] != 0) M[i][k] -= f * M[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

Sphere sphere_for_hyperplane(const IntVector& w, const Integer& t, std::size_t n) {
  // Boolean x on |x - c|^2 = r^2 satisfy sum (1 - 2 c_i) x_i = r^2 - |c|^2;
  // c = c' - (lambda / 2) w turns that into lambda (w x - t) = 0.
  const RatVector half(n, Rational(1, 2));
  Rational ww = 0;
  for (const auto& v : w) ww += Rational(v * v);
  if (ww == 0) {
    // Trivial row 0 = t; the plane is empty (t != 0) or everything.
    return t == 0 ? Sphere{half, Rational(static_cast<long long>(n), 4)}
                  : Sphere{half, Rational(-1)};
  }
  Rational wc = 0;
  for (std::size_t i = 0; i < n; ++i) wc += Rational(w[i]) / 2;
  Rational lambda = 2 * (wc - Rational(t)) / ww;
  if (lambda == 0) lambda = Rational(2) / ww;  // c' on the hyperplane
  Sphere s;
  s.center.resize(n);
  Rational cc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s.center[i] = half[i] - lambda * Rational(w[i]) / 2;
    cc += s.center[i] * s.center[i];
  }
  s.radius_sq = lambda * Rational(t) + cc;
  return s;
}

// Enumerates {0,1}^n in Gray order tracking the residual A x - b.
template <class T>
void gray_scan(const std::vector<std::vector<T>>& cols, std::vector<T> residual, std::size_t n,
               std::size_t limit, std::vector<std::uint64_t>& out) {
  std::size_t nonzero = 0;
  for (const auto& r : residual) nonzero += r != 0;
  std::uint64_t x = 0;
  if (nonzero == 0) out.push_back(0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total && out.size() < limit; ++step) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(step));
    const bool on = ((x >> bit) & 1u) == 0;
    x ^= std::uint64_t{1} << bit;
    const auto& col = cols[bit];
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (col[i] == 0) continue;
      const bool was = residual[i] != 0;
      if (on) residual[i] += col[i];
      else residual[i] -= col[i];
      const bool is = residual[i] != 0;
      nonzero += static_cast<std::size_t>(is) - static_cast<std::size_t>(was);
    }
    if (nonzero == 0) out.push_back(x);
  }
}

std::vector<std::uint64_t> linear_points(const IntMatrix& A, const IntVector& b, std::size_t n,
                                         std::size_t limit) {
  if (n > kHypercubeOracleMax)
    throw InstanceTooLarge("hypercube enumeration limited to " +
                           std::to_string(kHypercubeOracleMax) + " variables");
  const std::size_t d = A.size();
  Integer bound = 0;
  for (std::size_t i = 0; i < d; ++i) {
    Integer row = abs_int(b[i]);
    for (const auto& v : A[i]) row += abs_int(v);
    bound = std::max(bound, row);
  }
  std::vector<std::uint64_t> out;
  if (bound < (Integer(1) << 62)) {
    std::vector<std::vector<std::int64_t>> cols(n, std::vector<std::int64_t>(d));
    std::vector<std::int64_t> res(d);
    for (std::size_t i = 0; i < d; ++i) {
      res[i] = -to_int64(b[i]);
      for (std::size_t j = 0; j < n; ++j) cols[j][i] = to_int64(A[i][j]);
    }
    gray_scan(cols, std::move(res), n, limit, out);
  } else {
    std::vector<std::vector<Integer>> cols(n, std::vector<Integer>(d));
    std::vector<Integer> res(d);
    for (std::size_t i = 0; i < d; ++i) {
      res[i] = -b[i];
      for (std::size_t j = 0; j < n; ++j) cols[j][i] = A[i][j];
    }
    gray_scan(cols, std::move(res), n, limit, out);
  }
  return out;
}

Integer pow_int(const Integer& base, std::size_t e) {
  Integer r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::string dec(const Integer& v) { return to_decimal(v); }

IntVector int_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers");
  IntVector out;
  for (const auto& e : j) {
    if (e.is_string()) out.push_back(parse_integer(e.get<std::string>()));
    else if (e.is_number_integer()) out.push_back(Integer(e.get<long long>()));
    else throw InputError("expected integer entry");
  }
  return out;
}

}  // namespace

QuadraticForm to_quadratic_form(const SparsePolynomial& p) {
  if (p.degree() > 2)
    throw UnsupportedDegree("quadratic form needs degree <= 2, got " + std::to_string(p.degree()));
  QuadraticForm q;
  q.n = p.num_vars();
  q.A.assign(q.n, IntVector(q.n, Integer(0)));
  q.b.assign(q.n, Integer(0));
  for (const auto& [m, c] : p.terms()) {
    const auto fs = m.factors();
    if (fs.empty()) {
      q.a0 = c;
    } else if (m.degree() == 1) {
      q.b[fs[0].var] = -c;
    } else if (fs.size() == 1) {
      q.A[fs[0].var][fs[0].var] = 2 * c;
    } else {
      q.A[fs[0].var][fs[1].var] = c;
      q.A[fs[1].var][fs[0].var] = c;
    }
  }
  return q;
}

SparsePolynomial to_polynomial(const QuadraticForm& q) {
  SparsePolynomial p(q.n);
  for (std::uint32_t i = 0; i < q.n; ++i) {
    if (q.A[i][i] != 0) {
      if (q.A[i][i] % 2 != 0) throw InputError("odd diagonal entry has no integer polynomial");
      p.add_term(Monomial::variable(i, 2), q.A[i][i] / 2);
    }
    for (std::uint32_t j = i + 1; j < q.n; ++j) {
      if (q.A[i][j] != q.A[j][i]) throw InputError("matrix is not symmetric");
      if (q.A[i][j] != 0) p.add_term(Monomial({{i, 1}, {j, 1}}), q.A[i][j]);
    }
    if (q.b[i] != 0) p.add_term(Monomial::variable(i), -q.b[i]);
  }
  if (q.a0 != 0) p.add_term(Monomial(), q.a0);
  return p;
}

bool is_positive_semidefinite(const IntMatrix& A) {
  const std::size_t n = A.size();
  RatMatrix M(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw DimensionMismatch("matrix is not square");
    M[i] = to_rational(A[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (A[i][j] != A[j][i]) return false;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (M[k][k] < 0) return false;
    if (M[k][k] == 0) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (M[k][j] != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M[i][k] == 0) continue;
      const Rational f = M[i][k] / M[k][k];
      for (std::size_t j = k + 1; j < n; ++j)
        if (M[k][j] != 0) M[i][j] -= f * M[k][j];
    }
  }
  return true;
}

Integer PlaneSystem::max_abs_entry() const {
  Integer m = 0;
  for (const auto& row : A)
    for (const auto& v : row) m = std::max(m, abs_int(v));
  return m;
}

Integer PlaneSystem::max_abs_rhs() const {
  Integer m = 0;
  for (const auto& v : b) m = std::max(m, abs_int(v));
  return m;
}

std::vector<std::size_t> independent_rows(const IntMatrix& A) {
  std::vector<RatVector> basis;
  std::vector<Rational> norms;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < A.size(); ++r) {
    RatVector v = to_rational(A[r]);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational coef = dot(v, basis[k]) / norms[k];
      if (coef == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (basis[k][i] != 0) v[i] -= coef * basis[k][i];
    }
    const Rational nn = dot(v, v);
    if (nn == 0) continue;
    basis.push_back(std::move(v));
    norms.push_back(nn);
    keep.push_back(r);
  }
  return keep;
}

std::optional<RatVector> solve_rational(const IntMatrix& A, const IntVector& b) {
  if (A.size() != b.size()) throw DimensionMismatch("rows and right-hand side differ");
  const std::size_t n = A.empty() ? 0 : A[0].size();
  RatMatrix M;
  for (const auto& row : A) M.push_back(to_rational(row));
  return solve_rat(std::move(M), to_rational(b), n);
}

PlaneReduction reduce_plane(const QuadraticForm& q) {
  if (!is_positive_semidefinite(q.A))
    throw InputError("quadratic form is not positive semidefinite");
  PlaneReduction out;
  auto x = solve_rational(q.A, q.b);
  if (!x) {
    out.verdict = PlaneReduction::Verdict::NoZero;
    out.consistent = false;
    return out;
  }
  out.consistent = true;
  // At a stationary point 1/2 x^T A x - b^T x = -1/2 b^T x.
  out.min_value = Rational(q.a0) - dot(to_rational(q.b), *x) / 2;
  if (out.min_value != 0) {
    out.verdict = PlaneReduction::Verdict::NoZero;
    return out;
  }
  out.verdict = PlaneReduction::Verdict::Plane;
  out.plane.n = q.n;
  for (auto r : independent_rows(q.A)) {
    out.plane.A.push_back(q.A[r]);
    out.plane.b.push_back(q.b[r]);
  }
  return out;
}

PlaneSystem reduce_system(const PlaneSystem& ps) {
  if (!solve_rational(ps.A, ps.b)) throw InputError("plane system is inconsistent");
  PlaneSystem out;
  out.n = ps.n;
  for (auto r : independent_rows(ps.A)) {
    out.A.push_back(ps.A[r]);
    out.b.push_back(ps.b[r]);
  }
  return out;
}

Sphere project_onto_plane(const PlaneSystem& ps) {
  const std::size_t n = ps.n;
  const std::size_t d = ps.rank();
  Sphere s;
  s.center.assign(n, Rational(1, 2));
  if (d == 0) {
    s.radius_sq = Rational(static_cast<long long>(n), 4);
    return s;
  }
  // c = c' - A^T y with (A A^T) y = A c' - b.
  RatMatrix G(d, RatVector(d));
  RatVector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational ac = 0;
    for (std::size_t k = 0; k < n; ++k) ac += Rational(ps.A[i][k]) / 2;
    rhs[i] = ac - Rational(ps.b[i]);
    for (std::size_t j = 0; j < d; ++j) {
      Integer g = 0;
      for (std::size_t k = 0; k < n; ++k) g += ps.A[i][k] * ps.A[j][k];
      G[i][j] = Rational(g);
    }
  }
  auto y = solve_rat(std::move(G), std::move(rhs), d);
  if (!y) throw InputError("plane rows are not independent");
  Rational shift = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Rational delta = 0;
    for (std::size_t i = 0; i < d; ++i) delta += Rational(ps.A[i][k]) * (*y)[i];
    s.center[k] -= delta;
    shift += delta * delta;
  }
  s.radius_sq = Rational(static_cast<long long>(n), 4) - shift;
  return s;
}

Integer packing_base(const PlaneSystem& ps) {
  const Integer m = std::max(Integer(ps.n) * ps.max_abs_entry(), ps.max_abs_rhs());
  const Integer need = 2 * m + 1;
  Integer base = 2;
  while (base <= need) base *= 2;
  return base;
}

PlaneSystem collapse_to_hyperplane(const PlaneSystem& ps) {
  if (ps.rank() <= 1) return ps;
  const Integer base = packing_base(ps);
  PlaneSystem out;
  out.n = ps.n;
  out.A.assign(1, IntVector(ps.n, Integer(0)));
  out.b.assign(1, Integer(0));
  const std::size_t d = ps.rank();
  for (std::size_t i = 0; i < d; ++i) {
    const Integer w = pow_int(base, d - 1 - i);
    for (std::size_t j = 0; j < ps.n; ++j) out.A[0][j] += w * ps.A[i][j];
    out.b[0] += w * ps.b[i];
  }
  return out;
}

Sphere plane_to_sphere(const PlaneSystem& ps) {
  if (ps.rank() == 0) return project_onto_plane(ps);
  const auto h = collapse_to_hyperplane(ps);
  return sphere_for_hyperplane(h.A[0], h.b[0], ps.n);
}

SubsetSumInstance pack_subset_sum(const PlaneSystem& ps, const std::optional<Integer>& base) {
  const Integer B = base ? *base : packing_base(ps);
  if (B < 2) throw InputError("packing base must be at least 2");
  const std::size_t d = ps.rank();
  SubsetSumInstance out;
  out.values.assign(ps.n, Integer(0));
  for (std::size_t i = 0; i < d; ++i) {
    const Integer w = pow_int(B, d - 1 - i);
    for (std::size_t j = 0; j < ps.n; ++j) out.values[j] += w * ps.A[i][j];
    out.target += w * ps.b[i];
  }
  return out;
}

IntVector unpack_balanced(const Integer& v, const Integer& base, std::size_t digits) {
  IntVector out(digits, Integer(0));
  Integer rest = v;
  const Integer half = base / 2;
  for (std::size_t k = 0; k < digits; ++k) {
    // Digit in (-B/2, B/2].
    Integer r = rest % base;
    if (r < 0) r += base;
    if (r > half) r -= base;
    out[digits - 1 - k] = r;
    rest = (rest - r) / base;
  }
  if (rest != 0) throw InputError("value does not fit in the requested digits");
  return out;
}

std::vector<std::uint64_t> plane_hypercube_points(const PlaneSystem& ps, std::size_t limit) {
  return linear_points(ps.A, ps.b, ps.n, limit);
}

std::optional<std::uint64_t> plane_hypercube_oracle(const PlaneSystem& ps) {
  auto pts = plane_hypercube_points(ps, 1);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

std::vector<std::uint64_t> sphere_hypercube_points(const Sphere& s, std::size_t limit) {
  const std::size_t n = s.center.size();
  if (s.empty()) return {};
  // sum (1 - 2 c_i) x_i = r^2 - |c|^2 on booleans; clear denominators.
  RatVector w(n);
  Rational rhs = s.radius_sq;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1 - 2 * s.center[i];
    rhs -= s.center[i] * s.center[i];
  }
  Integer den = denominator(rhs);
  for (const auto& v : w) den = boost::multiprecision::lcm(den, denominator(v));
  IntMatrix A(1, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) A[0][i] = numerator(w[i] * Rational(den));
  IntVector b{numerator(rhs * Rational(den))};
  return linear_points(A, b, n, limit);
}

nlohmann::json to_json(const QuadraticForm& q) {
  nlohmann::json A = nlohmann::json::array();
  for (const auto& row : q.A) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(dec(v));
    A.push_back(std::move(r));
  }
  nlohmann::json b = nlohmann::json::array();
  for (const auto& v : q.b) b.push_back(dec(v));
  return {{"n", q.n}, {"A", A}, {"b", b}, {"a0", dec(q.a0)}};
}

nlohmann::json to_json(const PlaneSystem& ps) {
  nlohmann::json A = nlohmann::json::array();
  for (const auto& row : ps.A) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(dec(v));
    A.push_back(std::move(r));
  }
  nlohmann::json b = nlohmann::json::array();
  for (const auto& v : ps.b) b.push_back(dec(v));
  return {{"n", ps.n}, {"rank", ps.rank()}, {"A", A}, {"b", b},
          {"max_abs_entry", dec(ps.max_abs_entry())}};
}

nlohmann::json to_json(const Sphere& s) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& v : s.center) c.push_back(to_fraction_string(v));
  return {{"center", c}, {"radius_sq", to_fraction_string(s.radius_sq)}, {"empty", s.empty()}};
}

PlaneSystem plane_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("A") || !j.contains("b"))
    throw InputError("plane JSON needs n, A and b");
  PlaneSystem ps;
  ps.n = j.at("n").get<std::size_t>();
  for (const auto& row : j.at("A")) {
    ps.A.push_back(int_vector_from_json(row));
    if (ps.A.back().size() != ps.n) throw InputError("plane row has the wrong length");
  }
  ps.b = int_vector_from_json(j.at("b"));
  if (ps.b.size() != ps.A.size()) throw InputError("plane rows and b differ in length");
  return ps;
}

}  // namespace npforge
