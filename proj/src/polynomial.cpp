// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/polynomial.hpp"

#include "npforge/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace npforge {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.var < b.var; });
  for (const Factor& f : factors) {
    if (f.exp == 0) continue;
    if (!factors_.empty() && factors_.back().var == f.var)
      factors_.back().exp += f.exp;
    else
      factors_.push_back(f);
    degree_ += f.exp;
  }
}

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exp) {
  return Monomial({Factor{var, exp}});
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  const auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                                   [](const Factor& f, std::uint32_t v) { return f.var < v; });
  return (it != factors_.end() && it->var == var) ? it->exp : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < factors_.size() || j < other.factors_.size()) {
    if (j == other.factors_.size() ||
        (i < factors_.size() && factors_[i].var < other.factors_[j].var)) {
      out.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() || other.factors_[j].var < factors_[i].var) {
      out.factors_.push_back(other.factors_[j++]);
    } else {
      out.factors_.push_back({factors_[i].var, factors_[i].exp + other.factors_[j].exp});
      ++i;
      ++j;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto fa = a.factors();
  const auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].var != fb[j].var) return fa[i].var > fb[j].var;  // b uses the earlier variable
    if (fa[i].exp != fb[j].exp) return fa[i].exp < fb[j].exp;
    ++i;
    ++j;
  }
  return false;
}

SparsePolynomial SparsePolynomial::constant(const Integer& c, std::size_t num_vars) {
  SparsePolynomial p(num_vars);
  p.add_term(Monomial(), c);
  return p;
}

SparsePolynomial SparsePolynomial::variable(std::uint32_t var, std::size_t num_vars) {
  return monomial(Monomial::variable(var), 1, num_vars);
}

SparsePolynomial SparsePolynomial::monomial(const Monomial& m, const Integer& c,
                                            std::size_t num_vars) {
  SparsePolynomial p(std::max(num_vars, m.var_bound()));
  p.add_term(m, c);
  return p;
}

int SparsePolynomial::degree() const {
  // grlex keeps the highest total degree last
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

Integer SparsePolynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer SparsePolynomial::max_abs_coefficient() const {
  Integer best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, Integer(abs(c)));
  return best;
}

SparsePolynomial SparsePolynomial::widened(std::size_t num_vars) const {
  if (num_vars < num_vars_) throw DimensionMismatch("cannot narrow a polynomial");
  SparsePolynomial p = *this;
  p.num_vars_ = num_vars;
  return p;
}

void SparsePolynomial::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  num_vars_ = std::max(num_vars_, m.var_bound());
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& q) {
  num_vars_ = std::max(num_vars_, q.num_vars_);
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& q) {
  num_vars_ = std::max(num_vars_, q.num_vars_);
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SparsePolynomial operator*(const SparsePolynomial& p, const SparsePolynomial& q) {
  SparsePolynomial out(std::max(p.num_vars_, q.num_vars_));
  for (const auto& [mp, cp] : p.terms_)
    for (const auto& [mq, cq] : q.terms_) out.add_term(mp * mq, cp * cq);
  return out;
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SparsePolynomial add(const SparsePolynomial& p, const SparsePolynomial& q) { return p + q; }
SparsePolynomial mul(const SparsePolynomial& p, const SparsePolynomial& q) { return p * q; }

SparsePolynomial pow(const SparsePolynomial& p, unsigned e) {
  SparsePolynomial result = SparsePolynomial::constant(1, p.num_vars());
  SparsePolynomial base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

SparsePolynomial square(const SparsePolynomial& p) { return p * p; }

namespace {

double ipow(double x, std::uint32_t e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

void check_dimension(const SparsePolynomial& p, std::size_t n) {
  if (n != p.num_vars())
    throw DimensionMismatch("point has " + std::to_string(n) + " coordinates, polynomial has " +
                            std::to_string(p.num_vars()) + " variables");
}

}  // namespace

double evaluate(const SparsePolynomial& p, std::span<const double> pt) {
  check_dimension(p, pt.size());
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double v = to_double(c);
    for (const auto& f : m.factors()) v *= ipow(pt[f.var], f.exp);
    sum += v;
  }
  return sum;
}

Integer evaluate_exact(const SparsePolynomial& p, std::span<const std::int64_t> pt) {
  check_dimension(p, pt.size());
  Integer sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Integer v = c;
    for (const auto& f : m.factors()) v *= boost::multiprecision::pow(Integer(pt[f.var]), f.exp);
    sum += v;
  }
  return sum;
}

Integer evaluate_boolean(const SparsePolynomial& p, std::uint64_t ones) {
  if (p.num_vars() > 64) throw InstanceTooLarge("boolean evaluation supports 64 variables");
  Integer sum = 0;
  for (const auto& [m, c] : p.terms()) {
    bool live = true;
    for (const auto& f : m.factors()) {
      if (((ones >> f.var) & 1U) == 0) {
        live = false;
        break;
      }
    }
    if (live) sum += c;
  }
  return sum;
}

SparsePolynomial derivative(const SparsePolynomial& p, std::uint32_t var) {
  SparsePolynomial out(p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m.exponent(var);
    if (e == 0) continue;
    std::vector<Monomial::Factor> fs(m.factors().begin(), m.factors().end());
    for (auto& f : fs)
      if (f.var == var) f.exp -= 1;
    out.add_term(Monomial(std::move(fs)), c * e);
  }
  return out;
}

std::vector<SparsePolynomial> gradient(const SparsePolynomial& p) {
  std::vector<SparsePolynomial> g;
  g.reserve(p.num_vars());
  for (std::uint32_t i = 0; i < p.num_vars(); ++i) g.push_back(derivative(p, i));
  return g;
}

SparsePolynomial laplacian(const SparsePolynomial& p) {
  SparsePolynomial out(p.num_vars());
  for (std::uint32_t i = 0; i < p.num_vars(); ++i) out += derivative(derivative(p, i), i);
  return out;
}

SparsePolynomial substitute_vars(const SparsePolynomial& p, std::span<const std::uint32_t> map,
                                 std::size_t num_vars) {
  if (map.size() < p.num_vars()) throw DimensionMismatch("variable map too short");
  SparsePolynomial out(num_vars);
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> fs;
    for (const auto& f : m.factors()) {
      if (map[f.var] >= num_vars) throw DimensionMismatch("variable map target out of range");
      fs.push_back({map[f.var], f.exp});
    }
    out.add_term(Monomial(std::move(fs)), c);
  }
  return out;
}

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

std::vector<double> restrict_to_line(const SparsePolynomial& p, std::span<const double> base,
                                     std::span<const double> dir) {
  check_dimension(p, base.size());
  check_dimension(p, dir.size());
  const int deg = std::max(p.degree(), 0);
  std::vector<double> out(static_cast<std::size_t>(deg) + 1, 0.0);
  for (const auto& [m, c] : p.terms()) {
    std::vector<double> term{to_double(c)};
    for (const auto& f : m.factors()) {
      const std::vector<double> lin{base[f.var], dir[f.var]};
      for (std::uint32_t e = 0; e < f.exp; ++e) term = poly_mul(term, lin);
    }
    for (std::size_t i = 0; i < term.size(); ++i) out[i] += term[i];
  }
  return out;
}

double evaluate_univariate(std::span<const double> coeffs, double t) {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
  return v;
}

std::vector<double> differentiate_univariate(std::span<const double> coeffs) {
  std::vector<double> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) out.push_back(coeffs[i] * static_cast<double>(i));
  return out;
}

namespace {

std::vector<double> trimmed(std::span<const double> coeffs) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

std::vector<double> real_roots(const std::vector<double>& c) {
  const std::size_t deg = c.size() - 1;
  std::vector<double> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                    static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto eig = solver.eigenvalues();
  double scale = 0.0;
  for (const double x : c) scale = std::max(scale, std::abs(x));
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const std::complex<double> z = eig[i];
    // repeated roots of p' come back with O(sqrt(eps)) imaginary parts
    if (std::abs(z.imag()) > 1e-5 * (1.0 + std::abs(z.real()))) continue;
    roots.push_back(z.real());
  }
  return roots;
}

}  // namespace

std::vector<UnivariateMinimum> univariate_minima(std::span<const double> coeffs) {
  const std::vector<double> c = trimmed(coeffs);
  if (c.size() > 7) throw UnsupportedDegree("univariate_minima supports degree <= 6");
  std::vector<UnivariateMinimum> out;
  if (c.size() <= 2) return out;
  const std::vector<double> d1 = differentiate_univariate(c);
  const std::vector<double> d2 = differentiate_univariate(d1);
  std::vector<double> critical = real_roots(d1);
  for (double& t : critical) {
    for (int it = 0; it < 8; ++it) {
      const double slope = evaluate_univariate(d2, t);
      if (slope == 0.0) break;
      const double step = evaluate_univariate(d1, t) / slope;
      if (!std::isfinite(step)) break;
      t -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(t))) break;
    }
  }
  std::sort(critical.begin(), critical.end());
  std::vector<double> unique;
  for (const double t : critical)
    if (unique.empty() || std::abs(t - unique.back()) > 1e-7 * (1.0 + std::abs(t)))
      unique.push_back(t);
  for (const double t : unique) {
    const double curvature = evaluate_univariate(d2, t);
    bool is_min = curvature > 1e-10;
    if (!is_min && std::abs(curvature) <= 1e-10) {
      // flat critical point: compare against nearby values
      const double h = 1e-4 * (1.0 + std::abs(t));
      const double v = evaluate_univariate(c, t);
      is_min = evaluate_univariate(c, t - h) > v && evaluate_univariate(c, t + h) > v;
    }
    if (is_min) out.push_back({t, evaluate_univariate(c, t)});
  }
  return out;
}

std::string to_string(const SparsePolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Integer mag = negative ? Integer(-c) : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    const bool unit = mag == 1 && !m.is_constant();
    if (!unit) out << mag;
    bool sep = !unit;
    for (const auto& f : m.factors()) {
      if (sep) out << '*';
      out << 'x' << f.var;
      if (f.exp > 1) out << '^' << f.exp;
      sep = true;
    }
  }
  return out.str();
}

nlohmann::json to_json(const SparsePolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json exps = nlohmann::json::array();
    for (const auto& f : m.factors()) exps.push_back({f.var, f.exp});
    terms.push_back({{"exps", exps}, {"coeff", c.str()}});
  }
  return {{"num_vars", p.num_vars()}, {"terms", terms}};
}

SparsePolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const std::size_t n = j.at("num_vars").get<std::size_t>();
    SparsePolynomial p(n);
    for (const auto& t : j.at("terms")) {
      std::vector<Monomial::Factor> fs;
      for (const auto& e : t.at("exps")) {
        const auto var = e.at(0).get<std::uint32_t>();
        const auto exp = e.at(1).get<std::uint32_t>();
        if (var >= n) throw InputError("variable index " + std::to_string(var) + " >= num_vars");
        if (exp == 0) throw InputError("zero exponent stored");
        fs.push_back({var, exp});
      }
      const Integer c = parse_integer(t.at("coeff").get<std::string>());
      if (c == 0) throw InputError("zero coefficient stored");
      p.add_term(Monomial(std::move(fs)), c);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
}

CompiledPolynomial::CompiledPolynomial(const SparsePolynomial& p) : num_vars_(p.num_vars()) {
  for (const auto& [m, c] : p.terms()) {
    terms_.push_back({to_double(c), static_cast<std::uint32_t>(factors_.size()),
                      static_cast<std::uint32_t>(m.factors().size())});
    factors_.insert(factors_.end(), m.factors().begin(), m.factors().end());
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  if (x.size() != num_vars_) throw DimensionMismatch("compiled polynomial dimension");
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (std::uint32_t k = 0; k < t.count; ++k) {
      const auto& f = factors_[t.first + k];
      v *= ipow(x[f.var], f.exp);
    }
    sum += v;
  }
  return sum;
}

}  // namespace npforge
