// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/srg_iso.hpp"

#include "npforge/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace npforge {

namespace {

// Groups ascending eigenvalues; each group keeps its column indices.
struct EigenGroup {
  double value;
  std::vector<Eigen::Index> columns;
};

std::vector<EigenGroup> group_eigenvalues(const Eigen::VectorXd& ev) {
  std::vector<EigenGroup> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (out.empty() || std::fabs(ev[i] - ev[out.back().columns.front()]) > kEigenGroupTol)
      out.push_back({ev[i], {}});
    out.back().columns.push_back(i);
  }
  for (auto& g : out) {
    double s = 0;
    for (auto c : g.columns) s += ev[c];
    g.value = s / static_cast<double>(g.columns.size());
  }
  return out;
}

std::size_t tri_count(std::size_t n) { return n * (n + 1) / 2; }

}  // namespace

bool SrgParams::feasible() const {
  if (k >= m || (k > 0 && nu >= k)) return false;
  const auto sm = static_cast<long long>(m), sk = static_cast<long long>(k);
  return (sm - sk - 1) * static_cast<long long>(mu) == sk * (sk - static_cast<long long>(nu) - 1);
}

SrgCheck check_srg(const Graph& g) {
  const std::size_t m = g.size();
  SrgCheck out;
  if (m < 2) {
    out.reason = "fewer than two vertices";
    return out;
  }
  if (!is_connected(g)) {
    out.reason = "not connected";
    return out;
  }
  const std::size_t k = g.degree(0);
  for (std::size_t i = 1; i < m; ++i)
    if (g.degree(i) != k) {
      out.reason = "not regular (vertex 0 has degree " + std::to_string(k) + ", vertex " +
                   std::to_string(i) + " has " + std::to_string(g.degree(i)) + ")";
      return out;
    }
  if (k + 1 == m) {
    out.reason = "complete graph";
    return out;
  }
  std::optional<std::size_t> nu, mu;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::size_t common = 0;
      for (std::size_t w = 0; w < m; ++w) common += g.adjacent(i, w) && g.adjacent(j, w);
      auto& slot = g.adjacent(i, j) ? nu : mu;
      if (!slot) {
        slot = common;
      } else if (*slot != common) {
        out.reason = std::string(g.adjacent(i, j) ? "adjacent" : "non-adjacent") +
                     " pairs have differing common-neighbour counts";
        return out;
      }
    }
  SrgParams p{m, k, nu.value_or(0), mu.value_or(0)};
  if (!p.feasible()) {
    // Cannot happen for a graph that passed the counts; kept as a guard.
    out.reason = "parameter identity fails";
    return out;
  }
  out.params = p;
  return out;
}

SrgSpectrum srg_eigen(const SrgParams& p) {
  if (!p.feasible())
    throw InputError("parameters violate (m-k-1) mu = k (k-nu-1)");
  const double m = static_cast<double>(p.m), k = static_cast<double>(p.k);
  const double diff = static_cast<double>(p.nu) - static_cast<double>(p.mu);
  const double disc = diff * diff + 4.0 * (k - static_cast<double>(p.mu));
  if (!(disc > 0)) throw InputError("discriminant (nu-mu)^2 + 4(k-mu) must be positive");
  const double root = std::sqrt(disc);
  const double skew = (2.0 * k + (m - 1.0) * diff) / root;
  auto mult = [](double x) {
    const double r = std::round(x);
    if (std::fabs(x - r) >= 1e-6 || r < 0)
      throw InputError("inconsistent parameters: multiplicity " + std::to_string(x) +
                       " is not a nonnegative integer");
    return static_cast<std::size_t>(r);
  };
  SrgSpectrum s;
  s.principal = {k, 1};
  s.plus = {0.5 * (diff + root), mult(0.5 * ((m - 1.0) - skew))};
  s.minus = {0.5 * (diff - root), mult(0.5 * ((m - 1.0) + skew))};
  return s;
}

EigenPair smaller_eigenspace(const SrgSpectrum& s) {
  return s.minus.multiplicity < s.plus.multiplicity ? s.minus : s.plus;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const auto m = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      a(i, j) = g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ? 1.0 : 0.0;
  return a;
}

std::vector<EigenPair> numeric_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(g), Eigen::EigenvaluesOnly);
  std::vector<EigenPair> out;
  for (const auto& grp : group_eigenvalues(es.eigenvalues()))
    out.push_back({grp.value, grp.columns.size()});
  return out;
}

PointCloud eigenspace_points(const Graph& g, double lambda) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(g));
  const auto groups = group_eigenvalues(es.eigenvalues());
  const EigenGroup* hit = nullptr;
  for (const auto& grp : groups)
    if (std::fabs(grp.value - lambda) <= kEigenGroupTol) hit = &grp;
  if (!hit) throw InputError("lambda = " + std::to_string(lambda) + " is not an eigenvalue");

  if (const auto chk = check_srg(g); chk.params) {
    const auto eig = srg_eigen(*chk.params);
    for (const auto& e : {eig.principal, eig.plus, eig.minus})
      if (std::fabs(e.value - lambda) <= kEigenGroupTol && e.multiplicity != hit->columns.size())
        throw InputError("numeric multiplicity " + std::to_string(hit->columns.size()) +
                         " disagrees with the analytic value " + std::to_string(e.multiplicity));
  }

  PointCloud pc;
  pc.lambda = hit->value;
  pc.n = hit->columns.size();
  const auto m = static_cast<Eigen::Index>(g.size());
  pc.points.resize(m, static_cast<Eigen::Index>(pc.n));
  for (std::size_t c = 0; c < pc.n; ++c)
    pc.points.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(hit->columns[c]);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double nrm = pc.points.row(i).norm();
    if (nrm < 1e-12) throw InputError("vertex " + std::to_string(i) + " projects to zero");
    pc.points.row(i) /= nrm;
  }
  const Eigen::MatrixXd gm = pc.gram();
  double sb = 0, sg = 0;
  std::size_t nb = 0, ng = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        sb += gm(i, j);
        ++nb;
      } else {
        sg += gm(i, j);
        ++ng;
      }
    }
  pc.beta = nb ? sb / static_cast<double>(nb) : 0.0;
  pc.gamma = ng ? sg / static_cast<double>(ng) : 0.0;
  return pc;
}

PointCloud eigenspace_points(const Graph& g) {
  const auto chk = check_srg(g);
  if (!chk.params) throw InputError("graph is not strongly regular: " + chk.reason);
  return eigenspace_points(g, smaller_eigenspace(srg_eigen(*chk.params)).value);
}

double three_angle_residual(const PointCloud& pc, const Graph& g) {
  const Eigen::MatrixXd gm = pc.gram();
  double worst = 0;
  for (Eigen::Index i = 0; i < gm.rows(); ++i)
    for (Eigen::Index j = 0; j < gm.cols(); ++j) {
      const double want = i == j ? 1.0
                          : g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                              ? pc.beta
                              : pc.gamma;
      worst = std::max(worst, std::fabs(gm(i, j) - want));
    }
  return worst;
}

PointCloud rotated(const PointCloud& pc, const Eigen::MatrixXd& q) {
  if (q.rows() != static_cast<Eigen::Index>(pc.n) || q.cols() != q.rows())
    throw DimensionMismatch("rotation size differs from cloud dimension");
  PointCloud out = pc;
  out.points = pc.points * q.transpose();
  return out;
}

Eigen::MatrixXd random_orthogonal(std::size_t n, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Eigen::VectorXd vectorize_symmetric(const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols()) throw InputError("matrix is not square");
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InputError("matrix is not symmetric");
  const auto n = static_cast<std::size_t>(p.rows());
  Eigen::VectorXd v(static_cast<Eigen::Index>(tri_count(n)));
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) v[at++] = p(i, i);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = i + 1; j < p.rows(); ++j) v[at++] = std::sqrt(2.0) * p(i, j);
  return v;
}

Eigen::MatrixXd unvectorize_symmetric(const Eigen::VectorXd& v, std::size_t n) {
  if (static_cast<std::size_t>(v.size()) != tri_count(n))
    throw DimensionMismatch("vector length is not n(n+1)/2");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd p(dim, dim);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < dim; ++i) p(i, i) = v[at++];
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j) p(i, j) = p(j, i) = v[at++] / std::sqrt(2.0);
  return p;
}

Eigen::VectorXd vectorize_point(const Eigen::VectorXd& x) {
  return vectorize_symmetric(x * x.transpose());
}

AffineMatrixSpace build_affine_space(const PointCloud& pc) {
  AffineMatrixSpace out;
  out.n = pc.n;
  out.ambient = tri_count(pc.n);
  const auto D = static_cast<Eigen::Index>(out.ambient);
  std::vector<Eigen::VectorXd> kept;
  auto orthogonalize = [&](Eigen::VectorXd v) {
    const double start = v.norm();
    // Two passes keep the basis orthonormal to machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q.dot(v) * q;
    const double nrm = v.norm();
    if (nrm <= 1e-9 * std::max(1.0, start)) return false;
    kept.push_back(v / nrm);
    return true;
  };
  for (Eigen::Index i = 0; i < pc.points.rows(); ++i)
    if (orthogonalize(vectorize_point(pc.points.row(i).transpose()))) ++out.rank;
  for (Eigen::Index j = 0; j < D; ++j)
    if (orthogonalize(Eigen::VectorXd::Unit(D, j)))
      out.basis.push_back(unvectorize_symmetric(kept.back(), pc.n));
  return out;
}

std::optional<double> InvariantVector::get(const std::string& label) const {
  for (const auto& [l, v] : entries)
    if (l == label) return v;
  return std::nullopt;
}

InvariantVector invariants_deg2(const Eigen::MatrixXd& p, std::size_t n) {
  InvariantVector out;
  Eigen::MatrixXd pw = p;
  for (std::size_t l = 1; l <= n; ++l) {
    out.add("tr" + std::to_string(l), pw.trace());
    if (l < n) pw = pw * p;
  }
  return out;
}

std::vector<double> cubic_tensor(const AffineMatrixSpace& space) {
  const std::size_t d = space.dim();
  std::vector<double> t(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Eigen::MatrixXd pij = space.basis[i] * space.basis[j];
      for (std::size_t k = j; k < d; ++k) {
        // Tr(P_i P_j P_k) with P_k symmetric.
        const double v = pij.cwiseProduct(space.basis[k]).sum();
        for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
          t[(a * d + b) * d + c] = v;
      }
    }
  return t;
}

namespace {

// M_kl = sum_ij p_ijk p_ijl
Eigen::MatrixXd bubble_matrix(const std::vector<double>& t, std::size_t d) {
  const auto D = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd mm(D, D);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k; l < d; ++l) {
      double s = 0;
      for (std::size_t ij = 0; ij < d * d; ++ij) s += t[ij * d + k] * t[ij * d + l];
      mm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = s;
      mm(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = s;
    }
  return mm;
}

}  // namespace

InvariantVector invariants_deg3(const AffineMatrixSpace& space) {
  const std::size_t d = space.dim();
  if (d == 0) throw InputError("affine space is empty");
  const auto t = cubic_tensor(space);
  const auto D = static_cast<Eigen::Index>(d);
  std::vector<Eigen::MatrixXd> slice(d, Eigen::MatrixXd(D, D));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        slice[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = t[(i * d + j) * d + k];

  double theta = 0;
  for (double v : t) theta += v * v;
  double loops = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += t[(i * d + i) * d + j];
    loops += s * s;
  }
  const Eigen::MatrixXd mm = bubble_matrix(t, d);
  double tetra = 0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const Eigen::MatrixXd w = slice[j] * slice[k];
      for (std::size_t i = 0; i < d; ++i) tetra += t[(i * d + j) * d + k] * slice[i].cwiseProduct(w).sum();
    }

  InvariantVector out;
  out.add("theta", theta);
  out.add("loops", loops);
  out.add("bubble", mm.squaredNorm());
  out.add("tetra", tetra);
  return out;
}


double Deg6Description::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != points.cols()) throw DimensionMismatch("point dimension mismatch");
  const Eigen::VectorXd t = points * x;
  double s = 0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double f = (t[i] - 1.0) * (t[i] - beta) * (t[i] - gamma);
    s += f * f;
  }
  return s;
}

std::vector<double> Deg6Description::weights() const {
  // (t-1)(t-beta)(t-gamma) = t^3 - e1 t^2 + e2 t - e3
  const double e1 = 1.0 + beta + gamma;
  const double e2 = beta + gamma + beta * gamma;
  const double e3 = beta * gamma;
  const std::array<double, 4> c{-e3, e2, -e1, 1.0};
  std::vector<double> w(7, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) w[i + j] += c[i] * c[j];
  return w;
}

std::vector<double> Deg6Description::homogeneous_tensor(unsigned r) const {
  if (r > 6) throw UnsupportedDegree("homogeneous parts go up to degree 6");
  const auto n = static_cast<std::size_t>(points.cols());
  double total = 1;
  for (unsigned i = 0; i < r; ++i) total *= static_cast<double>(n);
  if (total > static_cast<double>(1u << 24)) throw InstanceTooLarge("dense tensor too large");
  const double w = weights()[r];
  std::vector<double> t(static_cast<std::size_t>(total), 0.0);
  std::vector<double> cur;
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    // Fill x^{(x)r} by repeated outer products.
    cur.assign(1, w);
    for (unsigned step = 0; step < r; ++step) {
      std::vector<double> next(cur.size() * n);
      for (std::size_t a = 0; a < cur.size(); ++a)
        for (std::size_t b = 0; b < n; ++b)
          next[a * n + b] = cur[a] * points(p, static_cast<Eigen::Index>(b));
      cur.swap(next);
    }
    for (std::size_t a = 0; a < t.size(); ++a) t[a] += cur[a];
  }
  return t;
}

Deg6Description deg6_description(const PointCloud& pc) { return {pc.points, pc.beta, pc.gamma}; }

namespace {

ThickCycles power_traces(const Eigen::MatrixXd& h, std::size_t kmax) {
  if (kmax == 0) throw InputError("kmax must be at least 1");
  ThickCycles out;
  Eigen::MatrixXd pw = h;
  double log_scale = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    out.values.push_back(pw.trace());
    out.log_scale.push_back(log_scale);
    if (k == kmax) break;
    pw = pw * h;
    const double big = pw.cwiseAbs().maxCoeff();
    if (big > 1e150) {
      pw /= big;
      log_scale += std::log(big);
      out.normalized = true;
    }
  }
  return out;
}

}  // namespace

ThickCycles thick_cycle_invariants(const PointCloud& pc, std::size_t kmax) {
  return power_traces(pc.gram().array().cube().matrix(), kmax);
}

ThickCycles thick_cycle_invariants_dense(const PointCloud& pc, std::size_t kmax) {
  Deg6Description desc{pc.points, pc.beta, pc.gamma};
  // Only the degree-6 part matters, and its weight is 1.
  const auto t = desc.homogeneous_tensor(6);
  const auto n3 = static_cast<Eigen::Index>(pc.n * pc.n * pc.n);
  Eigen::MatrixXd mat(n3, n3);
  for (Eigen::Index r = 0; r < n3; ++r)
    for (Eigen::Index c = 0; c < n3; ++c) mat(r, c) = t[static_cast<std::size_t>(r * n3 + c)];
  return power_traces(mat, kmax);
}

double cloud_tetrahedral_invariant(const PointCloud& pc) {
  const Eigen::MatrixXd g = pc.gram();
  const Eigen::Index m = g.rows();
  double total = 0;
  Eigen::VectorXd w(m);
  for (Eigen::Index s = 0; s < m; ++s)
    for (Eigen::Index t = 0; t < m; ++t) {
      w = g.col(s).cwiseProduct(g.col(t));
      total += g(s, t) * w.dot(g * w);
    }
  return total;
}

InvariantVector srg_invariants(const PointCloud& pc, const SrgInvariantConfig& cfg) {
  InvariantVector out;
  out.add("cloud.dim", static_cast<double>(pc.n));
  out.add("cloud.beta", pc.beta);
  out.add("cloud.gamma", pc.gamma);
  out.add("cloud.tetra", cloud_tetrahedral_invariant(pc));
  const auto space = build_affine_space(pc);
  out.add("affine.rank", static_cast<double>(space.rank));
  out.add("affine.dim", static_cast<double>(space.dim()));
  if (!space.empty()) {
    for (auto& [l, v] : invariants_deg3(space).entries) out.add("deg3." + l, v);
    const auto powers = std::min(space.dim(), cfg.trace_powers);
    // Tr(M) and Tr(M^2) repeat theta and bubble.
    const auto traces = invariants_deg2(bubble_matrix(cubic_tensor(space), space.dim()), powers);
    for (std::size_t l = 2; l < traces.entries.size(); ++l)
      out.add("bubble." + traces.entries[l].first, traces.entries[l].second);
  }
  const auto thick = thick_cycle_invariants(pc, cfg.kmax);
  // In normalized mode every entry is expressed at the final scale, which is
  // exported alongside.
  for (std::size_t k = 0; k < thick.values.size(); ++k)
    out.add("thick." + std::to_string(k + 1),
            thick.values[k] * std::exp(thick.log_scale[k] - thick.log_scale.back()));
  if (thick.normalized) out.add("thick.log_scale", thick.log_scale.back());
  return out;
}

InvariantVector srg_invariants(const Graph& g, const SrgInvariantConfig& cfg) {
  return srg_invariants(cfg.lambda ? eigenspace_points(g, *cfg.lambda) : eigenspace_points(g), cfg);
}

std::string to_string(Comparison c) {
  return c == Comparison::Distinct ? "DISTINCT" : "INDISTINGUISHABLE";
}

InvariantComparison compare_invariants(const InvariantVector& a, const InvariantVector& b,
                                       double tol) {
  if (a.entries.size() != b.entries.size())
    throw InputError("invariant vectors have different lengths");
  InvariantComparison out;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& [la, va] = a.entries[i];
    const auto& [lb, vb] = b.entries[i];
    if (la != lb) throw InputError("invariant labels differ: " + la + " vs " + lb);
    const double rel = std::fabs(va - vb) / std::max({1.0, std::fabs(va), std::fabs(vb)});
    out.items.push_back({la, va, vb, rel});
    out.max_rel_delta = std::max(out.max_rel_delta, rel);
  }
  out.verdict = out.max_rel_delta > tol ? Comparison::Distinct : Comparison::Indistinguishable;
  return out;
}

nlohmann::json to_json(const InvariantComparison& c) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : c.items)
    items.push_back({{"label", it.label}, {"a", it.a}, {"b", it.b}, {"rel_delta", it.rel_delta}});
  return {{"verdict", to_string(c.verdict)}, {"max_rel_delta", c.max_rel_delta},
          {"per_invariant", items}};
}

std::string invariants_csv(const std::vector<std::pair<std::string, InvariantVector>>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "graph,label,value\n";
  for (const auto& [id, inv] : rows)
    for (const auto& [l, v] : inv.entries) os << id << ',' << l << ',' << v << '\n';
  return os.str();
}

std::vector<std::size_t> directional_order(const PointCloud& pc, const Eigen::VectorXd& v,
                                           Rng* rng) {
  if (v.size() != static_cast<Eigen::Index>(pc.n))
    throw DimensionMismatch("direction dimension differs from cloud dimension");
  Eigen::VectorXd dir = v;
  for (int attempt = 0; attempt <= 10; ++attempt) {
    const Eigen::VectorXd proj = pc.points * dir;
    std::vector<std::size_t> order(pc.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return proj[static_cast<Eigen::Index>(a)] < proj[static_cast<Eigen::Index>(b)];
    });
    bool tie = false;
    for (std::size_t i = 1; i < order.size() && !tie; ++i)
      tie = proj[static_cast<Eigen::Index>(order[i])] - proj[static_cast<Eigen::Index>(order[i - 1])] <
            kProjectionTieTol;
    if (!tie) return order;
    if (!rng || attempt == 10) break;
    const double scale = 1e-4 * std::max(v.norm(), 1e-300);
    dir = v;
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] += scale * rng->normal();
  }
  throw InputError("degenerate direction: projections tie");
}

double permutation_score(const Eigen::MatrixXd& p, int power) {
  return p.array().pow(power).sum();
}

Graph rook_graph(std::size_t side) {
  Graph g(side * side);
  for (std::size_t a = 0; a < side * side; ++a)
    for (std::size_t b = a + 1; b < side * side; ++b)
      if (a / side == b / side || a % side == b % side) g.add_edge(a, b);
  return g;
}

Graph shrikhande_graph() {
  Graph g(16);
  auto connected = [](std::size_t di, std::size_t dj) {
    // {+-(1,0), +-(0,1), +-(1,1)} in Z4 x Z4
    return (di == 0 && (dj == 1 || dj == 3)) || (dj == 0 && (di == 1 || di == 3)) ||
           (di == dj && (di == 1 || di == 3));
  };
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = a + 1; b < 16; ++b)
      if (connected((b / 4 + 4 - a / 4) % 4, (b % 4 + 4 - a % 4) % 4)) g.add_edge(a, b);
  return g;
}

std::pair<Graph, Graph> generate_srg_pair_16() { return {rook_graph(4), shrikhande_graph()}; }

std::vector<std::size_t> neighborhood_components(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> out(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t w = 0; w < n; ++w)
      if (g.adjacent(v, w)) nb.push_back(w);
    std::vector<bool> seen(nb.size(), false);
    for (std::size_t s = 0; s < nb.size(); ++s) {
      if (seen[s]) continue;
      ++out[v];
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        const auto a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < nb.size(); ++b)
          if (!seen[b] && g.adjacent(nb[a], nb[b])) {
            seen[b] = true;
            stack.push_back(b);
          }
      }
    }
  }
  return out;
}

}  // namespace npforge
