// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/optimize.hpp"

#include "npforge/errors.hpp"
#include "npforge/parallel.hpp"
#include "npforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace npforge {

namespace {

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool near_vertex(std::span<const double> x, double tol) {
  for (double v : x)
    if (!(std::fabs(v) <= tol || std::fabs(v - 1.0) <= tol)) return false;
  return true;
}

constexpr int kMaxHalvings = 60;

}  // namespace

Objective polynomial_objective(const SparsePolynomial& p) {
  auto poly = std::make_shared<const SparsePolynomial>(p);
  auto f = std::make_shared<const CompiledPolynomial>(p);
  auto grads = std::make_shared<std::vector<CompiledPolynomial>>();
  for (const auto& g : gradient(p)) grads->emplace_back(g.widened(p.num_vars()));
  Objective obj;
  obj.dim = p.num_vars();
  obj.value = [f](std::span<const double> x) { return (*f)(x); };
  obj.gradient = [grads](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < grads->size(); ++i) out[i] = (*grads)[i](x);
  };
  obj.poly = std::move(poly);
  return obj;
}

void OptimizerConfig::validate() const {
  if (!(step > 0) || !std::isfinite(step)) throw InputError("step must be positive");
  if (!(grad_tol > 0)) throw InputError("grad_tol must be positive");
  if (!(vertex_tol > 0 && vertex_tol < 0.5)) throw InputError("vertex_tol must lie in (0, 1/2)");
  if (zero_tol < 0) throw InputError("zero_tol must be nonnegative");
  if (lambda_schedule.empty()) throw InputError("lambda schedule is empty");
  for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
    if (!(lambda_schedule[i] >= 0)) throw InputError("lambda values must be nonnegative");
    if (i > 0 && lambda_schedule[i] > lambda_schedule[i - 1])
      throw InputError("lambda schedule must be non-increasing");
  }
  if (lambda_schedule.back() != 0.0) throw InputError("lambda schedule must end at 0");
}

nlohmann::json to_json(const OptimizerConfig& c) {
  return {{"step", c.step},
          {"max_iters", c.max_iters},
          {"grad_tol", c.grad_tol},
          {"vertex_tol", c.vertex_tol},
          {"seed", c.seed},
          {"lambda_schedule", c.lambda_schedule},
          {"stop_at_vertex", c.stop_at_vertex},
          {"zero_tol", c.zero_tol},
          {"threads", c.threads},
          {"strategy", c.strategy == StepStrategy::Backtracking ? "backtracking" : "line_minima"}};
}

OptimizerConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("optimizer config must be a JSON object");
  OptimizerConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "step") c.step = v.get<double>();
      else if (key == "max_iters") c.max_iters = v.get<std::size_t>();
      else if (key == "grad_tol") c.grad_tol = v.get<double>();
      else if (key == "vertex_tol") c.vertex_tol = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "lambda_schedule") c.lambda_schedule = v.get<std::vector<double>>();
      else if (key == "stop_at_vertex") c.stop_at_vertex = v.get<bool>();
      else if (key == "zero_tol") c.zero_tol = v.get<double>();
      else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "strategy") {
        const auto s = v.get<std::string>();
        if (s == "backtracking") c.strategy = StepStrategy::Backtracking;
        else if (s == "line_minima") c.strategy = StepStrategy::LineMinima;
        else throw InputError("unknown strategy '" + s + "'");
      } else {
        throw InputError("unknown config field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroFound: return "ZeroFound";
    case Verdict::LocalMin: return "LocalMin";
    case Verdict::Budget: return "Budget";
    case Verdict::Diverged: return "Diverged";
  }
  return "?";
}

bool RunReport::monotone() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1]) return false;
  return true;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j{{"final_point", r.final_point},
                   {"final_value", r.final_value},
                   {"iters", r.iters},
                   {"verdict", to_string(r.verdict)}};
  if (r.rounded_assignment) j["rounded_assignment"] = *r.rounded_assignment;
  else j["rounded_assignment"] = nullptr;
  return j;
}

std::string run_log_csv(const RunReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "iter,value,grad_norm\n";
  for (std::size_t i = 0; i < r.values.size(); ++i)
    os << i << ',' << r.values[i] << ',' << (i < r.grad_norms.size() ? r.grad_norms[i] : NAN) << '\n';
  return os.str();
}

std::vector<std::uint8_t> round_point(std::span<const double> pt) {
  std::vector<std::uint8_t> out(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) out[i] = pt[i] >= 0.5 ? 1 : 0;
  return out;
}

std::optional<std::vector<std::uint8_t>> round_and_test(std::span<const double> pt,
                                                        const CnfFormula& f) {
  if (pt.size() < f.num_vars) throw DimensionMismatch("point shorter than the variable count");
  auto bits = round_point(pt.first(f.num_vars));
  if (satisfies(f, bits)) return bits;
  return std::nullopt;
}

LineStep line_minima_step(const SparsePolynomial& p, std::span<const double> pt,
                          std::span<const double> dir) {
  if (p.degree() > 6) throw UnsupportedDegree("line search needs degree <= 6");
  const auto coeffs = restrict_to_line(p, pt, dir);
  LineStep out;
  out.minima = univariate_minima(coeffs);
  out.t = 0.0;
  out.value = evaluate_univariate(coeffs, 0.0);
  for (const auto& m : out.minima)
    if (m.value < out.value) {
      out.value = m.value;
      out.t = m.t;
    }
  out.point.resize(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) out.point[i] = pt[i] + out.t * dir[i];
  return out;
}

RunReport gradient_descent(const Objective& obj, std::span<const double> start,
                           const OptimizerConfig& cfg, const CnfFormula* formula) {
  cfg.validate();
  if (start.size() != obj.dim) throw DimensionMismatch("start point has the wrong dimension");
  if (cfg.strategy == StepStrategy::LineMinima && !obj.poly)
    throw InputError("line minima strategy needs a polynomial objective");
  RunReport r;
  std::vector<double> x(start.begin(), start.end());
  std::vector<double> g(obj.dim), trial(obj.dim);
  double f = obj.value(x);
  auto finish = [&](Verdict v) {
    r.final_point = x;
    r.final_value = f;
    r.verdict = v;
    if (formula && !r.rounded_assignment) r.rounded_assignment = round_and_test(x, *formula);
    return r;
  };
  if (!std::isfinite(f)) {
    r.values.push_back(f);
    return finish(Verdict::Diverged);
  }
  auto is_zero = [&](double v) { return cfg.zero_tol > 0 ? v < cfg.zero_tol : v == 0.0; };

  for (;;) {
    obj.gradient(x, g);
    const double gn = norm2(g);
    r.values.push_back(f);
    r.grad_norms.push_back(gn);
    if (!std::isfinite(gn)) return finish(Verdict::Diverged);
    if (cfg.zero_tol > 0 && f < cfg.zero_tol) return finish(Verdict::ZeroFound);
    if (cfg.stop_at_vertex && near_vertex(x, cfg.vertex_tol)) {
      const auto v = round_point(x);
      std::vector<double> vx(v.begin(), v.end());
      const double fv = obj.value(vx);
      std::optional<std::vector<std::uint8_t>> w;
      if (formula) w = round_and_test(x, *formula);
      if (w || is_zero(fv)) {
        r.rounded_assignment = std::move(w);
        x = std::move(vx);
        f = fv;
        return finish(Verdict::ZeroFound);
      }
    }
    if (gn < cfg.grad_tol) return finish(is_zero(f) ? Verdict::ZeroFound : Verdict::LocalMin);
    if (r.iters >= cfg.max_iters) return finish(Verdict::Budget);

    double fn = f;
    bool accepted = false;
    if (cfg.strategy == StepStrategy::LineMinima) {
      std::vector<double> dir(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) dir[i] = -g[i];
      auto step = line_minima_step(*obj.poly, x, dir);
      if (step.t != 0.0) {
        fn = obj.value(step.point);
        if (!std::isfinite(fn)) return finish(Verdict::Diverged);
        if (fn <= f) {
          trial = std::move(step.point);
          accepted = true;
        }
      }
    }
    if (!accepted) {
      double h = cfg.step;
      for (int k = 0; k <= kMaxHalvings && !accepted; ++k, h *= 0.5) {
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - h * g[i];
        fn = obj.value(trial);
        if (std::isfinite(fn) && fn <= f) accepted = true;
        else if (!std::isfinite(fn) && k == kMaxHalvings) return finish(Verdict::Diverged);
      }
    }
    ++r.iters;
    if (!accepted) return finish(is_zero(f) ? Verdict::ZeroFound : Verdict::LocalMin);
    // No progress: the step underflowed against the current point.
    const bool moved = !std::equal(trial.begin(), trial.end(), x.begin());
    x.swap(trial);
    trial.resize(x.size());
    f = fn;
    if (!moved) return finish(is_zero(f) ? Verdict::ZeroFound : Verdict::LocalMin);
  }
}

RunReport smoothed_descent(const SparsePolynomial& p, std::span<const double> start,
                           const OptimizerConfig& cfg, const CnfFormula* formula) {
  cfg.validate();
  const SparsePolynomial lap = laplacian(p);
  std::vector<double> x(start.begin(), start.end());
  std::size_t total = 0;
  for (std::size_t phase = 0; phase < cfg.lambda_schedule.size(); ++phase) {
    const double lambda = cfg.lambda_schedule[phase];
    const bool last = phase + 1 == cfg.lambda_schedule.size();
    if (last) {
      auto r = gradient_descent(polynomial_objective(p), x, cfg, formula);
      r.iters += total;
      return r;
    }
    // Intermediate phases only smooth; stopping rules belong to the last one.
    OptimizerConfig inner = cfg;
    inner.stop_at_vertex = false;
    inner.zero_tol = 0;
    inner.strategy = StepStrategy::Backtracking;
    auto obj = polynomial_objective(p);
    if (lambda != 0.0) {
      auto base = obj;
      auto lap_obj = polynomial_objective(lap);
      obj.value = [base, lap_obj, lambda](std::span<const double> y) {
        return base.value(y) + lambda * lap_obj.value(y);
      };
      obj.gradient = [base, lap_obj, lambda, n = p.num_vars()](std::span<const double> y,
                                                               std::span<double> out) {
        std::vector<double> tmp(n);
        base.gradient(y, out);
        lap_obj.gradient(y, tmp);
        for (std::size_t i = 0; i < n; ++i) out[i] += lambda * tmp[i];
      };
      obj.poly.reset();
    }
    auto r = gradient_descent(obj, x, inner);
    total += r.iters;
    if (r.verdict == Verdict::Diverged) return r;
    x = r.final_point;
  }
  throw InputError("lambda schedule is empty");
}

std::vector<double> start_point(std::size_t dim, std::uint64_t seed, std::size_t index) {
  Rng rng(derive_seed(seed, "start", index));
  std::vector<double> x(dim);
  for (double& v : x) v = rng.uniform();
  return x;
}

std::vector<std::size_t> dedupe_points(const std::vector<std::vector<double>>& pts, double radius) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dup = false;
    for (auto r : reps) {
      double d = 0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) d = std::max(d, std::fabs(pts[i][k] - pts[r][k]));
      if (d < radius) {
        dup = true;
        break;
      }
    }
    if (!dup) reps.push_back(i);
  }
  return reps;
}

MultiStartSummary multi_start(const Objective& obj, std::size_t k, const OptimizerConfig& cfg,
                              const CnfFormula* formula) {
  cfg.validate();
  if (k == 0) throw InputError("multi_start needs at least one start");
  MultiStartSummary s;
  s.runs.resize(k);
  const unsigned threads = cfg.threads == 0 ? default_thread_count() : cfg.threads;
  parallel_for(k, threads, [&](std::size_t i) {
    s.runs[i] = gradient_descent(obj, start_point(obj.dim, cfg.seed, i), cfg, formula);
  });
  std::vector<std::vector<double>> finals;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& r = s.runs[i];
    if (i == 0 || r.final_value < s.best_value) {
      s.best_value = r.final_value;
      s.best_index = i;
    }
    s.zeros_found += r.verdict == Verdict::ZeroFound;
    finals.push_back(r.final_point);
  }
  s.distinct_minima = dedupe_points(finals, 2 * cfg.vertex_tol).size();
  return s;
}

CensusResult local_minima_census(const Objective& obj, std::size_t samples,
                                 const OptimizerConfig& cfg) {
  if (obj.dim > kCensusMaxDim)
    throw InstanceTooLarge("census limited to " + std::to_string(kCensusMaxDim) + " variables");
  OptimizerConfig c = cfg;
  c.stop_at_vertex = false;
  c.zero_tol = 0;
  auto ms = multi_start(obj, samples, c);
  std::vector<std::vector<double>> finals;
  for (const auto& r : ms.runs) finals.push_back(r.final_point);
  CensusResult out;
  std::vector<double> g(obj.dim);
  for (auto idx : dedupe_points(finals, 2 * cfg.vertex_tol)) {
    const auto& x = finals[idx];
    obj.gradient(x, g);
    const double fx = obj.value(x);
    bool ok = norm2(g) < cfg.grad_tol;
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < obj.dim && ok; ++i)
      for (double sgn : {-1.0, 1.0}) {
        probe[i] = x[i] + sgn * cfg.vertex_tol;
        ok = ok && obj.value(probe) > fx;
        probe[i] = x[i];
      }
    if (!ok) {
      ++out.rejected;
      continue;
    }
    out.representatives.push_back(x);
    out.values.push_back(fx);
  }
  out.count = out.representatives.size();
  return out;
}

nlohmann::json to_json(const MultiStartSummary& s) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : s.runs) runs.push_back(to_json(r));
  return {{"best_value", s.best_value},
          {"best_index", s.best_index},
          {"distinct_minima", s.distinct_minima},
          {"zeros_found", s.zeros_found},
          {"runs", runs}};
}

nlohmann::json to_json(const CensusResult& c) {
  return {{"count", c.count},
          {"representatives", c.representatives},
          {"values", c.values},
          {"rejected", c.rejected}};
}

}  // namespace npforge
