// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "npforge/errors.hpp"
#include "npforge/geometry_reduce.hpp"
#include "npforge/graph.hpp"
#include "npforge/grassmann.hpp"
#include "npforge/misc_encodings.hpp"
#include "npforge/optimize.hpp"
#include "npforge/parallel.hpp"
#include "npforge/polynomial.hpp"
#include "npforge/rng.hpp"
#include "npforge/sat_encode.hpp"
#include "npforge/srg_iso.hpp"
#include "npforge/subset_sum.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace npforge::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kSchemaPrefix = "npforge.";
constexpr int kSchemaVersion = 1;

// Malformed input that already names its file.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  bool oracle = false;
  std::uint64_t seed = 1;
  std::string config;
  unsigned threads = 0;
  std::string output;
  bool seed_given = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--oracle", c.oracle, "Also run the brute-force verifier; exit 3 on disagreement");
  sub->add_option_function<std::uint64_t>(
      "--seed",
      [&c](std::uint64_t v) {
        c.seed = v;
        c.seed_given = true;
      },
      "Root seed for every random stream (default 1)");
  sub->add_option("--config", c.config, "Optimizer configuration (JSON)")->check(CLI::ExistingFile);
  sub->add_option("--threads", c.threads, "Worker cap (default: NPFORGE_THREADS or all cores)");
  sub->add_option("-o,--output", c.output, "Report path");
}

unsigned threads_of(const Common& c) { return c.threads ? c.threads : default_thread_count(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a parser and prefixes its errors with the file name.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw FileError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw FileError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw FileError(path + ": cannot write file");
  outf << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

/// dir/stem.<tag>.json for input dir/stem.ext; <tag>.json without input.
std::string derived_path(const std::string& input, const std::string& tag,
                         const std::string& ext = ".json") {
  if (input.empty()) return tag + ext;
  const fs::path p(input);
  return (p.parent_path() / (p.stem().string() + "." + tag + ext)).string();
}

json stamp(const std::string& kind) {
  return {{"schema", std::string(kSchemaPrefix) + kind + "/" + std::to_string(kSchemaVersion)}};
}

void require_oracle(bool ok, const std::string& what) {
  if (!ok) throw OracleMismatch("oracle disagreement: " + what);
}

bool is_json_path(const std::string& path) { return fs::path(path).extension() == ".json"; }

CnfFormula load_cnf(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_dimacs(t); });
}

Graph load_graph(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_graph(t); });
}

/// Polynomial JSON (bare, or an encode report with a "polynomial" field).
SparsePolynomial load_polynomial(const std::string& path) {
  return parse_file(path, [](const std::string& t) {
    const json j = json::parse(t);
    return polynomial_from_json(j.contains("polynomial") ? j.at("polynomial") : j);
  });
}

OptimizerConfig load_config(const Common& c) {
  OptimizerConfig cfg;
  if (!c.config.empty())
    cfg = parse_file(c.config, [](const std::string& t) { return config_from_json(json::parse(t)); });
  if (c.seed_given) cfg.seed = c.seed;
  if (c.threads) cfg.threads = c.threads;
  cfg.validate();
  return cfg;
}

// Reports must not depend on the worker count.
json report_config(const OptimizerConfig& cfg) {
  json j = to_json(cfg);
  j.erase("threads");
  return j;
}

std::string bits_string(std::uint64_t mask, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1) s[i] = '1';
  return s;
}

// ---- encode ----------------------------------------------------------------

struct EncodeArgs {
  std::string input;
  std::string method = "deg4";
};

int cmd_encode(const EncodeArgs& a, const Common& c, std::ostream& out) {
  const auto f = load_cnf(a.input);
  const EncodingId id = [&] {
    try {
      return parse_encoding_id(a.method);
    } catch (const InputError& e) {
      throw FileError(std::string("--method: ") + e.what());
    }
  }();
  const auto inst = [&] {
    try {
      return encode(f, id);
    } catch (const InputError& e) {
      throw FileError(a.input + ": " + e.what());
    }
  }();
  const std::string poly_path = c.output.empty() ? derived_path(a.input, to_string(id)) : c.output;
  const std::string meta_path = [&] {
    fs::path p(poly_path);
    return (p.parent_path() / (p.stem().string() + ".meta.json")).string();
  }();

  json poly = stamp("encoding");
  poly["encoding"] = to_string(id);
  poly["degree"] = inst.poly.degree();
  poly["num_vars"] = inst.num_vars();
  poly["terms"] = inst.poly.size();
  poly["polynomial"] = to_json(inst.poly);

  json meta = stamp("encoding-meta");
  meta.update(sidecar_json(inst));
  meta["source"] = fs::path(a.input).filename().string();
  meta["clauses"] = f.clauses.size();

  std::string oracle_note;
  if (c.oracle) {
    const bool sat = sat_oracle(f).satisfiable;
    const Integer mn = boolean_lattice_minimum(inst);
    require_oracle((mn == 0) == sat, "lattice minimum " + to_decimal(mn) + " but formula is " +
                                         (sat ? "SAT" : "UNSAT"));
    require_oracle(static_cast<int>(inst.poly.degree()) <= expected_degree(id),
                   "degree exceeds the method bound");
    meta["oracle"] = {{"satisfiable", sat}, {"lattice_minimum", to_decimal(mn)}};
    oracle_note = sat ? ", oracle SAT" : ", oracle UNSAT";
  }
  write_json(poly_path, poly);
  write_json(meta_path, meta);
  out << "encode " << to_string(id) << ": " << inst.num_vars() << " variables (" << inst.original_vars
      << " original, " << inst.aux_vars << " auxiliary), degree " << inst.poly.degree() << ", "
      << inst.poly.size() << " terms" << oracle_note << " -> " << poly_path << "\n";
  return kOk;
}

// ---- reduce-plane / reduce-sphere / pack-ss --------------------------------

struct Reduced {
  std::optional<CnfFormula> formula;
  SparsePolynomial poly;
  PlaneReduction red;
};

Reduced reduce_input(const std::string& input) {
  Reduced r;
  if (is_json_path(input)) {
    r.poly = load_polynomial(input);
  } else {
    r.formula = load_cnf(input);
    r.poly = encode_quadratic(*r.formula).poly;
  }
  try {
    r.red = reduce_plane(to_quadratic_form(r.poly));
  } catch (const InputError& e) {
    throw FileError(input + ": " + e.what());
  } catch (const UnsupportedDegree& e) {
    throw FileError(input + ": " + e.what());
  }
  return r;
}

// Ground truth for "has a boolean zero": the SAT oracle for formulas, direct
// enumeration for polynomials.
bool boolean_zero_truth(const Reduced& r) {
  if (r.formula) return sat_oracle(*r.formula).satisfiable;
  return boolean_lattice_minimum_direct(r.poly) == 0;
}

void need_hypercube_size(std::size_t n) {
  if (n > kHypercubeOracleMax)
    throw InstanceTooLarge("hypercube oracle supports at most " +
                           std::to_string(kHypercubeOracleMax) + " variables, got " +
                           std::to_string(n));
}

json reduction_json(const Reduced& r) {
  json j;
  j["num_vars"] = r.poly.num_vars();
  j["verdict"] = r.red.verdict == PlaneReduction::Verdict::Plane ? "Plane" : "NoZero";
  j["consistent"] = r.red.consistent;
  j["min_value"] = r.red.consistent ? to_fraction_string(r.red.min_value) : "";
  return j;
}

int cmd_reduce_plane(const std::string& input, const Common& c, std::ostream& out) {
  const auto r = reduce_input(input);
  json rep = stamp("reduce-plane");
  rep.update(reduction_json(r));
  const bool plane = r.red.verdict == PlaneReduction::Verdict::Plane;
  if (plane) rep["plane"] = to_json(r.red.plane);
  if (c.oracle) {
    need_hypercube_size(r.poly.num_vars());
    const bool hit = plane && plane_hypercube_oracle(r.red.plane).has_value();
    const bool truth = boolean_zero_truth(r);
    require_oracle(hit == truth, std::string("plane meets the hypercube: ") + (hit ? "yes" : "no") +
                                     ", boolean zero exists: " + (truth ? "yes" : "no"));
    rep["oracle"] = {{"boolean_zero", truth}, {"plane_hits_hypercube", hit}};
  }
  const std::string path = c.output.empty() ? derived_path(input, "plane") : c.output;
  write_json(path, rep);
  out << "reduce-plane: " << rep["verdict"].get<std::string>();
  if (plane) out << " of rank " << r.red.plane.rank() << " in " << r.red.plane.n << " variables";
  out << " -> " << path << "\n";
  return kOk;
}

int cmd_reduce_sphere(const std::string& input, const Common& c, std::ostream& out) {
  const auto r = reduce_input(input);
  json rep = stamp("reduce-sphere");
  rep.update(reduction_json(r));
  const bool plane = r.red.verdict == PlaneReduction::Verdict::Plane;
  std::optional<Sphere> sphere;
  if (plane) {
    sphere = plane_to_sphere(r.red.plane);
    rep["sphere"] = to_json(*sphere);
    rep["verdict"] = sphere->empty() ? "Empty" : "Sphere";
  }
  if (c.oracle) {
    need_hypercube_size(r.poly.num_vars());
    const bool hit = sphere && !sphere->empty() && !sphere_hypercube_points(*sphere, 1).empty();
    const bool truth = boolean_zero_truth(r);
    require_oracle(hit == truth, std::string("sphere meets the hypercube: ") + (hit ? "yes" : "no") +
                                     ", boolean zero exists: " + (truth ? "yes" : "no"));
    rep["oracle"] = {{"boolean_zero", truth}, {"sphere_hits_hypercube", hit}};
  }
  const std::string path = c.output.empty() ? derived_path(input, "sphere") : c.output;
  write_json(path, rep);
  out << "reduce-sphere: " << rep["verdict"].get<std::string>();
  if (sphere) out << " in " << sphere->center.size() << " dimensions";
  out << " -> " << path << "\n";
  return kOk;
}

int cmd_pack_ss(const std::string& input, const Common& c, std::ostream& out) {
  const auto r = reduce_input(input);
  json rep = stamp("pack-ss");
  rep.update(reduction_json(r));
  const std::string path = c.output.empty() ? derived_path(input, "packed") : c.output;
  const std::string ss_path = [&] {
    fs::path p(path);
    return (p.parent_path() / (p.stem().string() + ".ss")).string();
  }();
  std::optional<SubsetSumInstance> inst;
  if (r.red.verdict == PlaneReduction::Verdict::Plane) {
    inst = pack_subset_sum(r.red.plane);
    rep["base"] = to_decimal(packing_base(r.red.plane));
    rep["values"] = inst->values.size();
    rep["target"] = to_decimal(inst->target);
    rep["instance_file"] = fs::path(ss_path).filename().string();
    write_text(ss_path, format_subset_sum(*inst));
  }
  if (c.oracle) {
    const bool truth = boolean_zero_truth(r);
    bool solvable = false;
    if (inst) {
      if (inst->values.size() > kMeetInMiddleMax)
        throw InstanceTooLarge("subset-sum oracle supports at most " +
                               std::to_string(kMeetInMiddleMax) + " values");
      solvable = solve_subset_sum(*inst).has_value();
    }
    require_oracle(solvable == truth, std::string("packed instance solvable: ") +
                                          (solvable ? "yes" : "no") +
                                          ", boolean zero exists: " + (truth ? "yes" : "no"));
    rep["oracle"] = {{"boolean_zero", truth}, {"subset_sum_solvable", solvable}};
  }
  write_json(path, rep);
  out << "pack-ss: ";
  if (inst)
    out << inst->values.size() << " values, target " << to_decimal(inst->target) << " -> " << ss_path;
  else
    out << "NoZero, nothing to pack";
  out << " (report " << path << ")\n";
  return kOk;
}

// ---- subsetsum -------------------------------------------------------------

int cmd_subsetsum(const std::string& input, const Common& c, std::ostream& out) {
  const auto inst = parse_file(input, [](const std::string& t) { return parse_subset_sum(t); });
  if (inst.values.size() > kMeetInMiddleMax)
    throw InstanceTooLarge("subset-sum solver supports at most " + std::to_string(kMeetInMiddleMax) +
                           " values, got " + std::to_string(inst.values.size()));
  const auto norm = normalize(inst);
  const auto witness = solve_subset_sum(inst);
  json rep = stamp("subsetsum");
  rep["n"] = inst.values.size();
  rep["target"] = to_decimal(inst.target);
  rep["solvable"] = witness.has_value();
  rep["hash"] = instance_hash(norm.signed_form);
  rep["signed_values"] = norm.signed_form.values.size();
  rep["dropped_zeros"] = norm.dropped_zeros;
  if (witness) {
    std::vector<std::size_t> taken;
    for (std::size_t i = 0; i < witness->size(); ++i)
      if ((*witness)[i]) taken.push_back(i);
    rep["witness"] = taken;
  } else {
    rep["witness"] = nullptr;
  }
  const auto zeros = brute_force_zero(norm.signed_form);
  rep["zero_sign_patterns"] = zeros;
  if (c.oracle) {
    if (witness) {
      Integer s = 0;
      for (std::size_t i = 0; i < witness->size(); ++i)
        if ((*witness)[i]) s += inst.values[i];
      require_oracle(s == inst.target, "witness sums to " + to_decimal(s));
    }
    require_oracle((zeros > 0) == witness.has_value(),
                   "signed zero count " + std::to_string(zeros) + " vs solver verdict");
    json ps = json::object();
    if (norm.signed_form.values.size() <= kDirectEnumMax) {
      for (unsigned k : {0u, 2u, 4u, 6u}) {
        const auto id = power_sum_identity(k, norm.signed_form);
        require_oracle(id == power_sum_brute(k, norm.signed_form), "power sum t" + std::to_string(k));
        ps["t" + std::to_string(k)] = to_decimal(id);
      }
    }
    json oj{{"power_sums", ps}};
    // The trapezoid rule needs about 4 * sum(y) nodes; skip absurd totals.
    if (norm.signed_form.total() <= 2'000'000) {
      const double integral = cosine_integral(norm.signed_form);
      const double exact = cosine_integral_exact(norm.signed_form);
      require_oracle(std::fabs(integral - exact) < 1e-8 * (1 + 2 * std::numbers::pi),
                     "cosine integral " + std::to_string(integral) + " vs " + std::to_string(exact));
      oj["cosine_integral"] = integral;
      oj["cosine_integral_exact"] = exact;
    }
    rep["oracle"] = oj;
  }
  const std::string path = c.output.empty() ? derived_path(input, "subsetsum") : c.output;
  write_json(path, rep);
  out << "subsetsum: " << (witness ? "solvable" : "unsolvable") << ", " << zeros
      << " zero sign patterns -> " << path << "\n";
  return kOk;
}

// ---- hamilton --------------------------------------------------------------

int cmd_hamilton(const std::string& input, const Common& c, std::ostream& out) {
  const auto g = load_graph(input);
  json rep = stamp("hamilton");
  rep.update(hamilton_report(g));
  const auto cycle = hamilton_cycle(g);
  rep["cycle"] = cycle.empty() ? json(nullptr) : json(cycle);
  if (c.oracle) {
    const auto trace = rep["trace"].get<std::int64_t>();
    const auto directed = rep["directed_cycles"].get<std::uint64_t>();
    require_oracle(trace == static_cast<std::int64_t>(g.size() * directed),
                   "trace " + std::to_string(trace) + " vs n * directed cycles");
    require_oracle((trace != 0) == !cycle.empty(), "trace vs explicit cycle search");
    if (!cycle.empty()) {
      bool ok = cycle.size() == g.size();
      for (std::size_t i = 0; ok && i < cycle.size(); ++i)
        ok = g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]);
      require_oracle(ok, "reported cycle is not a Hamilton cycle");
    }
    json oj{{"trace_matches_count", true}};
    if (g.size() <= 10) {
      const Integer dt = derivative_trace(g);
      require_oracle(dt == trace, "derivative route gives " + to_decimal(dt));
      oj["derivative_trace"] = to_decimal(dt);
    }
    rep["oracle"] = oj;
  }
  const std::string path = c.output.empty() ? derived_path(input, "hamilton") : c.output;
  write_json(path, rep);
  out << "hamilton: n=" << g.size() << ", trace " << rep["trace"].get<std::int64_t>() << ", "
      << (rep["has_hamilton"].get<bool>() ? "Hamiltonian" : "not Hamiltonian") << " -> " << path
      << "\n";
  return kOk;
}

// ---- optimize / census -----------------------------------------------------

struct OptimizeArgs {
  std::string input;
  std::string method = "deg6";
  std::size_t starts = 32;
  std::string log;
  bool smoothed = false;
};

int cmd_optimize(const OptimizeArgs& a, const Common& c, std::ostream& out) {
  const auto cfg = load_config(c);
  std::optional<CnfFormula> formula;
  SparsePolynomial poly;
  std::string encoding = "polynomial";
  if (is_json_path(a.input)) {
    poly = load_polynomial(a.input);
  } else {
    formula = load_cnf(a.input);
    const auto id = parse_encoding_id(a.method);
    try {
      poly = encode(*formula, id).poly;
    } catch (const InputError& e) {
      throw FileError(a.input + ": " + e.what());
    }
    encoding = to_string(id);
  }
  if (a.starts == 0) throw InputError("--starts must be positive");
  const CnfFormula* fp = formula ? &*formula : nullptr;
  MultiStartSummary summary;
  if (a.smoothed) {
    // Same starts as multi_start so results are comparable.
    summary.runs.resize(a.starts);
    parallel_for(a.starts, cfg.threads ? cfg.threads : default_thread_count(), [&](std::size_t i) {
      const auto s = start_point(poly.num_vars(), cfg.seed, i);
      summary.runs[i] = smoothed_descent(poly, s, cfg, fp);
    });
    summary.best_value = summary.runs[0].final_value;
    for (std::size_t i = 0; i < summary.runs.size(); ++i) {
      if (summary.runs[i].final_value < summary.best_value) {
        summary.best_value = summary.runs[i].final_value;
        summary.best_index = i;
      }
      summary.zeros_found += summary.runs[i].verdict == Verdict::ZeroFound;
    }
    std::vector<std::vector<double>> pts;
    for (const auto& r : summary.runs) pts.push_back(r.final_point);
    summary.distinct_minima = dedupe_points(pts, 2 * cfg.vertex_tol).size();
  } else {
    summary = multi_start(polynomial_objective(poly), a.starts, cfg, fp);
  }
  json rep = stamp("optimize");
  rep["encoding"] = encoding;
  rep["num_vars"] = poly.num_vars();
  rep["starts"] = a.starts;
  rep["smoothed"] = a.smoothed;
  rep["config"] = report_config(cfg);
  rep["summary"] = to_json(summary);
  if (c.oracle) {
    json oj;
    // Only zeros at a cube vertex certify anything; the quadratic encoding
    // also vanishes on non-boolean points of its plane.
    std::size_t vertex_zeros = 0;
    bool all_satisfy = true;
    for (const auto& r : summary.runs) {
      if (r.verdict != Verdict::ZeroFound) continue;
      const auto v = round_point(r.final_point);
      double dist = 0;
      for (std::size_t i = 0; i < v.size(); ++i) dist = std::max(dist, std::fabs(r.final_point[i] - v[i]));
      if (dist >= cfg.vertex_tol) continue;
      ++vertex_zeros;
      if (formula) {
        std::vector<std::uint8_t> orig(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(formula->num_vars));
        all_satisfy = all_satisfy && satisfies(*formula, orig);
      }
    }
    oj["vertex_zeros"] = vertex_zeros;
    if (formula) {
      const bool sat = sat_oracle(*formula).satisfiable;
      require_oracle(all_satisfy, "a zero at a vertex does not satisfy the formula");
      require_oracle(sat || vertex_zeros == 0, "vertex zero found on an unsatisfiable formula");
      oj["satisfiable"] = sat;
    } else if (poly.num_vars() <= kHypercubeOracleMax) {
      const Integer mn = boolean_lattice_minimum_direct(poly);
      require_oracle(mn == 0 || vertex_zeros == 0, "vertex zero but the boolean minimum is " + to_decimal(mn));
      oj["boolean_minimum"] = to_decimal(mn);
    }
    rep["oracle"] = oj;
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "optimize") : c.output;
  write_json(path, rep);
  if (!a.log.empty()) write_text(a.log, run_log_csv(summary.runs[summary.best_index]));
  out << "optimize " << encoding << ": " << a.starts << " starts, best value " << summary.best_value
      << ", " << summary.zeros_found << " zeros, " << summary.distinct_minima
      << " distinct end points -> " << path << "\n";
  return kOk;
}

struct CensusArgs {
  std::string input;
  std::size_t dim = 2;
  std::size_t samples = 0;
};

int cmd_census(const CensusArgs& a, const Common& c, std::ostream& out) {
  const auto cfg = load_config(c);
  SparsePolynomial poly;
  bool penalty = false;
  if (!a.input.empty()) {
    poly = load_polynomial(a.input);
  } else {
    if (a.dim == 0) throw InputError("--dim must be positive");
    std::vector<std::uint32_t> vars(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) vars[i] = static_cast<std::uint32_t>(i);
    poly = boolean_penalty(vars, a.dim);
    penalty = true;
  }
  const std::size_t n = poly.num_vars();
  if (n > kCensusMaxDim)
    throw InstanceTooLarge("census supports at most " + std::to_string(kCensusMaxDim) +
                           " dimensions, got " + std::to_string(n));
  const std::size_t samples = a.samples ? a.samples : 500 * (std::size_t{1} << n);
  const auto res = local_minima_census(polynomial_objective(poly), samples, cfg);
  json rep = stamp("census");
  rep["objective"] = penalty ? "boolean_penalty" : "polynomial";
  rep["num_vars"] = n;
  rep["samples"] = samples;
  rep["config"] = report_config(cfg);
  rep["census"] = to_json(res);
  if (c.oracle && penalty) {
    const std::size_t expected = std::size_t{1} << n;
    require_oracle(res.count == expected, "census found " + std::to_string(res.count) +
                                              " minima, the penalty has " + std::to_string(expected));
    rep["oracle"] = {{"expected", expected}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "census") : c.output;
  write_json(path, rep);
  out << "census: " << res.count << " local minima in " << n << " dimensions from " << samples
      << " starts -> " << path << "\n";
  return kOk;
}

// ---- srg -------------------------------------------------------------------

struct SrgArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> fixtures;
  std::optional<double> lambda;
  std::size_t kmax = 6;
  std::string csv;
};

json srg_graph_json(const std::string& id, const Graph& g, const SrgArgs& a, const Common& c,
                    InvariantVector& inv) {
  const auto chk = check_srg(g);
  if (!chk.params) throw FileError(id + ": not strongly regular (" + chk.reason + ")");
  const auto& p = *chk.params;
  const auto eig = srg_eigen(p);
  const auto pc = a.lambda ? eigenspace_points(g, *a.lambda) : eigenspace_points(g);
  SrgInvariantConfig ic;
  ic.lambda = a.lambda;
  ic.kmax = a.kmax;
  inv = srg_invariants(pc, ic);
  json j{{"id", id},
         {"params", {{"m", p.m}, {"k", p.k}, {"nu", p.nu}, {"mu", p.mu}}},
         {"spectrum",
          {{"principal", {eig.principal.value, eig.principal.multiplicity}},
           {"plus", {eig.plus.value, eig.plus.multiplicity}},
           {"minus", {eig.minus.value, eig.minus.multiplicity}}}},
         {"eigenspace", {{"lambda", pc.lambda}, {"dim", pc.n}, {"beta", pc.beta}, {"gamma", pc.gamma}}},
         {"neighborhood_components", neighborhood_components(g)}};
  json ij = json::object();
  for (const auto& [l, v] : inv.entries) ij[l] = v;
  j["invariants"] = ij;
  if (c.oracle) {
    const auto num = numeric_spectrum(g);
    require_oracle(num.size() == 3, id + ": numeric spectrum has " + std::to_string(num.size()) +
                                        " distinct eigenvalues");
    require_oracle(std::fabs(num[0].value - eig.minus.value) < 1e-8 &&
                       std::fabs(num[1].value - eig.plus.value) < 1e-8 &&
                       num[0].multiplicity == eig.minus.multiplicity &&
                       num[1].multiplicity == eig.plus.multiplicity,
                   id + ": numeric and analytic spectra differ");
    const double resid = three_angle_residual(pc, g);
    require_oracle(resid < 1e-8, id + ": three-angle residual " + std::to_string(resid));
    Rng rng(derive_seed(c.seed, "srg-relabel"));
    std::vector<std::size_t> perm(g.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    const auto cmp = compare_invariants(inv, srg_invariants(relabel(g, perm), ic), 1e-8);
    require_oracle(cmp.verdict == Comparison::Indistinguishable,
                   id + ": invariants change under relabeling (" + std::to_string(cmp.max_rel_delta) + ")");
    j["oracle"] = {{"three_angle_residual", resid}, {"relabel_max_rel_delta", cmp.max_rel_delta}};
  }
  return j;
}

int cmd_srg(const SrgArgs& a, const Common& c, std::ostream& out) {
  std::vector<std::pair<std::string, Graph>> graphs;
  for (const auto& in : a.inputs) graphs.emplace_back(fs::path(in).stem().string(), load_graph(in));
  for (const auto& fx : a.fixtures) {
    if (fx == "rook")
      graphs.emplace_back("rook", rook_graph(4));
    else if (fx == "shrikhande")
      graphs.emplace_back("shrikhande", shrikhande_graph());
    else
      throw InputError("--fixture must be rook or shrikhande, got '" + fx + "'");
  }
  if (graphs.empty() || graphs.size() > 2) throw InputError("srg takes one or two graphs");
  json rep = stamp("srg");
  rep["graphs"] = json::array();
  std::vector<std::pair<std::string, InvariantVector>> rows;
  for (const auto& [id, g] : graphs) {
    InvariantVector inv;
    rep["graphs"].push_back(srg_graph_json(id, g, a, c, inv));
    rows.emplace_back(id, std::move(inv));
  }
  std::string verdict;
  if (rows.size() == 2) {
    const auto cmp = compare_invariants(rows[0].second, rows[1].second);
    rep["comparison"] = to_json(cmp);
    verdict = to_string(cmp.verdict);
  }
  const std::string in0 = a.inputs.empty() ? "" : a.inputs[0];
  const std::string path = c.output.empty() ? derived_path(in0, "srg") : c.output;
  write_json(path, rep);
  if (!a.csv.empty()) write_text(a.csv, invariants_csv(rows));
  out << "srg: " << rows.size() << " graph(s), " << rows[0].second.entries.size() << " invariants";
  if (!verdict.empty()) out << ", " << verdict << " (max rel delta " << rep["comparison"]["max_rel_delta"].get<double>() << ")";
  out << " -> " << path << "\n";
  return kOk;
}

// ---- misc ------------------------------------------------------------------

struct MiscArgs {
  std::uint64_t n = 15;
  std::string input;
  std::size_t k = 3;
  std::vector<std::size_t> set;
  std::size_t starts = 64;
  std::string sigmoid = "logistic";
};

std::vector<std::uint8_t> selection(const Graph& g, const std::vector<std::size_t>& set) {
  std::vector<std::uint8_t> v(g.size(), 0);
  for (auto i : set) {
    if (i >= g.size()) throw InputError("--set index " + std::to_string(i) + " out of range");
    v[i] = 1;
  }
  return v;
}

int cmd_misc_factor(const MiscArgs& a, const Common& c, std::ostream& out) {
  if (a.n < 2) throw InputError("--n must be at least 2");
  if (a.n > 10'000'000) throw InstanceTooLarge("factor scan supports n up to 10^7");
  json rep = stamp("misc-factor");
  rep["n"] = a.n;
  std::vector<std::uint64_t> peaks;
  for (std::uint64_t x = 1; x <= a.n; ++x)
    if (factorization_objective(a.n, static_cast<double>(x)) == 2.0) peaks.push_back(x);
  rep["peaks"] = peaks;
  std::uint64_t small = 0;
  for (auto x : peaks)
    if (x > 1 && x < a.n) {
      small = x;
      break;
    }
  rep["nontrivial_factor"] = small ? json(small) : json(nullptr);
  if (c.oracle) {
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t x = 1; x <= a.n; ++x)
      if (a.n % x == 0) divisors.push_back(x);
    require_oracle(divisors == peaks, "objective peaks differ from the divisor list");
    rep["oracle"] = {{"divisors", divisors.size()}};
  }
  const std::string path = c.output.empty() ? derived_path("", "factor") : c.output;
  write_json(path, rep);
  out << "misc factor: n=" << a.n << ", " << peaks.size() << " integer peaks at value 2";
  if (small) out << ", factor " << small << " x " << a.n / small;
  out << " -> " << path << "\n";
  return kOk;
}

int cmd_misc_monomials(const MiscArgs& a, const Common& c, std::ostream& out) {
  const auto f = load_cnf(a.input);
  const Integer count = sat_monomial_count(f, threads_of(c));
  json rep = stamp("misc-monomials");
  rep["num_vars"] = f.num_vars;
  rep["clauses"] = f.clauses.size();
  rep["product_sum"] = to_decimal(count);
  rep["satisfiable"] = count > 0;
  if (c.oracle) {
    const Integer direct = sat_product_sum_direct(f);
    require_oracle(direct == count, "direct enumeration gives " + to_decimal(direct));
    const bool sat = sat_oracle(f).satisfiable;
    require_oracle(sat == (count > 0), "positivity disagrees with the SAT oracle");
    rep["oracle"] = {{"direct", to_decimal(direct)}, {"satisfiable", sat}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "monomials") : c.output;
  write_json(path, rep);
  out << "misc monomials: sum " << to_decimal(count) << ", " << (count > 0 ? "SAT" : "UNSAT")
      << " -> " << path << "\n";
  return kOk;
}

int cmd_misc_clique(const MiscArgs& a, const Common& c, std::ostream& out) {
  const auto g = load_graph(a.input);
  const auto res = clique_objective_max(g, a.k);
  const auto kk = static_cast<std::int64_t>(a.k * (a.k == 0 ? 0 : a.k - 1));
  json rep = stamp("misc-clique");
  rep["k"] = a.k;
  rep["best"] = res.best;
  rep["clique_value"] = kk;
  rep["has_clique"] = res.best == kk;
  json masks = json::array();
  for (auto m : res.argmax) masks.push_back(bits_string(m, g.size()));
  rep["argmax"] = masks;
  if (c.oracle) {
    bool all = true;
    for (auto m : res.argmax) all = all && is_clique(g, m);
    require_oracle(!(res.best == kk) || all, "a maximiser of value k(k-1) is not a clique");
    rep["oracle"] = {{"argmax_are_cliques", all}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "clique") : c.output;
  write_json(path, rep);
  out << "misc clique: k=" << a.k << ", max " << res.best << (res.best == kk ? " (clique)" : " (no clique)")
      << " -> " << path << "\n";
  return kOk;
}

int cmd_misc_cover(const MiscArgs& a, const Common& c, std::ostream& out) {
  const auto g = load_graph(a.input);
  const auto v = selection(g, a.set);
  std::size_t k = 0;
  for (auto b : v) k += b;
  json rep = stamp("misc-cover");
  rep["set"] = a.set;
  rep["cone_feasible"] = vertex_cover_feasible(g, v, k);
  rep["incidence_feasible"] = vertex_cover_incidence_feasible(g, v, k);
  if (c.oracle) {
    require_oracle(rep["cone_feasible"].get<bool>() == is_dominating_set(g, v),
                   "unit-diagonal cone vs dominating-set check");
    require_oracle(rep["incidence_feasible"].get<bool>() == is_vertex_cover(g, v),
                   "incidence cone vs edge check");
    rep["oracle"] = {{"is_vertex_cover", is_vertex_cover(g, v)}, {"is_dominating_set", is_dominating_set(g, v)}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "cover") : c.output;
  write_json(path, rep);
  out << "misc cover: cone " << (rep["cone_feasible"].get<bool>() ? "feasible" : "infeasible")
      << ", incidence " << (rep["incidence_feasible"].get<bool>() ? "feasible" : "infeasible")
      << " -> " << path << "\n";
  return kOk;
}

int cmd_misc_coloring(const MiscArgs& a, const Common& c, std::ostream& out) {
  const auto g = load_graph(a.input);
  auto cfg = load_config(c);
  cfg.stop_at_vertex = false;
  const auto obj = coloring_function(g);
  std::vector<RunReport> runs(a.starts);
  parallel_for(a.starts, cfg.threads ? cfg.threads : default_thread_count(), [&](std::size_t i) {
    auto s = start_point(g.size(), cfg.seed, i);
    for (auto& x : s) x *= 2 * std::numbers::pi;
    runs[i] = gradient_descent(obj, s, cfg);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].final_value < runs[best].final_value) best = i;
  json rep = stamp("misc-coloring");
  rep["starts"] = a.starts;
  rep["best_value"] = runs.empty() ? json(nullptr) : json(runs[best].final_value);
  std::size_t zeros = 0;
  bool all_proper = true;
  for (const auto& r : runs) {
    if (r.final_value >= cfg.zero_tol) continue;
    ++zeros;
    all_proper = all_proper && is_proper_coloring(g, round_coloring(g, r.final_point));
  }
  rep["zeros"] = zeros;
  if (!runs.empty() && runs[best].final_value < cfg.zero_tol)
    rep["coloring"] = round_coloring(g, runs[best].final_point);
  if (c.oracle) {
    require_oracle(all_proper, "a zero of the objective rounds to an improper colouring");
    rep["oracle"] = {{"zeros_proper", all_proper}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "coloring") : c.output;
  write_json(path, rep);
  out << "misc coloring: " << zeros << " of " << a.starts << " starts reached zero -> " << path << "\n";
  return kOk;
}

int cmd_misc_sigmoid(const MiscArgs& a, const Common& c, std::ostream& out) {
  const auto poly = load_polynomial(a.input);
  const auto kind = parse_sigmoid_kind(a.sigmoid);
  const auto cfg = load_config(c);
  const auto obj = sigmoid_substitute(poly, kind);
  std::vector<RunReport> runs(a.starts);
  parallel_for(a.starts, cfg.threads ? cfg.threads : default_thread_count(), [&](std::size_t i) {
    auto s = start_point(poly.num_vars(), cfg.seed, i);
    for (auto& z : s) z = 4.0 * z - 2.0;
    auto plain = cfg;
    plain.stop_at_vertex = false;
    runs[i] = gradient_descent(obj, s, plain);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].final_value < runs[best].final_value) best = i;
  json rep = stamp("misc-sigmoid");
  rep["kind"] = to_string(kind);
  rep["starts"] = a.starts;
  rep["best_value"] = runs[best].final_value;
  std::vector<double> x;
  for (double z : runs[best].final_point) x.push_back(sigmoid(kind, z));
  rep["best_point"] = x;
  if (c.oracle) {
    const double direct = evaluate(poly, x);
    require_oracle(std::fabs(direct - runs[best].final_value) <= 1e-9 * (1 + std::fabs(direct)),
                   "substituted value differs from direct evaluation");
    rep["oracle"] = {{"direct_value", direct}};
  }
  const std::string path = c.output.empty() ? derived_path(a.input, "sigmoid") : c.output;
  write_json(path, rep);
  out << "misc sigmoid " << to_string(kind) << ": best value " << runs[best].final_value << " -> "
      << path << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"npforge: reductions between NP problems, continuous encodings and invariants"};
  app.require_subcommand(1);
  app.name("npforge");
  app.set_version_flag("--version", "npforge 0.1.0");

  Common common;
  std::function<int()> action;

  EncodeArgs enc;
  auto* s_encode = app.add_subcommand("encode", "Encode a DIMACS CNF as a polynomial");
  s_encode->add_option("input", enc.input, "CNF file")->required()->check(CLI::ExistingFile);
  s_encode->add_option("--method", enc.method, "deg14, deg8, deg6, deg4 or quadratic");
  add_common(s_encode, common);
  s_encode->callback([&] { action = [&] { return cmd_encode(enc, common, out); }; });

  std::string plane_in;
  auto* s_plane = app.add_subcommand("reduce-plane", "Zero set of the quadratic encoding as a plane");
  s_plane->add_option("input", plane_in, "CNF or polynomial JSON")->required()->check(CLI::ExistingFile);
  add_common(s_plane, common);
  s_plane->callback([&] { action = [&] { return cmd_reduce_plane(plane_in, common, out); }; });

  std::string sphere_in;
  auto* s_sphere = app.add_subcommand("reduce-sphere", "Plane to sphere crossing problem");
  s_sphere->add_option("input", sphere_in, "CNF or polynomial JSON")->required()->check(CLI::ExistingFile);
  add_common(s_sphere, common);
  s_sphere->callback([&] { action = [&] { return cmd_reduce_sphere(sphere_in, common, out); }; });

  std::string pack_in;
  auto* s_pack = app.add_subcommand("pack-ss", "Pack the plane into a Subset-Sum instance");
  s_pack->add_option("input", pack_in, "CNF or polynomial JSON")->required()->check(CLI::ExistingFile);
  add_common(s_pack, common);
  s_pack->callback([&] { action = [&] { return cmd_pack_ss(pack_in, common, out); }; });

  std::string ss_in;
  auto* s_ss = app.add_subcommand("subsetsum", "Solve and analyse a Subset-Sum instance");
  s_ss->add_option("input", ss_in, "Instance file")->required()->check(CLI::ExistingFile);
  add_common(s_ss, common);
  s_ss->callback([&] { action = [&] { return cmd_subsetsum(ss_in, common, out); }; });

  std::string ham_in;
  auto* s_ham = app.add_subcommand("hamilton", "Grassmann trace Hamilton cycle test");
  s_ham->add_option("input", ham_in, "Graph file")->required()->check(CLI::ExistingFile);
  add_common(s_ham, common);
  s_ham->callback([&] { action = [&] { return cmd_hamilton(ham_in, common, out); }; });

  OptimizeArgs opt;
  auto* s_opt = app.add_subcommand("optimize", "Multi-start gradient descent on an encoding");
  s_opt->add_option("input", opt.input, "CNF or polynomial JSON")->required()->check(CLI::ExistingFile);
  s_opt->add_option("--method", opt.method, "Encoding for CNF input");
  s_opt->add_option("--starts", opt.starts, "Number of starts");
  s_opt->add_option("--log", opt.log, "CSV trajectory of the best run");
  s_opt->add_flag("--smoothed", opt.smoothed, "Use the lambda schedule from the config");
  add_common(s_opt, common);
  s_opt->callback([&] { action = [&] { return cmd_optimize(opt, common, out); }; });

  CensusArgs cen;
  auto* s_cen = app.add_subcommand("census", "Count local minima by multi-start descent");
  s_cen->add_option("input", cen.input, "Polynomial JSON (default: boolean penalty)")->check(CLI::ExistingFile);
  s_cen->add_option("--dim", cen.dim, "Dimension of the boolean penalty");
  s_cen->add_option("--samples", cen.samples, "Starts (default 500 * 2^N)");
  add_common(s_cen, common);
  s_cen->callback([&] { action = [&] { return cmd_census(cen, common, out); }; });

  SrgArgs srg;
  double lambda = 0;
  auto* s_srg = app.add_subcommand("srg", "Strongly regular graph invariants and comparison");
  s_srg->add_option("inputs", srg.inputs, "One or two graph files")->check(CLI::ExistingFile);
  s_srg->add_option("--fixture", srg.fixtures, "Built-in graph: rook or shrikhande");
  auto* lam_opt = s_srg->add_option("--lambda", lambda, "Eigenvalue (default: smaller eigenspace)");
  s_srg->add_option("--kmax", srg.kmax, "Thick-cycle length");
  s_srg->add_option("--csv", srg.csv, "Invariant table (graph,label,value)");
  add_common(s_srg, common);
  s_srg->callback([&] {
    if (lam_opt->count() > 0) srg.lambda = lambda;
    action = [&] { return cmd_srg(srg, common, out); };
  });

  MiscArgs misc;
  auto* s_misc = app.add_subcommand("misc", "Smaller formulations");
  s_misc->require_subcommand(1);
  auto* m_factor = s_misc->add_subcommand("factor", "Periodic factorization objective on integers");
  m_factor->add_option("--n", misc.n, "Number to factor")->required();
  add_common(m_factor, common);
  m_factor->callback([&] { action = [&] { return cmd_misc_factor(misc, common, out); }; });
  auto* m_mono = s_misc->add_subcommand("monomials", "Monomial count of a CNF");
  m_mono->add_option("input", misc.input, "CNF file")->required()->check(CLI::ExistingFile);
  add_common(m_mono, common);
  m_mono->callback([&] { action = [&] { return cmd_misc_monomials(misc, common, out); }; });
  auto* m_clique = s_misc->add_subcommand("clique", "Clique objective maximum");
  m_clique->add_option("input", misc.input, "Graph file")->required()->check(CLI::ExistingFile);
  m_clique->add_option("--k", misc.k, "Clique size");
  add_common(m_clique, common);
  m_clique->callback([&] { action = [&] { return cmd_misc_clique(misc, common, out); }; });
  auto* m_cover = s_misc->add_subcommand("cover", "Vertex cover cone tests for a vertex set");
  m_cover->add_option("input", misc.input, "Graph file")->required()->check(CLI::ExistingFile);
  m_cover->add_option("--set", misc.set, "Selected vertices")->delimiter(',');
  add_common(m_cover, common);
  m_cover->callback([&] { action = [&] { return cmd_misc_cover(misc, common, out); }; });
  auto* m_color = s_misc->add_subcommand("coloring", "3-colouring spin-glass descent");
  m_color->add_option("input", misc.input, "Graph file")->required()->check(CLI::ExistingFile);
  m_color->add_option("--starts", misc.starts, "Number of starts");
  add_common(m_color, common);
  m_color->callback([&] { action = [&] { return cmd_misc_coloring(misc, common, out); }; });
  auto* m_sig = s_misc->add_subcommand("sigmoid", "Descent on p(f(z)) over unconstrained z");
  m_sig->add_option("input", misc.input, "Polynomial JSON")->required()->check(CLI::ExistingFile);
  m_sig->add_option("--kind", misc.sigmoid, "logistic or arctan");
  m_sig->add_option("--starts", misc.starts, "Number of starts");
  add_common(m_sig, common);
  m_sig->callback([&] { action = [&] { return cmd_misc_sigmoid(misc, common, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    return action ? action() : kBadInput;
  } catch (const InstanceTooLarge& e) {
    err << "instance too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const ArithmeticOverflow& e) {
    err << "instance too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const OracleMismatch& e) {
    err << e.what() << "\n";
    return kOracleFailed;
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UnsupportedDegree& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace npforge::cli
