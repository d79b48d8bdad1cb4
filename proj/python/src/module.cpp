// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/errors.hpp"
#include "npforge/geometry_reduce.hpp"
#include "npforge/graph.hpp"
#include "npforge/grassmann.hpp"
#include "npforge/misc_encodings.hpp"
#include "npforge/optimize.hpp"
#include "npforge/polynomial.hpp"
#include "npforge/sat_encode.hpp"
#include "npforge/srg_iso.hpp"
#include "npforge/subset_sum.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace npforge;

namespace {

// JSON crosses the boundary as text; results are small.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::int_ to_py_int(const Integer& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_decimal(v).c_str(), nullptr, 10));
}

Integer from_py_int(const py::int_& v) { return parse_integer(py::repr(v).cast<std::string>()); }

std::vector<Integer> from_py_ints(const std::vector<py::int_>& vs) {
  std::vector<Integer> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(from_py_int(v));
  return out;
}

SignedInstance signed_instance(const std::vector<py::int_>& values) {
  SignedInstance si{from_py_ints(values)};
  si.validate();
  return si;
}

CnfFormula formula_from_lists(std::size_t num_vars, const std::vector<std::vector<int>>& clauses) {
  CnfFormula f;
  f.num_vars = num_vars;
  for (const auto& c : clauses) {
    Clause cl;
    for (int lit : c) {
      if (lit == 0) throw InputError("literal 0 is not allowed");
      cl.push_back(Literal{static_cast<std::uint32_t>(std::abs(lit) - 1), lit < 0});
    }
    f.clauses.push_back(std::move(cl));
  }
  f.validate();
  return f;
}

std::vector<std::vector<int>> formula_lists(const CnfFormula& f) {
  std::vector<std::vector<int>> out;
  for (const auto& c : f.clauses) {
    std::vector<int> cl;
    for (const auto& l : c) cl.push_back((l.negated ? -1 : 1) * static_cast<int>(l.var + 1));
    out.push_back(std::move(cl));
  }
  return out;
}

OptimizerConfig config_of(const py::object& cfg) {
  auto c = cfg.is_none() ? OptimizerConfig{} : config_from_json(from_py(cfg));
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continuous encodings of NP problems and graph invariants";

  static py::exception<InstanceTooLarge> too_large(m, "InstanceTooLarge", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InstanceTooLarge& e) {
      PyErr_SetString(too_large.ptr(), e.what());
    } catch (const ArithmeticOverflow& e) {
      PyErr_SetString(too_large.ptr(), e.what());
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DimensionMismatch& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const UnsupportedDegree& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<SparsePolynomial>(m, "Polynomial")
      .def_property_readonly("num_vars", &SparsePolynomial::num_vars)
      .def_property_readonly("degree", &SparsePolynomial::degree)
      .def("__len__", &SparsePolynomial::size)
      .def("__str__", [](const SparsePolynomial& p) { return to_string(p); })
      .def("__call__",
           [](const SparsePolynomial& p, const std::vector<double>& x) {
             if (x.size() != p.num_vars()) throw DimensionMismatch("point has the wrong dimension");
             return evaluate(p, x);
           })
      .def("evaluate_boolean", [](const SparsePolynomial& p, std::uint64_t ones) {
        return to_py_int(evaluate_boolean(p, ones));
      }, py::arg("mask"), "Exact value at the 0/1 point whose bit i is x_i.")
      .def("to_json", [](const SparsePolynomial& p) { return to_py(to_json(p)); })
      .def_static("from_json", [](const py::object& o) { return polynomial_from_json(from_py(o)); });

  py::class_<CnfFormula>(m, "Formula")
      .def(py::init(&formula_from_lists), py::arg("num_vars"), py::arg("clauses"),
           "Clauses use DIMACS literals: +v or -v with v in 1..num_vars.")
      .def_static("from_dimacs", [](const std::string& t) { return parse_dimacs(t); })
      .def("to_dimacs", [](const CnfFormula& f) { return format_dimacs(f); })
      .def_readonly("num_vars", &CnfFormula::num_vars)
      .def_property_readonly("clauses", &formula_lists)
      .def("satisfies", [](const CnfFormula& f, const std::vector<std::uint8_t>& a) {
        if (a.size() != f.num_vars) throw DimensionMismatch("assignment has the wrong length");
        return satisfies(f, a);
      });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Graph::Edge>& edges) {
             return Graph::from_edges(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_static("parse", [](const std::string& t) { return parse_graph(t); })
      .def_property_readonly("n", &Graph::size)
      .def("edges", &Graph::edges)
      .def("adjacent", &Graph::adjacent);

  // SAT encodings.
  m.def("encodings", [] { return std::vector<std::string>{"deg14", "deg8", "deg6", "deg4", "quadratic"}; });
  m.def(
      "encode",
      [](const CnfFormula& f, const std::string& method) {
        const auto inst = encode(f, parse_encoding_id(method));
        return py::make_tuple(inst.poly, to_py(sidecar_json(inst)));
      },
      py::arg("formula"), py::arg("method") = "deg4",
      "Returns (polynomial, metadata). Auxiliary variables follow the originals.");
  m.def(
      "sat_oracle",
      [](const CnfFormula& f) -> std::optional<std::vector<std::uint8_t>> {
        auto r = sat_oracle(f);
        if (!r.satisfiable) return std::nullopt;
        return r.witness;
      },
      "A satisfying assignment, or None.");
  m.def("boolean_minimum", [](const SparsePolynomial& p) { return to_py_int(boolean_lattice_minimum_direct(p)); },
        "Exact minimum over {0,1}^n.");

  // Geometry.
  m.def("reduce_plane", [](const SparsePolynomial& p) -> py::object {
    const auto r = reduce_plane(to_quadratic_form(p));
    if (r.verdict != PlaneReduction::Verdict::Plane) return py::none();
    return to_py(to_json(r.plane));
  }, "Zero plane of a PSD quadratic as {n, A, b}, or None when it has no real zero.");
  m.def("plane_hypercube_points", [](const py::object& plane) {
    return plane_hypercube_points(plane_from_json(from_py(plane)));
  }, "Bitmasks of the 0/1 points on the plane.");
  m.def("plane_to_sphere", [](const py::object& plane) {
    return to_py(to_json(plane_to_sphere(plane_from_json(from_py(plane)))));
  });

  // Subset-Sum.
  m.def(
      "solve_subset_sum",
      [](const std::vector<py::int_>& values, const py::int_& target) -> std::optional<std::vector<std::size_t>> {
        const auto w = solve_subset_sum(SubsetSumInstance{from_py_ints(values), from_py_int(target)});
        if (!w) return std::nullopt;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < w->size(); ++i)
          if ((*w)[i]) idx.push_back(i);
        return idx;
      },
      py::arg("values"), py::arg("target"), "Indices of a subset summing to target, or None.");
  m.def("zero_sign_patterns", [](const std::vector<py::int_>& y) { return brute_force_zero(signed_instance(y)); });
  m.def("power_sum", [](unsigned k, const std::vector<py::int_>& y) {
    return to_py_int(power_sum_identity(k, signed_instance(y)));
  }, py::arg("k"), py::arg("values"));
  m.def("power_sum_brute", [](unsigned k, const std::vector<py::int_>& y) {
    return to_py_int(power_sum_brute(k, signed_instance(y)));
  }, py::arg("k"), py::arg("values"));
  m.def("cosine_integral", [](const std::vector<py::int_>& y) { return cosine_integral(signed_instance(y)); });
  m.def("cosine_integral_exact",
        [](const std::vector<py::int_>& y) { return cosine_integral_exact(signed_instance(y)); });

  // Hamilton cycles.
  m.def("hamilton_trace", &hamilton_trace);
  m.def("hamilton_oracle", &hamilton_oracle, "Number of directed Hamilton cycles.");
  m.def("hamilton_cycle", &hamilton_cycle);

  // Optimisation.
  m.def("default_config", [] { return to_py(to_json(OptimizerConfig{})); });
  m.def(
      "multi_start",
      [](const SparsePolynomial& p, std::size_t starts, const py::object& cfg, const CnfFormula* f) {
        const auto c = config_of(cfg);
        py::gil_scoped_release release;
        auto s = multi_start(polynomial_objective(p), starts, c, f);
        py::gil_scoped_acquire acquire;
        return to_py(to_json(s));
      },
      py::arg("polynomial"), py::arg("starts") = 32, py::arg("config") = py::none(),
      py::arg("formula") = nullptr);
  m.def(
      "census",
      [](const SparsePolynomial& p, std::size_t samples, const py::object& cfg) {
        const auto c = config_of(cfg);
        py::gil_scoped_release release;
        auto r = local_minima_census(polynomial_objective(p), samples, c);
        py::gil_scoped_acquire acquire;
        return to_py(to_json(r));
      },
      py::arg("polynomial"), py::arg("samples"), py::arg("config") = py::none());
  m.def("boolean_penalty", [](std::size_t n) {
    std::vector<std::uint32_t> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<std::uint32_t>(i);
    return boolean_penalty(vars, n);
  }, "sum_i x_i^2 (1 - x_i)^2");

  // Strongly regular graphs.
  m.def("rook_graph", &rook_graph, py::arg("side") = 4);
  m.def("shrikhande_graph", &shrikhande_graph);
  m.def("srg_parameters", [](const Graph& g) -> std::optional<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> {
    const auto c = check_srg(g);
    if (!c.params) return std::nullopt;
    return std::make_tuple(c.params->m, c.params->k, c.params->nu, c.params->mu);
  });
  m.def(
      "srg_invariants",
      [](const Graph& g, std::optional<double> lambda, std::size_t kmax) {
        SrgInvariantConfig cfg;
        cfg.lambda = lambda;
        cfg.kmax = kmax;
        py::dict d;
        for (const auto& [l, v] : srg_invariants(g, cfg).entries) d[py::str(l)] = v;
        return d;
      },
      py::arg("graph"), py::arg("eigenvalue") = py::none(), py::arg("kmax") = 6);
  m.def(
      "compare_srg",
      [](const Graph& a, const Graph& b, double tol) {
        return to_py(to_json(compare_invariants(srg_invariants(a), srg_invariants(b), tol)));
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = 1e-6);

  // Smaller formulations.
  m.def("factorization_objective", &factorization_objective, py::arg("n"), py::arg("x"));
  m.def("sat_monomial_count", [](const CnfFormula& f) { return to_py_int(sat_monomial_count(f)); });
  m.def("clique_objective_max", [](const Graph& g, std::size_t k) { return clique_objective_max(g, k).best; });
}
