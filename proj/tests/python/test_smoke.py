"""Smoke tests for the Python bindings, with small independent oracles."""

import itertools
import math
import random

import pytest

import npforge


def brute_sat(formula):
    for bits in itertools.product((0, 1), repeat=formula.num_vars):
        if formula.satisfies(list(bits)):
            return True
    return False


def random_formula(rng, n, m):
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return npforge.Formula(n, clauses)


def test_dimacs_round_trip():
    f = npforge.Formula.from_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n")
    assert f.num_vars == 3
    assert f.clauses == [[1, -2], [2, 3]]
    assert npforge.Formula.from_dimacs(f.to_dimacs()).clauses == f.clauses


def test_bad_formula_raises_value_error():
    with pytest.raises(ValueError):
        npforge.Formula(2, [[1, 5]])
    with pytest.raises(ValueError):
        npforge.Formula.from_dimacs("p cnf 2 1\n1 x 0\n")


@pytest.mark.parametrize("method", ["deg6", "deg4", "quadratic"])
def test_encoding_minimum_matches_brute_force(method):
    rng = random.Random(11)
    for _ in range(25):
        f = random_formula(rng, rng.randint(1, 5), rng.randint(1, 6))
        poly, meta = npforge.encode(f, method)
        assert meta["original"] == f.num_vars
        assert (npforge.boolean_minimum(poly) == 0) == brute_sat(f)
        witness = npforge.sat_oracle(f)
        assert (witness is not None) == brute_sat(f)
        if witness is not None:
            assert f.satisfies(witness)


def test_polynomial_evaluation_and_json():
    f = npforge.Formula(2, [[1, 2]])
    poly, _ = npforge.encode(f, "deg4")
    again = npforge.Polynomial.from_json(poly.to_json())
    pt = [0.3, 0.8][: poly.num_vars] + [0.5] * (poly.num_vars - 2)
    assert again(pt) == pytest.approx(poly(pt))
    assert poly.evaluate_boolean(0) > 0
    with pytest.raises(ValueError):
        poly([0.1] * (poly.num_vars + 1))


def test_plane_points_are_satisfying():
    f = npforge.Formula(3, [[1, -2, 3], [2, 3], [-1, -3]])
    poly, _ = npforge.encode(f, "quadratic")
    plane = npforge.reduce_plane(poly)
    assert plane is not None
    for mask in npforge.plane_hypercube_points(plane):
        bits = [(mask >> i) & 1 for i in range(f.num_vars)]
        assert f.satisfies(bits)
    sphere = npforge.plane_to_sphere(plane)
    assert "center" in sphere


def test_subset_sum_and_power_sums():
    values = [3, 5, 8, 2, 7]
    picked = npforge.solve_subset_sum(values, 10)
    assert sum(values[i] for i in picked) == 10
    assert npforge.solve_subset_sum([3, 5, 8], 2) is None
    rng = random.Random(5)
    for _ in range(20):
        y = [rng.randint(1, 20) for _ in range(rng.randint(1, 8))]
        zeros = sum(
            1 for signs in itertools.product((-1, 1), repeat=len(y))
            if sum(s * v for s, v in zip(signs, y)) == 0
        )
        assert npforge.zero_sign_patterns(y) == zeros
        for k in (0, 2, 4):
            assert npforge.power_sum(k, y) == npforge.power_sum_brute(k, y)
        assert npforge.cosine_integral(y) == pytest.approx(
            2 * math.pi * zeros / 2 ** len(y), abs=1e-8
        )
    # Values beyond 64 bits stay exact.
    assert npforge.power_sum(2, [10**30]) == 2 * 10**60


def test_hamilton_trace_counts_cycles():
    cycle = npforge.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert npforge.hamilton_oracle(cycle) == 2
    assert npforge.hamilton_trace(cycle) == 10
    assert sorted(npforge.hamilton_cycle(cycle)) == list(range(5))
    star = npforge.Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert npforge.hamilton_trace(star) == 0
    assert npforge.hamilton_cycle(star) == []


def test_multi_start_is_deterministic():
    f = npforge.Formula(3, [[1, 2, 3], [-1, 2], [-2, 3]])
    poly, _ = npforge.encode(f, "deg6")
    cfg = npforge.default_config()
    cfg["seed"] = 3
    a = npforge.multi_start(poly, 8, cfg, f)
    b = npforge.multi_start(poly, 8, cfg, f)
    assert a == b
    assert a["zeros_found"] > 0
    for run in a["runs"]:
        if run["verdict"] == "ZeroFound":
            assert f.satisfies(run["rounded_assignment"])


def test_census_of_the_penalty():
    for n in (1, 2):
        assert npforge.census(npforge.boolean_penalty(n), 500 * 2**n)["count"] == 2**n
    with pytest.raises(npforge.InstanceTooLarge):
        npforge.census(npforge.boolean_penalty(13), 10)


def test_srg_pair():
    rook, shr = npforge.rook_graph(), npforge.shrikhande_graph()
    assert npforge.srg_parameters(rook) == (16, 6, 2, 2)
    assert npforge.srg_parameters(shr) == (16, 6, 2, 2)
    assert npforge.srg_parameters(npforge.Graph(4, [(0, 1)])) is None
    inv = npforge.srg_invariants(rook)
    assert inv["cloud.dim"] == 6
    assert npforge.compare_srg(rook, rook)["verdict"] == "INDISTINGUISHABLE"
    assert npforge.compare_srg(rook, shr)["verdict"] == "DISTINCT"


def test_misc():
    assert npforge.factorization_objective(15, 5.0) == pytest.approx(2.0)
    assert npforge.factorization_objective(15, 4.0) < 2.0
    f = npforge.Formula(3, [[1, 2, 3]])
    assert npforge.sat_monomial_count(f) > 0
    tri = npforge.Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert npforge.clique_objective_max(tri, 3) == 6
