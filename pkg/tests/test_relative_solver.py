import pytest

from sextic_pib.quadfield import QuadInt
from sextic_pib.relative_solver import (RelativeSolver, fallback_solutions,
                                        is_relative_unit_solution, merge_solutions, solve_all,
                                        solve_tuple, unit_exponents)
from sextic_pib.sextic_field import KElement, build_embeddings

from conftest import table_for


def test_known_tuples(spec1, table1):
    assert solve_tuple((0, 0), 1, spec1, table1).coords == (1, 0, 0, 0)
    assert solve_tuple((1, 0), 1, spec1, table1).coords == (0, 0, -1, 0)
    assert solve_tuple((3, 0), 1, spec1, table1).coords == (-1, -1, 2, 0)
    assert solve_tuple((2, 0), 1, spec1, table1) is None
    assert solve_tuple((0, 0), -1, spec1, table1).coords == (-1, 0, 0, 0)


def test_exact_gate(spec1):
    assert is_relative_unit_solution(QuadInt(1, 0), QuadInt(0, 0), spec1)
    assert not is_relative_unit_solution(QuadInt(2, 0), QuadInt(0, 0), spec1)
    assert not is_relative_unit_solution(QuadInt(0, 0), QuadInt(0, 0), spec1)


def test_solve_all_on_survivors(spec1, table1):
    from sextic_pib.sieve import find_split_prime, siegel_sieve
    surv = siegel_sieve(find_split_prime(spec1, 809), 152)
    sols = solve_all(surv, spec1, table1)
    assert [s.coords for s in sols] == [(1, 0, 0, 0), (0, 0, -1, 0), (-1, -1, 2, 0)]
    assert [s.exponents for s in sols] == [(0, 0), (1, 0), (3, 0)]
    assert all(s.verified for s in sols)


@pytest.mark.parametrize("name", ["example2", "example3"])
def test_sieved_equals_unsieved_small_box(name):
    from sextic_pib.config import load_config
    from sextic_pib.sieve import find_split_prime, siegel_sieve
    spec = load_config(name).spec
    table = table_for(spec)
    B0 = 12
    box = [(a, b) for a in range(-B0, B0 + 1) for b in range(-B0, B0 + 1)]
    surv = siegel_sieve(find_split_prime(spec, 2), B0)
    full = {s.coords for s in solve_all(box, spec, table)}
    sieved = {s.coords for s in solve_all(surv, spec, table)}
    assert full == sieved and len(full) >= 3


def test_precision_escalation_stable(spec1, table1):
    hi = build_embeddings(spec1, 400)
    tuples = [(0, 0), (1, 0), (3, 0), (5, -4), (-7, 2)]
    a = {s.coords for s in solve_all(tuples, spec1, table1)}
    b = {s.coords for s in solve_all(tuples, spec1, hi)}
    assert a == b


def test_unit_exponents(spec1, table1):
    q = spec1.quad
    eta = spec1.embed_quad(spec1.eta)
    assert unit_exponents(spec1.alpha, spec1, table1) == (1, 0, 1, 0)
    assert unit_exponents(-eta, spec1, table1) == (-1, 1, 0, 0)
    assert unit_exponents(KElement((2, 0, 0, 0, 0, 0)), spec1, table1) is None
    del q


def test_fallback_and_merge(spec1, table1):
    fb = fallback_solutions(spec1, table1, 10**50)
    assert fb and all(s.sign == 1 and s.verified for s in fb)
    solver = RelativeSolver(spec1, table1)
    sv = [solver.solve_tuple((0, 0)), solver.solve_tuple((1, 0))]
    merged = merge_solutions(sv, fb)
    assert len({s.coords for s in merged}) == len(merged)
    assert next(s for s in merged if s.coords == (1, 0, 0, 0)).source == "sieve"
