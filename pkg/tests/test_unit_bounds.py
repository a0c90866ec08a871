import math

import mpmath
import pytest

from sextic_pib.unit_bounds import (enumerate_small_solutions, exponent_box, k_range,
                                    log_size_bound, parse_C, small_conjugate_fallback)

from conftest import table_for


def test_parse_C():
    assert parse_C("1e50") == 10**50
    assert parse_C("2.5e3") == 2500
    assert parse_C(77) == 77
    assert parse_C("123") == 123


def test_c1(spec1, table1):
    c1 = log_size_bound(10**50, spec1, table1)
    c0 = c1 / mpmath.mpf(10) ** 50
    assert 1 < c0 < 20
    assert abs(c0 - mpmath.mpf("6.4274034282763356625")) < 1e-15


def test_box_frozen(spec1, table1):
    rep = exponent_box(10**50, spec1, table1)
    # sound bound over all sign patterns; see the notes for the comparison with 152
    assert rep.exponent_bounds == (316, 317, 97)
    assert rep.B0 == 317
    assert exponent_box(10**10, spec1, table1).B0 < rep.B0


def test_box_monotone_in_C(spec1, table1):
    prev = 0
    bs = []
    for e in range(5, 60, 5):
        b = exponent_box(10**e, spec1, table1).B0
        assert b >= prev
        bs.append(b)
        prev = b
    # B0(10C) - B0(C) grows by at most a fixed step
    steps = [b - a for a, b in zip(bs, bs[1:])]
    assert max(steps) - min(steps) <= 2


@pytest.mark.parametrize("name,tuples", [
    ("example1", [(0, 0), (1, 0), (3, 0)]),
    ("example2", [(0, 0), (1, 0), (3, 0)]),
    ("example3", [(0, 0), (0, 2), (1, 0), (3, 0)]),
])
def test_known_tuples_inside_box(name, tuples):
    from sextic_pib.config import load_config
    spec = load_config(name).spec
    B0 = exponent_box(10**50, spec, table_for(spec)).B0
    assert all(max(map(abs, t)) <= B0 for t in tuples)


def test_fallback_bound(spec1, table1):
    b = small_conjugate_fallback(spec1, table1)
    assert b == 1
    sols = enumerate_small_solutions(spec1, b)
    assert (1, 0, 0, 0) in sols


def test_k_range(spec1, table1):
    lo, hi = k_range((1, 0), (0, 0), spec1, table1, 10**50)
    assert lo <= -120 and hi >= 120
    assert (lo, hi) == (-131, 131)
    assert k_range((1, 0), (0, 0), spec1, table1, 1) == (-2, 2)
    # the second generator of example 1 uses k = -1
    lo, hi = k_range((0, 0), (-1, 0), spec1, table1, 10**50)
    assert lo <= -1 <= hi
    with pytest.raises(ValueError):
        k_range((0, 0), (0, 0), spec1, table1, 10)


def test_k_range_is_tight_enough(spec1, table1):
    """Just outside the interval eta^k has a coordinate >= C."""
    from sextic_pib.quadfield import QuadInt
    C = 10**20
    lo, hi = k_range((1, 0), (0, 0), spec1, table1, C)
    q = spec1.quad
    for k in (lo - 1, hi + 1):
        assert max(map(abs, q.pow(q.eta, k))) >= C


def test_box_is_attained_by_linear_program(spec1, table1):
    """Independent check: maximise k1 subject only to log|zeta^(i,j)| <= log c1 everywhere.

    The optimum for k1 is essentially the computed B0, so no sound bound
    from this information can be much smaller.
    """
    import numpy as np
    from scipy.optimize import linprog

    from sextic_pib.unit_bounds import unit_log_matrix
    L = unit_log_matrix(spec1, table1)
    A = np.array([[float(v) for v in row] for row in L.values()])
    lc = float(mpmath.log(log_size_bound(10**50, spec1, table1)))
    best = []
    for col in (1, 2):
        c = np.zeros(3)
        c[col] = -1.0
        res = linprog(c, A_ub=A, b_ub=np.full(len(A), lc), bounds=[(None, None)] * 3)
        assert res.status == 0
        best.append(-res.fun)
    # k1 is attained; the k2 bound (97) is sound but looser than the optimum
    assert 316 < best[0] <= 317
    assert best[1] <= 97
