from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from sextic_pib import polyalg

x = sympy.Symbol("x")
small_polys = st.lists(st.integers(-20, 20), min_size=1, max_size=7)


def to_sympy(p):
    return sympy.Poly(list(reversed(p)) or [0], x)


@given(small_polys, small_polys)
def test_mul_matches_sympy(a, b):
    got = polyalg.trim(polyalg.mul(a, b))
    want = [int(c) for c in reversed(to_sympy(a).mul(to_sympy(b)).all_coeffs())]
    assert got == polyalg.trim(want)


@settings(max_examples=60)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda p: p[-1] != 0))
def test_discriminant_matches_sympy(p):
    assert polyalg.discriminant(p) == int(sympy.discriminant(to_sympy(p).as_expr(), x))


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_and_charpoly(m):
    M = sympy.Matrix(m)
    assert polyalg.det(m) == M.det()
    cp = polyalg.charpoly(m)
    assert cp == [int(c) for c in reversed(M.charpoly(x).all_coeffs())]


def test_divmod_and_gcd():
    f = polyalg.mul([1, 1], [2, 0, 1])  # (x + 1)(x^2 + 2)
    q, r = polyalg.divmod_poly(f, [1, 1])
    assert polyalg.trim(r) in ([], [0])
    assert [Fraction(c) for c in q] == [2, 0, 1]
    g = polyalg.gcd_poly(f, polyalg.mul([1, 1], [3, 1]))
    assert polyalg.primitive(g) in ([1, 1], [-1, -1])


def test_squarefree_part_and_sqrt():
    sq = polyalg.mul([1, 1], [1, 1])
    assert polyalg.primitive(polyalg.squarefree_part(polyalg.mul(sq, [2, 0, 1]))) == [2, 2, 1, 1]
    assert polyalg.exact_sqrt(12345678987654321**2) == 12345678987654321


def test_evaluate_and_derivative():
    p = [-1, 4, 4, 2, 4, 0, 1]
    assert polyalg.evaluate(p, 2) == sum(c * 2**k for k, c in enumerate(p))
    assert polyalg.derivative(p) == [4, 8, 6, 16, 0, 6]
