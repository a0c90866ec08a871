import random

import pytest
import sympy

from sextic_pib import polyalg
from sextic_pib.absolute_solver import (GeneratorRecord, JPolyContext, canonicalize,
                                        delta_element, describe, disc_of_reciprocal,
                                        integer_roots, j_polynomial, leading_coefficient,
                                        power_basis_index, reciprocal_generator,
                                        reciprocal_is_new, scan_k)
from sextic_pib.quadfield import QuadInt
from sextic_pib.sextic_field import FieldSpec, KElement, NotPrimitive, index, k_mul, k_pow

from conftest import table_for


def exact_P(X0, Y0, k, sign, spec):
    """P(a2) through resultants of the relative characteristic polynomials (exact)."""
    a, y = sympy.symbols("a y")
    r = sympy.sqrt(spec.m)
    w = (r, -r) if spec.m % 4 != 1 else ((1 + r) / 2, (1 - r) / 2)
    d = delta_element(X0, Y0, k, sign, spec)
    polys = []
    for i in (0, 1):
        # minimal polynomial of delta over M under embedding i via its 3x3 matrix
        wi = w[i]
        f = [spec.f0, spec.f1, spec.f2]
        fi = [c.a + c.b * wi for c in f]
        M = sympy.zeros(3, 3)
        comp = sympy.Matrix([[0, 0, -fi[0]], [1, 0, -fi[1]], [0, 1, -fi[2]]])
        c = d.coords
        X = c[2] + c[3] * wi
        Y = c[4] + c[5] * wi
        M = X * comp + Y * comp * comp
        polys.append(sympy.expand(M.charpoly(y).as_expr()))
    shift = a * (w[0] - w[1])
    res = sympy.resultant(polys[0], polys[1].subs(y, y + shift), y)
    disc = spec.quad.disc
    P = sympy.Poly(sympy.expand(res / sympy.sqrt(disc) ** 3), a)
    return [int(sympy.nsimplify(c)) for c in reversed(P.all_coeffs())]


def test_example1_polynomial(spec1):
    P = j_polynomial((1, 0), (0, 0), 0, 1, spec1)
    assert P == [-1, -6, 0, 29, -48, 288, -192, 768, 0, 512]
    assert P[-1] == leading_coefficient(spec1) == 512
    assert 0 in integer_roots([P[0] + 1] + P[1:])


@pytest.mark.parametrize("args", [((1, 0), (0, 0), 0, 1), ((0, 0), (-1, 0), -1, 1),
                                  ((-1, -1), (2, 0), 2, -1)])
def test_polynomial_against_resultant(spec1, args):
    assert j_polynomial(*args, spec1) == exact_P(*args, spec1)


def test_precision_stability(spec1):
    for args in [((1, 0), (0, 0), 7, 1), ((-1, -1), (2, 0), -20, 1)]:
        assert j_polynomial(*args, spec1, precision=500) == j_polynomial(*args, spec1, precision=600)


def test_second_generator_uses_k_minus_one(spec1):
    P = j_polynomial((0, 0), (-1, 0), -1, 1, spec1)
    assert integer_roots([P[0] + 1] + P[1:]) == [-2]
    P = j_polynomial((0, 0), (-1, 0), 1, 1, spec1)
    assert integer_roots([P[0] - 1] + P[1:]) == [] and integer_roots([P[0] + 1] + P[1:]) == []


def test_integer_roots_basic():
    assert integer_roots([-512] + [0] * 8 + [1]) == [2]
    assert integer_roots([1, 0, 1]) == []
    assert integer_roots([0, 0, 1]) == [0]
    with pytest.raises(ValueError):
        integer_roots([0])


def test_integer_roots_random():
    rng = random.Random(5)
    x = sympy.Symbol("x")
    for _ in range(15):
        roots = [rng.randint(-10**30, 10**30) for _ in range(rng.randint(1, 3))]
        extra = [rng.randint(-10**20, 10**20) for _ in range(3)] + [1]
        p = polyalg.mul(extra, [rng.choice([1, 2, 3, 512])])
        for r in roots:
            p = polyalg.mul(p, [-r, 1])
        want = sorted(set(int(v) for v in sympy.Poly(list(reversed(p)), x).ground_roots()
                          if v.is_integer))
        assert integer_roots(p) == want
        assert set(roots) <= set(integer_roots(p))


def test_scan_k_example1(spec1, table1):
    recs = scan_k((QuadInt(1, 0), QuadInt(0, 0)), spec1, table1, 10**50)
    assert {r.coords for r in canonicalize(recs)} == {(0, 1, 0, 0, 0)}
    assert scan_k((QuadInt(-1, -1), QuadInt(2, 0)), spec1, table1, 10**50) == []


def test_scan_k_example3():
    from sextic_pib.config import load_config
    spec = load_config("example3").spec
    recs = scan_k((QuadInt(3, -2), QuadInt(-6, 4)), spec, table_for(spec), 10**50)
    hits = {(r.provenance["k"], r.provenance["a2"], r.provenance["sign"]) for r in recs}
    assert (2, -4, 1) in hits
    assert {r.coords for r in canonicalize(recs)} == {(-4, 1, 0, -2, 0)}


def test_canonicalize():
    g = GeneratorRecord((3, 1, -2, 0, 4), {}, True)
    neg = GeneratorRecord((-3, -1, 2, 0, -4), {}, True)
    assert [r.coords for r in canonicalize([g, neg, g])] == [(3, 1, -2, 0, 4)]
    assert canonicalize([]) == []
    assert describe((-2, 0, 0, 1, -1)) == "-2*w + (1 - w)*alpha^2"


def test_reciprocal_family():
    for b, c in [(1, 0), (0, 1)]:
        spec = FieldSpec(2, (0, 0), (2, b), (1, c))
        coeffs = reciprocal_generator(spec.g, spec)
        assert coeffs == [0, 4 - 2 * b * b, 2, 4, 0, 1]


def test_reciprocal_cubic():
    f = [-1, -1, 0, 1]  # x^3 - x - 1
    assert polyalg.discriminant(f) == -23
    assert reciprocal_generator(f) == [0, 0, 1]
    assert power_basis_index([0, 0, 1], f) == 1
    with pytest.raises(ValueError):
        reciprocal_generator([1, -3, 1])
    with pytest.raises(ValueError):
        reciprocal_generator([2, 0, 1, 1])


def test_statement_on_example1(spec1):
    assert disc_of_reciprocal(spec1.alpha, spec1) == polyalg.discriminant(spec1.g)
    assert reciprocal_is_new(spec1.alpha, spec1)
    with pytest.raises((ValueError, NotPrimitive)):
        disc_of_reciprocal(spec1.omega(), spec1)
    with pytest.raises(ValueError):
        disc_of_reciprocal(KElement((1, 0, 1, 0, 0, 0)).scale(2), spec1)
