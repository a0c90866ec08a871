"""From relative solutions to generators of power integral bases.

For a relative solution (X0, Y0) and an exponent k of eta, every element

    gamma = a2*omega + sign * eta^k (X0 alpha + Y0 alpha^2)

has relative index 1, and its absolute index equals J(gamma).  The product
over the nine cross-embedding differences is an integer polynomial P(a2)
of degree 9, and gamma generates a power integral basis iff |P(a2)| = 1.
All candidates are confirmed by the exact index.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from . import polyalg
from .quadfield import QuadInt
from .sextic_field import (KElement, NotPrimitive, build_embeddings, from_power_basis, index,
                           is_equivalent, k_inverse, min_poly, norm)
from .unit_bounds import k_range

log = logging.getLogger(__name__)

RESIDUE_DIGITS = 100
MAX_JPOLY_PRECISION = 6000


class NumericExhausted(RuntimeError):
    """Precision escalation hit its cap without producing an integral polynomial."""


@dataclass(frozen=True)
class GeneratorRecord:
    coords: tuple  # (a2, x1, x2, y1, y2), a1 = 0
    provenance: dict = field(default_factory=dict, compare=False, hash=False)
    index_verified: bool = False

    def element(self):
        a2, x1, x2, y1, y2 = self.coords
        return KElement((0, a2, x1, x2, y1, y2))

    def as_dict(self):
        return {"coords": list(self.coords), "provenance": dict(self.provenance),
                "index_verified": self.index_verified}


def describe(coords):
    """Readable form such as -2*w + (1 - w)*alpha^2 for (a2, x1, x2, y1, y2)."""
    a2, x1, x2, y1, y2 = coords

    def q(a, b):
        if b == 0:
            return str(a)
        s = "w" if b == 1 else ("-w" if b == -1 else f"{b}*w")
        return s if a == 0 else f"({a} + {s})".replace("+ -", "- ")

    parts = []
    if a2:
        parts.append(f"{a2}*w" if a2 not in (1, -1) else ("w" if a2 == 1 else "-w"))
    for (a, b), mono in (((x1, x2), "alpha"), ((y1, y2), "alpha^2")):
        if a or b:
            c = q(a, b)
            parts.append(mono if c == "1" else (f"-{mono}" if c == "-1" else f"{c}*{mono}"))
    out = " + ".join(parts) if parts else "0"
    return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# The polynomial P(a2)


class JPolyContext:
    """Embedding tables at several precisions, shared across k and relative solutions."""

    def __init__(self, spec, base_precision=500):
        self.spec = spec
        self.base = base_precision
        self._tables = {}

    def table(self, precision):
        precision = max(self.base, int(math.ceil(precision / 100.0)) * 100)
        t = self._tables.get(precision)
        if t is None:
            t = build_embeddings(self.spec, precision)
            self._tables[precision] = t
        return t


def delta_element(X0, Y0, k, sign, spec):
    """sign * eta^k (X0 alpha + Y0 alpha^2) as a KElement."""
    q = spec.quad
    e = q.pow(spec.eta, k)
    X = q.mul(e, QuadInt(*X0))
    Y = q.mul(e, QuadInt(*Y0))
    if sign < 0:
        X, Y = -X, -Y
    return KElement.from_axy((0, 0), X, Y)


def _digits_needed(delta, spec):
    # rough size of the conjugates from the coordinates
    size = 1 + sum(abs(c) for c in delta.coords)
    return 9 * (math.log10(size) + 2 * math.log10(2 + abs(spec.quad.m))) + RESIDUE_DIGITS + 60


def _expand_product(delta, spec, table):
    """Complex coefficients (low first) of prod (a*dw + d1j1 - d2j2) / D_M^(3/2), plus factor roots."""
    c = table.conjugates(delta, spec)
    with mpmath.workdps(table.precision):
        w1, w2 = table.omega_vals
        dw = w1 - w2
        coeffs = [mpmath.mpc(1)]
        roots = []
        for j1 in (1, 2, 3):
            for j2 in (1, 2, 3):
                d = c[1, j1] - c[2, j2]
                roots.append(-d / dw)
                new = [mpmath.mpc(0)] * (len(coeffs) + 1)
                for i, v in enumerate(coeffs):
                    new[i] += v * d
                    new[i + 1] += v * dw
                coeffs = new
        scale = mpmath.mpf(abs(spec.quad.disc)) ** mpmath.mpf(1.5)
        return [v / scale for v in coeffs], roots


def j_polynomial(X0, Y0, k, sign, spec, ctx=None, precision=None, return_roots=False):
    """Integer coefficients (low first) of P(a2) for gamma = a2 w + sign eta^k (X0 alpha + Y0 alpha^2).

    Works at max(precision, estimated need) digits and escalates until every
    coefficient is within 10^-100 of a rational integer.
    """
    ctx = ctx or JPolyContext(spec)
    delta = delta_element(X0, Y0, k, sign, spec)
    want = max(precision or ctx.base, _digits_needed(delta, spec))
    tol = mpmath.mpf(10) ** -RESIDUE_DIGITS
    while want <= MAX_JPOLY_PRECISION:
        table = ctx.table(want) if precision is None else build_embeddings(spec, int(want))
        coeffs, roots = _expand_product(delta, spec, table)
        with mpmath.workdps(table.precision):
            out, worst = [], mpmath.mpf(0)
            for v in coeffs:
                n = int(mpmath.nint(mpmath.re(v)))
                worst = max(worst, abs(mpmath.re(v) - n), abs(mpmath.im(v)))
                out.append(n)
        if worst < tol:
            return (out, roots, table.precision) if return_roots else out
        log.info("P(a2) residue %s at %d digits, escalating", mpmath.nstr(worst, 5), table.precision)
        want = int(table.precision * 1.5)
        precision = None
    raise NumericExhausted(f"P(a2) not integral below {MAX_JPOLY_PRECISION} digits "
                           f"(k={k}, X0={tuple(X0)}, Y0={tuple(Y0)})")


def leading_coefficient(spec):
    """(w1 - w2)^9 / D_M^(3/2): 64 m^3 for m = 2, 3 (mod 4), m^3 for m = 1 (mod 4)."""
    m = spec.m
    return m**3 if m % 4 == 1 else 64 * m**3


# ---------------------------------------------------------------------------
# Integer roots


def integer_roots(P):
    """All integer roots of an integer polynomial (low first).

    Real roots are located numerically with enough digits to separate them,
    each nearby integer is confirmed by exact evaluation, and sympy's exact
    real-root isolation takes over if the numeric root finder fails.
    """
    P = polyalg.trim([int(c) for c in P])
    if not P or P == [0]:
        raise ValueError("integer_roots needs a nonzero polynomial")
    out = set()
    # strip the factor x^t first
    while len(P) > 1 and P[0] == 0:
        out.add(0)
        P = P[1:]
    if len(P) == 1:
        return sorted(out)
    digits = max(len(str(abs(c))) for c in P)
    bound = 1 + max(abs(Fraction(c, P[-1])) for c in P[:-1])  # Cauchy bound
    cands = set()
    try:
        with mpmath.workdps(max(60, 2 * digits + 40)):
            rts = mpmath.polyroots(list(reversed(P)), maxsteps=300, extraprec=2 * digits + 100)
            for r in rts:
                if abs(mpmath.im(r)) < 1:
                    x = mpmath.re(r)
                    base = int(mpmath.floor(x))
                    cands.update((base - 1, base, base + 1, base + 2))
    except mpmath.libmp.NoConvergence:
        x = sympy.Symbol("x")
        for (lo, hi), _ in sympy.Poly(list(reversed(P)), x).intervals():
            cands.update(range(math.floor(lo) - 1, math.ceil(hi) + 2))
    for c in cands:
        if abs(c) <= bound and polyalg.evaluate(P, c) == 0:
            out.add(c)
    return sorted(out)


def unit_value_roots(P, factor_roots, lc):
    """Integers a with P(a) = +-1, using the roots r_j of P's nine linear factors.

    P = lc * prod (a - r_j) with |lc| >= 1, so |P(a)| = 1 forces some
    |a - r_j| <= 1.  Each candidate is checked exactly.
    """
    if abs(lc) < 1:
        raise ValueError("leading coefficient must be at least 1 in absolute value")
    cands = set()
    for r in factor_roots:
        if abs(mpmath.im(r)) <= 1.01:
            x = mpmath.re(r)
            base = int(mpmath.floor(x))
            cands.update(range(base - 1, base + 3))
    hits = {1: [], -1: []}
    for a in sorted(cands):
        v = polyalg.evaluate(P, a)
        if v in (1, -1):
            hits[v].append(a)
    return hits


# ---------------------------------------------------------------------------
# Scanning k


def _gamma_coords(a2, delta):
    return (a2, delta.coords[2], delta.coords[3], delta.coords[4], delta.coords[5])


def scan_k(rel, spec, table, C, ctx=None, ks=None, rel_id=None):
    """Verified generator records extending one relative solution.

    ``rel`` is a RelativeSolution (or a pair X0, Y0 of QuadInts).  Both
    signs are scanned; duplicates are left for :func:`canonicalize`.
    """
    X0, Y0 = (rel.X0, rel.Y0) if hasattr(rel, "X0") else rel
    X0, Y0 = QuadInt(*X0), QuadInt(*Y0)
    ctx = ctx or JPolyContext(spec)
    if ks is None:
        lo, hi = k_range(X0, Y0, spec, table, C)
        ks = range(lo, hi + 1)
    lc = leading_coefficient(spec)
    records = []
    for k in ks:
        d_plus = delta_element(X0, Y0, k, 1, spec)
        if max(abs(c) for c in d_plus.coords) >= C:
            continue
        P, roots, prec = j_polynomial(X0, Y0, k, 1, spec, ctx, return_roots=True)
        if P[-1] != lc or len(P) != 10:
            raise NumericExhausted(f"P(a2) has leading term {P[-1]}*a2^{len(P) - 1}, expected {lc}*a2^9")
        with mpmath.workdps(prec):
            hits = unit_value_roots(P, roots, lc)
        for sign in (1, -1):
            # P_-(a) = -P_+(-a): nine factors change sign together
            delta = d_plus if sign > 0 else -d_plus
            for target in (1, -1):
                src = hits[target] if sign > 0 else hits[-target]
                for a in src:
                    a2 = a if sign > 0 else -a
                    coords = _gamma_coords(a2, delta)
                    if max(abs(c) for c in coords) >= C:
                        continue
                    g = KElement((0,) + coords)
                    try:
                        ok = index(g, spec) == 1
                    except NotPrimitive:
                        ok = False
                    if ok:
                        records.append(GeneratorRecord(coords, {
                            "relative": rel_id if rel_id is not None else [*X0, *Y0],
                            "k": k, "sign": sign, "a2": a2, "P_value": target}, True))
    return records


def canonicalize(records):
    """One representative per equivalence class (a1 = 0, first nonzero of x1, x2, y1, y2, a2 positive)."""
    best = {}
    for r in records:
        a2, x1, x2, y1, y2 = r.coords
        order = (x1, x2, y1, y2, a2)
        nz = next((v for v in order if v), 0)
        c = r.coords if nz >= 0 else tuple(-v for v in r.coords)
        if c not in best:
            # provenance describes the scanned element; note when it was negated
            prov = dict(r.provenance, negated=nz < 0)
            best[c] = GeneratorRecord(c, prov, r.index_verified)
    return [best[c] for c in sorted(best)]


# ---------------------------------------------------------------------------
# Reciprocal generators


def reciprocal_generator(f_abs, spec=None):
    """Power-basis coefficients of a2 alpha + a3 alpha^2 + ... + alpha^(n-1).

    ``f_abs`` is x^n + a_{n-1} x^{n-1} + ... + a1 x +- 1, lowest degree
    first.  With a FieldSpec the element is converted and its index is
    checked to be 1; otherwise the index is taken in Z[alpha].
    """
    f = [int(c) for c in f_abs]
    n = len(f) - 1
    if n <= 2:
        raise ValueError(f"degree {n} <= 2: the reversed element is not a new generator")
    if f[-1] != 1:
        raise ValueError("polynomial must be monic")
    if f[0] not in (1, -1):
        raise ValueError(f"constant term {f[0]} is not +-1")
    coeffs = [0] + f[2:n] + [1]
    if spec is not None:
        if list(spec.g) != f:
            raise ValueError("f_abs is not the absolute polynomial of the spec")
        el = from_power_basis(coeffs, spec)
        if index(el, spec) != 1:
            raise ValueError("reversed element has index != 1; is f monogenic in this basis?")
    elif power_basis_index(coeffs, f) != 1:
        raise ValueError("reversed element has index != 1 in Z[alpha]")
    return coeffs


def _mulmod(a, b, f):
    prod = polyalg.mul(a, b)
    _, r = polyalg.divmod_poly(prod, f)
    r = [int(c) for c in r]
    return r + [0] * (len(f) - 1 - len(r))


def power_basis_index(coeffs, f):
    """Index of sum c_k alpha^k in Z[alpha] for a monic integer f (0 if not primitive)."""
    n = len(f) - 1
    coeffs = list(coeffs) + [0] * (n - len(coeffs))
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        cols.append(_mulmod(coeffs, e, f))
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    d = polyalg.discriminant(polyalg.charpoly(mat))
    if d == 0:
        return 0
    return polyalg.exact_sqrt(d // polyalg.discriminant(f))


def disc_of_reciprocal(u, spec):
    """disc(min_poly(1/u)), checked against disc(min_poly(u)) for a unit u generating K."""
    n = norm(u, spec)
    if abs(n) != 1:
        raise ValueError(f"{u} is not a unit (norm {n})")
    mp = min_poly(u, spec)
    if len(mp) != 7:
        raise NotPrimitive(f"{u} does not generate K")
    inv = k_inverse(u, spec)
    d_u = polyalg.discriminant(mp)
    d_inv = polyalg.discriminant(min_poly(inv, spec))
    if d_u != d_inv:
        raise AssertionError(f"disc(1/u) = {d_inv} differs from disc(u) = {d_u}")
    return d_u


def reciprocal_is_new(u, spec):
    """True when 1/u is integral, has index 1 and is not equivalent to u."""
    inv = k_inverse(u, spec)
    return inv.is_integral() and index(inv, spec) == 1 and not is_equivalent(u, inv)
