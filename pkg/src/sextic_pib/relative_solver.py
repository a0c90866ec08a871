"""Small solutions of the relative Thue equation N_{K/M}(X - theta Y) = unit.

Each surviving exponent tuple (k1, ..., kh) gives xi = +-prod eps_l^k_l; the
4x4 system x10 + w x20 - theta y10 - w theta y20 = xi at four conjugates is
solved numerically and accepted only if the rounded solution passes an
exact unit test of the relative norm.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import mpmath

from .quadfield import QuadInt
from .sextic_field import KEYS, KElement, build_embeddings, k_mul, k_pow, relative_norm
from .unit_bounds import _sys_matrix, enumerate_small_solutions, small_conjugate_fallback, \
    unit_log_matrix

log = logging.getLogger(__name__)

INT_TOL_DIGITS = 25
MAX_PRECISION = 2000


@dataclass(frozen=True)
class RelativeSolution:
    exponents: tuple  # (k1, ..., kh)
    sign: int
    X0: QuadInt
    Y0: QuadInt
    verified: bool
    source: str = "sieve"

    @property
    def coords(self):
        """(x10, x20, y10, y20)."""
        return (self.X0.a, self.X0.b, self.Y0.a, self.Y0.b)

    def as_dict(self):
        return {"exponents": list(self.exponents), "sign": self.sign,
                "coords": list(self.coords), "verified": self.verified, "source": self.source}


def is_relative_unit_solution(X0, Y0, spec):
    """Exact test: N_{M/Q}(N_{K/M}(X0 - theta Y0)) = +-1."""
    if X0.is_zero() and Y0.is_zero():
        return False
    return abs(spec.quad.norm(relative_norm(X0, Y0, spec))) == 1


class RelativeSolver:
    """Solves the direct 4x4 system for exponent tuples at a fixed table precision."""

    def __init__(self, spec, table):
        if table.precision < 250:
            table = build_embeddings(spec, 250)
        self.spec = spec
        self.table = table
        self._setup()

    def _setup(self):
        spec, table = self.spec, self.table
        with mpmath.workdps(table.precision):
            best = None
            for rows in itertools.combinations(KEYS, 4):
                d = abs(mpmath.det(_sys_matrix(table, rows)))
                if best is None or d > best[0]:
                    best = (d, rows)
            if best[0] < mpmath.mpf(10) ** -20:
                raise ValueError("all four-row systems are ill-conditioned")
            self.rows = best[1]
            inv = _sys_matrix(table, self.rows) ** -1
            self.inverse = [[inv[r, c] for c in range(4)] for r in range(4)]
            conj = [table.conjugates(u, spec) for u in spec.units]
            self.unit_vals = [[c[r] for r in self.rows] for c in conj]
        self._powers = {}
        self.tol = mpmath.mpf(10) ** -INT_TOL_DIGITS

    def _power(self, l, t, k):
        # tables grow by repeated multiplication in both directions
        key = (l, t, k >= 0)
        tab = self._powers.get(key)
        if tab is None:
            base = self.unit_vals[l][t]
            tab = [mpmath.mpf(1), base if k >= 0 else 1 / base]
            self._powers[key] = tab
        n = abs(k)
        if n >= len(tab):
            with mpmath.workdps(self.table.precision + 10):
                step = tab[1]
                while len(tab) <= n:
                    tab.append(tab[-1] * step)
        return tab[n]

    def xi_values(self, exponents, sign=1):
        with mpmath.workdps(self.table.precision):
            vals = []
            for t in range(4):
                v = mpmath.mpf(sign)
                for l, k in enumerate(exponents):
                    if k:
                        v *= self._power(l, t, k)
                vals.append(v)
            return vals

    def raw_solve(self, exponents, sign=1):
        """Numeric (x10, x20, y10, y20) and the worst distance to an integer."""
        with mpmath.workdps(self.table.precision):
            rhs = self.xi_values(exponents, sign)
            sol = [mpmath.fdot(row, rhs) for row in self.inverse]
            rounded, worst = [], mpmath.mpf(0)
            for s in sol:
                re = mpmath.re(s)
                n = int(mpmath.nint(re))
                worst = max(worst, abs(re - n), abs(mpmath.im(s)))
                rounded.append(n)
            return rounded, worst

    def solve_tuple(self, exponents, sign=1):
        """RelativeSolution for this tuple and sign, or None if it yields no integral solution."""
        exponents = tuple(int(k) for k in exponents)
        rounded, worst = self.raw_solve(exponents, sign)
        if not any(rounded):
            # all conjugates of xi are tiny: not a solution with (X0, Y0) != 0
            return None
        if worst >= self.tol:
            if worst < mpmath.mpf(10) ** -8 and self.table.precision < MAX_PRECISION:
                # suspiciously close to integral: redo at higher precision
                log.info("escalating precision for tuple %s (residue %s)", exponents,
                         mpmath.nstr(worst, 5))
                finer = RelativeSolver(self.spec, build_embeddings(self.spec,
                                                                   2 * self.table.precision))
                return finer.solve_tuple(exponents, sign)
            return None
        X0 = QuadInt(rounded[0], rounded[1])
        Y0 = QuadInt(rounded[2], rounded[3])
        if not is_relative_unit_solution(X0, Y0, self.spec):
            return None
        return RelativeSolution(exponents, sign, X0, Y0, True)


def solve_tuple(exponents, sign, spec, table):
    return RelativeSolver(spec, table).solve_tuple(exponents, sign)


def _normal_key(sol):
    c = sol.coords
    nz = next(v for v in c if v)
    return c if nz > 0 else tuple(-v for v in c)


def solve_all(survivors, spec, table, solver=None):
    """Verified relative solutions for all survivor tuples, deduplicated up to +-.

    The system is linear in xi, so sign -1 only negates (X0, Y0); one solve
    per tuple covers both signs.
    """
    solver = solver or RelativeSolver(spec, table)
    found = {}
    for exps in sorted(set(map(tuple, survivors))):
        sol = solver.solve_tuple(exps, 1)
        if sol is None:
            continue
        key = _normal_key(sol)
        if key not in found:
            found[key] = sol
    return sorted(found.values(), key=lambda s: (s.exponents, s.coords))


def unit_exponents(zeta, spec, table):
    """Exact (sign, k, k1, ..., kh) with zeta = sign * eta^k * prod eps_l^k_l, or None."""
    L = unit_log_matrix(spec, table)
    conj = table.conjugates(zeta, spec)
    h = spec.h
    with mpmath.workdps(table.precision):
        for rows in itertools.combinations(KEYS, h + 1):
            A = mpmath.matrix([L[k] for k in rows])
            if abs(mpmath.det(A)) < mpmath.mpf(10) ** -20:
                continue
            b = mpmath.matrix([mpmath.log(abs(conj[k])) for k in rows])
            sol = mpmath.lu_solve(A, b)
            exps = [int(mpmath.nint(s)) for s in sol]
            break
        else:
            return None
    prod = k_pow(spec.embed_quad(spec.eta), exps[0], spec)
    for u, k in zip(spec.units, exps[1:]):
        prod = k_mul(prod, k_pow(u, k, spec), spec)
    if prod == zeta:
        return (1, *exps)
    if prod == -zeta:
        return (-1, *exps)
    return None


def fallback_solutions(spec, table, C=None):
    """Relative solutions with at least four conjugates of |X - theta Y| below 1.

    These are found by direct enumeration of (x1, x2, y1, y2) and expressed
    through the unit system with the eta-power divided out.
    """
    bound = small_conjugate_fallback(spec, table, C)
    q = spec.quad
    out = []
    for x1, x2, y1, y2 in enumerate_small_solutions(spec, bound):
        X, Y = QuadInt(x1, x2), QuadInt(y1, y2)
        zeta = KElement.from_axy(X - q.mul(spec.f2, Y), -Y, (0, 0))
        rep = unit_exponents(zeta, spec, table)
        if rep is None:
            log.warning("relative solution %s is not in the span of the unit system", (x1, x2, y1, y2))
            continue
        sign, k, *exps = rep
        # divide out sign * eta^k so that X0 - theta Y0 = prod eps_l^k_l
        eta_inv = q.pow(spec.eta, -k)
        X0, Y0 = q.mul(eta_inv, X), q.mul(eta_inv, Y)
        if sign < 0:
            X0, Y0, sign = -X0, -Y0, 1
        out.append(RelativeSolution(tuple(exps), sign, X0, Y0,
                                    is_relative_unit_solution(X0, Y0, spec), "fallback"))
    return out


def merge_solutions(*groups):
    merged = {}
    for group in groups:
        for sol in group:
            key = _normal_key(sol)
            old = merged.get(key)
            if old is None or (old.source != "sieve" and sol.source == "sieve") or \
                    (old.source == sol.source and old.sign < 0 < sol.sign):
                merged[key] = sol
    return sorted(merged.values(), key=lambda s: (s.exponents, s.coords))
