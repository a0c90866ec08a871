"""Bounds on unit exponents and on the exponent k of eta.

All quantities are computed at (at least) 100 decimal digits and rounded
outward, so the returned integer bounds are safe to enumerate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import mpmath

from .quadfield import QuadInt
from .sextic_field import KEYS, KElement, relative_norm

BOUND_DPS = 100
DET_FLOOR = mpmath.mpf(10) ** -20


@dataclass
class BoundReport:
    C: int
    c1: mpmath.mpf
    B0: int
    chosen_rows: tuple
    condition_note: mpmath.mpf
    exponent_bounds: tuple = ()  # per-exponent bounds (k, k1, ..., kh)
    patterns: int = 0

    def as_dict(self):
        return {
            "C": str(self.C),
            "c1": mpmath.nstr(self.c1, 20),
            "B0": self.B0,
            "exponent_bounds": list(self.exponent_bounds),
            "chosen_rows": [list(r) for r in self.chosen_rows],
            "condition_note": mpmath.nstr(self.condition_note, 10),
            "patterns": self.patterns,
        }


def parse_C(value):
    """Coordinate bound from an int or a decimal string such as "1e50"."""
    if isinstance(value, int):
        return value
    s = str(value).strip().lower()
    if "e" in s:
        mant, exp = s.split("e")
        if "." in mant:
            whole, frac = mant.split(".")
            return int(whole + frac) * 10 ** (int(exp) - len(frac))
        return int(mant) * 10 ** int(exp)
    return int(s)


def log_size_bound(C, spec, table):
    """c1 = C + |w|C + |theta|(C + |w|C), an upper bound for every |X - theta Y| conjugate."""
    with mpmath.workdps(max(table.precision, BOUND_DPS)):
        w = max(abs(v) for v in table.omega_vals)
        th = max(abs(v) for v in table.theta_vals.values())
        C = mpmath.mpf(C)
        return C + w * C + th * (C + w * C)


def place_groups(table):
    """Partition conjugate keys into places: complex conjugate pairs share |.|."""
    groups, seen = [], set()
    with mpmath.workdps(table.precision):
        tol = mpmath.mpf(10) ** (-table.precision // 2)
        for k in KEYS:
            if k in seen:
                continue
            grp = [k]
            seen.add(k)
            if k not in table.real_keys:
                for k2 in KEYS:
                    if k2 not in seen and k2[0] == k[0] and \
                            abs(table.alpha_vals[k2] - mpmath.conj(table.alpha_vals[k])) < tol:
                        grp.append(k2)
                        seen.add(k2)
            groups.append(tuple(grp))
    return groups


def unit_log_matrix(spec, table):
    """{key: [log|eta|, log|eps_1|, ..., log|eps_h|]} at each conjugate."""
    units = [spec.embed_quad(spec.eta)] + list(spec.units)
    conj = [table.conjugates(u, spec) for u in units]
    with mpmath.workdps(max(table.precision, BOUND_DPS)):
        return {k: [mpmath.log(abs(c[k])) for c in conj] for k in KEYS}


def _cramer_rows(L, S):
    A = mpmath.matrix([L[k] for k in S])
    d = mpmath.det(A)
    if abs(d) < DET_FLOOR:
        return None, d
    return A**-1, d


def exponent_box(C, spec, table):
    """Sound box radius B0 for the unit exponents k1..kh.

    A sign pattern fixes the set N of conjugates with log|zeta| < 0
    (|N| <= 3, else the small-conjugate fallback applies).  Positive
    conjugates satisfy |log| <= log c1; negative ones are bounded by the
    sum of the positives, at most (6 - |N|) log c1.  For each pattern and
    each exponent the smallest Cramer bound over all regular (h+1)-row
    systems is taken; B0 is the worst case over patterns.
    """
    if not spec.units:
        raise ValueError("exponent_box needs the unit system epsilon_1..epsilon_h")
    h = spec.h
    with mpmath.workdps(max(table.precision, BOUND_DPS)):
        c1 = log_size_bound(C, spec, table)
        lc = mpmath.log(c1)
        L = unit_log_matrix(spec, table)
        places = place_groups(table)
        systems = []
        best_det = 0
        for S in itertools.combinations(KEYS, h + 1):
            inv, d = _cramer_rows(L, S)
            if inv is not None:
                systems.append((S, inv, abs(d)))
                best_det = max(best_det, abs(d))
        if not systems:
            raise ValueError("every log-matrix of the unit system is singular; "
                             "units are dependent or h does not match the unit rank")
        worst = [mpmath.mpf(0)] * (h + 1)
        worst_rows = None
        n_patterns = 0
        for r in range(1, len(places) + 1):
            for neg_places in itertools.combinations(places, r):
                neg = {k for grp in neg_places for k in grp}
                if len(neg) > 3 or len(neg) == 6:
                    continue
                n_patterns += 1
                rhs = {k: ((6 - len(neg)) * lc if k in neg else lc) for k in KEYS}
                for col in range(h + 1):
                    best, best_rows = None, None
                    for S, inv, _ in systems:
                        b = sum(abs(inv[col, t]) * rhs[S[t]] for t in range(h + 1))
                        if best is None or b < best:
                            best, best_rows = b, S
                    if best > worst[col]:
                        worst[col] = best
                        if col >= 1:
                            worst_rows = best_rows
        bounds = tuple(int(mpmath.ceil(w)) for w in worst)
        B0 = max(bounds[1:])
        if worst_rows is None:
            worst_rows = systems[0][0]
        det_note = next(d for S, _, d in systems if S == worst_rows)
        return BoundReport(C=C, c1=c1, B0=B0, chosen_rows=worst_rows, condition_note=det_note,
                           exponent_bounds=bounds, patterns=n_patterns)


def _sys_matrix(table, rows):
    """Rows of x1 + w x2 - theta y1 - w theta y2 for the given conjugate keys."""
    out = []
    for i, j in rows:
        w = table.omega_vals[i - 1]
        th = table.theta_vals[i, j]
        out.append([1, w, -th, -w * th])
    return mpmath.matrix(out)


def small_conjugate_fallback(spec, table, C=None, rhs=1):
    """Coordinate bound when four conjugates of zeta = X - theta Y have |.| < rhs.

    Returns the largest Cramer bound on |x1|, |x2|, |y1|, |y2| over every
    choice of four conjugates, so any such zeta is caught.
    """
    with mpmath.workdps(max(table.precision, BOUND_DPS)):
        worst = mpmath.mpf(0)
        regular = 0
        for rows in itertools.combinations(KEYS, 4):
            A = _sys_matrix(table, rows)
            if abs(mpmath.det(A)) < DET_FLOOR:
                continue
            regular += 1
            inv = A**-1
            for col in range(4):
                b = sum(abs(inv[col, t]) for t in range(4)) * rhs
                worst = max(worst, b)
        if regular == 0:
            raise ValueError("all four-row systems are singular")
        bound = int(mpmath.floor(worst))
        if C is not None:
            bound = min(bound, int(C) - 1)
        return bound


def enumerate_small_solutions(spec, bound):
    """(X, Y) with all coordinates in [-bound, bound] and N_{K/M}(X - theta Y) a unit of Z_M.

    Only one of each +-pair is returned (first nonzero coordinate positive).
    """
    q = spec.quad
    out = []
    rng = range(-bound, bound + 1)
    for x1, x2, y1, y2 in itertools.product(rng, repeat=4):
        v = (x1, x2, y1, y2)
        nz = next((c for c in v if c), 0)
        if nz <= 0:
            continue
        n = relative_norm(QuadInt(x1, x2), QuadInt(y1, y2), spec)
        if abs(q.norm(n)) == 1:
            out.append(v)
    return out


def k_range(X0, Y0, spec, table, C):
    """Interval [kmin, kmax] containing every k for which +-eta^k X0 (or Y0) has coordinates < C.

    Uses the nonzero one of X0, Y0.  With v = eta^k Z, the w-coordinate is
    (eta1^k Z1 - eta2^k Z2)/(w1 - w2); once the decaying term is below
    0.1|w1 - w2| the growing term alone forces |coordinate| >= C.
    """
    X0, Y0 = QuadInt(*X0), QuadInt(*Y0)
    Z = X0 if not X0.is_zero() else Y0
    if Z.is_zero():
        raise ValueError("X0 and Y0 are both zero")
    with mpmath.workdps(BOUND_DPS):
        w1, w2 = spec.quad.omega_values()
        dw = abs(w1 - w2)
        e1, e2 = (spec.quad.embed(spec.eta, i) for i in (1, 2))
        z1, z2 = (abs(spec.quad.embed(Z, i)) for i in (1, 2))
        le1, le2 = mpmath.log(abs(e1)), mpmath.log(abs(e2))  # le1 > 0 > le2
        if le1 < 0:
            le1, le2, z1, z2 = le2, le1, z2, z1
        rhs = mpmath.log((C + mpmath.mpf("0.1")) * dw)
        # growing side k > 0: |eta1|^k z1 < (C + 0.1)|dw|
        kmax = int(mpmath.floor((rhs - mpmath.log(z1)) / le1))
        # k0: for k > k0 the decaying term |eta2|^k z2 < 0.1 dw
        k0_pos = int(mpmath.ceil((mpmath.log(mpmath.mpf("0.1") * dw) - mpmath.log(z2)) / le2))
        # negative k: roles swap, |eta2|^k z2 grows
        kmin = int(mpmath.ceil((rhs - mpmath.log(z2)) / le2))
        k0_neg = int(mpmath.floor((mpmath.log(mpmath.mpf("0.1") * dw) - mpmath.log(z1)) / le1))
    hi = max(kmax, k0_pos, 0)
    lo = min(kmin, k0_neg, 0)
    return lo, hi
