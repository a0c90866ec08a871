"""Exact arithmetic in a real quadratic field M = Q(sqrt(m)) and its ring of integers.

Elements of Z_M are stored in the omega-basis, a + b*omega, where omega is
sqrt(m) for m = 2, 3 (mod 4) and (1 + sqrt(m))/2 for m = 1 (mod 4).  The
field parameter travels with a :class:`QuadField` object, not with each
element, so a :class:`QuadInt` is just an immutable pair of integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import NamedTuple

import mpmath


class QuadInt(NamedTuple):
    a: int
    b: int = 0

    def __neg__(self):
        return QuadInt(-self.a, -self.b)

    def __add__(self, other):
        return QuadInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return QuadInt(self.a - other.a, self.b - other.b)

    def is_zero(self):
        return self.a == 0 and self.b == 0


ZERO = QuadInt(0, 0)
ONE = QuadInt(1, 0)


def is_squarefree(n):
    if n < 2:
        return n == 1
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadField:
    """The real quadratic field Q(sqrt(m)), m > 1 squarefree."""

    m: int
    eta: QuadInt = field(default=None, compare=False)

    def __post_init__(self):
        if self.m <= 1 or not is_squarefree(self.m):
            raise ValueError(f"m must be a squarefree integer > 1, got {self.m}")
        if self.eta is None:
            object.__setattr__(self, "eta", fundamental_unit(self.m))
        elif abs(self.norm(self.eta)) != 1:
            raise ValueError(f"{self.eta} is not a unit of Q(sqrt({self.m}))")

    @property
    def one_mod_four(self):
        return self.m % 4 == 1

    @property
    def disc(self):
        """Field discriminant D_M."""
        return self.m if self.one_mod_four else 4 * self.m

    @property
    def omega_poly(self):
        """Minimal polynomial of omega, lowest degree first."""
        if self.one_mod_four:
            return [-(self.m - 1) // 4, -1, 1]
        return [-self.m, 0, 1]

    def mul(self, u, v):
        a1, b1 = u
        a2, b2 = v
        bb = b1 * b2
        if self.one_mod_four:
            # omega^2 = omega + (m-1)/4
            return QuadInt(a1 * a2 + bb * ((self.m - 1) // 4), a1 * b2 + a2 * b1 + bb)
        return QuadInt(a1 * a2 + bb * self.m, a1 * b2 + a2 * b1)

    def conj(self, u):
        a, b = u
        if self.one_mod_four:
            return QuadInt(a + b, -b)
        return QuadInt(a, -b)

    def norm(self, u):
        a, b = u
        if self.one_mod_four:
            return a * a + a * b - b * b * ((self.m - 1) // 4)
        return a * a - self.m * b * b

    def trace(self, u):
        a, b = u
        return 2 * a + b if self.one_mod_four else 2 * a

    def inverse_unit(self, u):
        n = self.norm(u)
        if n not in (1, -1):
            raise ValueError(f"{u} is not a unit (norm {n})")
        c = self.conj(u)
        return c if n == 1 else -c

    def pow(self, u, k):
        u = QuadInt(*u)
        if k < 0:
            u, k = self.inverse_unit(u), -k
        result = ONE
        while k:
            if k & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            k >>= 1
        return result

    def is_unit(self, u):
        return self.norm(u) in (1, -1)

    def omega_values(self):
        """(omega^(1), omega^(2)) at the current mpmath precision; omega^(1) uses +sqrt(m)."""
        r = mpmath.sqrt(self.m)
        if self.one_mod_four:
            return (1 + r) / 2, (1 - r) / 2
        return r, -r

    def embed(self, u, i):
        """Value of u under embedding i (1 or 2) at the current mpmath precision."""
        w = self.omega_values()[i - 1]
        return u[0] + u[1] * w

    def to_str(self, u):
        a, b = u
        w = "w"
        if b == 0:
            return str(a)
        tail = w if b == 1 else ("-" + w if b == -1 else f"{b}*{w}")
        if a == 0:
            return tail
        return f"{a} + {tail}".replace("+ -", "- ")


def _cf_sqrt_units(m):
    """Convergents p/q of sqrt(m) until p^2 - m q^2 = +-1 (classical period algorithm)."""
    a0 = isqrt(m)
    mm, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - m * q * q not in (1, -1):
        mm = d * a - mm
        d = (m - mm * mm) // d
        a = (a0 + mm) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def _cf_omega_unit(m):
    """Smallest unit > 1 of Z[(1+sqrt(m))/2] for m = 1 (mod 4).

    Walks the continued fraction of omega = (1 + sqrt(m))/2 written as
    (P + sqrt(m))/Q.  For a convergent p/q, p - q*omega is small and its
    conjugate (p - q) + q*omega is the large unit candidate.
    """
    s = isqrt(m)
    P, Q = 1, 2
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    c = (m - 1) // 4
    while True:
        a = (P + s) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        x, y = p - q, q
        if x * x + x * y - c * y * y in (1, -1):
            return QuadInt(x, y)
        P = a * Q - P
        Q = (m - P * P) // Q


def fundamental_unit(m):
    """The fundamental unit eta > 1 of Z_M for M = Q(sqrt(m)), as a QuadInt in the omega-basis."""
    if m <= 1 or not is_squarefree(m):
        raise ValueError(f"m must be a squarefree integer > 1, got {m}")
    if m % 4 == 1:
        return _cf_omega_unit(m)
    p, q = _cf_sqrt_units(m)
    return QuadInt(p, q)


@lru_cache(maxsize=None)
def get_field(m):
    return QuadField(m)


def quad_mul(u, v, m):
    return get_field(m).mul(u, v)


def quad_conj(u, m):
    return get_field(m).conj(u)


def quad_norm(u, m):
    return get_field(m).norm(u)


def unit_pow(u, k, m):
    return get_field(m).pow(u, k)
