"""Modular sieve on unit exponents via Siegel's identity.

For a prime p modulo which g splits into six distinct linear factors, each
conjugate alpha^(i,j) is congruent to an integer residue modulo a prime
ideal above p.  Replacing theta and the units by their residues in

    (t1 - t2) xi^(3) + (t2 - t3) xi^(1) + (t3 - t1) xi^(2) = 0

gives a congruence mod p that every exponent tuple of a genuine solution
must satisfy.  The box [-B0, B0]^h is tested with numpy int64 arithmetic.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import sympy

from . import polyalg

# residues stay below 2**31 so that a product of two fits in int64
MAX_PRIME = 2**31 - 1


@dataclass(frozen=True)
class SievePlan:
    p: int
    roots: tuple  # six roots of g mod p, ascending
    omega_res: tuple  # residues of omega, descending; index 0 drives congruence i = 1
    t: dict  # (i, j) -> residue of theta^(i,j)
    e: dict  # (l, (i, j)) -> residue of epsilon_l^(i,j), l = 1..h
    h: int
    f2_res: tuple = (0, 0)

    def alpha_res(self, i, j):
        return (self.t[i, j] - self.f2_res[i - 1]) % self.p


def _roots_mod_p(coeffs, p):
    """Roots of an integer polynomial mod p by vectorised Horner evaluation."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * x + (c % p)) % p
    return [int(r) for r in np.nonzero(acc == 0)[0]]


def _residue(coords, den, alpha_r, omega_r, p):
    a1, a2, x1, x2, y1, y2 = coords
    val = (a1 + a2 * omega_r) + (x1 + x2 * omega_r) * alpha_r + (y1 + y2 * omega_r) * alpha_r * alpha_r
    return val * pow(den, -1, p) % p


def plan_for_prime(spec, p):
    """Build a SievePlan at p, or return None if g does not split into distinct linear factors."""
    if p > MAX_PRIME:
        raise ValueError(f"prime {p} exceeds the int64-safe cap {MAX_PRIME}")
    if spec.quad.disc % p == 0:
        return None
    if any(u.den % p == 0 for u in spec.units):
        return None
    if p < 3 * 10**7:
        roots = _roots_mod_p(spec.g, p)
    else:
        roots = sorted(int(r) for r in sympy.polys.galoistools.gf_csolve(
            list(reversed(spec.g)), p))
    if len(roots) != 6:
        return None
    # congruence i = 1 uses the larger residue of omega
    om = sorted(_roots_mod_p(spec.quad.omega_poly, p), reverse=True)
    if len(om) != 2:
        return None
    t, e = {}, {}
    groups = {}
    for i, w in enumerate(om, 1):
        fi = [polyalg.evaluate([c.a, c.b], w) % p for c in spec.rel_poly()]
        mine = [r for r in roots if polyalg.evaluate(fi, r) % p == 0]
        if len(mine) != 3:
            return None
        groups[i] = mine
    f2 = tuple((spec.f2.a + spec.f2.b * w) % p for w in om)
    for i in (1, 2):
        for j, r in enumerate(groups[i], 1):
            t[i, j] = (r + f2[i - 1]) % p
            for l, u in enumerate(spec.units, 1):
                v = _residue(u.coords, u.den, r, om[i - 1], p)
                if v == 0:
                    return None
                e[l, (i, j)] = v
    return SievePlan(p, tuple(roots), tuple(om), t, e, spec.h, f2)


def find_split_prime(spec, start=2, max_tries=100000):
    """Smallest prime p >= start at which g has six distinct roots mod p."""
    p = max(int(start), 2) - 1
    for _ in range(max_tries):
        p = int(sympy.nextprime(p))
        plan = plan_for_prime(spec, p)
        if plan is not None:
            return plan
    raise RuntimeError(f"no fully split prime found in {max_tries} primes from {start}")


def split_primes(spec, count, start=2):
    plans = []
    p = start
    while len(plans) < count:
        plan = find_split_prime(spec, p)
        plans.append(plan)
        p = plan.p + 1
    return plans


def _power_table(base, B0, p):
    """base^k mod p for k = -B0..B0 as an int64 array."""
    out = np.empty(2 * B0 + 1, dtype=np.int64)
    inv = pow(base, -1, p)
    out[B0] = 1
    for k in range(1, B0 + 1):
        out[B0 + k] = out[B0 + k - 1] * base % p
        out[B0 - k] = out[B0 - k + 1] * inv % p
    return out


def _congruence_mask(plan, B0, i, lead):
    """Boolean array over the last two exponents (or one if h == 1) for fixed leading exponents."""
    p = plan.p
    h = plan.h
    # coefficient c_j multiplies xi^(i,j): (t_{j+1} - t_{j+2})
    t = [plan.t[i, j] for j in (1, 2, 3)]
    coef = [(t[1] - t[2]) % p, (t[2] - t[0]) % p, (t[0] - t[1]) % p]
    total = None
    for j in (1, 2, 3):
        tables = [_power_table(plan.e[l, (i, j)], B0, p) for l in range(1, h + 1)]
        scalar = coef[j - 1]
        for l, k in enumerate(lead):
            scalar = scalar * int(tables[l][k + B0]) % p
        tail = tables[len(lead):]
        grid = np.full((1,) * len(tail), scalar, dtype=np.int64)
        for d, tab in enumerate(tail):
            shape = [1] * len(tail)
            shape[d] = tab.size
            grid = grid * tab.reshape(shape) % p
        total = grid if total is None else (total + grid) % p
    return total == 0


def siegel_sieve(plan, B0, embeddings=(1,), threads=1):
    """Exponent tuples in [-B0, B0]^h that satisfy the Siegel congruence mod p.

    ``embeddings`` selects which of the two congruences (i = 1, 2) to impose.
    The leading h - 2 exponents are looped over (in parallel strips when
    ``threads`` > 1); the last two are handled as a vectorised grid.
    """
    if B0 < 0:
        raise ValueError("B0 must be nonnegative")
    h = plan.h
    n_lead = max(h - 2, 0)
    rng = range(-B0, B0 + 1)
    leads = list(itertools.product(rng, repeat=n_lead))

    def strip(lead):
        mask = None
        for i in embeddings:
            m = _congruence_mask(plan, B0, i, lead)
            mask = m if mask is None else mask & m
        idx = np.argwhere(mask)
        return [tuple(lead) + tuple(int(v) - B0 for v in row) for row in idx]

    if threads > 1 and len(leads) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(strip, leads))
    else:
        parts = [strip(lead) for lead in leads]
    return sorted(t for part in parts for t in part)


def multi_prime_sieve(spec, B0, num_primes, start=2, embeddings=(1,)):
    """Intersection of survivor sets over the first ``num_primes`` split primes >= start."""
    if num_primes < 1:
        raise ValueError("num_primes must be >= 1")
    survivors = None
    for plan in split_primes(spec, num_primes, start):
        s = set(siegel_sieve(plan, B0, embeddings))
        survivors = s if survivors is None else survivors & s
    return sorted(survivors)
