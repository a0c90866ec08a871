"""Arithmetic in a sextic field K = M(alpha), M real quadratic.

Elements are written over the basis (1, w, alpha, w*alpha, alpha^2, w*alpha^2),
i.e. gamma = A + X*alpha + Y*alpha^2 with A, X, Y in Z_M.  Exact work
(products, minimal polynomials, the index) uses Python integers and
fractions; conjugates come from an :class:`EmbeddingTable` computed with
mpmath at a caller-chosen number of decimal digits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
import sympy

from . import polyalg
from .quadfield import ONE, ZERO, QuadField, QuadInt

KEYS = ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3))


class NotPrimitive(ValueError):
    """The element does not generate K over Q."""


class FieldSpecError(ValueError):
    pass


@dataclass(frozen=True)
class KElement:
    """(a1 + w a2) + (x1 + w x2) alpha + (y1 + w y2) alpha^2, all divided by ``den``."""

    coords: tuple
    den: int = 1

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != 6:
            raise ValueError(f"KElement needs 6 coordinates, got {len(coords)}")
        den = int(self.den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            coords, den = tuple(-c for c in coords), -den
        g = den
        for c in coords:
            g = gcd(g, c)
        if g > 1:
            coords, den = tuple(c // g for c in coords), den // g
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_axy(cls, A, X, Y, den=1):
        return cls((A[0], A[1], X[0], X[1], Y[0], Y[1]), den)

    @classmethod
    def rational(cls, n):
        return cls((n, 0, 0, 0, 0, 0))

    @property
    def A(self):
        return QuadInt(self.coords[0], self.coords[1])

    @property
    def X(self):
        return QuadInt(self.coords[2], self.coords[3])

    @property
    def Y(self):
        return QuadInt(self.coords[4], self.coords[5])

    def is_integral(self):
        return self.den == 1

    def is_zero(self):
        return not any(self.coords)

    def _combine(self, other, sign):
        d = self.den * other.den
        return KElement(
            tuple(a * other.den + sign * b * self.den for a, b in zip(self.coords, other.coords)), d
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return KElement(tuple(-c for c in self.coords), self.den)

    def scale(self, n):
        return KElement(tuple(n * c for c in self.coords), self.den)

    def __repr__(self):
        tail = f", den={self.den}" if self.den != 1 else ""
        return f"KElement({self.coords}{tail})"


def _as_quadint(v):
    if isinstance(v, QuadInt):
        return v
    if isinstance(v, int):
        return QuadInt(v, 0)
    a, b = v
    return QuadInt(int(a), int(b))


class FieldSpec:
    """A sextic field K = M(alpha) with relative cubic f(x) = x^3 + f2 x^2 + f1 x + f0 over Z_M.

    ``units`` holds epsilon_1..epsilon_h (the fundamental unit eta of M is
    ``quad.eta``), either as KElements or as power-basis coefficient lists
    in alpha.  ``units`` may be empty when only index computations are
    needed.  ``D_K`` is recomputed from the trace form and, when given,
    must agree.
    """

    def __init__(self, quad, f2, f1, f0, units=(), D_K=None, g=None, name=None):
        if isinstance(quad, int):
            quad = QuadField(quad)
        self.quad = quad
        self.f2, self.f1, self.f0 = (_as_quadint(c) for c in (f2, f1, f0))
        self.name = name
        self.g = self._absolute_poly()
        if g is not None and list(g) != self.g:
            raise FieldSpecError(f"g = {list(g)} does not equal f^(1) f^(2) = {self.g}")
        if not sympy.Poly(list(reversed(self.g)), sympy.Symbol("x")).is_irreducible:
            raise FieldSpecError(f"absolute polynomial {polyalg.to_str(self.g)} is reducible")
        self._basis_mats = [self._mult_matrix_of_basis(k) for k in range(6)]
        self.D_K = self._trace_form_det()
        if D_K is not None and int(D_K) != self.D_K:
            raise FieldSpecError(f"D_K = {D_K} disagrees with the trace-form determinant {self.D_K}")
        self.units = tuple(self._coerce_unit(u) for u in units)
        if self.units and len(self.units) not in (2, 3, 4):
            raise FieldSpecError(f"need h in {{2,3,4}} units, got {len(self.units)}")
        for i, u in enumerate(self.units, 1):
            if not u.is_integral():
                raise FieldSpecError(f"unit {i} is not an algebraic integer in the basis")
            if abs(norm(u, self)) != 1:
                raise FieldSpecError(f"unit {i} has absolute norm {norm(u, self)}")

    @property
    def m(self):
        return self.quad.m

    @property
    def h(self):
        return len(self.units)

    @property
    def eta(self):
        return self.quad.eta

    @property
    def theta(self):
        """theta = f2 + alpha."""
        return KElement.from_axy(self.f2, ONE, ZERO)

    @property
    def alpha(self):
        return KElement((0, 0, 1, 0, 0, 0))

    def omega(self):
        return KElement((0, 1, 0, 0, 0, 0))

    def rel_poly(self):
        """f as a list of QuadInt coefficients, lowest degree first."""
        return [self.f0, self.f1, self.f2, ONE]

    def _absolute_poly(self):
        q = self.quad
        f = self.rel_poly()
        fc = [q.conj(c) for c in f]
        out = [ZERO] * 7
        for i, a in enumerate(f):
            for j, b in enumerate(fc):
                out[i + j] = out[i + j] + q.mul(a, b)
        if any(c.b for c in out):
            raise FieldSpecError("f^(1) f^(2) is not rational")
        return [c.a for c in out]

    def embed_quad(self, u):
        return KElement.from_axy(u, ZERO, ZERO)

    def _coerce_unit(self, u):
        if isinstance(u, KElement):
            return u
        if isinstance(u, dict):
            if "coords" in u:
                return KElement(tuple(u["coords"]), u.get("den", 1))
            return from_power_basis(u["power"], self)
        return from_power_basis(u, self)

    def _mult_matrix_of_basis(self, k):
        e = [0] * 6
        e[k] = 1
        b = KElement(tuple(e))
        cols = [_mul_integral(b.coords, KElement(tuple(int(i == j) for i in range(6))).coords, self)
                for j in range(6)]
        return [[cols[j][i] for j in range(6)] for i in range(6)]

    def _trace_form_det(self):
        tr = [[0] * 6 for _ in range(6)]
        for i in range(6):
            for j in range(6):
                prod = [[sum(self._basis_mats[i][r][t] * self._basis_mats[j][t][c] for t in range(6))
                         for c in range(6)] for r in range(6)]
                tr[i][j] = sum(prod[r][r] for r in range(6))
        return polyalg.det(tr)

    def to_config(self):
        return {
            "m": self.m,
            "f": {"f2": list(self.f2), "f1": list(self.f1), "f0": list(self.f0)},
            "units": [{"coords": list(u.coords)} for u in self.units],
            "D_K": str(self.D_K),
        }

    def __repr__(self):
        q = self.quad
        return (f"FieldSpec(m={self.m}, f=x^3 + ({q.to_str(self.f2)})x^2 + ({q.to_str(self.f1)})x"
                f" + ({q.to_str(self.f0)}), h={self.h})")


def _mul_integral(u, v, spec):
    """Product of integer coordinate tuples."""
    q = spec.quad
    pu = [QuadInt(u[0], u[1]), QuadInt(u[2], u[3]), QuadInt(u[4], u[5])]
    pv = [QuadInt(v[0], v[1]), QuadInt(v[2], v[3]), QuadInt(v[4], v[5])]
    prod = [ZERO] * 5
    for i, a in enumerate(pu):
        if a.is_zero():
            continue
        for j, b in enumerate(pv):
            if not b.is_zero():
                prod[i + j] = prod[i + j] + q.mul(a, b)
    # alpha^3 = -f2 alpha^2 - f1 alpha - f0
    low = (spec.f0, spec.f1, spec.f2)
    for d in (4, 3):
        c = prod[d]
        if c.is_zero():
            continue
        prod[d] = ZERO
        for t in range(3):
            prod[d - 3 + t] = prod[d - 3 + t] - q.mul(c, low[t])
    return (prod[0].a, prod[0].b, prod[1].a, prod[1].b, prod[2].a, prod[2].b)


def k_mul(u, v, spec):
    """Exact product in K."""
    return KElement(_mul_integral(u.coords, v.coords, spec), u.den * v.den)


def k_pow(u, k, spec):
    if k < 0:
        u, k = k_inverse(u, spec), -k
    result = KElement.rational(1)
    while k:
        if k & 1:
            result = k_mul(result, u, spec)
        u = k_mul(u, u, spec)
        k >>= 1
    return result


def from_power_basis(coeffs, spec):
    """sum c_k alpha^k -> KElement; coefficients may be ints or Fractions."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    acc = KElement.rational(0)
    power = KElement.rational(1)
    for c in fr:
        acc = acc + power.scale(int(c * den))
        power = k_mul(power, spec.alpha, spec)
    return KElement(acc.coords, acc.den * den)


def mult_matrix(u, spec):
    """Integer matrix of multiplication by den*u on the basis (columns = images of basis vectors)."""
    mats = spec._basis_mats
    out = [[0] * 6 for _ in range(6)]
    for k, c in enumerate(u.coords):
        if c == 0:
            continue
        mk = mats[k]
        for r in range(6):
            row, src = out[r], mk[r]
            for s in range(6):
                row[s] += c * src[s]
    return out


def char_poly(u, spec):
    """Characteristic polynomial of u over Q (monic, Fraction coefficients if den > 1)."""
    cp = polyalg.charpoly(mult_matrix(u, spec))
    d = u.den
    if d == 1:
        return cp
    # chi_u(x) = chi_{d u}(d x) / d^6
    return [Fraction(c * d**k, d**6) for k, c in enumerate(cp)]


def norm(u, spec):
    """Absolute norm N_{K/Q}(u)."""
    n = polyalg.det(mult_matrix(u, spec))
    return n if u.den == 1 else Fraction(n, u.den**6)


def trace(u, spec):
    t = sum(mult_matrix(u, spec)[i][i] for i in range(6))
    return t if u.den == 1 else Fraction(t, u.den)


def min_poly(u, spec):
    """Monic minimal polynomial of u over Q, lowest degree first."""
    cp = char_poly(u, spec)
    sf = polyalg.squarefree_part(cp)
    lc = sf[-1]
    out = [Fraction(c, lc) for c in sf]
    return [int(c) if c.denominator == 1 else c for c in out]


def k_inverse(u, spec):
    """Exact inverse via Cayley-Hamilton on the characteristic polynomial."""
    if u.is_zero():
        raise ZeroDivisionError("inverse of zero in K")
    cp = char_poly(u, spec)
    c0 = Fraction(cp[0])
    # u * (u^5 + c5 u^4 + ... + c1) = -c0
    acc = KElement.rational(0)
    for c in reversed(cp[1:]):
        acc = k_mul(acc, u, spec)
        fc = Fraction(c)
        acc = acc + KElement((int(fc.numerator), 0, 0, 0, 0, 0), fc.denominator)
    num = acc.coords
    q = -c0 * acc.den
    return KElement(tuple(c * q.denominator for c in num), q.numerator)


def index(u, spec):
    """Exact module index (Z_K : Z[u]) for an integral u; raises NotPrimitive if deg u < 6."""
    if not u.is_integral():
        raise ValueError("index is defined for algebraic integers only")
    cp = polyalg.charpoly(mult_matrix(u, spec))
    d = polyalg.discriminant(cp)
    if d == 0:
        raise NotPrimitive(f"{u} does not generate K")
    q, r = divmod(d, spec.D_K)
    if r:
        raise FieldSpecError(f"disc {d} not divisible by D_K = {spec.D_K}; basis not integral?")
    return polyalg.exact_sqrt(q)


def power_index(u, spec):
    """Index computed as |det| of the coordinates of 1, u, ..., u^5 (independent route)."""
    rows = []
    p = KElement.rational(1)
    for _ in range(6):
        rows.append(list(p.coords))
        p = k_mul(p, u, spec)
    return abs(polyalg.det(rows))


def is_equivalent(u, v):
    """u = +-v + t for a rational integer t."""
    if u.den != 1 or v.den != 1:
        return False
    for s in (1, -1):
        if all(a == s * b for a, b in zip(u.coords[1:], v.coords[1:])):
            return True
    return False


# ---------------------------------------------------------------------------
# Relative norm form


def relative_norm_form(spec):
    """Coefficients (c0, c1, c2, c3) of F(X, Y) = N_{K/M}(X - theta Y) = sum c_k X^(3-k) Y^k.

    With u = X - f2 Y, the norm is Y^3 f(u/Y) = u^3 + f2 u^2 Y + f1 u Y^2 + f0 Y^3.
    """
    q = spec.quad

    def form_mul(a, b):
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + q.mul(x, y)
        return out

    u = [ONE, -spec.f2]
    u2 = form_mul(u, u)
    u3 = form_mul(u2, u)
    terms = [u3, form_mul(u2, [ZERO, spec.f2]), form_mul(u, [ZERO, ZERO, spec.f1]),
             [ZERO, ZERO, ZERO, spec.f0]]
    out = [ZERO] * 4
    for t in terms:
        for k, c in enumerate(t):
            out[k] = out[k] + c
    return tuple(out)


def eval_norm_form(form, X, Y, quad):
    X, Y = _as_quadint(X), _as_quadint(Y)
    xp = [ONE, X, quad.mul(X, X)]
    xp.append(quad.mul(xp[2], X))
    yp = [ONE, Y, quad.mul(Y, Y)]
    yp.append(quad.mul(yp[2], Y))
    acc = ZERO
    for k, c in enumerate(form):
        acc = acc + quad.mul(c, quad.mul(xp[3 - k], yp[k]))
    return acc


def relative_norm(X, Y, spec):
    """N_{K/M}(X - theta Y) as a QuadInt."""
    return eval_norm_form(relative_norm_form(spec), X, Y, spec.quad)


def relative_index(u, spec):
    """Exact relative index I_{K/M}(u) = |N_{M/Q}(N_{K/M}(X - theta Y))|."""
    return abs(spec.quad.norm(relative_norm(u.X, u.Y, spec)))


# ---------------------------------------------------------------------------
# Embeddings


@dataclass(frozen=True)
class EmbeddingTable:
    """Conjugates of alpha at ``precision`` decimal digits, indexed (i, j)."""

    precision: int
    omega_vals: tuple
    alpha_vals: dict
    theta_vals: dict
    real_keys: tuple = ()

    def workdps(self):
        return mpmath.workdps(self.precision)

    def conjugates(self, u, spec):
        """{(i, j): u^(i,j)} at table precision."""
        with mpmath.workdps(self.precision):
            out = {}
            c = u.coords
            for i, j in KEYS:
                w = self.omega_vals[i - 1]
                a = self.alpha_vals[i, j]
                val = (c[0] + c[1] * w) + (c[2] + c[3] * w) * a + (c[4] + c[5] * w) * a * a
                out[i, j] = val / u.den if u.den != 1 else val
            return out

    def quad_conjugates(self, u):
        with mpmath.workdps(self.precision):
            return tuple(u[0] + u[1] * w for w in self.omega_vals)

    def size(self, values):
        """Maximum absolute value over a collection of conjugates."""
        with mpmath.workdps(self.precision):
            return max(abs(v) for v in values)


def _root_key(z):
    im = mpmath.im(z)
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps // 2)
    cls = 0 if abs(im) < tol else (1 if im > 0 else 2)
    return (cls, float(mpmath.re(z)))


def _eval(coeffs_high_first, z):
    acc = 0
    for c in coeffs_high_first:
        acc = acc * z + c
    return acc


def build_embeddings(spec, precision=250):
    """All six conjugates of alpha, paired with the two embeddings of M."""
    if precision < 50:
        raise ValueError("precision must be at least 50 digits")
    g_hi = list(reversed(spec.g))
    with mpmath.workdps(precision + 30):
        roots = mpmath.polyroots(g_hi, maxsteps=400, extraprec=4 * precision + 200)
        dg = polyalg.derivative(spec.g)
        dg_hi = list(reversed(dg))
        polished = []
        for r in roots:
            for _ in range(4):
                r = r - _eval(g_hi, r) / _eval(dg_hi, r)
            polished.append(r)
        w = spec.quad.omega_values()
        thresh = mpmath.mpf(10) ** (-precision // 2)
        groups = {1: [], 2: []}
        for r in polished:
            res = []
            for i in (1, 2):
                f_i = [1] + [spec.quad.embed(c, i) for c in (spec.f2, spec.f1, spec.f0)]
                res.append(abs(_eval(f_i, r)))
            hit = [res[0] < thresh, res[1] < thresh]
            if hit[0] == hit[1]:
                raise FieldSpecError(
                    f"ambiguous embedding pairing for root {mpmath.nstr(r, 15)}: residuals "
                    f"{mpmath.nstr(res[0], 5)}, {mpmath.nstr(res[1], 5)}")
            groups[1 if hit[0] else 2].append(r)
        if len(groups[1]) != 3 or len(groups[2]) != 3:
            raise FieldSpecError("root pairing did not give three roots per embedding")
        alpha_vals, theta_vals, real_keys = {}, {}, []
        for i in (1, 2):
            f2i = spec.quad.embed(spec.f2, i)
            for j, r in enumerate(sorted(groups[i], key=_root_key), 1):
                if abs(mpmath.im(r)) < thresh:
                    r = mpmath.mpf(mpmath.re(r))
                    real_keys.append((i, j))
                alpha_vals[i, j] = r
                theta_vals[i, j] = f2i + r
        table = EmbeddingTable(precision, tuple(w), alpha_vals, theta_vals, tuple(real_keys))
    return table


def check_embeddings(spec, table):
    """Residual checks on a table; returns the worst |g(alpha)| and |f^(i)(alpha)|."""
    with mpmath.workdps(table.precision):
        g_hi = list(reversed(spec.g))
        worst_g = max(abs(_eval(g_hi, a)) for a in table.alpha_vals.values())
        worst_f = 0
        for (i, j), a in table.alpha_vals.items():
            f_i = [1] + [spec.quad.embed(c, i) for c in (spec.f2, spec.f1, spec.f0)]
            worst_f = max(worst_f, abs(_eval(f_i, a)))
        return worst_g, worst_f


def j_factor(u, spec, table):
    """J(u) = prod |u^(1,j1) - u^(2,j2)| / |D_M|^(3/2)."""
    c = table.conjugates(u, spec)
    with mpmath.workdps(table.precision):
        p = mpmath.mpf(1)
        for j1 in (1, 2, 3):
            for j2 in (1, 2, 3):
                p *= abs(c[1, j1] - c[2, j2])
        return p / mpmath.mpf(abs(spec.quad.disc)) ** mpmath.mpf(1.5)


def relative_index_numeric(u, spec, table):
    """I_{K/M}(u) from conjugates: prod_i prod_{j1<j2} |u-differences| / same for alpha."""
    c = table.conjugates(u, spec)
    a = table.alpha_vals
    with mpmath.workdps(table.precision):
        num = den = mpmath.mpf(1)
        for i in (1, 2):
            for j1, j2 in itertools.combinations((1, 2, 3), 2):
                num *= abs(c[i, j1] - c[i, j2])
                den *= abs(a[i, j1] - a[i, j2])
        return num / den
