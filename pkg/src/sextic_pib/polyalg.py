"""Exact polynomial and matrix helpers over Z and Q.

Polynomials are plain lists of coefficients, lowest degree first:
``[c0, c1, ..., cn]`` stands for c0 + c1 x + ... + cn x^n.  The zero
polynomial is ``[]``.  Coefficients are Python ints or ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    return len(trim(f)) - 1


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def sub(f, g):
    return add(f, [-c for c in g])


def scale(f, c):
    return trim([c * a for a in f])


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def derivative(f):
    return trim([i * f[i] for i in range(1, len(f))])


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def divmod_poly(f, g):
    """Quotient and remainder over Q (over Z when g is monic)."""
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lc = g[-1]
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + len(g) - 1]
        if c == 0:
            continue
        c = c * lc if lc in (1, -1) else Fraction(c) / lc
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
    return trim(q), trim(r[: len(g) - 1])


def content(f):
    c = 0
    for a in f:
        c = gcd(c, int(a))
    return c


def primitive(f):
    """Integer primitive part with positive leading coefficient."""
    f = trim(f)
    if not f:
        return []
    if any(isinstance(a, Fraction) for a in f):
        den = 1
        for a in f:
            den = den * Fraction(a).denominator // gcd(den, Fraction(a).denominator)
        f = [int(Fraction(a) * den) for a in f]
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def gcd_poly(f, g):
    """Primitive gcd over Q[x] (Euclid on primitive parts)."""
    f, g = primitive(f), primitive(g)
    while g:
        _, r = divmod_poly(f, g)
        f, g = g, primitive(r)
    return f


def squarefree_part(f):
    f = primitive(f)
    d = gcd_poly(f, derivative(f))
    if len(d) <= 1:
        return f
    q, r = divmod_poly(f, d)
    assert not r
    return primitive(q)


def det(matrix):
    """Exact determinant by fraction-free Bareiss elimination (integer entries)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_rational(matrix):
    """Determinant for entries that may be Fractions."""
    den = 1
    for row in matrix:
        for a in row:
            d = Fraction(a).denominator
            den = den * d // gcd(den, d)
    if den == 1:
        return det([[int(a) for a in row] for row in matrix])
    n = len(matrix)
    scaled = [[int(Fraction(a) * den) for a in row] for row in matrix]
    return Fraction(det(scaled), den**n)


def charpoly(matrix):
    """Characteristic polynomial det(xI - M), Berkowitz algorithm (division free)."""
    n = len(matrix)
    if n == 0:
        return [1]
    # vector of coefficients, highest degree first, for the leading k x k block
    c = [1, -matrix[0][0]]
    for k in range(1, n):
        r = [matrix[i][k] for i in range(k)]  # column above the diagonal
        s = matrix[k][:k]  # row left of the diagonal
        a = [row[:k] for row in matrix[:k]]
        # Toeplitz column: 1, -m_kk, -s r, -s A r, -s A^2 r, ...
        t = [1, -matrix[k][k]]
        v = r
        for _ in range(k):
            t.append(-sum(si * vi for si, vi in zip(s, v)))
            v = [sum(a[i][j] * v[j] for j in range(k)) for i in range(k)]
        new = []
        for i in range(k + 2):
            new.append(sum(t[i - j] * c[j] for j in range(min(i, k) + 1) if i - j < len(t)))
        c = new
    return list(reversed(c))


def resultant(f, g):
    """Resultant via the Sylvester determinant."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return det_rational(rows)


def discriminant(f):
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return 1
    res = resultant(f, derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = Fraction(sign * res) / f[-1]
    return int(d) if d.denominator == 1 else d


def exact_sqrt(n):
    """Integer square root of a perfect square; raises if n is not one."""
    if n < 0:
        raise ValueError(f"negative radicand {n}")
    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def to_str(f, var="x"):
    f = trim(f)
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            body = mono
        elif mono and c == -1:
            body = "-" + mono
        else:
            body = f"{c}*{mono}" if mono else str(c)
        terms.append(body)
    return " + ".join(terms).replace("+ -", "- ")
