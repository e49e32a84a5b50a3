"""Exact linear algebra over Z and Q on plain Python integers.

Matrices are lists of rows.  Nothing here uses floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def clear_denominators(row: Sequence[Fraction | int]) -> list[int]:
    """Primitive integer multiple of a rational row (zero row stays zero)."""
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def rref(rows: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    return len(rref(rows)[1])


def solve_left(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Rational ``y`` with ``sum_i y_i basis[i] = v``, or None when v is outside the span.

    ``basis`` must have linearly independent rows.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    # columns of the transposed system, augmented with v
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(len(v))]
    red, piv = rref(aug)
    if k in piv:
        return None
    if len(piv) != k:
        raise ValueError("basis rows are linearly dependent")
    return [red[i][k] for i in range(k)]


def solve_left_integral(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    y = solve_left(basis, v)
    if y is None or any(x.denominator != 1 for x in y):
        return None
    return [int(x) for x in y]


def echelon_with_transform(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, int]:
    """Integer row echelon form ``E = U A`` with U unimodular.

    Returns (E, U, rank); rows of E past ``rank`` are zero.
    """
    a = [list(map(int, row)) for row in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            # [[x, y], [-q, p]] has determinant 1
            a[r], a[i] = ([x * s + y * t for s, t in zip(a[r], a[i])],
                          [-q * s + p * t for s, t in zip(a[r], a[i])])
            u[r], u[i] = ([x * s + y * t for s, t in zip(u[r], u[i])],
                          [-q * s + p * t for s, t in zip(u[r], u[i])])
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-s for s in a[r]]
            u[r] = [-s for s in u[r]]
        # reduce rows above so entries stay small
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return a, u, r


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{v in Z^N : A v = 0}``; always a saturated sublattice."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    transposed = [[row[j] for row in rows] for j in range(ncols)]
    _, u, r = echelon_with_transform(transposed)
    return lll_reduce(u[r:])


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Exact LLL reduction of independent integer rows; same lattice, shorter vectors."""
    b = [list(row) for row in basis]
    k = len(b)
    if k < 2:
        return b

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * k for _ in range(k)]
        norms = []
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / norms[j]
                v = [p - mu[i][j] * q for p, q in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [p - q * s for p, s in zip(b[i], b[j])]
                mu, norms = gram_schmidt()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return b


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in rows]
    if not a or not a[0]:
        return []
    m, ncols = len(a), len(a[0])
    out = []
    t = 0
    while t < min(m, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def unimodular_completion(c: Sequence[int]) -> tuple[Matrix, Matrix]:
    """For primitive ``c``, return (V, W) unimodular with ``c V = e_1`` and ``W = V^-1``.

    The first row of W is ``c``.
    """
    c = list(map(int, c))
    k = len(c)
    g = 0
    for x in c:
        g = gcd(g, x)
    if g != 1:
        raise ValueError(f"vector {c} is not primitive")
    v = [[int(i == j) for j in range(k)] for i in range(k)]
    w = [[int(i == j) for j in range(k)] for i in range(k)]

    def col_add(i, j, t):
        # column j += t * column i  (on c and V); row i -= t * row j on W
        c[j] += t * c[i]
        for row in v:
            row[j] += t * row[i]
        w[i] = [a - t * b for a, b in zip(w[i], w[j])]

    def col_swap(i, j):
        c[i], c[j] = c[j], c[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        w[i], w[j] = w[j], w[i]

    while sum(1 for x in c if x) > 1 or c[0] == 0:
        nz = [i for i in range(k) if c[i]]
        p = min(nz, key=lambda i: abs(c[i]))
        if p != 0:
            col_swap(0, p)
        for j in range(1, k):
            if c[j]:
                col_add(0, j, -(c[j] // c[0]))
    if c[0] < 0:
        c[0] = -c[0]
        for row in v:
            row[0] = -row[0]
        w[0] = [-a for a in w[0]]
    return v, w


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return solve_left_integral(basis, v) is not None


def lattice_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Equality of Z-spans by double inclusion (both bases must be independent)."""
    if rank(a) != len(a) or rank(b) != len(b) or len(a) != len(b):
        return False
    return all(in_lattice(b, row) for row in a) and all(in_lattice(a, row) for row in b)


def mat_vec_left(y: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    """``sum_i y_i basis[i]``."""
    if not basis:
        return []
    out = [0] * len(basis[0])
    for yi, row in zip(y, basis):
        if yi:
            for j, x in enumerate(row):
                out[j] += yi * x
    return out
