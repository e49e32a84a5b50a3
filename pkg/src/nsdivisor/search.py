"""Bounded search for abelian divisors on a ppav.

A primitive class ``alpha`` in NS(A)/Z[Theta] is the class of an abelian
divisor of degree d exactly when ``q_r(alpha) = (-1)^r d^r`` for every
``2 <= r <= n``.  The search scans a coordinate box in a quotient basis,
filters on ``q_2`` being a perfect square first and only then evaluates the
higher forms.  Every hit is re-verified through :func:`q_form` on its lift.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial, gcd, isqrt, lcm
from typing import Iterator, Sequence

import numpy as np

from .exterior import TwoForm
from .intersection import (PolarizedContext, degree, mixed_power, q_form, q_polynomial,
                           q_values)
from .nslattice import PolarizedNS

THREADS_ENV = "NS_DIVISOR_THREADS"
_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class SearchQuery:
    coord_bound: int
    max_degree: int | None = None
    targets: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coord_bound < 1:
            raise ValueError("coord_bound must be >= 1")
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if any(d < 1 for d in self.targets):
            raise ValueError("target degrees must be positive")
        object.__setattr__(self, "targets", tuple(sorted(set(self.targets))))

    def allows(self, d: int) -> bool:
        if d < 1:
            return False
        if self.max_degree is None and not self.targets:
            return True
        return (self.max_degree is not None and d <= self.max_degree) or d in self.targets


@dataclass(frozen=True)
class DivisorRecord:
    quotient_coords: tuple[int, ...]
    divisor_degree: int
    complement_degree: int | None
    q_values: tuple[Fraction, ...]
    ns_representative: tuple[int, ...]
    sign_pair: bool = False

    def sort_key(self):
        return (self.divisor_degree, self.quotient_coords)

    def to_dict(self) -> dict:
        return {
            "coords": list(self.quotient_coords),
            "divisor_degree": self.divisor_degree,
            "complement_degree": self.complement_degree,
            "q": [str(q) for q in self.q_values],
            "ns_representative": list(self.ns_representative),
            "sign_pair": self.sign_pair,
        }


def is_primitive(coords: Sequence[int]) -> bool:
    return reduce(gcd, (int(c) for c in coords), 0) == 1


def satisfies_target(ctx: PolarizedContext, pns: PolarizedNS, q: Sequence[int], d: int) -> bool:
    if d < 1:
        raise ValueError("d must be positive")
    alpha = pns.lift(q)
    return all(q_form(ctx, alpha, r) == (-1) ** r * d ** r for r in range(2, ctx.n + 1))


def congruence_filter(ctx: PolarizedContext, w: TwoForm, d: int) -> bool:
    """Necessary condition ``deg w = d (mod n!)`` for w to be a theta-shift of a degree-d divisor."""
    return (degree(ctx, w) - d) % factorial(ctx.n) == 0


def divisor_representative(ctx: PolarizedContext, pns: PolarizedNS, q: Sequence[int],
                           d: int) -> tuple[int, ...]:
    """The theta-shift of ``lift(q)`` of degree exactly d."""
    alpha = pns.lift(q)
    shift, rem = divmod(degree(ctx, alpha) - d, ctx.theta_top)
    if rem:
        raise ArithmeticError(
            f"deg(alpha) - d = {degree(ctx, alpha) - d} is not divisible by {ctx.theta_top}")
    return (alpha - shift * ctx.theta).coeffs


def divisor_multiple(ctx: PolarizedContext, w: TwoForm, d: int) -> tuple[int, TwoForm] | None:
    """Write ``w = m [Z]`` modulo theta for an abelian divisor class Z, when the q-targets allow it.

    Needs ``deg w = d (mod (Theta^n))`` and ``q_r(w) = (-1)^r d^r`` for every r; no
    primitivity is assumed.  Returns ``(m, beta / m)`` where ``beta`` is the
    degree-d theta-shift of ``w`` (square-zero, so effective) and ``beta / m`` is
    primitive in the ambient lattice, or None when a hypothesis fails.
    """
    if d < 1:
        raise ValueError("d must be positive")
    shift, rem = divmod(degree(ctx, w) - d, ctx.theta_top)
    if rem or any(q_form(ctx, w, r) != (-1) ** r * d ** r for r in range(2, ctx.n + 1)):
        return None
    beta = w - shift * ctx.theta
    m = reduce(gcd, beta.coeffs, 0)
    return m, TwoForm(ctx.n, tuple(a // m for a in beta.coeffs))


def divisibility_predicate(m: int, n: int) -> bool:
    """Whether ``m^(n-1)`` divides ``n!``."""
    if m in (-1, 0, 1):
        raise ValueError("m must not be -1, 0 or 1")
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(n) % m ** (n - 1) == 0


def xr_closed_form(d: int, k: int, r: int) -> int:
    """``(d - k)^(r-1) (d + (r-1) k)``."""
    if r < 2:
        raise ValueError("r must be >= 2")
    return (d - k) ** (r - 1) * (d + (r - 1) * k)


def xr_recursive(d: int, k: int, r: int) -> int:
    """The same sequence from its defining recursion (x_2 = d^2 - k^2)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    xs = {2: d * d - k * k}
    for s in range(3, r + 1):
        xs[s] = (s - 1) * (-1) ** s * (d ** s - k ** s) + sum(
            comb(s, m) * (-1) ** (s - m + 1) * d ** (s - m) * xs[m] for m in range(2, s))
    return xs[r]


class QuotientForms:
    """The forms ``q_2..q_n`` and the degree as integer polynomials in quotient coordinates.

    ``q_r = numerator_r(x) / denominator_r`` with integer coefficients, ready for
    vectorised evaluation over many coordinate vectors at once.
    """

    def __init__(self, ctx: PolarizedContext, pns: PolarizedNS):
        self.ctx = ctx
        self.pns = pns
        self.k = pns.quotient_rank
        basis = pns.lift_basis()
        self.degrees = np.array([degree(ctx, v) for v in basis], dtype=np.int64)
        self.polys: dict[int, tuple[np.ndarray, list[int], int]] = {}
        self.symbolic = {}
        if self.k == 0:
            return
        for r in range(2, ctx.n + 1):
            poly = q_polynomial(ctx, basis, r)
            self.symbolic[r] = poly
            den = reduce(lcm, (Fraction(c).denominator for c in poly.terms.values()), 1)
            monos = sorted(poly.terms)
            exps = np.array(monos, dtype=np.int64).reshape(len(monos), self.k)
            coeffs = [int(Fraction(poly.terms[m]) * den) for m in monos]
            self.polys[r] = (exps, coeffs, den)

    def bound(self, r: int, box: int) -> int:
        _, coeffs, _ = self.polys[r]
        return sum(abs(c) for c in coeffs) * box ** r

    def numerator(self, r: int, X: np.ndarray, exact: bool = False) -> np.ndarray:
        """``denominator_r * q_r`` at every row of X."""
        exps, coeffs, _ = self.polys[r]
        if exact:
            X = X.astype(object)
        out = np.zeros(X.shape[0], dtype=X.dtype)
        for e, c in zip(exps, coeffs):
            term = np.full(X.shape[0], c, dtype=X.dtype)
            for j in np.nonzero(e)[0]:
                term = term * X[:, j] ** int(e[j])
            out = out + term
        return out

    def denominator(self, r: int) -> int:
        return self.polys[r][2]


def box_slices(k: int, bound: int) -> Iterator[np.ndarray]:
    """All of ``[-B, B]^k`` as int64 arrays, one slice per value of the first coordinate."""
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    if k == 1:
        for v in side:
            yield np.array([[v]], dtype=np.int64)
        return
    rest = np.stack(np.meshgrid(*([side] * (k - 1)), indexing="ij"), axis=-1).reshape(-1, k - 1)
    for v in side:
        yield np.concatenate([np.full((rest.shape[0], 1), v, dtype=np.int64), rest], axis=1)


def _primitive_mask(X: np.ndarray) -> np.ndarray:
    return np.gcd.reduce(np.abs(X), axis=1) == 1


def _scan_slice(forms: QuotientForms, X: np.ndarray, query: SearchQuery,
                exact: bool) -> list[tuple[tuple[int, ...], int]]:
    n = forms.ctx.n
    X = X[_primitive_mask(X)]
    if X.shape[0] == 0:
        return []
    num2 = forms.numerator(2, X, exact)
    den2 = forms.denominator(2)
    keep = num2 % den2 == 0
    X, val = X[keep], num2[keep] // den2
    keep = val > 0
    X, val = X[keep], val[keep]
    if exact:
        d = np.array([isqrt(int(v)) for v in val], dtype=object)
    else:
        d = np.floor(np.sqrt(val.astype(np.float64))).astype(np.int64)
        # float sqrt may be off by one for large values
        d = np.where((d + 1) * (d + 1) <= val, d + 1, d)
        d = np.where(d * d > val, d - 1, d)
    keep = d * d == val
    X, d = X[keep], d[keep]
    if X.shape[0] == 0:
        return []
    allowed = np.array([query.allows(int(x)) for x in d], dtype=bool)
    X, d = X[allowed], d[allowed]
    for r in range(3, n + 1):
        if X.shape[0] == 0:
            break
        num = forms.numerator(r, X, exact)
        sign = 1 if r % 2 == 0 else -1
        den = forms.denominator(r)
        target = np.array([sign * den * int(x) ** r for x in d], dtype=object)
        keep = np.array([int(a) == b for a, b in zip(num, target)], dtype=bool)
        X, d = X[keep], d[keep]
    return [(tuple(int(v) for v in row), int(dd)) for row, dd in zip(X, d)]


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def make_record(ctx: PolarizedContext, pns: PolarizedNS, coords: Sequence[int],
                d: int) -> DivisorRecord:
    """Build and independently re-verify the record of an abelian-divisor class."""
    coords = tuple(int(c) for c in coords)
    if not is_primitive(coords):
        raise AssertionError(f"{coords} is not primitive")
    if not satisfies_target(ctx, pns, coords, d):
        raise AssertionError(f"{coords} does not satisfy the degree-{d} target")
    beta = divisor_representative(ctx, pns, coords, d)
    beta_form = TwoForm(ctx.n, beta)
    if degree(ctx, beta_form) != d or any(mixed_power(ctx, beta_form, r)
                                          for r in range(2, ctx.n + 1)):
        raise AssertionError(f"representative of {coords} is not square-zero of degree {d}")
    fact = factorial(ctx.n - 1)
    return DivisorRecord(
        quotient_coords=coords,
        divisor_degree=d,
        complement_degree=d // fact if d % fact == 0 else None,
        q_values=tuple(q_values(ctx, pns.lift(coords))),
        ns_representative=beta,
        sign_pair=ctx.n == 2,
    )


def enumerate_divisors(ctx: PolarizedContext, pns: PolarizedNS,
                       query: SearchQuery) -> list[DivisorRecord]:
    """All primitive box classes that are abelian divisors of an allowed degree."""
    if pns.n != ctx.n:
        raise ValueError("context and lattice dimensions differ")
    if pns.quotient_rank == 0 or ctx.n < 2:
        return []
    forms = QuotientForms(ctx, pns)
    exact = max(forms.bound(r, query.coord_bound) for r in forms.polys) >= _INT64_SAFE
    slices = box_slices(forms.k, query.coord_bound)
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda X: _scan_slice(forms, X, query, exact), slices))
    else:
        parts = [_scan_slice(forms, X, query, exact) for X in slices]
    hits = sorted({h for part in parts for h in part}, key=lambda h: (h[1], h[0]))
    return [make_record(ctx, pns, coords, d) for coords, d in hits]


def scan_box(ctx: PolarizedContext, pns: PolarizedNS, bound: int,
             target: Sequence[int | Fraction],
             primitive_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Nonzero quotient vectors in the box with ``(q_2, ..., q_n) == target``.

    Yields in order of increasing max-norm, then lexicographically, so the first
    hit is a canonical smallest witness.
    """
    if pns.quotient_rank == 0 or ctx.n < 2:
        return
    forms = QuotientForms(ctx, pns)
    rows = np.concatenate(list(box_slices(forms.k, bound)))
    rows = rows[np.any(rows != 0, axis=1)]
    if primitive_only:
        rows = rows[_primitive_mask(rows)]
    exact = max(forms.bound(r, bound) for r in forms.polys) >= _INT64_SAFE
    for r, t in zip(range(2, ctx.n + 1), target):
        t = Fraction(t) * forms.denominator(r)
        if t.denominator != 1:
            return
        rows = rows[forms.numerator(r, rows, exact) == int(t)]
    order = np.lexsort(tuple(rows[:, j] for j in reversed(range(forms.k)))
                       + (np.abs(rows).max(axis=1),))
    for row in rows[order]:
        yield tuple(int(v) for v in row)
