"""Intersection theory on a principally polarized abelian variety.

Classes are integral 2-forms in the real coordinates of a symplectic lattice
basis.  The polarization is ``theta = -sum_i dx_i ^ dx_{i+n}`` and an
intersection number of n divisor classes is ``(-1)^n`` times the coefficient
of ``eta = dx_1 ^ dx_{n+1} ^ ... ^ dx_n ^ dx_{2n}`` in their wedge product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .exterior import (DimensionMismatch, Multivector, TwoForm, pair_index, power,
                       top_coefficient, wedge)
from .scalars import PolyScalar, SymbolTable


@lru_cache(maxsize=None)
def _theta_power(n: int, s: int) -> Multivector:
    return power(TwoForm.theta(n).to_multivector(), s)


@dataclass(frozen=True)
class PolarizedContext:
    """Dimension ``n`` with its principal polarization class."""

    n: int
    theta: TwoForm = field(init=False)
    theta_top: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        theta = TwoForm.theta(self.n)
        object.__setattr__(self, "theta", theta)
        top = (-1) ** self.n * top_coefficient(_theta_power(self.n, self.n),
                                               Multivector.scalar(self.n))
        if top != factorial(self.n):
            raise AssertionError(f"(Theta^{self.n}) = {top}, expected {factorial(self.n)}")
        object.__setattr__(self, "theta_top", top)

    def theta_power(self, s: int) -> Multivector:
        return _theta_power(self.n, s)

    def _check(self, w: TwoForm):
        if w.n != self.n:
            raise DimensionMismatch(f"form of dimension {w.n} in a dimension-{self.n} context")


def intersection_number(ctx: PolarizedContext, forms: Sequence[TwoForm]) -> int:
    """``(L_1 ... L_n)`` for n integral 2-forms."""
    if len(forms) != ctx.n:
        raise ValueError(f"need exactly {ctx.n} forms, got {len(forms)}")
    for f in forms:
        ctx._check(f)
    acc = Multivector.scalar(ctx.n)
    for f in forms[:-1]:
        acc = wedge(acc, f.to_multivector())
    return (-1) ** ctx.n * top_coefficient(acc, forms[-1].to_multivector())


def mixed_power(ctx: PolarizedContext, w: TwoForm, r: int) -> int:
    """``(w^r . Theta^{n-r})``."""
    if not 0 <= r <= ctx.n:
        raise ValueError(f"r must lie in [0, {ctx.n}], got {r}")
    ctx._check(w)
    return (-1) ** ctx.n * top_coefficient(power(w.to_multivector(), r),
                                           ctx.theta_power(ctx.n - r))


def degree(ctx: PolarizedContext, w: TwoForm) -> int:
    """``(w . Theta^{n-1})`` from the diagonal coefficients a_{i,i+n}."""
    ctx._check(w)
    n = ctx.n
    return -factorial(n - 1) * sum(w[(i, i + n)] for i in range(1, n + 1))


def natural_sharp(ctx: PolarizedContext, w: TwoForm) -> TwoForm:
    """Projection away from Z[Theta]: ``(Theta^n) w - deg(w) Theta``; always of degree 0."""
    return ctx.theta_top * w - degree(ctx, w) * ctx.theta


def _check_r(ctx: PolarizedContext, r: int):
    if not 2 <= r <= ctx.n:
        raise ValueError(f"r must lie in [2, {ctx.n}], got {r}")


def q_form(ctx: PolarizedContext, w: TwoForm, r: int) -> Fraction:
    """``q_r(w) = -((w^natural)^r . Theta^{n-r}) / ((r-1) (Theta^n))``, exactly."""
    _check_r(ctx, r)
    sharp = natural_sharp(ctx, w)
    return Fraction(-mixed_power(ctx, sharp, r), (r - 1) * ctx.theta_top)


def q_form_expanded(ctx: PolarizedContext, w: TwoForm, r: int) -> Fraction:
    """``q_r`` via its binomial expansion in the mixed powers ``(w^m . Theta^{n-m})``.

    Independent of :func:`q_form`'s use of the natural-sharp class; the two
    agree identically.
    """
    _check_r(ctx, r)
    top = ctx.theta_top
    d = degree(ctx, w)
    total = Fraction(0)
    for m in range(2, r + 1):
        total += (comb(r, m) * top ** (m - 2) * (-1) ** (r - m + 1) * d ** (r - m)
                  * mixed_power(ctx, w, m))
    return (-1) ** r * Fraction(d) ** r + Fraction(top, r - 1) * total


def q_values(ctx: PolarizedContext, w: TwoForm) -> list[Fraction]:
    """``[q_2(w), ..., q_n(w)]``."""
    return [q_form(ctx, w, r) for r in range(2, ctx.n + 1)]


def effectivity_indicator(ctx: PolarizedContext, w: TwoForm) -> tuple[bool, bool]:
    """(numerically effective, numerically ample) from the signs of ``(w^i . Theta^{n-i})``."""
    values = [mixed_power(ctx, w, i) for i in range(1, ctx.n + 1)]
    return all(v >= 0 for v in values), all(v > 0 for v in values)


def ambient_variable_names(n: int) -> list[str]:
    """``a12, a13, ...`` in lexicographic pair order (``a1_10`` style once 2n > 9)."""
    sep = "_" if 2 * n > 9 else ""
    return [f"a{i}{sep}{j}" for i, j in pair_index(n)]


def q_polynomial(ctx: PolarizedContext, basis: Sequence[TwoForm], r: int,
                 names: Sequence[str] | None = None) -> PolyScalar:
    """``q_r(x_1 v_1 + ... + x_k v_k)`` as a polynomial in the coordinates ``x``."""
    _check_r(ctx, r)
    if names is None:
        names = [f"x{k + 1}" for k in range(len(basis))]
    if len(names) != len(basis):
        raise ValueError("need one name per basis vector")
    table = SymbolTable(names)
    xs = [PolyScalar.symbol(table, name) for name in names]
    zero = PolyScalar.constant(table, 0)

    # natural-sharp is linear, so apply it to each basis vector first
    sharp_coeffs: dict[tuple[int, int], PolyScalar] = {}
    for x, v in zip(xs, basis):
        ctx._check(v)
        for pair, a in natural_sharp(ctx, v).nonzero().items():
            sharp_coeffs[pair] = sharp_coeffs.get(pair, zero) + x.scale(a)
    sharp = Multivector(ctx.n, 2, sharp_coeffs)
    top = top_coefficient(power(sharp, r, one=PolyScalar.constant(table, 1)),
                          ctx.theta_power(ctx.n - r), zero=zero)
    return top.scale(Fraction((-1) ** (ctx.n + 1), (r - 1) * ctx.theta_top))


@lru_cache(maxsize=None)
def q_symbolic(n: int, r: int) -> PolyScalar:
    """``q_r`` as a polynomial in the ambient coefficients ``a_ij``."""
    ctx = PolarizedContext(n)
    basis = [TwoForm.from_dict(n, {pair: 1}) for pair in pair_index(n)]
    return q_polynomial(ctx, basis, r, ambient_variable_names(n))
