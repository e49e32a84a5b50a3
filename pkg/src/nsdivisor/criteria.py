"""Classification predicates built on the bounded divisor search.

Every criterion is existential over an infinite lattice, so a box search can
only confirm.  Negative outcomes are reported as ``*-up-to-bound`` and carry
the bound that was used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Sequence

from .intersection import PolarizedContext, q_values
from .nslattice import PolarizedNS
from .search import (DivisorRecord, QuotientForms, SearchQuery, enumerate_divisors,
                     is_primitive, make_record, scan_box)

HOLDS = "holds"
FAILS = "fails"
HOLDS_UP_TO_BOUND = "holds-up-to-bound"
FAILS_UP_TO_BOUND = "fails-up-to-bound"


@dataclass(frozen=True)
class Representation:
    """A class realising a vector of q-values."""

    quotient_coords: tuple[int, ...]
    q_values: tuple[Fraction, ...]
    primitive: bool

    def to_dict(self) -> dict:
        return {"coords": list(self.quotient_coords), "q": [str(q) for q in self.q_values],
                "primitive": self.primitive}


@dataclass(frozen=True)
class Verdict:
    criterion: str
    verdict: str
    bound: int
    witnesses: tuple = ()

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "verdict": self.verdict, "bound": self.bound,
                "witnesses": [w.to_dict() for w in self.witnesses]}


@dataclass(frozen=True)
class ClassificationReport:
    verdicts: tuple[Verdict, ...] = field(default_factory=tuple)

    def __getitem__(self, criterion: str) -> Verdict:
        for v in self.verdicts:
            if v.criterion == criterion:
                return v
        raise KeyError(criterion)

    def to_dict(self) -> dict:
        return {"verdicts": [v.to_dict() for v in self.verdicts]}


def _verify(ctx: PolarizedContext, pns: PolarizedNS, coords, target) -> tuple[Fraction, ...]:
    values = tuple(q_values(ctx, pns.lift(coords)))
    if list(values) != [Fraction(t) for t in target]:
        raise AssertionError(f"witness {coords} has q-values {values}, expected {target}")
    return values


def represents(ctx: PolarizedContext, pns: PolarizedNS, target: Sequence[int | Fraction],
               bound: int, primitive: bool = False) -> Representation | None:
    """A class in the box with ``q_r = target[r-2]`` for all r, or None.

    With ``primitive=True`` only primitive classes count ("primitively represents").
    The returned witness is the first in order of max-norm, then lexicographic.
    """
    if len(target) != ctx.n - 1:
        raise ValueError(f"target must have {ctx.n - 1} entries (q_2..q_{ctx.n})")
    want = [Fraction(t) for t in target]
    for coords in scan_box(ctx, pns, bound, want, primitive):
        values = _verify(ctx, pns, coords, want)
        return Representation(coords, values, is_primitive(coords))
    return None


def elliptic_factor_target(n: int) -> tuple[int, ...]:
    """``((-1)^r ((n-1)!)^r)`` for r = 2..n; (4, -8) when n = 3."""
    return tuple((-1) ** r * factorial(n - 1) ** r for r in range(2, n + 1))


def splits_off_elliptic_factor(ctx: PolarizedContext, pns: PolarizedNS,
                               bound: int) -> DivisorRecord | None:
    """Witness that (A, Theta) is a polarized product E x Y, i.e. contains E with (E.Theta) = 1."""
    rep = represents(ctx, pns, elliptic_factor_target(ctx.n), bound)
    if rep is None:
        return None
    # any representation of this vector is automatically primitive
    if not rep.primitive:
        raise AssertionError(f"non-primitive representation {rep.quotient_coords}")
    return make_record(ctx, pns, rep.quotient_coords, factorial(ctx.n - 1))


def _degree_cap(forms: QuotientForms, bound: int) -> int:
    # q_2 = d^2 on the box never exceeds the crude coefficient bound
    return max(1, isqrt(forms.bound(2, bound) // forms.denominator(2)) + 1)


def all_divisors(ctx: PolarizedContext, pns: PolarizedNS, bound: int,
                 max_degree: int | None = None) -> list[DivisorRecord]:
    if pns.quotient_rank == 0 or ctx.n < 2:
        return []
    if max_degree is None:
        max_degree = _degree_cap(QuotientForms(ctx, pns), bound)
    return enumerate_divisors(ctx, pns, SearchQuery(bound, max_degree))


def jacobian_split_report_dim3(ctx: PolarizedContext, pns: PolarizedNS,
                               bound: int) -> ClassificationReport:
    """Jacobian and isogenous-splitting verdicts for a principally polarized 3-fold.

    ``decomposable``: (4, -8) is represented (product polarization; not a Jacobian).
    ``is_jacobian``: the negation, only ever confirmed up to the bound.
    ``elliptic_split_classes``: two distinct primitive classes with q = (d^2, -d^3), d > 2.
    ``jacobian_split``: both of the above.
    """
    if ctx.n != 3:
        raise ValueError(f"dimension must be 3, got {ctx.n}")
    product = splits_off_elliptic_factor(ctx, pns, bound)
    if product is not None:
        decomposable = Verdict("decomposable", HOLDS, bound, (product,))
        jacobian = Verdict("is_jacobian", FAILS, bound, (product,))
    else:
        decomposable = Verdict("decomposable", FAILS_UP_TO_BOUND, bound)
        jacobian = Verdict("is_jacobian", HOLDS_UP_TO_BOUND, bound)

    big = [rec for rec in all_divisors(ctx, pns, bound) if rec.divisor_degree > 2]
    if len(big) >= 2:
        split_classes = Verdict("elliptic_split_classes", HOLDS, bound, tuple(big))
    else:
        split_classes = Verdict("elliptic_split_classes", FAILS_UP_TO_BOUND, bound, tuple(big))

    if product is not None:
        split = Verdict("jacobian_split", FAILS, bound, (product,))
    elif split_classes.verdict == HOLDS:
        split = Verdict("jacobian_split", HOLDS_UP_TO_BOUND, bound, tuple(big))
    else:
        split = Verdict("jacobian_split", FAILS_UP_TO_BOUND, bound)
    return ClassificationReport((decomposable, jacobian, split_classes, split))


def elliptic_covers(ctx: PolarizedContext, pns: PolarizedNS, genus: int, bound: int,
                    max_cover_degree: int | None = None) -> list[tuple[int, DivisorRecord]]:
    """Minimal elliptic covers of degree k, found as classes with
    ``q_r = (-1)^r ((g-1)! k)^r``; the context must be a genus-g Jacobian.
    """
    if genus != ctx.n:
        raise ValueError(f"genus {genus} does not match dimension {ctx.n}")
    fact = factorial(genus - 1)
    max_degree = None if max_cover_degree is None else fact * max_cover_degree
    out = []
    for rec in all_divisors(ctx, pns, bound, max_degree):
        if rec.divisor_degree % fact == 0:
            out.append((rec.divisor_degree // fact, rec))
    return out


def classify(ctx: PolarizedContext, pns: PolarizedNS, bound: int) -> ClassificationReport:
    """All applicable verdicts for the dimension of ``ctx``."""
    if ctx.n == 3:
        return jacobian_split_report_dim3(ctx, pns, bound)
    product = splits_off_elliptic_factor(ctx, pns, bound)
    if product is not None:
        return ClassificationReport((Verdict("decomposable", HOLDS, bound, (product,)),))
    return ClassificationReport((Verdict("decomposable", FAILS_UP_TO_BOUND, bound),))
