"""Exterior algebra on the real coordinate differentials dx_1, ..., dx_2n.

Blades are stored as strictly increasing index tuples (1-based).  The only
place a non-sorted order appears is :func:`eta_coefficient`, which converts
to the interleaved reference top form ``dx_1 dx_{n+1} dx_2 dx_{n+2} ...``.

Coefficients can be any commutative ring element supporting ``+``, ``*`` and
truth testing for zero: ``int``, ``Fraction`` or :class:`PolyScalar`.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Iterable, Mapping

Blade = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def merge_blades(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Sign and sorted blade of ``a ^ b``; sign 0 when an index repeats."""
    if set(a) & set(b):
        return 0, ()
    # each element of b moves left past the elements of a that exceed it
    inversions = sum(len(a) - bisect_right(a, y) for y in b)
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


def permutation_sign(seq: Iterable[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    sign = 1
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eta_order(n: int) -> tuple[int, ...]:
    """Index order of the reference top form: 1, n+1, 2, n+2, ..., n, 2n."""
    return tuple(x for i in range(1, n + 1) for x in (i, i + n))


class Multivector:
    """Homogeneous element of the exterior algebra in dimension 2n."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: Mapping[Blade, Any] | None = None):
        self.n = n
        self.degree = degree
        clean = {}
        for blade, c in (terms or {}).items():
            blade = tuple(blade)
            if len(blade) != degree:
                raise ValueError(f"blade {blade} does not have degree {degree}")
            if list(blade) != sorted(set(blade)) or (blade and not 1 <= blade[0] <= blade[-1] <= 2 * n):
                raise ValueError(f"blade {blade} is not a strictly increasing subset of 1..{2 * n}")
            if c:
                clean[blade] = c
        self.terms = clean

    @classmethod
    def scalar(cls, n: int, value: Any = 1) -> "Multivector":
        return cls(n, 0, {(): value})

    @classmethod
    def basis(cls, n: int, *indices: int, coeff: Any = 1) -> "Multivector":
        """The (possibly unsorted) product ``coeff * dx_{i1} ^ dx_{i2} ^ ...``."""
        if len(set(indices)) != len(indices):
            return cls(n, len(indices))
        sign = permutation_sign(indices)
        return cls(n, len(indices), {tuple(sorted(indices)): coeff * sign})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch("dimension mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise ValueError("cannot add multivectors of different degrees")
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return Multivector(self.n, self.degree, out)

    def __neg__(self) -> "Multivector":
        return Multivector(self.n, self.degree, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, k: Any) -> "Multivector":
        return Multivector(self.n, self.degree, {b: c * k for b, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*dx{list(b)}" for b, c in sorted(self.terms.items()))
        return f"Multivector(n={self.n}, deg={self.degree}: {body or '0'})"


def wedge(u: Multivector, v: Multivector) -> Multivector:
    if u.n != v.n:
        raise DimensionMismatch(f"dimension mismatch: {u.n} vs {v.n}")
    degree = u.degree + v.degree
    if degree > 2 * u.n:
        return _zero(u.n, degree)
    out: dict[Blade, Any] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            sign, blade = merge_blades(a, b)
            if not sign:
                continue
            term = ca * cb
            if sign < 0:
                term = -term
            out[blade] = out[blade] + term if blade in out else term
    return _trusted(u.n, degree, {b: c for b, c in out.items() if c})


def _trusted(n: int, degree: int, terms: dict) -> Multivector:
    mv = Multivector.__new__(Multivector)
    mv.n, mv.degree, mv.terms = n, degree, terms
    return mv


def _zero(n: int, degree: int) -> Multivector:
    if degree <= 2 * n:
        return Multivector(n, degree)
    # degree above 2n: keep the degree bookkeeping, no blades exist
    return _trusted(n, degree, {})


def power(w: Multivector, r: int, one: Any = 1) -> Multivector:
    """r-fold wedge of ``w`` with itself; ``power(w, 0)`` is the unit scalar ``one``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    result = Multivector.scalar(w.n, one)
    for _ in range(r):
        result = wedge(result, w)
        if result.is_zero():
            return _zero(w.n, w.degree * r)
    return result


def eta_coefficient(w: Multivector, zero: Any = 0) -> Any:
    """Coefficient c with ``w = c * eta`` for a top-degree form ``w``."""
    if w.degree != 2 * w.n:
        raise ValueError(f"expected degree {2 * w.n}, got {w.degree}")
    full = tuple(range(1, 2 * w.n + 1))
    if full not in w.terms:
        return zero
    c = w.terms[full]
    return c if eta_sign(w.n) > 0 else -c


@lru_cache(maxsize=None)
def eta_sign(n: int) -> int:
    """Sign with ``eta = eta_sign(n) * dx_1 ^ ... ^ dx_2n``."""
    return permutation_sign(eta_order(n))


def pair_index(n: int) -> list[tuple[int, int]]:
    """Lexicographic list of pairs (i, j), 1 <= i < j <= 2n."""
    return list(combinations(range(1, 2 * n + 1), 2))


@lru_cache(maxsize=None)
def _pair_positions(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_index(n))}


@dataclass(frozen=True)
class TwoForm:
    """Integral 2-form ``sum_{i<j} a_ij dx_i ^ dx_j``; coefficients in lex pair order."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != comb(2 * self.n, 2):
            raise ValueError(f"expected {comb(2 * self.n, 2)} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, n: int) -> "TwoForm":
        return cls(n, (0,) * comb(2 * n, 2))

    @classmethod
    def from_dict(cls, n: int, entries: Mapping[tuple[int, int], int]) -> "TwoForm":
        pos = _pair_positions(n)
        coeffs = [0] * len(pos)
        for (i, j), a in entries.items():
            if i == j:
                raise ValueError("dx_i ^ dx_i vanishes; diagonal entry given")
            if i > j:
                i, j, a = j, i, -a
            coeffs[pos[(i, j)]] += a
        return cls(n, tuple(coeffs))

    @classmethod
    def theta(cls, n: int) -> "TwoForm":
        """Principal polarization class ``-sum_i dx_i ^ dx_{i+n}``."""
        return cls.from_dict(n, {(i, i + n): -1 for i in range(1, n + 1)})

    def __getitem__(self, pair: tuple[int, int]) -> int:
        i, j = pair
        if i > j:
            return -self.coeffs[_pair_positions(self.n)[(j, i)]]
        return self.coeffs[_pair_positions(self.n)[(i, j)]]

    def _check(self, other: "TwoForm"):
        if not isinstance(other, TwoForm):
            raise TypeError("expected a TwoForm")
        if other.n != self.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "TwoForm") -> "TwoForm":
        self._check(other)
        return TwoForm(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        self._check(other)
        return TwoForm(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TwoForm":
        return TwoForm(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "TwoForm":
        return TwoForm(self.n, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_multivector(self, coeff=lambda a: a) -> Multivector:
        return Multivector(self.n, 2, {p: coeff(a) for p, a in zip(pair_index(self.n), self.coeffs) if a})

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {p: a for p, a in zip(pair_index(self.n), self.coeffs) if a}

    def __repr__(self) -> str:
        inner = ", ".join(f"a{i}{j}={a}" if self.n < 5 else f"a{i}_{j}={a}"
                          for (i, j), a in self.nonzero().items())
        return f"TwoForm(n={self.n}; {inner or '0'})"


def top_coefficient(u: Multivector, v: Multivector, zero: Any = 0) -> Any:
    """``eta_coefficient(wedge(u, v))`` without forming the full product.

    Only complementary blade pairs reach the top degree, so each blade of ``u``
    is matched against a single blade of ``v``.
    """
    n = u.n
    if v.n != n:
        raise DimensionMismatch(f"dimension mismatch: {u.n} vs {v.n}")
    if u.degree + v.degree != 2 * n:
        raise ValueError(f"degrees {u.degree} + {v.degree} do not add up to {2 * n}")
    full = range(1, 2 * n + 1)
    total = zero
    for a, ca in u.terms.items():
        rest = tuple(i for i in full if i not in a)
        cb = v.terms.get(rest)
        if cb is None:
            continue
        sign, _ = merge_blades(a, rest)
        term = ca * cb
        total = total + term if sign > 0 else total - term
    return total if eta_sign(n) > 0 else -total
