"""Neron-Severi lattice of a principally polarized abelian variety from its period matrix.

The lattice is ``Lambda = (tau I) Z^2n`` and ``x_1, ..., x_2n`` are the real
coordinates for its columns, so ``dz_i = sum_j tau_ij dx_j + dx_{n+i}``.  An
integral 2-form lies in NS(A) iff its wedge with ``dz_1 ^ ... ^ dz_n``
vanishes.  Period-matrix entries are polynomials in declared symbols and
vanishing means identical vanishing, which yields NS of the generic member of
the family the symbols describe.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Any, Mapping, Sequence

from .exterior import Multivector, TwoForm, pair_index, wedge
from .intlinalg import (clear_denominators, integer_kernel, lattice_equal, mat_vec_left,
                        solve_left_integral, unimodular_completion)
from .scalars import (PolyParseError, PolyScalar, Symbol, SymbolTable, coordinates,
                      grlex_key)


class PeriodMatrixError(ValueError):
    """Malformed or inconsistent period matrix input."""


class InputFormatError(PeriodMatrixError):
    """Unparseable or structurally invalid input document."""


class NotInNS(ValueError):
    pass


@dataclass(frozen=True)
class PeriodMatrix:
    n: int
    table: SymbolTable
    entries: tuple[tuple[PolyScalar, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise PeriodMatrixError("dimension must be positive")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise PeriodMatrixError(f"tau must be {self.n}x{self.n}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise PeriodMatrixError(
                        f"tau is not symmetric: tau[{i + 1}][{j + 1}] = {self.entries[i][j]} "
                        f"but tau[{j + 1}][{i + 1}] = {self.entries[j][i]}")

    def __getitem__(self, ij: tuple[int, int]) -> PolyScalar:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def from_strings(cls, n: int, symbols: Sequence[Symbol | str | tuple],
                     tau: Sequence[Sequence[str]]) -> "PeriodMatrix":
        table = SymbolTable(symbols)
        if len(tau) != n or any(len(row) != n for row in tau):
            raise InputFormatError(f"field 'tau' must be an {n}x{n} array")
        rows = []
        for i, row in enumerate(tau):
            parsed = []
            for j, text in enumerate(row):
                try:
                    parsed.append(PolyScalar.parse(table, str(text)))
                except PolyParseError as exc:
                    raise InputFormatError(f"tau[{i}][{j}]: {exc}") from None
            rows.append(tuple(parsed))
        return cls(n, table, tuple(rows))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "symbols": [{"name": s.name, "square": None if s.square is None else str(s.square)}
                        for s in self.table],
            "tau": [[str(x) for x in row] for row in self.entries],
        }

    def numeric_check(self, sample: Mapping[str, complex]) -> bool:
        """Inexact test that Im tau is positive definite at sample symbol values.

        Only warns on failure; symbolic period matrices are trusted input.
        """
        import numpy as np

        im = np.array([[complex(x.evaluate(sample)).imag for x in row] for row in self.entries])
        ok = bool(np.all(np.linalg.eigvalsh(im) > 0))
        if not ok:
            warnings.warn("Im(tau) is not positive definite at the sample point", stacklevel=2)
        return ok


def family_period_matrix(n: int, symbol: str = "s") -> PeriodMatrix:
    """``sigma * tau_0`` with ``tau_0`` having n on the diagonal and -1 elsewhere."""
    tau = [[f"{n}*{symbol}" if i == j else f"-{symbol}" for j in range(n)] for i in range(n)]
    return PeriodMatrix.from_strings(n, [symbol], tau)


def diagonal_period_matrix(n: int) -> PeriodMatrix:
    """``diag(s1, ..., sn)``: a product of n generic elliptic curves."""
    names = [f"s{i + 1}" for i in range(n)]
    tau = [[names[i] if i == j else "0" for j in range(n)] for i in range(n)]
    return PeriodMatrix.from_strings(n, names, tau)


def generic_period_matrix(n: int) -> PeriodMatrix:
    """Symmetric tau with an independent symbol ``t_ij`` per entry (i <= j)."""
    def name(i, j):
        i, j = min(i, j), max(i, j)
        return f"t{i + 1}{j + 1}" if n < 10 else f"t{i + 1}_{j + 1}"
    names = [name(i, j) for i in range(n) for j in range(i, n)]
    tau = [[name(i, j) for j in range(n)] for i in range(n)]
    return PeriodMatrix.from_strings(n, names, tau)


def holomorphic_top(tau: PeriodMatrix) -> Multivector:
    """``dz_1 ^ ... ^ dz_n`` in real coordinates."""
    n, table = tau.n, tau.table
    one = PolyScalar.constant(table, 1)
    acc = Multivector.scalar(n, one)
    for i in range(n):
        terms = {(j + 1,): tau[i, j] for j in range(n) if not tau[i, j].is_zero()}
        terms[(n + i + 1,)] = one
        acc = wedge(acc, Multivector(n, 1, terms))
    return acc


def constraint_polynomials(tau: PeriodMatrix) -> tuple[list[tuple[int, ...]], list[list[PolyScalar]]]:
    """Blades of degree n+2 and, per blade, the polynomial coefficient of each a_ij.

    Row ``k`` says ``sum_p rows[k][p] * a_p = 0`` must hold identically.
    """
    n, table = tau.n, tau.table
    top = holomorphic_top(tau)
    pairs = pair_index(n)
    one = PolyScalar.constant(table, 1)
    zero = PolyScalar.constant(table, 0)
    blades = list(combinations(range(1, 2 * n + 1), n + 2)) if n + 2 <= 2 * n else []
    columns = []
    for p in pairs:
        prod = wedge(Multivector(n, 2, {p: one}), top)
        columns.append(prod.terms)
    rows = [[col.get(b, zero) for col in columns] for b in blades]
    keep = [k for k, row in enumerate(rows) if any(not c.is_zero() for c in row)]
    return [blades[k] for k in keep], [rows[k] for k in keep]


def ns_constraints(tau: PeriodMatrix) -> list[list[Fraction]]:
    """Rational linear conditions on the C(2n,2) coefficients a_ij cutting out NS(A).

    Each blade equation is split into one equation per monomial in the symbols.
    """
    _, poly_rows = constraint_polynomials(tau)
    out = []
    for row in poly_rows:
        monos = sorted({m for c in row for m in c.terms}, key=grlex_key)
        per_entry = [coordinates(c, monos) for c in row]
        for k in range(len(monos)):
            out.append([vec[k] for vec in per_entry])
    return out


def theta_vector(n: int) -> list[int]:
    return list(TwoForm.theta(n).coeffs)


def reduced_coordinates(n: int, v: Sequence[int]) -> list[int]:
    """Coordinates of ``Z^C(2n,2) / Z theta``: subtract a_{n,2n} from every a_{i,i+n}, drop it.

    For n = 3 these are the 14 coordinates b_1..b_14 (a12, a13, a14', a15, a16,
    a23, a24, a25', a26, a34, a35, a45, a46, a56).
    """
    pairs = pair_index(n)
    last = pairs.index((n, 2 * n))
    shift = v[last]
    out = []
    for (i, j), a in zip(pairs, v):
        if (i, j) == (n, 2 * n):
            continue
        out.append(a - shift if j == i + n else a)
    return out


def from_reduced_coordinates(n: int, b: Sequence[int]) -> list[int]:
    """Representative with ``a_{n,2n} = 0`` of a class given in reduced coordinates."""
    pairs = pair_index(n)
    if len(b) != len(pairs) - 1:
        raise ValueError(f"expected {len(pairs) - 1} reduced coordinates, got {len(b)}")
    it = iter(b)
    return [0 if p == (n, 2 * n) else int(next(it)) for p in pairs]


@dataclass(frozen=True)
class PolarizedNS:
    """NS(A) inside Z^C(2n,2) with theta and a basis of NS(A)/Z theta.

    ``full_basis`` is ``[theta] + quotient_basis``, a Z-basis of NS(A);
    quotient coordinates of a class are its coordinates in that basis with the
    theta entry dropped, and ``lift`` is the section ``q -> sum q_i quotient_basis[i]``.
    """

    n: int
    ns_basis: tuple[tuple[int, ...], ...]
    theta: tuple[int, ...]
    quotient_basis: tuple[tuple[int, ...], ...]

    @property
    def ambient_rank(self) -> int:
        return comb(2 * self.n, 2)

    @property
    def rank(self) -> int:
        return len(self.ns_basis)

    @property
    def quotient_rank(self) -> int:
        return len(self.quotient_basis)

    @property
    def full_basis(self) -> list[tuple[int, ...]]:
        return [self.theta] + list(self.quotient_basis)

    def contains(self, v: Sequence[int]) -> bool:
        return solve_left_integral(self.ns_basis, v) is not None

    def project(self, v: Sequence[int] | TwoForm) -> list[int]:
        if isinstance(v, TwoForm):
            v = v.coeffs
        y = solve_left_integral(self.full_basis, list(v))
        if y is None:
            raise NotInNS(f"vector {list(v)} is not in NS(A)")
        return y[1:]

    def lift(self, q: Sequence[int]) -> TwoForm:
        if len(q) != self.quotient_rank:
            raise ValueError(f"expected {self.quotient_rank} quotient coordinates, got {len(q)}")
        if not q:
            return TwoForm.zero(self.n)
        return TwoForm(self.n, tuple(mat_vec_left(q, self.quotient_basis)))

    def lift_basis(self) -> list[TwoForm]:
        return [TwoForm(self.n, row) for row in self.quotient_basis]

    def with_quotient_basis(self, rows: Sequence[Sequence[int]]) -> "PolarizedNS":
        """Same lattice, with caller-chosen quotient representatives.

        ``[theta] + rows`` must be a Z-basis of NS(A).
        """
        rows = [tuple(int(x) for x in r) for r in rows]
        for k, r in enumerate(rows):
            if len(r) != self.ambient_rank:
                raise ValueError(f"quotient_basis[{k}] has length {len(r)}, "
                                 f"expected {self.ambient_rank}")
            if not self.contains(r):
                raise NotInNS(f"quotient_basis[{k}] is not in NS(A)")
        if not lattice_equal([list(self.theta)] + [list(r) for r in rows],
                             [list(r) for r in self.ns_basis]):
            raise ValueError("theta together with the given rows is not a basis of NS(A)")
        return PolarizedNS(self.n, self.ns_basis, self.theta, tuple(rows))

    def to_dict(self) -> dict:
        return {
            "ambient_pairs": [f"{i},{j}" for i, j in pair_index(self.n)],
            "ns_rank": self.rank,
            "quotient_rank": self.quotient_rank,
            "theta": list(self.theta),
            "ns_basis": [list(r) for r in self.ns_basis],
            "quotient_basis": [list(r) for r in self.quotient_basis],
        }


def ns_basis(tau: PeriodMatrix) -> PolarizedNS:
    n = tau.n
    N = comb(2 * n, 2)
    rows = [clear_denominators(r) for r in ns_constraints(tau)]
    rows = [r for r in rows if any(r)]
    theta = theta_vector(n)
    for r in rows:
        if sum(a * b for a, b in zip(r, theta)):
            raise AssertionError("theta violates the NS conditions; tau is not symmetric?")
    kernel = integer_kernel(rows, N)
    c = solve_left_integral(kernel, theta)
    if c is None:
        raise AssertionError("theta is not an integral combination of the kernel basis")
    g = 0
    for x in c:
        g = gcd(g, x)
    if g != 1:
        raise AssertionError("theta is not primitive in NS(A)")
    _, w = unimodular_completion(c)
    full = [mat_vec_left(row, kernel) for row in w]
    assert full[0] == theta
    return PolarizedNS(n, tuple(map(tuple, kernel)), tuple(theta),
                       tuple(tuple(r) for r in full[1:]))


# --- JSON documents -------------------------------------------------------

_REQUIRED = {"n", "symbols", "tau"}
_OPTIONAL = {"quotient_basis", "sample", "ns_basis", "theta", "ambient_pairs",
             "ns_rank", "quotient_rank"}


def _field_error(field: str, msg: str, domain: bool = False) -> PeriodMatrixError:
    cls = PeriodMatrixError if domain else InputFormatError
    return cls(f"field '{field}': {msg}")


def load_document(doc: Mapping[str, Any] | str) -> tuple[PeriodMatrix, PolarizedNS]:
    """Parse a period-matrix document and build its polarized NS lattice.

    Optional ``quotient_basis`` rows (ambient vectors) replace the computed
    quotient representatives; a document written by :func:`dump_document`
    round-trips to the same lattice and basis.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise InputFormatError("document must be a JSON object")
    unknown = set(doc) - _REQUIRED - _OPTIONAL
    if unknown:
        raise InputFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = _REQUIRED - set(doc)
    if missing:
        raise InputFormatError(f"missing field(s): {', '.join(sorted(missing))}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise _field_error("n", "must be a positive integer")
    symbols = []
    if not isinstance(doc["symbols"], list):
        raise _field_error("symbols", "must be a list")
    for k, s in enumerate(doc["symbols"]):
        if not isinstance(s, Mapping) or set(s) - {"name", "square"} or "name" not in s:
            raise _field_error(f"symbols[{k}]", "expected {\"name\": str, \"square\": str|null}")
        square = s.get("square")
        try:
            square = None if square is None else Fraction(str(square))
        except (ValueError, ZeroDivisionError):
            raise _field_error(f"symbols[{k}].square", f"not a rational: {square!r}") from None
        symbols.append(Symbol(str(s["name"]), square))
    tau_rows = doc["tau"]
    if not isinstance(tau_rows, list) or len(tau_rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in tau_rows):
        raise _field_error("tau", f"must be an {n}x{n} array of polynomial strings")
    try:
        tau = PeriodMatrix.from_strings(n, symbols, tau_rows)
    except PeriodMatrixError:
        raise
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
    if "sample" in doc:
        sample = {}
        if not isinstance(doc["sample"], Mapping) or set(doc["sample"]) != set(tau.table.names):
            raise _field_error("sample", "must give [real, imag] for every symbol")
        for name, val in doc["sample"].items():
            if not isinstance(val, list) or len(val) != 2:
                raise _field_error(f"sample.{name}", "expected [real, imag]")
            sample[name] = complex(val[0], val[1])
        tau.numeric_check(sample)
    pns = ns_basis(tau)
    for key in ("quotient_basis", "ns_basis"):
        if key in doc:
            _check_int_rows(key, doc[key], pns.ambient_rank)
    if "quotient_basis" in doc:
        try:
            pns = pns.with_quotient_basis(doc["quotient_basis"])
        except ValueError as exc:
            raise _field_error("quotient_basis", str(exc), domain=True) from None
    if "ns_basis" in doc and not lattice_equal([list(r) for r in doc["ns_basis"]],
                                               [list(r) for r in pns.ns_basis]):
        raise _field_error("ns_basis", "does not span NS(A) of the given tau", domain=True)
    if "theta" in doc and list(doc["theta"]) != list(pns.theta):
        raise _field_error("theta", "does not match the principal polarization", domain=True)
    return tau, pns


def _check_int_rows(key: str, rows: Any, length: int):
    if not isinstance(rows, list):
        raise _field_error(key, "must be a list of integer vectors")
    for k, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                                for x in row):
            raise _field_error(f"{key}[{k}]", "must be a list of integers")
        if len(row) != length:
            raise _field_error(f"{key}[{k}]", f"has length {len(row)}, expected {length}")


def dump_document(tau: PeriodMatrix, pns: PolarizedNS) -> dict:
    out = tau.to_dict()
    out.update(pns.to_dict())
    return out
