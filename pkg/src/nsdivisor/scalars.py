"""Exact coefficient arithmetic.

Scalars are sparse polynomials over the rationals in a fixed, ordered set of
symbols.  A symbol may carry a quadratic relation ``t^2 = q`` with ``q``
rational, in which case every stored monomial has exponent 0 or 1 in ``t``.
A polynomial is zero exactly when it has no stored terms, so equality with
zero is identical vanishing in the free symbols.

Rationals are :class:`fractions.Fraction`, which already keeps a positive,
coprime denominator after every operation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Number = Union[int, Fraction]


class SymbolTableMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Symbol:
    name: str
    square: Fraction | None = None


class SymbolTable:
    """Ordered, immutable list of symbols with optional quadratic relations."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[Symbol | str | tuple] = ()):
        syms = []
        for s in symbols:
            if isinstance(s, str):
                s = Symbol(s)
            elif isinstance(s, tuple):
                name, square = s
                s = Symbol(name, None if square is None else Fraction(square))
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", s.name):
                raise ValueError(f"invalid symbol name {s.name!r}")
            syms.append(s)
        self.symbols: tuple[Symbol, ...] = tuple(syms)
        self._index = {s.name: i for i, s in enumerate(self.symbols)}
        if len(self._index) != len(self.symbols):
            raise ValueError("duplicate symbol names")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolTable) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"SymbolTable({[s.name for s in self.symbols]})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.symbols)

    def reduce(self, mono: Monomial, coeff: Fraction) -> tuple[Monomial, Fraction]:
        """Apply quadratic relations so every related exponent is 0 or 1."""
        if not any(e > 1 and s.square is not None for e, s in zip(mono, self.symbols)):
            return mono, coeff
        out = list(mono)
        for i, (e, s) in enumerate(zip(mono, self.symbols)):
            if s.square is not None and e > 1:
                coeff *= s.square ** (e // 2)
                out[i] = e % 2
        return tuple(out), coeff


def _narrow(c: Fraction) -> Number:
    # integral coefficients are kept as int; equal to the Fraction and much faster
    return c.numerator if c.denominator == 1 else c


def grlex_key(mono: Monomial) -> tuple:
    """Sort key placing monomials in descending graded-lex order."""
    return (-sum(mono), tuple(-e for e in mono))


class PolyScalar:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: SymbolTable, terms: Mapping[Monomial, Number] | None = None,
                 _trusted: bool = False):
        self.table = table
        if _trusted:
            self.terms = terms
        else:
            clean: dict[Monomial, Fraction] = {}
            for mono, c in (terms or {}).items():
                if len(mono) != len(table):
                    raise ValueError("monomial length does not match symbol table")
                mono, c = table.reduce(tuple(mono), Fraction(c))
                clean[mono] = clean.get(mono, 0) + c
            self.terms = {m: _narrow(c) for m, c in clean.items() if c != 0}
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, table: SymbolTable, value: Number) -> "PolyScalar":
        value = Fraction(value)
        if value == 0:
            return cls(table, {}, _trusted=True)
        return cls(table, {table.zero_monomial(): _narrow(value)}, _trusted=True)

    @classmethod
    def symbol(cls, table: SymbolTable, name: str) -> "PolyScalar":
        mono = [0] * len(table)
        mono[table.index(name)] = 1
        return cls(table, {tuple(mono): 1}, _trusted=True)

    @classmethod
    def parse(cls, table: SymbolTable, text: str) -> "PolyScalar":
        return _Parser(table, text).parse()

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get(self.table.zero_monomial(), 0))

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=grlex_key)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    # arithmetic
    def _coerce(self, other) -> "PolyScalar":
        if isinstance(other, PolyScalar):
            if other.table != self.table:
                raise SymbolTableMismatch(f"{self.table!r} != {other.table!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return PolyScalar.constant(self.table, other)
        return NotImplemented

    def __add__(self, other) -> "PolyScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PolyScalar(self.table, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "PolyScalar":
        return PolyScalar(self.table, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "PolyScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "PolyScalar":
        return (-self) + other

    def __mul__(self, other) -> "PolyScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return PolyScalar(self.table, {}, _trusted=True)
        reduce = self.table.reduce
        has_rel = any(s.square is not None for s in self.table)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                if has_rel:
                    m, c = reduce(m, c)
                out[m] = out.get(m, 0) + c
        return PolyScalar(self.table, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, k: Number) -> "PolyScalar":
        if k == 0:
            return PolyScalar(self.table, {}, _trusted=True)
        return PolyScalar(self.table, {m: c * k for m, c in self.terms.items()}, _trusted=True)

    def __pow__(self, k: int) -> "PolyScalar":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = PolyScalar.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyScalar.constant(self.table, other)
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def evaluate(self, values: Mapping[str, complex | float | Fraction | int]):
        """Numeric value at the given symbol values (quadratic relations are ignored)."""
        vals = [values[s.name] for s in self.table]
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(vals, mono):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def __str__(self) -> str:
        return format_poly(self.terms, self.table.names)

    def __repr__(self) -> str:
        return f"PolyScalar({str(self)!r})"


def format_poly(terms: Mapping[Monomial, Fraction], names: Sequence[str]) -> str:
    """Canonical text in descending graded-lex order, parseable by ``PolyScalar.parse``."""
    if not terms:
        return "0"
    parts = []
    for mono in sorted(terms, key=grlex_key):
        c = terms[mono]
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def coordinates(p: PolyScalar, monomial_basis: Sequence[Monomial]) -> list[Fraction]:
    """Coefficient vector of ``p`` over an ordered list of monomials."""
    pos = {tuple(m): i for i, m in enumerate(monomial_basis)}
    vec = [Fraction(0)] * len(monomial_basis)
    for mono, c in p.terms.items():
        if mono not in pos:
            raise KeyError(f"monomial {mono} of {p} missing from basis")
        vec[pos[mono]] = Fraction(c)
    return vec


def from_coordinates(table: SymbolTable, vec: Sequence[Number],
                     monomial_basis: Sequence[Monomial]) -> PolyScalar:
    if len(vec) != len(monomial_basis):
        raise ValueError("vector and basis lengths differ")
    return PolyScalar(table, {tuple(m): c for m, c in zip(monomial_basis, vec)})


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive descent over ``+ - * ^ ( )`` with ``p/q`` rational literals."""

    def __init__(self, table: SymbolTable, text: str):
        self.table = table
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", m.group(1), start))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), start))
            else:
                ch = m.group(3)
                if ch not in "+-*^()":
                    raise PolyParseError(f"unexpected character {ch!r}", text, start)
                self.tokens.append(("op", ch, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _pos(self) -> int:
        tok = self._peek()
        return tok[2] if tok else len(self.text)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> PolyScalar:
        if not self.tokens:
            raise PolyParseError("empty polynomial", self.text, 0)
        p = self._expr()
        if self._peek() is not None:
            raise PolyParseError("unexpected token", self.text, self._pos())
        return p

    def _expr(self) -> PolyScalar:
        sign = 1
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self._take()
            sign = -1 if tok[1] == "-" else 1
        acc = self._term().scale(sign)
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "+-":
            self._take()
            t = self._term()
            acc = acc + t if tok[1] == "+" else acc - t
        return acc

    def _term(self) -> PolyScalar:
        acc = self._power()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] == "*":
            self._take()
            acc = acc * self._power()
        return acc

    def _power(self) -> PolyScalar:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self._take()
            exp = self._take()
            if exp is None or exp[0] != "num" or "/" in exp[1]:
                raise PolyParseError("exponent must be a nonnegative integer", self.text,
                                     exp[2] if exp else len(self.text))
            base = base ** int(exp[1])
        return base

    def _atom(self) -> PolyScalar:
        tok = self._take()
        if tok is None:
            raise PolyParseError("unexpected end of input", self.text, len(self.text))
        kind, val, pos = tok
        if kind == "num":
            try:
                return PolyScalar.constant(self.table, Fraction(val))
            except ZeroDivisionError:
                raise PolyParseError("zero denominator", self.text, pos) from None
        if kind == "name":
            if val not in self.table.names:
                raise PolyParseError(f"unknown symbol {val!r}", self.text, pos)
            return PolyScalar.symbol(self.table, val)
        if val == "(":
            inner = self._expr()
            close = self._take()
            if close is None or close[1] != ")":
                raise PolyParseError("missing ')'", self.text,
                                     close[2] if close else len(self.text))
            return inner
        if val == "-":
            return -self._atom()
        raise PolyParseError(f"unexpected {val!r}", self.text, pos)
