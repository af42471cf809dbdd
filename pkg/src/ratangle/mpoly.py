"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are `fractions.Fraction` throughout; nothing in this module ever
rounds.  Polynomials are immutable after construction and canonical: zero
coefficients are dropped, exponent vectors are unique, and the printed form
orders terms by graded lexicographic rank on the declared symbol order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import add as _add
from typing import Iterable, Mapping, Sequence, Union

# Exact rational scalar type used everywhere in the symbolic layer.
Rat = Fraction

# Coefficients are stored as plain int when integral (int arithmetic is much
# faster than Fraction and the two compare and hash identically).
Scalar = Union[Fraction, int]

_TERM_RE = re.compile(
    r"""(?P<sign>[+-])\s*
        (?P<coeff>\d+(?:/\d+)?)
        (?P<monomial>(?:\*[A-Za-z_][A-Za-z_0-9]*(?:\^\d+)?)*)""",
    re.VERBOSE,
)
_FACTOR_RE = re.compile(r"\*([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?")


def _as_rat(value: Scalar) -> Scalar:
    """Coerce to an exact rational, collapsing whole numbers to int."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Polynomial over an ordered tuple of named symbols.

    ``terms`` maps exponent vectors (tuples of non-negative ints, one slot per
    symbol) to nonzero rational coefficients.
    """

    __slots__ = ("symbols", "terms")

    def __init__(
        self,
        symbols: Sequence[str],
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
    ):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in {symbols!r}")
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != len(symbols):
                    raise ValueError(
                        f"exponent vector {exps!r} does not match symbols {symbols!r}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps!r}")
                c = _as_rat(coeff)
                if c:
                    clean[exps] = c
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def _raw(cls, symbols: tuple[str, ...], terms: dict) -> "MPoly":
        """Internal: wrap a term dict already known to be canonical."""
        self = object.__new__(cls)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, symbols: Sequence[str]) -> "MPoly":
        return cls(symbols)

    @classmethod
    def constant(cls, symbols: Sequence[str], value: Scalar) -> "MPoly":
        zero_exp = (0,) * len(tuple(symbols))
        return cls(symbols, {zero_exp: value})

    @classmethod
    def variable(cls, symbols: Sequence[str], name: str) -> "MPoly":
        symbols = tuple(symbols)
        if name not in symbols:
            raise ValueError(f"symbol {name!r} not among {symbols!r}")
        exps = tuple(1 if s == name else 0 for s in symbols)
        return cls(symbols, {exps: 1})

    # ------------------------------------------------------------------
    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        zero_exp = (0,) * len(self.symbols)
        return self.terms.get(zero_exp, Fraction(0))

    def degree(self, symbol: str | None = None) -> int:
        """Degree in one symbol, or total degree if none given; zero poly -> -1."""
        if not self.terms:
            return -1
        if symbol is None:
            return max(sum(exps) for exps in self.terms)
        i = self.symbols.index(symbol)
        return max(exps[i] for exps in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.symbols == other.symbols and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.symbols, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # ring operations

    def _check_compatible(self, other: "MPoly") -> None:
        if self.symbols != other.symbols:
            raise ValueError(
                f"mismatched symbol lists {self.symbols!r} vs {other.symbols!r}"
            )

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.symbols, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MPoly._raw(self.symbols, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.symbols, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.symbols, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_rat(other)
            if not c:
                return MPoly.zero(self.symbols)
            return MPoly._raw(
                self.symbols, {e: _as_rat(v * c) for e, v in self.terms.items()}
            )
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check_compatible(other)
        acc: dict[tuple[int, ...], Scalar] = {}
        get = acc.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(map(_add, e1, e2))
                s = get(exps)
                acc[exps] = c1 * c2 if s is None else s + c1 * c2
        return MPoly._raw(self.symbols, {e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.constant(self.symbols, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # evaluation

    def eval(self, assignment: Mapping[str, object]):
        """Evaluate at the given symbol values (exact for Fraction inputs).

        Every symbol of the polynomial must be assigned; extra keys are ignored.
        """
        missing = [s for s in self.symbols if s not in assignment]
        if missing:
            raise ValueError(f"missing assignment for symbols {missing!r}")
        values = [assignment[s] for s in self.symbols]
        total = None
        for exps, coeff in self.terms.items():
            acc = coeff
            for v, e in zip(values, exps):
                if e:
                    acc = acc * v**e
            total = acc if total is None else total + acc
        if total is not None:
            return total
        if any(isinstance(v, float) for v in values):
            return 0.0
        return Fraction(0)

    # ------------------------------------------------------------------
    # structural checks

    def equals_product(self, factors: Iterable["MPoly"], unit: Scalar = 1) -> bool:
        """True iff self == unit * prod(factors), exactly."""
        factors = list(factors)
        if not factors:
            raise ValueError("factor list must be nonempty")
        prod = MPoly.constant(self.symbols, _as_rat(unit))
        for f in factors:
            prod = prod * f
        return self == prod

    def integral_after_scale(self, k: int) -> bool:
        """True iff every coefficient of k*self is an integer."""
        if k == 0:
            raise ValueError("scale must be nonzero")
        return all((c * k).denominator == 1 for c in self.terms.values())

    def is_integral(self) -> bool:
        return self.integral_after_scale(1)

    # ------------------------------------------------------------------
    # symbol plumbing

    def with_symbols(self, symbols: Sequence[str]) -> "MPoly":
        """Re-express over a new symbol tuple.

        Symbols dropped from the list must not occur with positive exponent.
        """
        new_symbols = tuple(symbols)
        index = {s: i for i, s in enumerate(new_symbols)}
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            new = [0] * len(new_symbols)
            for s, e in zip(self.symbols, exps):
                if e == 0:
                    continue
                if s not in index:
                    raise ValueError(f"symbol {s!r} occurs but is not in {new_symbols!r}")
                new[index[s]] = e
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + c
        return MPoly(new_symbols, terms)

    def rename_symbols(self, mapping: Mapping[str, str]) -> "MPoly":
        """Apply a permutation of the symbol names, keeping the symbol tuple."""
        renamed = tuple(mapping.get(s, s) for s in self.symbols)
        if sorted(renamed) != sorted(self.symbols):
            raise ValueError("renaming must permute the existing symbols")
        perm = [renamed.index(s) for s in self.symbols]
        terms = {tuple(exps[p] for p in perm): c for exps, c in self.terms.items()}
        return MPoly(self.symbols, terms)

    def coefficient_of(self, symbol: str, power: int) -> "MPoly":
        """Coefficient of symbol**power, as a polynomial with that symbol removed."""
        i = self.symbols.index(symbol)
        rest = self.symbols[:i] + self.symbols[i + 1 :]
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            if exps[i] != power:
                continue
            key = exps[:i] + exps[i + 1 :]
            terms[key] = terms.get(key, Fraction(0)) + c
        return MPoly(rest, terms)

    # ------------------------------------------------------------------
    # canonical text form

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical form, e.g. ``+1*w^2*y^2*z^2 -2*w*y^2*z^2 +1*y^2*z^2``."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            sign = "+" if coeff > 0 else "-"
            mag = abs(coeff)
            body = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            for s, e in zip(self.symbols, exps):
                if e == 1:
                    body += f"*{s}"
                elif e > 1:
                    body += f"*{s}^{e}"
            parts.append(sign + body)
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str, symbols: Sequence[str]) -> "MPoly":
        """Inverse of :meth:`to_text` (also accepts permuted/duplicated terms)."""
        symbols = tuple(symbols)
        text = text.strip()
        if text == "0":
            return cls.zero(symbols)
        terms: dict[tuple[int, ...], Fraction] = {}
        pos = 0
        index = {s: i for i, s in enumerate(symbols)}
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse MPoly text at {text[pos:]!r}")
            coeff = Fraction(m.group("coeff"))
            if m.group("sign") == "-":
                coeff = -coeff
            exps = [0] * len(symbols)
            for name, power in _FACTOR_RE.findall(m.group("monomial")):
                if name not in index:
                    raise ValueError(f"unknown symbol {name!r} in {text!r}")
                exps[index[name]] += int(power) if power else 1
            key = tuple(exps)
            s = terms.get(key, Fraction(0)) + coeff
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
            pos = m.end()
            while pos < len(text) and text[pos] == " ":
                pos += 1
        return cls(symbols, terms)

    def __repr__(self) -> str:
        return f"MPoly({self.symbols!r}, {self.to_text()!r})"

    __str__ = to_text
