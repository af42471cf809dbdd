"""Exponential polynomials: finite sums of p * e^(L) with polynomial p.

Exponents L are integer linear forms over a fixed tuple of length symbols
(``("a", "b")`` or ``("a", "b", "c", "d")``); coefficients are :class:`MPoly`
values over a separate tuple of coefficient symbols.  Sums are always kept
collected: at most one stored term per linear form, never a zero coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import add as _iadd
from typing import Iterable, Mapping, Sequence, Union

from .errors import StructuralError
from .mpoly import MPoly, Scalar, _as_rat


class LinForm:
    """Integer vector of exponents over an ordered list of length symbols."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LinForm is immutable")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __add__(self, other: "LinForm") -> "LinForm":
        new = object.__new__(LinForm)
        object.__setattr__(new, "coeffs", tuple(map(_iadd, self.coeffs, other.coeffs)))
        return new

    def __sub__(self, other: "LinForm") -> "LinForm":
        return LinForm(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "LinForm":
        return LinForm(-a for a in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def componentwise_le(self, other: "LinForm") -> bool:
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def dot(self, values: Sequence[float]) -> float:
        return sum(c * v for c, v in zip(self.coeffs, values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __lt__(self, other: "LinForm") -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self) -> str:
        return f"LinForm{self.coeffs!r}"


@dataclass(frozen=True)
class DominanceReport:
    """Outcome of tagging every term against a set of leaders and caps."""

    leaders_found: tuple[LinForm, ...]
    lower: tuple[LinForm, ...]
    violations: tuple[LinForm, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.leaders_found), len(self.lower), len(self.violations))


class ExpPoly:
    """Collected map LinForm -> MPoly representing sum of p * e^(L)."""

    __slots__ = ("lengths", "symbols", "terms")

    def __init__(
        self,
        lengths: Sequence[str],
        symbols: Sequence[str],
        terms: Mapping[LinForm, MPoly] | None = None,
    ):
        lengths = tuple(lengths)
        symbols = tuple(symbols)
        clean: dict[LinForm, MPoly] = {}
        if terms:
            for form, poly in terms.items():
                if not isinstance(form, LinForm):
                    form = LinForm(form)
                if len(form) != len(lengths):
                    raise ValueError(
                        f"linear form {form!r} does not match lengths {lengths!r}"
                    )
                if poly.symbols != symbols:
                    raise ValueError(
                        f"coefficient symbols {poly.symbols!r} do not match {symbols!r}"
                    )
                if poly:
                    clean[form] = poly
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def _raw(
        cls,
        lengths: tuple[str, ...],
        symbols: tuple[str, ...],
        terms: dict,
    ) -> "ExpPoly":
        """Internal: wrap a term dict already known to be canonical."""
        self = object.__new__(cls)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, lengths: Sequence[str], symbols: Sequence[str]) -> "ExpPoly":
        return cls(lengths, symbols)

    @classmethod
    def constant(cls, lengths: Sequence[str], symbols: Sequence[str], value) -> "ExpPoly":
        """A coefficient with exponent e^0; value is an MPoly or a scalar."""
        if not isinstance(value, MPoly):
            value = MPoly.constant(symbols, value)
        zero = LinForm((0,) * len(tuple(lengths)))
        return cls(lengths, symbols, {zero: value})

    @classmethod
    def exponential(
        cls, lengths: Sequence[str], symbols: Sequence[str], form: Iterable[int]
    ) -> "ExpPoly":
        return cls(lengths, symbols, {LinForm(form): MPoly.constant(symbols, 1)})

    @classmethod
    def hyp(
        cls,
        symbol: str,
        kind: str,
        lengths: Sequence[str],
        symbols: Sequence[str],
    ) -> "ExpPoly":
        """cosh or sinh of one length symbol, expanded into exponentials.

        cosh t -> (1/2)e^t + (1/2)e^(-t); sinh t -> (1/2)e^t - (1/2)e^(-t).
        """
        lengths = tuple(lengths)
        if symbol not in lengths:
            raise ValueError(f"unknown length symbol {symbol!r}; have {lengths!r}")
        if kind not in ("cosh", "sinh"):
            raise ValueError(f"kind must be 'cosh' or 'sinh', got {kind!r}")
        i = lengths.index(symbol)
        plus = LinForm(1 if j == i else 0 for j in range(len(lengths)))
        half = MPoly.constant(symbols, Fraction(1, 2))
        sign = 1 if kind == "cosh" else -1
        return cls(lengths, symbols, {plus: half, -plus: half * sign})

    # ------------------------------------------------------------------
    # basic queries

    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff_at(self, form: LinForm | Iterable[int]) -> MPoly:
        if not isinstance(form, LinForm):
            form = LinForm(form)
        return self.terms.get(form, MPoly.zero(self.symbols))

    def exponent_bounds(self) -> dict[str, tuple[int, int]]:
        """Componentwise (min, max) over all stored forms; empty if no terms."""
        if not self.terms:
            return {}
        bounds = {}
        for i, name in enumerate(self.lengths):
            values = [form[i] for form in self.terms]
            bounds[name] = (min(values), max(values))
        return bounds

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return (
            self.lengths == other.lengths
            and self.symbols == other.symbols
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.lengths, self.symbols, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # algebra

    def _check_compatible(self, other: "ExpPoly") -> None:
        if self.lengths != other.lengths or self.symbols != other.symbols:
            raise ValueError(
                f"incompatible contexts: {self.lengths}/{self.symbols} vs "
                f"{other.lengths}/{other.symbols}"
            )

    def __add__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for form, poly in other.terms.items():
            s = terms.get(form)
            s = poly if s is None else s + poly
            if s:
                terms[form] = s
            else:
                terms.pop(form, None)
        return ExpPoly._raw(self.lengths, self.symbols, terms)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly._raw(
            self.lengths, self.symbols, {f: -p for f, p in self.terms.items()}
        )

    def __sub__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "ExpPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_rat(other)
            if not c:
                return ExpPoly.zero(self.lengths, self.symbols)
            return ExpPoly._raw(
                self.lengths, self.symbols, {f: p * c for f, p in self.terms.items()}
            )
        if isinstance(other, MPoly):
            if not other:
                return ExpPoly.zero(self.lengths, self.symbols)
            return ExpPoly._raw(
                self.lengths,
                self.symbols,
                {f: p * other for f, p in self.terms.items()},
            )
        if not isinstance(other, ExpPoly):
            return NotImplemented
        self._check_compatible(other)
        acc: dict[LinForm, MPoly] = {}
        get = acc.get
        for f1, p1 in self.terms.items():
            for f2, p2 in other.terms.items():
                form = f1 + f2
                prod = p1 * p2
                s = get(form)
                acc[form] = prod if s is None else s + prod
        return ExpPoly._raw(
            self.lengths, self.symbols, {f: p for f, p in acc.items() if p}
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExpPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ExpPoly.constant(self.lengths, self.symbols, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # structure analysis

    def classify_dominance(
        self,
        leaders: Iterable[LinForm | Iterable[int]],
        caps: Iterable[LinForm | Iterable[int]],
    ) -> DominanceReport:
        """Tag every stored term as a leader, a dominated term, or a violation.

        A term is *lower order* when its form is componentwise <= some cap with
        at least one strict inequality (the branches are a disjunction: any one
        suffices).
        """
        leader_set = {f if isinstance(f, LinForm) else LinForm(f) for f in leaders}
        cap_list = [c if isinstance(c, LinForm) else LinForm(c) for c in caps]
        found, lower, violations = [], [], []
        for form in sorted(self.terms, reverse=True):
            if form in leader_set:
                found.append(form)
                continue
            if any(form.componentwise_le(cap) and form != cap for cap in cap_list):
                lower.append(form)
            else:
                violations.append(form)
        return DominanceReport(tuple(found), tuple(lower), tuple(violations))

    def extract_aux_quadratic(self, symbol: str = "E") -> "AuxQuadratic":
        """Split into coefficients of symbol^2, symbol^1, symbol^0.

        The returned parts no longer carry ``symbol`` in their coefficient
        rings.  Degree above two in ``symbol`` signals a derivation bug.
        """
        if symbol not in self.symbols:
            raise ValueError(f"{symbol!r} is not a coefficient symbol of {self.symbols!r}")
        reduced = tuple(s for s in self.symbols if s != symbol)
        parts: list[dict[LinForm, MPoly]] = [{}, {}, {}]
        for form, poly in self.terms.items():
            if poly.degree(symbol) > 2:
                raise StructuralError(
                    f"degree in {symbol} exceeds 2 at exponent {form!r}"
                )
            for power in range(3):
                piece = poly.coefficient_of(symbol, power)
                if piece:
                    parts[power][form] = piece.with_symbols(reduced)
        return AuxQuadratic(
            A=ExpPoly(self.lengths, reduced, parts[2]),
            B=ExpPoly(self.lengths, reduced, parts[1]),
            C=ExpPoly(self.lengths, reduced, parts[0]),
        )

    # ------------------------------------------------------------------
    # numeric bridge

    def eval_numeric(
        self,
        lengths: Mapping[str, float],
        coeffs: Mapping[str, float],
    ) -> float:
        """Sum of p(coeffs) * exp(L . lengths) in binary64."""
        values = self._length_values(lengths)
        return sum(
            poly.eval(coeffs) * math.exp(form.dot(values))
            for form, poly in self.terms.items()
        )

    def max_term_magnitude(
        self,
        lengths: Mapping[str, float],
        coeffs: Mapping[str, float],
    ) -> float:
        """Largest |p(coeffs)| * exp(L . lengths) over stored terms (0 if empty)."""
        values = self._length_values(lengths)
        return max(
            (
                abs(poly.eval(coeffs)) * math.exp(form.dot(values))
                for form, poly in self.terms.items()
            ),
            default=0.0,
        )

    def _length_values(self, lengths: Mapping[str, float]) -> list[float]:
        missing = [s for s in self.lengths if s not in lengths]
        if missing:
            raise ValueError(f"missing assignment for lengths {missing!r}")
        return [lengths[s] for s in self.lengths]

    # ------------------------------------------------------------------
    # relabeling (used for symmetry checks)

    def rename(
        self,
        length_map: Mapping[str, str] | None = None,
        symbol_map: Mapping[str, str] | None = None,
    ) -> "ExpPoly":
        """Apply permutations of length symbols and coefficient symbols."""
        length_map = dict(length_map or {})
        renamed = tuple(length_map.get(s, s) for s in self.lengths)
        if sorted(renamed) != sorted(self.lengths):
            raise ValueError("length renaming must permute the existing symbols")
        perm = [renamed.index(s) for s in self.lengths]
        terms: dict[LinForm, MPoly] = {}
        for form, poly in self.terms.items():
            new_form = LinForm(form[p] for p in perm)
            if symbol_map:
                poly = poly.rename_symbols(symbol_map)
            terms[new_form] = poly
        return ExpPoly(self.lengths, self.symbols, terms)

    # ------------------------------------------------------------------
    # canonical dump

    def sorted_terms(self) -> list[tuple[LinForm, MPoly]]:
        """Terms in descending lexicographic order of their linear forms."""
        return sorted(self.terms.items(), key=lambda t: t[0].coeffs, reverse=True)

    def dump_lines(self) -> list[str]:
        """One line per term: ``k l m n : <MPoly canonical text>``."""
        return [
            " ".join(str(c) for c in form.coeffs) + " : " + poly.to_text()
            for form, poly in self.sorted_terms()
        ]

    def dumps(self) -> str:
        return "\n".join(self.dump_lines()) + ("\n" if self.terms else "")

    def __repr__(self) -> str:
        return (
            f"ExpPoly(lengths={self.lengths!r}, symbols={self.symbols!r}, "
            f"terms={self.term_count()})"
        )


@dataclass(frozen=True)
class AuxQuadratic:
    """Coefficients (A, B, C) of A*s^2 + B*s + C for an auxiliary symbol s."""

    A: ExpPoly
    B: ExpPoly
    C: ExpPoly

    def reassemble(self, symbol: str = "E") -> ExpPoly:
        """Rebuild the quadratic with ``symbol`` restored as a coefficient symbol."""
        base = self.A.symbols
        if symbol in base:
            raise ValueError(f"{symbol!r} already present in {base!r}")
        extended = base + (symbol,)

        def lift(part: ExpPoly, power: int) -> ExpPoly:
            s = MPoly.variable(extended, symbol) ** power
            terms = {
                form: poly.with_symbols(extended) * s
                for form, poly in part.terms.items()
            }
            return ExpPoly(part.lengths, extended, terms)

        return lift(self.A, 2) + lift(self.B, 1) + lift(self.C, 0)
