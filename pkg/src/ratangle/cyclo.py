"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1), reduced
modulo the m-th cyclotomic polynomial.  Mixed conductors embed into the lcm
before any binary operation; nothing is normalized lazily.

cos(k*pi/n) and sin(k*pi/n) live here exactly, and algebraic degrees are
computed as Galois orbit sizes.  Heavy inner loops (products, reductions,
orbits) run over int64 vectors with explicit magnitude guards and fall back
to exact big-int arithmetic if a bound could overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, StructuralError
from .mpoly import MPoly, _as_rat
from .trig import AngleQ

Scalar = Union[Fraction, int]

_INT64_SAFE = 1 << 62


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi is defined for positive integers")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ----------------------------------------------------------------------
# dense univariate polynomials over Q


class RatPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cl = [_as_rat(c) if not isinstance(c, int) else c for c in coeffs]
        while cl and not cl[-1]:
            cl.pop()
        object.__setattr__(self, "coeffs", tuple(cl))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "RatPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return RatPoly(out)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = Fraction(other.leading)
        quot = [0] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = _as_rat(Fraction(c) / lead)
            quot[i - d] = q
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = rem[i - d + j] - q * b
        return RatPoly(quot), RatPoly(rem)

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        inv = Fraction(1) / Fraction(self.leading)
        return self * inv

    def eval(self, value):
        """Horner evaluation; works for rationals and CycNum values."""
        result = None
        for c in reversed(self.coeffs):
            result = c if result is None else result * value + c
        if result is None:
            return Fraction(0)
        return result

    def xgcd(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly", "RatPoly"]:
        """Extended gcd: returns (g, u, v) with u*self + v*other = g."""
        r0, r1 = self, other
        u0, u1 = RatPoly([1]), RatPoly.zero()
        v0, v1 = RatPoly.zero(), RatPoly([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, u0 - q * u1
            v0, v1 = v1, v0 - q * v1
        return r0, u0, v0

    def to_text(self, symbol: str = "x") -> str:
        """Canonical text in the shared polynomial format."""
        return MPoly(
            (symbol,),
            {(i,): c for i, c in enumerate(self.coeffs) if c},
        ).to_text()

    def __repr__(self) -> str:
        return f"RatPoly({self.to_text()!r})"


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> RatPoly:
    """The m-th cyclotomic polynomial (integer coefficients, degree phi(m))."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = RatPoly.monomial(m) - RatPoly([1])
    for d in _divisors(m):
        if d == m:
            continue
        num, rem = divmod(num, cyclotomic_poly(d))
        if not rem.is_zero():
            raise StructuralError(f"cyclotomic division left a remainder at m={m}")
    if any(not isinstance(c, int) for c in num.coeffs):
        raise StructuralError(f"non-integer coefficient in cyclotomic polynomial {m}")
    return num


# ----------------------------------------------------------------------
# integer kernels (power tables, reduction, multiplication, conjugation)


@lru_cache(maxsize=None)
def _power_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta^t mod Phi_m for t in [0, m), as exact ints."""
    phi = euler_phi(m)
    phi_coeffs = cyclotomic_poly(m).coeffs  # monic, integer
    rows: list[tuple[int, ...]] = []
    current = [0] * phi
    if phi:
        current[0] = 1
    rows.append(tuple(current))
    for _ in range(1, m):
        shifted = [0] + current[:]
        lead = shifted.pop()  # coefficient of x^phi after the shift
        if lead:
            for i in range(phi):
                shifted[i] -= lead * phi_coeffs[i]
        current = shifted
        rows.append(tuple(current))
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_table_np(m: int) -> tuple[np.ndarray, int]:
    rows = _power_rows(m)
    bound = max((max(abs(c) for c in row) for row in rows if row), default=0)
    if bound >= _INT64_SAFE:
        raise StructuralError(f"power table entries too large at m={m}")
    return np.array(rows, dtype=np.int64), bound


def _reduce_ints(m: int, dense: Sequence[int]) -> list[int]:
    """Reduce sum dense[t] * zeta^t (any length) to power-basis coordinates."""
    phi = euler_phi(m)
    table, tmax = _power_table_np(m)
    norm1 = sum(abs(int(c)) for c in dense)
    if norm1 * max(tmax, 1) < _INT64_SAFE:
        w = np.asarray(dense, dtype=np.int64)
        idx = np.arange(w.shape[0]) % m
        out = w @ table[idx]
        return [int(v) for v in out]
    rows = _power_rows(m)
    out_py = [0] * phi
    for t, c in enumerate(dense):
        if not c:
            continue
        row = rows[t % m]
        for i in range(phi):
            out_py[i] += c * row[i]
    return out_py


def _mul_ints(m: int, u: Sequence[int], v: Sequence[int]) -> list[int]:
    """Exact product of two coordinate vectors at conductor m."""
    nu = sum(abs(int(c)) for c in u)
    mv = max((abs(int(c)) for c in v), default=0)
    if nu * max(mv, 1) < _INT64_SAFE:
        w = np.convolve(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))
        return _reduce_ints(m, [int(c) for c in w])
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if b:
                out[i + j] += a * b
    return _reduce_ints(m, out)


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, max(m, 2)) if gcd(j, m) == 1) or (1,)


@lru_cache(maxsize=None)
def _unit_generators(m: int) -> tuple[int, ...]:
    """A small generating set of the unit group mod m (greedy closure)."""
    units = set(_units(m))
    have = {1 % max(m, 1)} if m > 1 else {0}
    if m <= 2:
        return ()
    gens: list[int] = []
    for j in sorted(units):
        if j in have:
            continue
        gens.append(j)
        frontier = list(have)
        while frontier:
            nxt = []
            for h in frontier:
                prod = (h * j) % m
                if prod not in have:
                    have.add(prod)
                    nxt.append(prod)
            frontier = nxt
        # close under all current generators
        changed = True
        while changed:
            changed = False
            for g in gens:
                for h in list(have):
                    prod = (h * g) % m
                    if prod not in have:
                        have.add(prod)
                        changed = True
        if len(have) == len(units):
            break
    return tuple(gens)


def _conjugate_ints(m: int, coords: Sequence[int], j: int) -> list[int]:
    """Apply the automorphism zeta -> zeta^j to integer coordinates."""
    dense = [0] * m
    for i, c in enumerate(coords):
        if c:
            dense[(i * j) % m] += c
    return _reduce_ints(m, dense)


@lru_cache(maxsize=None)
def _conjugation_tensor(m: int) -> tuple[np.ndarray, int]:
    """Stack of basis-conjugation matrices: shape (phi, #units, phi)."""
    table, tmax = _power_table_np(m)
    phi = euler_phi(m)
    units = np.array(_units(m), dtype=np.int64)
    idx = (np.arange(phi)[:, None] * units[None, :]) % m
    return table[idx], tmax


def _orbit_size_ints(m: int, coords: Sequence[int]) -> int:
    """Number of distinct Galois conjugates of an integer-coordinate element."""
    tensor, tmax = _conjugation_tensor(m)
    phi = euler_phi(m)
    norm1 = sum(abs(int(c)) for c in coords)
    if norm1 * max(tmax, 1) < _INT64_SAFE:
        v = np.asarray(coords, dtype=np.int64)
        conj = np.einsum("i,ijk->jk", v, tensor)
        return int(np.unique(conj, axis=0).shape[0])
    seen = set()
    for j in _units(m):
        seen.add(tuple(_conjugate_ints(m, coords, j)))
    return len(seen)


# ----------------------------------------------------------------------
# field elements


class CycNum:
    """Element of Q(zeta_m) in the reduced power basis."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords: Iterable[Scalar]):
        if m < 1:
            raise ValueError("conductor must be positive")
        coords = tuple(_as_rat(c) for c in coords)
        phi = euler_phi(m)
        if len(coords) != phi:
            raise ValueError(
                f"expected {phi} coordinates at conductor {m}, got {len(coords)}"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def rational(cls, value: Scalar, m: int = 1) -> "CycNum":
        coords = [0] * euler_phi(m)
        coords[0] = value
        return cls(m, coords)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycNum":
        return cls._from_dense(m, {k % m: 1})

    @classmethod
    def _from_dense(cls, m: int, entries: dict[int, Scalar]) -> "CycNum":
        """Element sum entries[t] * zeta^t with arbitrary exponents mod m."""
        dens = [
            c.denominator if isinstance(c, Fraction) else 1 for c in entries.values()
        ]
        scale = reduce(_lcm, dens, 1)
        dense = [0] * m
        for t, c in entries.items():
            dense[t % m] += int(c * scale)
        ints = _reduce_ints(m, dense)
        return cls(m, [Fraction(v, scale) for v in ints])

    # -- plumbing -------------------------------------------------------

    def _int_coords(self) -> tuple[int, list[int]]:
        """(scale, integer coordinates) with scale the common denominator."""
        dens = [c.denominator if isinstance(c, Fraction) else 1 for c in self.coords]
        scale = reduce(_lcm, dens, 1)
        return scale, [int(c * scale) for c in self.coords]

    def embed(self, M: int) -> "CycNum":
        """Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m)."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"{self.m} does not divide target conductor {M}")
        step = M // self.m
        scale, ints = self._int_coords()
        dense = [0] * M
        for i, c in enumerate(ints):
            if c:
                dense[(i * step) % M] += c
        out = _reduce_ints(M, dense)
        return CycNum(M, [Fraction(v, scale) for v in out])

    def _common(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        M = _lcm(self.m, other.m)
        return self.embed(M), other.embed(M)

    # -- ring/field operations -------------------------------------------

    def __add__(self, other) -> "CycNum":
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return CycNum(a.m, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.m, [-c for c in self.coords])

    def __sub__(self, other) -> "CycNum":
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return CycNum(self.m, [c * other for c in self.coords])
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        sa, ia = a._int_coords()
        sb, ib = b._int_coords()
        prod = _mul_ints(a.m, ia, ib)
        den = sa * sb
        return CycNum(a.m, [Fraction(v, den) for v in prod])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycNum":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.rational(1, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        f = RatPoly(self.coords)
        g, u, _ = f.xgcd(cyclotomic_poly(self.m))
        if g.degree != 0:
            raise StructuralError("element not invertible: gcd with Phi_m not constant")
        inv = u * (Fraction(1) / Fraction(g.coeffs[0]))
        rem = inv % cyclotomic_poly(self.m)
        coords = list(rem.coeffs) + [0] * (euler_phi(self.m) - len(rem.coeffs))
        return CycNum(self.m, coords)

    def __truediv__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return _coerce(other, self.m) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    def __hash__(self) -> int:
        # hash at own conductor; equality across conductors is rare enough
        # that callers needing set semantics should embed explicitly first
        return hash((self.m, self.coords))

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)

    def is_rational(self) -> bool:
        return all(not c for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coords[0])

    def galois_conjugate(self, j: int) -> "CycNum":
        """Image under zeta -> zeta^j; j must be coprime to the conductor."""
        if gcd(j, self.m) != 1:
            raise ValueError(f"{j} is not coprime to the conductor {self.m}")
        scale, ints = self._int_coords()
        out = _conjugate_ints(self.m, ints, j % self.m if self.m > 1 else 0)
        return CycNum(self.m, [Fraction(v, scale) for v in out])

    def conjugates(self) -> list["CycNum"]:
        """All Galois images (with multiplicity) over the unit group mod m."""
        return [self.galois_conjugate(j) for j in _units(self.m)]

    def degree(self) -> int:
        """Degree over Q: the number of distinct Galois conjugates."""
        _, ints = self._int_coords()
        return _orbit_size_ints(self.m, ints)

    def minimal_polynomial(self) -> RatPoly:
        """Monic minimal polynomial; exact, with a root check."""
        distinct: list[CycNum] = []
        seen = set()
        for conj in self.conjugates():
            key = conj.coords
            if key not in seen:
                seen.add(key)
                distinct.append(conj)
        # product of (x - conjugate), coefficients in the field
        coeffs: list[CycNum] = [CycNum.rational(1, self.m)]
        for root in distinct:
            nxt = [CycNum.rational(0, self.m) for _ in range(len(coeffs) + 1)]
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * root
            coeffs = nxt
        rational_coeffs = []
        for c in coeffs:
            if not c.is_rational():
                raise StructuralError(
                    "minimal polynomial assembled a non-rational coefficient"
                )
            rational_coeffs.append(c.as_rational())
        poly = RatPoly(rational_coeffs)
        value = poly.eval(self)
        if not (isinstance(value, CycNum) and value.is_zero()) and value != 0:
            raise StructuralError("minimal polynomial does not annihilate the element")
        if poly.degree != self.degree():
            raise StructuralError("minimal polynomial degree mismatch with orbit size")
        return poly

    # -- numerics ----------------------------------------------------------

    def to_complex(self) -> complex:
        total = 0j
        for i, c in enumerate(self.coords):
            if c:
                angle = 2.0 * math.pi * i / self.m
                total += float(c) * complex(math.cos(angle), math.sin(angle))
        return total

    def to_float(self, imag_tol: float = 1e-9) -> float:
        value = self.to_complex()
        if abs(value.imag) > imag_tol:
            raise ValueError(f"element is not numerically real: {value}")
        return value.real

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coords) if c
        )
        return f"CycNum(m={self.m}: {body or '0'})"


def _coerce(value, m: int):
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycNum.rational(value, 1)
    return NotImplemented


# ----------------------------------------------------------------------
# exact trigonometric values


def cyc_trig(k: int, n: int, which: str) -> CycNum:
    """cos(k*pi/n) or sin(k*pi/n) as an exact cyclotomic number.

    cos lives at conductor 2n; sin picks up a factor 1/(2i) and lives at
    conductor lcm(4, 2n).
    """
    if n < 1:
        raise ValueError("denominator n must be positive")
    if which == "cos":
        m = 2 * n
        return CycNum._from_dense(
            m, _accumulate({k % m: Fraction(1, 2), (-k) % m: Fraction(1, 2)})
        )
    if which == "sin":
        m = _lcm(4, 2 * n)
        a = k * (m // (2 * n))
        quarter = 3 * (m // 4)  # zeta^(3m/4) = -i = 1/i
        return CycNum._from_dense(
            m,
            _accumulate(
                {
                    (a + quarter) % m: Fraction(1, 2),
                    (-a + quarter) % m: Fraction(-1, 2),
                }
            ),
        )
    raise ValueError(f"which must be 'cos' or 'sin', got {which!r}")


def _accumulate(entries: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for key, value in entries.items():
        out[key] = out.get(key, Fraction(0)) + value
    return {k: v for k, v in out.items() if v}


def angle_cos(angle: AngleQ) -> CycNum:
    return cyc_trig(angle.num, angle.den, "cos")


def angle_sin(angle: AngleQ) -> CycNum:
    return cyc_trig(angle.num, angle.den, "sin")


def cyc_degree(v: CycNum) -> int:
    return v.degree()


def cyc_minpoly(v: CycNum) -> RatPoly:
    return v.minimal_polynomial()


# ----------------------------------------------------------------------
# number-theoretic scans


@dataclass(frozen=True)
class DegreeScanReport:
    """Result of checking deg cos(2k*pi/n) == phi(n)/2 over a range of n."""

    max_n: int
    checked: int
    violations: tuple[tuple[int, int, int, int], ...]  # (n, k, got, expected)

    @property
    def ok(self) -> bool:
        return not self.violations


def scan_cos_degree_formula(N: int) -> DegreeScanReport:
    """Verify deg cos(2k*pi/n) = phi(n)/2 for all 3 <= n <= N, gcd(k, n) = 1.

    Works at conductor n, where cos(2k*pi/n) = (zeta_n^k + zeta_n^(-k))/2;
    the factor 2 is dropped since scaling does not change the Galois orbit
    size.
    """
    if N < 3:
        raise ValueError("scan needs N >= 3 (the formula requires n > 2)")
    checked = 0
    violations = []
    for n in range(3, N + 1):
        expected = euler_phi(n) // 2
        rows = _power_rows(n)
        for k in _units(n):
            coords = [a + b for a, b in zip(rows[k % n], rows[(-k) % n])]
            got = _orbit_size_ints(n, coords)
            checked += 1
            if got != expected:
                violations.append((n, k, got, expected))
    return DegreeScanReport(N, checked, tuple(violations))


@dataclass(frozen=True)
class TotientBoundReport:
    """Result of checking 2*phi(n)^2 >= n (i.e. phi(n) >= sqrt(n/2)) up to N."""

    max_n: int
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def scan_totient_bound(N: int) -> TotientBoundReport:
    """Check 2*phi(n)^2 >= n for 1 <= n <= N by an exact integer sieve."""
    if N < 1:
        raise ValueError("N must be positive")
    if N >= 2**31:
        raise ValueError("sieve bound too large for the int64 arithmetic used")
    phi = np.arange(N + 1, dtype=np.int64)
    for p in range(2, N + 1):
        if phi[p] == p:  # untouched so far: p is prime
            phi[p::p] -= phi[p::p] // p
    n = np.arange(1, N + 1, dtype=np.int64)
    bad = np.nonzero(2 * phi[1:] * phi[1:] < n)[0]
    return TotientBoundReport(N, tuple(int(v) + 1 for v in bad))


def _ratio_is_rational(m: int, u: Sequence[int], v: Sequence[int]) -> bool:
    """Exact test that u/v is rational (u, v integer coordinates, v != 0).

    The quotient is rational iff it is fixed by every generator g of the
    Galois group, i.e. conj_g(u) * v == conj_g(v) * u; this avoids division.
    """
    for g in _unit_generators(m):
        cu = _conjugate_ints(m, u, g)
        cv = _conjugate_ints(m, v, g)
        if _mul_ints(m, cu, list(v)) != _mul_ints(m, cv, list(u)):
            return False
    return True


def scan_sigma1(maxden: int) -> list[tuple[AngleQ, AngleQ, AngleQ]]:
    """All primitive rational angle triples (i, j, k)/n, n <= maxden, whose
    Euclidean side ratios are rational.

    By the law of sines the side ratios are sin(j*pi/n)/sin(i*pi/n) and
    sin(k*pi/n)/sin(i*pi/n); both are tested exactly.  Triples with
    gcd(i, j, k) > 1 are skipped (their reduced forms appear at smaller n).
    """
    if maxden < 3:
        raise ValueError("maxden must be at least 3")
    found: list[tuple[AngleQ, AngleQ, AngleQ]] = []
    for n in range(3, maxden + 1):
        M = _lcm(4, 2 * n)
        sin_cache: dict[int, list[int]] = {}

        def sin_ints(k: int, n: int = n, M: int = M, cache=None) -> list[int]:
            cache = sin_cache
            got = cache.get(k)
            if got is None:
                _, got = cyc_trig(k, n, "sin")._int_coords()
                cache[k] = got
            return got

        for i in range(1, n // 3 + 1):
            for j in range(i, (n - i) // 2 + 1):
                k = n - i - j
                if gcd(gcd(i, j), k) > 1:
                    continue
                si = sin_ints(i)
                if not _ratio_is_rational(M, sin_ints(j), si):
                    continue
                if not _ratio_is_rational(M, sin_ints(k), si):
                    continue
                found.append((AngleQ(i, n), AngleQ(j, n), AngleQ(k, n)))
    return found


# ----------------------------------------------------------------------
# degree-two representatives and exact angle recovery


@lru_cache(maxsize=1)
def default_multipliers() -> tuple[tuple[str, CycNum], ...]:
    """Scaling numerators tried when hunting low-degree side triples.

    Empirically closed under the needs of every known degree <= 2 class; the
    set is a tunable, not a theorem, so extend it here if a class fails.
    """
    sqrt2 = cyc_trig(1, 4, "cos") * 2
    sqrt3 = cyc_trig(1, 6, "cos") * 2
    golden = cyc_trig(1, 5, "cos") * 2  # 2 cos(pi/5) = (1 + sqrt5)/2
    return (
        ("1", CycNum.rational(1)),
        ("sqrt2", sqrt2),
        ("sqrt3", sqrt3),
        ("sqrt6", sqrt2 * sqrt3),
        ("2", CycNum.rational(2)),
        ("2*sqrt2", sqrt2 * 2),
        ("(1+sqrt5)/2", golden),
        ("sqrt5", golden * 2 - 1),
    )


@dataclass(frozen=True)
class Deg2Representative:
    """A concrete similar copy of a rational-angled triangle with side degrees <= 2."""

    angles: tuple[AngleQ, AngleQ, AngleQ]
    sides: tuple[CycNum, CycNum, CycNum]
    degrees: tuple[int, int, int]
    minimal_polynomials: tuple[RatPoly, RatPoly, RatPoly]
    multiplier: str
    unit_angle: AngleQ  # sides are multiplier * sin(angle) / sin(unit_angle)


def find_deg2_representative(
    triple: Sequence[AngleQ],
    multipliers: Sequence[tuple[str, CycNum]] | None = None,
) -> Optional[Deg2Representative]:
    """Search scalings mu / sin(theta) for sides of algebraic degree <= 2.

    theta ranges over the triple's angles (in order) and mu over the supplied
    multipliers; the first scaling whose three sides all have degree <= 2
    wins.  Returns None when the search space is exhausted.
    """
    angles = tuple(triple)
    if len(angles) != 3:
        raise ValueError("expected three angles")
    if sum(Fraction(a.num, a.den) for a in angles) != 1:
        raise ValueError("angles must sum to a straight angle")
    mults = tuple(multipliers) if multipliers is not None else default_multipliers()
    sines = [angle_sin(a) for a in angles]
    for idx, theta in enumerate(angles):
        inv = sines[idx].inverse()
        bases = [s * inv for s in sines]
        for name, mu in mults:
            sides = tuple(b * mu for b in bases)
            degrees = tuple(s.degree() for s in sides)
            if all(d <= 2 for d in degrees):
                return Deg2Representative(
                    angles=angles,
                    sides=sides,
                    degrees=degrees,
                    minimal_polynomials=tuple(
                        s.minimal_polynomial() for s in sides
                    ),
                    multiplier=name,
                    unit_angle=theta,
                )
    return None


def verify_euclidean_triangle(
    sides: Sequence[CycNum],
    sweep: int = 360,
) -> tuple[Optional[AngleQ], Optional[AngleQ], Optional[AngleQ]]:
    """Recover exact rational angles of a Euclidean triangle from its sides.

    The cosine of each angle is computed exactly by the law of cosines and
    matched against cos(k*pi/n) for denominators n <= sweep (numeric
    prefilter, then exact equality).  None marks an angle with no rational
    match within the sweep.  Angles are returned opposite each given side.
    """
    sides = tuple(sides)
    if len(sides) != 3:
        raise ValueError("expected three sides")
    vals = [s.to_float() for s in sides]
    if min(vals) <= 0:
        raise DomainError("side lengths must be positive")
    a, b, c = vals
    if a + b <= c or b + c <= a or c + a <= b:
        raise DomainError("triangle inequality fails")
    out = []
    for i in range(3):
        sa = sides[i]
        sb = sides[(i + 1) % 3]
        sc = sides[(i + 2) % 3]
        cos_val = (sb * sb + sc * sc - sa * sa) / (sb * sc * 2)
        out.append(_match_rational_angle(cos_val, sweep))
    return tuple(out)


def _match_rational_angle(cos_val: CycNum, sweep: int) -> Optional[AngleQ]:
    x = cos_val.to_float()
    if not -1.0 < x < 1.0:
        return None
    theta = math.acos(x)
    for n in range(1, sweep + 1):
        k = round(theta * n / math.pi)
        if k <= 0 or k >= n or gcd(k, n) != 1:
            continue
        if abs(math.cos(math.pi * k / n) - x) < 1e-9:
            if cyc_trig(k, n, "cos") == cos_val:
                return AngleQ(k, n)
    return None
