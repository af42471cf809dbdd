"""Numeric trigonometry in constant Gaussian curvature.

Solvers work internally at curvature -1 (hyperbolic) or +1 (spherical) and
rescale lengths by 1/sqrt(|K|).  Everything here is binary64; the exact
layer lives in :mod:`ratangle.cyclo`.  These solvers double as the
independent oracle for the symbolic relations: sampled triangles and glued
quadrilaterals must annihilate the relation bodies to near machine precision.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import DomainError

AngleLike = Union["AngleQ", float, int]
CurvatureLike = Union["Curvature", float, int]


@dataclass(frozen=True)
class AngleQ:
    """The angle num*pi/den as a reduced positive fraction."""

    num: int
    den: int

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError(f"angle fraction must be positive, got {self.num}/{self.den}")
        g = gcd(self.num, self.den)
        object.__setattr__(self, "num", self.num // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def parse(cls, text: str) -> "AngleQ":
        """Parse 'p/q' (or 'p') as the angle p*pi/q."""
        text = text.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            return cls(int(p), int(q))
        return cls(int(text), 1)

    @classmethod
    def from_degrees(cls, degrees: int) -> "AngleQ":
        return cls(degrees, 180)

    @property
    def radians(self) -> float:
        return self.num * math.pi / self.den

    @property
    def degrees(self) -> Fraction:
        return Fraction(180 * self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class Curvature:
    """Nonzero constant Gaussian curvature; the sign selects the geometry."""

    K: float

    def __post_init__(self):
        if not self.K:
            raise ValueError("curvature must be nonzero")

    @property
    def is_hyperbolic(self) -> bool:
        return self.K < 0

    @property
    def is_spherical(self) -> bool:
        return self.K > 0

    @property
    def length_scale(self) -> float:
        """Factor carrying unit-curvature lengths to curvature-K lengths."""
        return 1.0 / math.sqrt(abs(self.K))


HYPERBOLIC_UNIT = Curvature(-1.0)
SPHERICAL_UNIT = Curvature(1.0)


def _angle_value(angle: AngleLike) -> float:
    if isinstance(angle, AngleQ):
        return angle.radians
    return float(angle)


def _as_curvature(K: CurvatureLike) -> Curvature:
    if isinstance(K, Curvature):
        return K
    return Curvature(float(K))


def acosh_stable(x: float) -> float:
    """acosh with a log1p form, accurate for arguments just above 1."""
    if x < 1.0:
        raise DomainError(f"acosh argument {x} < 1")
    t = x - 1.0
    return math.log1p(t + math.sqrt(t * (t + 2.0)))


def _acos_clamped(x: float, slack: float = 1e-9) -> float:
    if x > 1.0 + slack or x < -1.0 - slack:
        raise DomainError(f"acos argument {x} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


@dataclass(frozen=True)
class TriangleSol:
    """Angles (radians) and sides of a solved triangle; side i opposite angle i."""

    angles: tuple[float, float, float]
    sides: tuple[float, float, float]
    geometry: str  # "hyperbolic" | "spherical"


@dataclass(frozen=True)
class PolygonMetrics:
    """Side length, circumradius, and apothem of a regular polygon."""

    side: float
    circumradius: float
    apothem: float


@dataclass(frozen=True)
class QuadSample:
    """Two triangles glued along a shared diagonal of length e.

    Sides a, b, c, d run around the quadrilateral; the diagonal splits the
    angles at its endpoints into (beta1, beta2) and (delta1, delta2), while
    alpha and gamma are the opposite full angles.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    alpha: float
    beta1: float
    beta2: float
    gamma: float
    delta1: float
    delta2: float

    def __post_init__(self):
        for sides in ((self.a, self.d, self.e), (self.b, self.c, self.e)):
            if _hloc1_gap(*sides) > 1e-10:
                raise ValueError("glued triangles fail the first-law consistency check")

    @property
    def beta(self) -> float:
        return self.beta1 + self.beta2

    @property
    def delta(self) -> float:
        return self.delta1 + self.delta2

    @property
    def w(self) -> float:
        return math.cos(self.beta)

    @property
    def x(self) -> float:
        return math.cos(self.delta)

    @property
    def y(self) -> float:
        return math.sin(self.alpha)

    @property
    def z(self) -> float:
        return math.sin(self.gamma)


def _hloc1_gap(p: float, q: float, r: float) -> float:
    """How far the triangle with sides (p, q, r) is from satisfying the
    first law of cosines with a genuine angle: |cos| may not exceed 1."""
    c = (math.cosh(p) * math.cosh(q) - math.cosh(r)) / (math.sinh(p) * math.sinh(q))
    return max(0.0, abs(c) - 1.0)


# ----------------------------------------------------------------------
# solvers from angles


def solve_hyperbolic_from_angles(
    alpha: AngleLike,
    beta: AngleLike,
    gamma: AngleLike,
    curvature: CurvatureLike = HYPERBOLIC_UNIT,
) -> TriangleSol:
    """Sides from three angles via the second law of cosines (K < 0).

    The side opposite each angle is acosh((cos of the other two multiplied,
    plus cos of it) / (sin of the other two multiplied)), scaled by
    1/sqrt(-K).
    """
    K = _as_curvature(curvature)
    if not K.is_hyperbolic:
        raise DomainError("hyperbolic solver needs K < 0")
    va, vb, vc = (_angle_value(x) for x in (alpha, beta, gamma))
    for v in (va, vb, vc):
        if not 0.0 < v < math.pi:
            raise DomainError(f"angle {v} outside (0, pi)")
    if va + vb + vc >= math.pi:
        raise DomainError(
            f"angle sum {va + vb + vc} >= pi: not a hyperbolic triangle"
        )

    def opposite(u: float, v: float, w: float) -> float:
        return acosh_stable(
            (math.cos(u) * math.cos(v) + math.cos(w)) / (math.sin(u) * math.sin(v))
        )

    s = K.length_scale
    sides = (
        s * opposite(vb, vc, va),
        s * opposite(vc, va, vb),
        s * opposite(va, vb, vc),
    )
    return TriangleSol(angles=(va, vb, vc), sides=sides, geometry="hyperbolic")


def solve_spherical_from_angles(
    alpha: AngleLike,
    beta: AngleLike,
    gamma: AngleLike,
    curvature: CurvatureLike = SPHERICAL_UNIT,
) -> TriangleSol:
    """Sides from three angles via the second spherical law of cosines (K > 0)."""
    K = _as_curvature(curvature)
    if not K.is_spherical:
        raise DomainError("spherical solver needs K > 0")
    va, vb, vc = (_angle_value(x) for x in (alpha, beta, gamma))
    for v in (va, vb, vc):
        if not 0.0 < v < math.pi:
            raise DomainError(f"angle {v} outside (0, pi)")
    if va + vb + vc <= math.pi:
        raise DomainError(f"angle sum {va + vb + vc} <= pi: not spherical")
    for u, v, w in ((va, vb, vc), (vb, vc, va), (vc, va, vb)):
        if u + v - w >= math.pi:
            raise DomainError("spherical existence violated: an angle-sum excess >= pi")

    def opposite(u: float, v: float, w: float) -> float:
        arg = (math.cos(u) * math.cos(v) + math.cos(w)) / (math.sin(u) * math.sin(v))
        return _acos_clamped(arg, slack=1e-12)

    s = K.length_scale
    sides = (
        s * opposite(vb, vc, va),
        s * opposite(vc, va, vb),
        s * opposite(va, vb, vc),
    )
    return TriangleSol(angles=(va, vb, vc), sides=sides, geometry="spherical")


def solve_ideal_vertex(
    alpha: AngleLike,
    beta: AngleLike,
    curvature: CurvatureLike = HYPERBOLIC_UNIT,
) -> float:
    """Finite side of a hyperbolic triangle whose third vertex is ideal.

    cosh(side) = (1 + cos(alpha) cos(beta)) / (sin(alpha) sin(beta)); the two
    remaining sides are infinite.
    """
    K = _as_curvature(curvature)
    if not K.is_hyperbolic:
        raise DomainError("ideal-vertex solver needs K < 0")
    va, vb = _angle_value(alpha), _angle_value(beta)
    for v in (va, vb):
        if not 0.0 < v < math.pi:
            raise DomainError(f"angle {v} outside (0, pi)")
    if va + vb >= math.pi:
        raise DomainError(f"angle sum {va + vb} >= pi: triangle degenerates")
    arg = (1.0 + math.cos(va) * math.cos(vb)) / (math.sin(va) * math.sin(vb))
    return K.length_scale * acosh_stable(arg)


def regular_polygon_metrics(
    n: int,
    theta: AngleLike,
    curvature: CurvatureLike = HYPERBOLIC_UNIT,
) -> PolygonMetrics:
    """Regular hyperbolic n-gon with interior angle theta.

    Splitting the polygon into right triangles at the center (angles
    theta/2, pi/n, pi/2) and applying the second law of cosines gives
    cosh(circumradius) = cot(theta/2) cot(pi/n),
    cosh(side/2) = cos(pi/n) / sin(theta/2), and
    cosh(apothem) = cos(theta/2) / sin(pi/n).
    """
    K = _as_curvature(curvature)
    if not K.is_hyperbolic:
        raise DomainError("regular-polygon metrics need K < 0")
    if n < 3:
        raise DomainError(f"need n >= 3 sides, got {n}")
    t = _angle_value(theta)
    if not 0.0 < t < (n - 2) * math.pi / n:
        raise DomainError(
            f"interior angle {t} outside (0, {(n - 2)}*pi/{n}) for a hyperbolic {n}-gon"
        )
    half = t / 2.0
    central = math.pi / n
    cosh_r = (math.cos(half) / math.sin(half)) * (math.cos(central) / math.sin(central))
    cosh_half_side = math.cos(central) / math.sin(half)
    cosh_apothem = math.cos(half) / math.sin(central)
    r = acosh_stable(cosh_r)
    side = 2.0 * acosh_stable(cosh_half_side)
    apothem = acosh_stable(cosh_apothem)
    gap = abs(cosh_r - cosh_half_side * cosh_apothem)
    if gap > 1e-10 * cosh_r:
        raise DomainError(f"right-triangle consistency failed by {gap}")
    s = K.length_scale
    return PolygonMetrics(side=s * side, circumradius=s * r, apothem=s * apothem)


# ----------------------------------------------------------------------
# SAS solver and samplers


def solve_triangle_SAS(
    x: float,
    gamma: AngleLike,
    y: float,
    curvature: CurvatureLike = HYPERBOLIC_UNIT,
) -> TriangleSol:
    """Hyperbolic triangle from two sides and the included angle.

    Returns sides (x, y, third) opposite angles (alpha, beta, gamma).
    """
    K = _as_curvature(curvature)
    if not K.is_hyperbolic:
        raise DomainError("SAS solver needs K < 0")
    if x <= 0 or y <= 0:
        raise DomainError("side lengths must be positive")
    g = _angle_value(gamma)
    if not 0.0 < g < math.pi:
        raise DomainError(f"included angle {g} outside (0, pi)")
    s = 1.0 / K.length_scale
    xs, ys = x * s, y * s
    cosh_c = math.cosh(xs) * math.cosh(ys) - math.sinh(xs) * math.sinh(ys) * math.cos(g)
    cs = acosh_stable(cosh_c)
    cos_alpha = (math.cosh(ys) * cosh_c - math.cosh(xs)) / (math.sinh(ys) * math.sinh(cs))
    cos_beta = (math.cosh(xs) * cosh_c - math.cosh(ys)) / (math.sinh(xs) * math.sinh(cs))
    alpha = _acos_clamped(cos_alpha)
    beta = _acos_clamped(cos_beta)
    return TriangleSol(
        angles=(alpha, beta, g),
        sides=(x, y, cs / s),
        geometry="hyperbolic",
    )


def _as_rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def sample_triangle(
    seed_or_rng,
    length_range: tuple[float, float] = (0.1, 1.5),
    angle_range: tuple[float, float] = (0.1, math.pi - 0.1),
) -> TriangleSol:
    """Random hyperbolic triangle at K = -1 from SAS data; deterministic per seed."""
    rng = _as_rng(seed_or_rng)
    a = rng.uniform(*length_range)
    b = rng.uniform(*length_range)
    gamma = rng.uniform(*angle_range)
    return solve_triangle_SAS(a, gamma, b)


def sample_quadrilateral(
    seed_or_rng,
    length_range: tuple[float, float] = (0.1, 1.5),
    angle_range: tuple[float, float] = (0.1, math.pi / 2 - 0.05),
) -> QuadSample:
    """Random quadrilateral at K = -1, built by gluing two SAS triangles.

    The diagonal e joins the vertex where sides a, b meet to the vertex where
    c, d meet; beta1, beta2 are the two pieces of the split angle.  The
    sampler does not force simplicity: the relation under test is an identity
    of the glued trigonometry, not of the planar embedding.
    """
    rng = _as_rng(seed_or_rng)
    a = rng.uniform(*length_range)
    b = rng.uniform(*length_range)
    e = rng.uniform(*length_range)
    beta1 = rng.uniform(*angle_range)
    beta2 = rng.uniform(*angle_range)
    first = solve_triangle_SAS(a, beta1, e)
    second = solve_triangle_SAS(b, beta2, e)
    # in each gluing triangle: angle opposite the drawn side, then opposite e
    delta1, alpha = first.angles[0], first.angles[1]
    d = first.sides[2]
    delta2, gamma = second.angles[0], second.angles[1]
    c = second.sides[2]
    return QuadSample(
        a=a, b=b, c=c, d=d, e=e,
        alpha=alpha, beta1=beta1, beta2=beta2,
        gamma=gamma, delta1=delta1, delta2=delta2,
    )
