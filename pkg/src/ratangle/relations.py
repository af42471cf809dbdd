"""Replay of the two exponential-polynomial relations and their certificates.

The triangle relation couples the two legs adjacent to a rational angle when
the sum of the opposite two angles is also rational; the quadrilateral
relation couples all four sides across an internal diagonal.  Both are built
step by step from the constant-curvature laws of cosines, with a named
checkpoint after each manipulation, and both vanish identically on genuine
geometric data (see :mod:`ratangle.trig` for the numeric oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DerivationError
from .exppoly import AuxQuadratic, ExpPoly, LinForm
from .mpoly import MPoly

TRIANGLE_LENGTHS = ("a", "b")
TRIANGLE_SYMBOLS = ("x", "y", "z")
QUAD_LENGTHS = ("a", "b", "c", "d")
QUAD_SYMBOLS = ("w", "x", "y", "z")
# E = cosh of the diagonal, carried as a coefficient symbol while regrouping.
QUAD_SYMBOLS_E = ("w", "x", "y", "z", "E")

TRIANGLE_SCALE = 64
QUAD_SCALE = 4096

TRIANGLE_LEADER_FORM = LinForm((3, 3))
QUAD_LEADER_FORMS = (
    LinForm((4, 4, 2, 2)),
    LinForm((2, 2, 4, 4)),
    LinForm((3, 3, 3, 3)),
)


def _require(step: str, ok: bool, detail: str = "") -> None:
    if not ok:
        raise DerivationError(step, detail or "checkpoint failed")


@dataclass(frozen=True)
class Relation:
    """A collected relation body together with the integer scale applied."""

    body: ExpPoly
    scale_applied: int
    context: str  # "triangle" or "quadrilateral"


@dataclass(frozen=True)
class LeaderSpec:
    """Expected factorization of one leading coefficient."""

    form: LinForm
    factors: tuple[MPoly, ...]
    unit: Fraction


@dataclass(frozen=True)
class LeaderCheck:
    form: LinForm
    expected: str
    matched: bool


@dataclass(frozen=True)
class Certificate:
    """Machine-checked bundle for the linear-independence argument.

    ``certified`` requires every leader coefficient to factor over the
    declared nonvanishing basis, every other term to be dominated, and no tie
    conditions among the leader exponents.  Ties downgrade the verdict to
    ``tie-conditional``: collapsing exponents would merge leader coefficients,
    which the symbolic layer alone cannot rule out.
    """

    leaders: tuple[LeaderCheck, ...]
    dominance_ok: bool
    tie_conditions: tuple[str, ...]
    verdict: str  # "certified" | "tie-conditional" | "failed"


# ----------------------------------------------------------------------
# triangle path


def _triangle_vars() -> tuple[MPoly, MPoly, MPoly]:
    x = MPoly.variable(TRIANGLE_SYMBOLS, "x")
    y = MPoly.variable(TRIANGLE_SYMBOLS, "y")
    z = MPoly.variable(TRIANGLE_SYMBOLS, "z")
    return x, y, z


def build_triangle_relation() -> Relation:
    """Construct the 25-term two-leg relation over exponents in [-3, 3]^2.

    Conventions: x = cos of the sum of the two base angles, y = sin and
    z = cos of the apex angle, and the exponent symbols a, b are the legs
    adjacent to the apex.  The third side never appears: its hyperbolic
    cosine is substituted from the first law of cosines before expansion.
    """
    L, S = TRIANGLE_LENGTHS, TRIANGLE_SYMBOLS
    x, y, z = _triangle_vars()
    cosh_a = ExpPoly.hyp("a", "cosh", L, S)
    cosh_b = ExpPoly.hyp("b", "cosh", L, S)
    sinh_a = ExpPoly.hyp("a", "sinh", L, S)
    sinh_b = ExpPoly.hyp("b", "sinh", L, S)
    one = ExpPoly.constant(L, S, 1)

    # cosh of the third side, substituted via the first law of cosines.
    Z = cosh_a * cosh_b - sinh_a * sinh_b * z
    _require(
        "third-side-substitution",
        Z.coeff_at((1, 1)) == (MPoly.constant(S, Fraction(1, 4)) * (1 - z)),
        "top coefficient of the substituted third-side cosh is off",
    )

    # angle-sum identity with the denominator sinh^2 of the third side cleared
    lhs = (Z * Z - one) * sinh_a * sinh_b * x
    rhs = (Z * cosh_b - cosh_a) * (Z * cosh_a - cosh_b) - sinh_a**2 * sinh_b**2 * (y * y)

    moved = lhs - rhs
    body = moved * TRIANGLE_SCALE
    _require(
        "clear-denominators-64",
        all(p.is_integral() for p in body.terms.values()),
        "coefficients are not integral after scaling by 64",
    )
    _require(
        "collect-term-count",
        body.term_count() == 25,
        f"expected 25 collected terms, got {body.term_count()}",
    )
    bounds = body.exponent_bounds()
    _require(
        "exponent-bounds",
        all(bounds[s] == (-3, 3) for s in L),
        f"exponent bounds {bounds} not equal to [-3,3]^2",
    )
    leader = body.coeff_at(TRIANGLE_LEADER_FORM)
    _require(
        "leading-coefficient",
        leader.equals_product([x - 1, z - 1, z - 1], 1),
        f"coefficient at (3,3) is {leader.to_text()}",
    )
    return Relation(body=body, scale_applied=TRIANGLE_SCALE, context="triangle")


def triangle_leaders() -> list[LeaderSpec]:
    x, _, z = _triangle_vars()
    return [LeaderSpec(TRIANGLE_LEADER_FORM, (x - 1, z - 1, z - 1), Fraction(1))]


def triangle_nonzero_basis() -> list[MPoly]:
    """Factors that cannot vanish on the triangle's variable domain.

    x = cos(angle sum) lies in (-1, 1) and z = cos(apex) lies in (-1, 1), so
    x - 1 and z - 1 are nonzero.
    """
    x, _, z = _triangle_vars()
    return [x - 1, z - 1]


# ----------------------------------------------------------------------
# quadrilateral path


def _quad_vars() -> tuple[MPoly, MPoly, MPoly, MPoly]:
    w = MPoly.variable(QUAD_SYMBOLS, "w")
    x = MPoly.variable(QUAD_SYMBOLS, "x")
    y = MPoly.variable(QUAD_SYMBOLS, "y")
    z = MPoly.variable(QUAD_SYMBOLS, "z")
    return w, x, y, z


def build_quad_quadratics() -> tuple[AuxQuadratic, AuxQuadratic]:
    """Regroup the two diagonal identities as quadratics in E = cosh(diagonal).

    Conventions: sides a, b, c, d in cyclic order, diagonal between the
    vertices joining (a, b) and (c, d); w = cos of the full angle split by
    the diagonal on the (a, b) side, x = cos of the split angle on the
    (c, d) side, y = sin of the angle opposite the diagonal between d and a,
    z = sin of the angle between b and c.
    """
    L, SE = QUAD_LENGTHS, QUAD_SYMBOLS_E
    cosh = {t: ExpPoly.hyp(t, "cosh", L, SE) for t in L}
    sinh = {t: ExpPoly.hyp(t, "sinh", L, SE) for t in L}
    w = MPoly.variable(SE, "w")
    x = MPoly.variable(SE, "x")
    y = MPoly.variable(SE, "y")
    z = MPoly.variable(SE, "z")
    E = MPoly.variable(SE, "E")
    sinh_all = sinh["a"] * sinh["b"] * sinh["c"] * sinh["d"]

    # all terms moved to one side; E^2 - 1 stands for sinh^2 of the diagonal
    eq_first = (
        (cosh["a"] * E - cosh["d"]) * (cosh["b"] * E - cosh["c"])
        - sinh_all * (y * z)
        - sinh["a"] * sinh["b"] * (E * E - 1) * w
    )
    eq_second = (
        (cosh["d"] * E - cosh["a"]) * (cosh["c"] * E - cosh["b"])
        - sinh_all * (y * z)
        - sinh["c"] * sinh["d"] * (E * E - 1) * x
    )

    q1 = eq_first.extract_aux_quadratic("E")
    q2 = eq_second.extract_aux_quadratic("E")
    _require(
        "regroup-roundtrip",
        q1.reassemble("E") == eq_first and q2.reassemble("E") == eq_second,
        "reassembling the quadratics does not restore the originals",
    )

    S = QUAD_SYMBOLS
    ch = {t: ExpPoly.hyp(t, "cosh", L, S) for t in L}
    sh = {t: ExpPoly.hyp(t, "sinh", L, S) for t in L}
    wq, xq, _, _ = _quad_vars()
    _require(
        "quadratic-coefficient-A1",
        q1.A == ch["a"] * ch["b"] - sh["a"] * sh["b"] * wq,
        "E^2 coefficient of the first identity is off",
    )
    _require(
        "quadratic-coefficient-A2",
        q2.A == ch["c"] * ch["d"] - sh["c"] * sh["d"] * xq,
        "E^2 coefficient of the second identity is off",
    )
    _require(
        "quadratic-coefficient-B1",
        q1.B == -(ch["a"] * ch["c"]) - ch["b"] * ch["d"],
        "E coefficient of the first identity is off",
    )
    a1_top = (q1.A * 4).coeff_at((1, 1, 0, 0))
    _require(
        "A1-leading-term",
        a1_top == 1 - wq,
        f"4*A1 at e^(a+b) is {a1_top.to_text()}, expected 1-w",
    )
    return q1, q2


def verify_shared_linear_coeff(q1: AuxQuadratic, q2: AuxQuadratic) -> bool:
    """Exact equality of the two linear-in-E coefficients."""
    return q1.B == q2.B


def build_quad_relation(
    quadratics: tuple[AuxQuadratic, AuxQuadratic] | None = None,
) -> Relation:
    """Construct the 1041-term four-side relation over exponents in [-4, 4]^4.

    The body is 4096 times the resultant-style combination
    A1^2 C2^2 + A2^2 C1^2 - 2 A1 A2 C1 C2 + A1 B^2 C1 + A2 B^2 C2
    - A1 B^2 C2 - A2 B^2 C1, which eliminating E from the two quadratics
    forces to vanish on geometric data.
    """
    q1, q2 = quadratics if quadratics is not None else build_quad_quadratics()
    _require(
        "shared-linear-coefficient",
        verify_shared_linear_coeff(q1, q2),
        "the two quadratics disagree in their linear coefficients",
    )
    A1, A2, B = q1.A, q2.A, q1.B
    C1, C2 = q1.C, q2.C

    A1C1, A1C2 = A1 * C1, A1 * C2
    A2C1, A2C2 = A2 * C1, A2 * C2
    nearer = (
        A1C2 * A1C2
        + A2C1 * A2C1
        - 2 * (A1C2 * A2C1)
        + (B * B) * (A1C1 + A2C2 - A1C2 - A2C1)
    )
    body = nearer * QUAD_SCALE
    _require(
        "clear-denominators-4096",
        all(p.is_integral() for p in body.terms.values()),
        "coefficients are not integral after scaling by 4096",
    )
    _require(
        "collect-term-count",
        body.term_count() == 1041,
        f"expected 1041 collected terms, got {body.term_count()}",
    )
    bounds = body.exponent_bounds()
    _require(
        "exponent-bounds",
        all(-4 <= lo and hi <= 4 for lo, hi in bounds.values()),
        f"exponent bounds {bounds} exceed [-4,4]",
    )
    w, x, y, z = _quad_vars()
    expected = {
        QUAD_LEADER_FORMS[0]: ([w - 1, w - 1, y, y, z, z], Fraction(1)),
        QUAD_LEADER_FORMS[1]: ([x - 1, x - 1, y, y, z, z], Fraction(1)),
        QUAD_LEADER_FORMS[2]: ([w - 1, 1 - x, y, y, z, z], Fraction(2)),
    }
    for form, (factors, unit) in expected.items():
        coeff = body.coeff_at(form)
        _require(
            "leading-coefficients",
            coeff.equals_product(factors, unit),
            f"coefficient at {tuple(form)} is {coeff.to_text()}",
        )
    report = body.classify_dominance(QUAD_LEADER_FORMS, QUAD_LEADER_FORMS)
    _require(
        "dominance",
        not report.violations,
        f"{len(report.violations)} terms dominated by no leading exponent",
    )
    return Relation(body=body, scale_applied=QUAD_SCALE, context="quadrilateral")


def quad_leaders() -> list[LeaderSpec]:
    w, x, y, z = _quad_vars()
    return [
        LeaderSpec(QUAD_LEADER_FORMS[0], (w - 1, w - 1, y, y, z, z), Fraction(1)),
        LeaderSpec(QUAD_LEADER_FORMS[1], (x - 1, x - 1, y, y, z, z), Fraction(1)),
        LeaderSpec(QUAD_LEADER_FORMS[2], (w - 1, 1 - x, y, y, z, z), Fraction(2)),
    ]


def quad_nonzero_basis() -> list[MPoly]:
    """Factors that cannot vanish on the quadrilateral's variable domain.

    w and x are cosines of internal angles in (0, pi) u (pi, 2pi), hence in
    (-1, 1), so w - 1, x - 1 and 1 - x are nonzero; y and z are sines of
    internal angles, nonzero because the angles avoid 0 and pi.
    """
    w, x, y, z = _quad_vars()
    return [w - 1, x - 1, 1 - x, y, z]


def verify_double_squaring_identity(
    quadratics: tuple[AuxQuadratic, AuxQuadratic] | None = None,
) -> bool:
    """Check the cancellation behind the relation's final form.

    Squaring twice to remove the two radicals produces
    (G^2 + A2^2 D1 - A1^2 D2)^2 = 4 G^2 A2^2 D1 with G = (A1 - A2) B and
    Di = B^2 - 4 Ai Ci.  Moving everything to one side must leave exactly
    16 A1^2 A2^2 times the seven-term combination used for the relation.

    Both sides are verified after multiplication by 65536, i.e. with the
    denominator-free operands 4*Ai, 4*B, 16*Ci, so that the large products
    run over integer coefficients; this rescaling is exact and the identity
    is unchanged.
    """
    q1, q2 = quadratics if quadratics is not None else build_quad_quadratics()
    A1, A2, B = q1.A * 4, q2.A * 4, q1.B * 4
    C1, C2 = q1.C * 16, q2.C * 16
    # with these scalings: G~ = 16 G, Di~ = 16 Di, S~ = 256 S, and
    # S~^2 - 4 G~^2 A2~^2 D1~ = 65536 (S^2 - 4 G^2 A2^2 D1)
    G = (A1 - A2) * B
    D1 = B * B - A1 * C1
    D2 = B * B - A2 * C2
    A1sq, A2sq = A1 * A1, A2 * A2
    S = G * G + A2sq * D1 - A1sq * D2
    delta = S * S - 4 * ((G * G) * (A2sq * D1))

    # A1~^2 A2~^2 * (4096 * nearer) = 65536 * 16 A1^2 A2^2 * nearer
    body = build_quad_relation((q1, q2)).body
    return delta == (A1sq * A2sq) * body


# ----------------------------------------------------------------------
# certificates


def _tie_condition_text(diff: LinForm, lengths: Sequence[str]) -> str | None:
    coeffs = list(diff.coeffs)
    if all(c == 0 for c in coeffs):
        return None
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    coeffs = [c // g for c in coeffs]
    first = next(c for c in coeffs if c != 0)
    if first < 0:
        coeffs = [-c for c in coeffs]

    def side(sign: int) -> str:
        parts = []
        for c, s in zip(coeffs, lengths):
            if sign * c > 0:
                parts.append(s if abs(c) == 1 else f"{abs(c)}{s}")
        return "+".join(parts) if parts else "0"

    return f"{side(+1)}={side(-1)}"


def check_certificate(
    rel: Relation,
    leaders: Iterable[LeaderSpec],
    nonzero_basis: Iterable[MPoly],
) -> Certificate:
    """Verify leader factorizations, dominance, and exponent tie conditions."""
    leaders = list(leaders)
    basis = list(nonzero_basis)
    for spec in leaders:
        for factor in spec.factors:
            if factor not in basis:
                raise ValueError(
                    f"factor {factor.to_text()} is not in the nonzero basis"
                )
    checks = []
    for spec in leaders:
        coeff = rel.body.coeff_at(spec.form)
        matched = coeff.equals_product(spec.factors, spec.unit)
        unit_text = "" if spec.unit == 1 else f"{spec.unit}*"
        expected = unit_text + "*".join(f"({f.to_text()})" for f in spec.factors)
        checks.append(LeaderCheck(spec.form, expected, matched))

    forms = [spec.form for spec in leaders]
    report = rel.body.classify_dominance(forms, forms)
    dominance_ok = not report.violations

    ties = []
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            text = _tie_condition_text(forms[i] - forms[j], rel.body.lengths)
            if text is not None and text not in ties:
                ties.append(text)

    if not all(c.matched for c in checks) or not dominance_ok:
        verdict = "failed"
    elif ties:
        verdict = "tie-conditional"
    else:
        verdict = "certified"
    return Certificate(
        leaders=tuple(checks),
        dominance_ok=dominance_ok,
        tie_conditions=tuple(ties),
        verdict=verdict,
    )


# ----------------------------------------------------------------------
# numeric bridge


def _triangle_bindings(sample) -> tuple[dict, dict]:
    alpha, beta, gamma = sample.angles
    a, b, _ = sample.sides
    lengths = {"a": a, "b": b}
    coeffs = {
        "x": math.cos(alpha + beta),
        "y": math.sin(gamma),
        "z": math.cos(gamma),
    }
    return lengths, coeffs


def _quad_bindings(sample) -> tuple[dict, dict]:
    lengths = {"a": sample.a, "b": sample.b, "c": sample.c, "d": sample.d}
    coeffs = {
        "w": math.cos(sample.beta1 + sample.beta2),
        "x": math.cos(sample.delta1 + sample.delta2),
        "y": math.sin(sample.alpha),
        "z": math.sin(sample.gamma),
    }
    return lengths, coeffs


def _bindings(rel: Relation, sample) -> tuple[dict, dict]:
    try:
        if rel.context == "triangle":
            return _triangle_bindings(sample)
        return _quad_bindings(sample)
    except AttributeError as exc:
        raise ValueError(f"sample incomplete for {rel.context} relation: {exc}") from exc


def eval_relation_numeric(rel: Relation, sample) -> float:
    """Signed residual of the relation on one geometric sample (unit curvature)."""
    lengths, coeffs = _bindings(rel, sample)
    return rel.body.eval_numeric(lengths, coeffs)


def relative_residual(rel: Relation, sample) -> float:
    """Residual divided by the largest term magnitude at the sample."""
    lengths, coeffs = _bindings(rel, sample)
    scale = rel.body.max_term_magnitude(lengths, coeffs)
    return rel.body.eval_numeric(lengths, coeffs) / scale
