"""Brute-force bounded-complexity evidence that a constant is not algebraic.

A scan exhaustively evaluates every nonzero integer polynomial with degree
<= D and coefficients in [-H, H] at a constant, and reports the smallest
|p(v)| together with the polynomial achieving it.  A certified positive
minimum is numerical evidence (never proof) that v admits no algebraic
relation within those complexity bounds; a minimum below the certification
floor flags a relation found (the constant is algebraic at these bounds).

Constants are evaluated with interval arithmetic to a requested decimal
precision.  Candidate evaluation is two-stage: a vectorized binary64 pass
locates near-minimal candidates, which are then re-evaluated in
high-precision software floats, so the reported minimum carries the
high-precision error bound, not the binary64 one.
"""

from __future__ import annotations

import ast
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv, mp

from .errors import DomainError
from .mpoly import MPoly

DEFAULT_PRECISION_DIGITS = 60
DEFAULT_BUDGET = 200_000_000

#: CLI-addressable constants.
CONSTANT_REGISTRY = {
    # side of the equiangular pi/4 triangle at curvature -1
    "tri-side-pi4": "acosh(1 + sqrt(2))",
    # finite side of the (pi/3, pi/3) one-ideal-vertex triangle
    "ideal-pi3": "ln(3)",
    # circumradius of the regular quadrilateral with interior angle pi/3
    "quad-fig3-radius": "acosh(sqrt(3))",
}


@dataclass(frozen=True)
class ConstantSpec:
    """A named constant given by a closed-form expression.

    The expression grammar covers rational constants, pi, + - * / and integer
    powers, and the functions acosh, acos, ln (or log), sqrt.
    """

    name: str
    definition: str
    precision: int = DEFAULT_PRECISION_DIGITS  # decimal digits


def registry_spec(name: str, precision: int = DEFAULT_PRECISION_DIGITS) -> ConstantSpec:
    if name not in CONSTANT_REGISTRY:
        raise ValueError(
            f"unknown constant {name!r}; have {sorted(CONSTANT_REGISTRY)}"
        )
    return ConstantSpec(name=name, definition=CONSTANT_REGISTRY[name], precision=precision)


@dataclass(frozen=True)
class EvaluatedConstant:
    spec: ConstantSpec
    value: mpmath.mpf
    error_bound: mpmath.mpf  # certified absolute error of `value`
    precision_bits: int


# ----------------------------------------------------------------------
# interval expression evaluation


_FUNC_ALIASES = {
    "acosh": "acosh",
    "arccosh": "acosh",
    "acos": "acos",
    "arccos": "acos",
    "ln": "ln",
    "log": "ln",
    "sqrt": "sqrt",
}


def _iv_acosh(x):
    if mpmath.mpf(x.a) < 1:
        raise DomainError(f"acosh argument {x} extends below 1")
    return iv.log(x + iv.sqrt(x * x - 1))


def _iv_ln(x):
    if mpmath.mpf(x.a) <= 0:
        raise DomainError(f"log argument {x} extends to 0 or below")
    return iv.log(x)


def _iv_sqrt(x):
    if mpmath.mpf(x.a) < 0:
        raise DomainError(f"sqrt argument {x} extends below 0")
    return iv.sqrt(x)


def _iv_acos(x):
    # mpmath.iv has no acos; enclose via mpf endpoints padded outward.
    # acos is decreasing, so the image of [a, b] is [acos(b), acos(a)].
    lo_in, hi_in = mpmath.mpf(x.a), mpmath.mpf(x.b)
    if lo_in < -1 or hi_in > 1:
        raise DomainError(f"acos argument {x} extends outside [-1, 1]")
    pad = mpmath.mpf(2) ** (8 - mp.prec)
    lo = mpmath.acos(hi_in) - pad
    hi = mpmath.acos(lo_in) + pad
    return iv.mpf([lo, hi])


_IV_FUNCS = {"acosh": _iv_acosh, "acos": _iv_acos, "ln": _iv_ln, "sqrt": _iv_sqrt}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ValueError(f"unsupported literal {node.value!r}")
        if isinstance(node.value, int):
            return iv.mpf(node.value)
        frac = Fraction(str(node.value))  # decimal literal, taken exactly
        return iv.mpf(frac.numerator) / iv.mpf(frac.denominator)
    if isinstance(node, ast.Name):
        if node.id == "pi":
            return iv.pi
        raise ValueError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        operand = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        left, right = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("only integer exponents are supported")
            n = node.right.value
            if n < 0:
                return iv.mpf(1) / _ipow(left, -n)
            return _ipow(left, n)
        raise ValueError("unsupported binary operator")
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.keywords or len(node.args) != 1:
            raise ValueError("only single-argument named functions are supported")
        name = _FUNC_ALIASES.get(node.func.id)
        if name is None:
            raise ValueError(f"unknown function {node.func.id!r}")
        return _IV_FUNCS[name](_eval_node(node.args[0]))
    raise ValueError(f"unsupported syntax {ast.dump(node)}")


def _ipow(x, n: int):
    result = iv.mpf(1)
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def eval_constant(spec: ConstantSpec) -> EvaluatedConstant:
    """Evaluate to a certified absolute error of at most 10**(-precision)."""
    try:
        tree = ast.parse(spec.definition, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {spec.definition!r}: {exc}") from exc
    tol = mpmath.mpf(10) ** (-spec.precision)
    bits = max(200, int(spec.precision * 3.33) + 60)
    for _ in range(8):
        old_iv, old_mp = iv.prec, mp.prec
        try:
            iv.prec = bits
            mp.prec = bits
            result = _eval_node(tree)
            lo, hi = mpmath.mpf(result.a), mpmath.mpf(result.b)
            value = (lo + hi) / 2
            half_width = (hi - lo) / 2 + mpmath.mpf(2) ** (-bits + 2)
        finally:
            iv.prec, mp.prec = old_iv, old_mp
        if half_width <= tol:
            return EvaluatedConstant(
                spec=spec,
                value=value,
                error_bound=half_width,
                precision_bits=bits,
            )
        bits *= 2
    raise DomainError(
        f"could not certify {spec.definition!r} to {spec.precision} digits"
    )


# ----------------------------------------------------------------------
# the scan


@dataclass(frozen=True)
class ScanResult:
    """Outcome of an exhaustive bounded search for integer relations."""

    constant: str
    degree_bound: int
    height_bound: int
    candidates: int  # (2H+1)^(D+1), before sign normalization
    minimum: float
    argmin: tuple[int, ...]  # coefficients, ascending powers
    error_bound: float
    certified: bool

    @property
    def algebraic_at_bounds(self) -> bool:
        """The minimum fell below the certification floor: a relation was found."""
        return not self.certified

    @property
    def argmin_text(self) -> str:
        return poly_text(self.argmin)


def poly_text(coeffs: tuple[int, ...], symbol: str = "x") -> str:
    return MPoly((symbol,), {(i,): c for i, c in enumerate(coeffs) if c}).to_text()


def _chunk_minimum(v: float, D: int, H: int, lead: int):
    """binary64 Horner over the full (c_0..c_{D-1}) grid with c_D = lead.

    Returns (min |p(v)|, argmin tuple, values array, mask) for this chunk.
    """
    counts = 2 * H + 1
    coeff_range = np.arange(-H, H + 1, dtype=np.float64)
    shape = (counts,) * D
    values = np.full(shape, float(lead), dtype=np.float64)
    for axis in range(D - 1, -1, -1):
        view = coeff_range.reshape(
            tuple(counts if i == axis else 1 for i in range(D))
        )
        values = values * v + view
    if lead > 0:
        mask = np.ones(shape, dtype=bool)
    else:
        # lead == 0: canonical iff the highest nonzero lower coefficient is > 0
        lead_sign = np.zeros(shape, dtype=np.int8)
        for axis in range(D - 1, -1, -1):
            view = np.sign(coeff_range).astype(np.int8).reshape(
                tuple(counts if i == axis else 1 for i in range(D))
            )
            lead_sign = np.where(lead_sign == 0, view, lead_sign)
        mask = lead_sign > 0
    return values, mask


def _coeffs_from_index(idx: tuple[int, ...], H: int, lead: int) -> tuple[int, ...]:
    return tuple(int(i) - H for i in idx) + (lead,)


def scan_algebraicity(
    spec,
    D: int,
    H: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> ScanResult:
    """Exhaustively scan integer polynomials (deg <= D, height <= H) at a constant.

    Candidates are normalized to positive leading coefficient (|p(v)| is sign
    invariant).  The reported minimum and argmin come from high-precision
    re-evaluation of every near-minimal binary64 candidate, Horner order in
    both passes; ties break to the lexicographically smallest coefficient
    vector (c_0, ..., c_D).  ``certified`` requires the evaluation error bound
    to stay below minimum/10.
    """
    if D < 1 or H < 1:
        raise ValueError("need degree and height bounds >= 1")
    candidates = (2 * H + 1) ** (D + 1)
    if candidates > budget:
        raise ValueError(
            f"scan of {candidates} candidates exceeds budget {budget}; "
            f"raise budget to at least {candidates}"
        )
    ev = spec if isinstance(spec, EvaluatedConstant) else eval_constant(spec)
    v_hp = ev.value
    v = float(v_hp)
    grow = max(1.0, abs(v)) ** D
    # binary64 pass error: float(v) conversion plus (2D+1) roundings
    eps_f = (float(ev.error_bound) + abs(v) * 2**-52) * (D + 1) * H * grow
    eps_f += (2 * D + 1) * 2**-52 * (D + 1) * H * grow

    leads = list(range(0, H + 1))  # negative leading coefficients are mirrors

    def run_chunk(lead: int):
        values, mask = _chunk_minimum(v, D, H, lead)
        absvals = np.abs(values)
        absvals[~mask] = np.inf
        flat = int(np.argmin(absvals))
        best = float(absvals.flat[flat])
        idx = np.unravel_index(flat, absvals.shape)
        return best, idx, absvals

    def survivors_of(lead: int, absvals, cutoff: float):
        hits = np.argwhere(absvals <= cutoff)
        return [_coeffs_from_index(tuple(hit), H, lead) for hit in hits]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunk_results = list(pool.map(run_chunk, leads))
    else:
        chunk_results = [run_chunk(lead) for lead in leads]

    best_f = min(result[0] for result in chunk_results)
    cutoff = best_f + 2 * eps_f
    survivors: list[tuple[int, ...]] = []
    for lead, (_, _, absvals) in zip(leads, chunk_results):
        survivors.extend(survivors_of(lead, absvals, cutoff))

    # high-precision re-evaluation of every near-minimal candidate
    old_prec = mp.prec
    try:
        mp.prec = ev.precision_bits
        best_hp = None
        argmin: tuple[int, ...] | None = None
        for coeffs in survivors:
            acc = mpmath.mpf(coeffs[-1])
            for c in reversed(coeffs[:-1]):
                acc = acc * v_hp + c
            acc = abs(acc)
            if best_hp is None or acc < best_hp or (acc == best_hp and coeffs < argmin):
                best_hp, argmin = acc, coeffs
        arith_eps = mpmath.mpf(2) ** (-ev.precision_bits + 2) * (2 * D + 1)
        err_hp = (D + 1) * H * grow * (ev.error_bound + arith_eps)
        minimum = float(best_hp)
        error_bound = float(err_hp)
    finally:
        mp.prec = old_prec

    return ScanResult(
        constant=ev.spec.name,
        degree_bound=D,
        height_bound=H,
        candidates=candidates,
        minimum=minimum,
        argmin=argmin,
        error_bound=error_bound,
        certified=error_bound < minimum / 10,
    )
