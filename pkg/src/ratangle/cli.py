"""Command-line interface: verifications, solvers, scans, and reports.

Every subcommand prints a deterministic report, as text or as JSON with the
stable schema ``{"command", "checks": [{"check", "status", "details"}],
"summary": {"passed", "failed", "errored"}}``.  Exit codes: 0 all checks
pass, 1 any check failed or hit a domain error, 2 usage error.
"""

from __future__ import annotations

import json
import math
import os
import random
import sys

import click

from . import cyclo, evidence, relations, trig
from .errors import DomainError
from .trig import AngleQ

CURVATURE_LITERALS = {
    "-(acosh(1+sqrt2))^2": -(math.acosh(1.0 + math.sqrt(2.0)) ** 2),
    "pi^2/4": math.pi**2 / 4.0,
}


class Report:
    """Ordered check accumulator with the CLI's JSON schema."""

    def __init__(self, command: str):
        self.command = command
        self.checks: list[dict] = []

    def check(self, name: str, ok: bool, **details) -> bool:
        self.checks.append(
            {"check": name, "status": "pass" if ok else "fail", "details": details}
        )
        return ok

    def error(self, name: str, message: str, **details) -> None:
        details = {"message": message, **details}
        self.checks.append({"check": name, "status": "error", "details": details})

    @property
    def summary(self) -> dict:
        counts = {"passed": 0, "failed": 0, "errored": 0}
        for c in self.checks:
            key = {"pass": "passed", "fail": "failed", "error": "errored"}[c["status"]]
            counts[key] += 1
        return counts

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "checks": self.checks,
            "summary": self.summary,
        }

    def emit(self, as_json: bool) -> int:
        if as_json:
            click.echo(json.dumps(self.as_dict(), indent=2))
        else:
            for c in self.checks:
                details = " ".join(f"{k}={_fmt(v)}" for k, v in c["details"].items())
                click.echo(f"[{c['status'].upper():5s}] {c['check']}" + (f": {details}" if details else ""))
            s = self.summary
            click.echo(
                f"summary: {s['passed']} passed, {s['failed']} failed, {s['errored']} errored"
            )
        return 0 if self.summary["failed"] == 0 and self.summary["errored"] == 0 else 1


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    return str(value)


def _parse_angles(text: str, degrees: bool, expected: int) -> list[AngleQ]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != expected:
        raise click.UsageError(f"expected {expected} comma-separated angles, got {len(parts)}")
    try:
        if degrees:
            return [AngleQ.from_degrees(int(p)) for p in parts]
        return [AngleQ.parse(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"bad angle list {text!r}: {exc}") from exc


def _parse_curvature(text: str) -> float:
    key = text.strip().replace(" ", "").lower()
    if key in CURVATURE_LITERALS:
        return CURVATURE_LITERALS[key]
    try:
        value = float(text)
    except ValueError as exc:
        raise click.UsageError(
            f"bad curvature {text!r}: use a decimal or one of {sorted(CURVATURE_LITERALS)}"
        ) from exc
    if value == 0.0:
        raise click.UsageError("curvature must be nonzero")
    return value


@click.group()
@click.option(
    "--threads",
    type=int,
    default=None,
    help="Worker threads for parallel scans (default: all cores); output is identical for any value.",
)
@click.pass_context
def main(ctx, threads):
    """Exact and numeric verifications for rational-angled polygon trigonometry."""
    ctx.ensure_object(dict)
    ctx.obj["threads"] = threads if threads and threads > 0 else (os.cpu_count() or 1)


@main.group()
def verify():
    """Symbolic verification of the relation derivations."""


def _certificate_details(cert: relations.Certificate) -> dict:
    return {
        "verdict": cert.verdict,
        "leaders": [
            {"form": list(c.form.coeffs), "expected": c.expected, "matched": c.matched}
            for c in cert.leaders
        ],
        "dominance_ok": cert.dominance_ok,
        "tie_conditions": list(cert.tie_conditions),
    }


@verify.command("triangle-relation")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.option("--dump", type=click.Path(dir_okay=False), default=None, help="Write the relation terms to a file.")
def verify_triangle(as_json, dump):
    """Rebuild the two-leg relation and check its published structure."""
    report = Report("verify triangle-relation")
    rel = relations.build_triangle_relation()
    body = rel.body
    report.check("term-count", body.term_count() == 25, expected=25, got=body.term_count())
    leader = body.coeff_at(relations.TRIANGLE_LEADER_FORM)
    report.check(
        "leading-coefficient",
        leader == cooked_triangle_leader(),
        form=[3, 3],
        coefficient=leader.to_text(),
    )
    bounds = body.exponent_bounds()
    report.check(
        "exponent-bounds",
        all(bounds[s] == (-3, 3) for s in body.lengths),
        bounds={s: list(b) for s, b in bounds.items()},
    )
    dom = body.classify_dominance([relations.TRIANGLE_LEADER_FORM], [relations.TRIANGLE_LEADER_FORM])
    report.check(
        "dominance",
        dom.counts == (1, 24, 0),
        leaders=dom.counts[0],
        lower=dom.counts[1],
        violations=dom.counts[2],
    )
    report.check(
        "integrality",
        all(p.is_integral() for p in body.terms.values()),
        scale=rel.scale_applied,
    )
    cert = relations.check_certificate(rel, relations.triangle_leaders(), relations.triangle_nonzero_basis())
    report.check("certificate", cert.verdict == "certified", **_certificate_details(cert))
    if dump:
        with open(dump, "w") as fh:
            fh.write(body.dumps())
        report.check("dump", True, path=dump, lines=body.term_count())
    sys.exit(report.emit(as_json))


def cooked_triangle_leader():
    x, _, z = relations._triangle_vars()
    return (x - 1) * (z - 1) * (z - 1)


@verify.command("quad-relation")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.option("--dump", type=click.Path(dir_okay=False), default=None, help="Write the relation terms to a file.")
def verify_quad(as_json, dump):
    """Rebuild the four-side relation and check its published structure."""
    report = Report("verify quad-relation")
    rel = relations.build_quad_relation()
    body = rel.body
    report.check("term-count", body.term_count() == 1041, expected=1041, got=body.term_count())
    ok_leaders = True
    leader_details = []
    for spec in relations.quad_leaders():
        coeff = body.coeff_at(spec.form)
        matched = coeff.equals_product(spec.factors, spec.unit)
        ok_leaders = ok_leaders and matched
        leader_details.append({"form": list(spec.form.coeffs), "matched": matched})
    report.check("leading-coefficients", ok_leaders, leaders=leader_details)
    bounds = body.exponent_bounds()
    report.check(
        "exponent-bounds",
        all(-4 <= lo and hi <= 4 for lo, hi in bounds.values()),
        bounds={s: list(b) for s, b in bounds.items()},
    )
    dom = body.classify_dominance(relations.QUAD_LEADER_FORMS, relations.QUAD_LEADER_FORMS)
    report.check(
        "dominance",
        dom.counts == (3, 1038, 0),
        leaders=dom.counts[0],
        lower=dom.counts[1],
        violations=dom.counts[2],
    )
    report.check(
        "integrality",
        all(p.is_integral() for p in body.terms.values()),
        scale=rel.scale_applied,
    )
    cert = relations.check_certificate(rel, relations.quad_leaders(), relations.quad_nonzero_basis())
    report.check(
        "certificate",
        cert.verdict == "tie-conditional" and cert.tie_conditions == ("a+b=c+d",),
        **_certificate_details(cert),
    )
    if dump:
        with open(dump, "w") as fh:
            fh.write(body.dumps())
        report.check("dump", True, path=dump, lines=body.term_count())
    sys.exit(report.emit(as_json))


@verify.command("identities")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def verify_identities(as_json):
    """Check the intermediate identities used while eliminating the diagonal."""
    report = Report("verify identities")
    q1, q2 = relations.build_quad_quadratics()
    report.check("shared-linear-coefficient", relations.verify_shared_linear_coeff(q1, q2))
    top = (q1.A * 4).coeff_at((1, 1, 0, 0))
    w = relations._quad_vars()[0]
    report.check("first-quadratic-leading-term", top == 1 - w, coefficient=top.to_text())
    report.check("double-squaring-cancellation", relations.verify_double_squaring_identity((q1, q2)))
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--geometry", type=click.Choice(["hyperbolic", "spherical"]), default="hyperbolic")
@click.option("--angles", default=None, help="Three angles p/q (multiples of pi), comma separated.")
@click.option("--degrees", "degrees_list", default=None, help="Three integer angles in degrees.")
@click.option("--sas", default=None, help="side,angle,side with the angle as p/q of pi (hyperbolic only).")
@click.option("--curvature", default=None, help="Curvature value or literal '-(acosh(1+sqrt2))^2' / 'pi^2/4'.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def solve(geometry, angles, degrees_list, sas, curvature, as_json):
    """Solve a triangle from three angles or from side-angle-side data."""
    report = Report("solve")
    sources = [s for s in (angles, degrees_list, sas) if s]
    if len(sources) != 1:
        raise click.UsageError("give exactly one of --angles, --degrees, --sas")
    try:
        if sas is not None:
            parts = [p.strip() for p in sas.split(",")]
            if len(parts) != 3:
                raise click.UsageError("--sas needs side,angle,side")
            K = _parse_curvature(curvature) if curvature else -1.0
            sol = trig.solve_triangle_SAS(
                float(parts[0]), AngleQ.parse(parts[1]), float(parts[2]), K
            )
        else:
            trio = _parse_angles(angles or degrees_list, degrees_list is not None, 3)
            if geometry == "hyperbolic":
                K = _parse_curvature(curvature) if curvature else -1.0
                sol = trig.solve_hyperbolic_from_angles(*trio, K)
            else:
                K = _parse_curvature(curvature) if curvature else 1.0
                sol = trig.solve_spherical_from_angles(*trio, K)
        report.check(
            "solve",
            True,
            geometry=sol.geometry,
            curvature=K,
            angles=list(sol.angles),
            sides=list(sol.sides),
        )
    except DomainError as exc:
        report.error("solve", str(exc))
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--angles", default=None, help="Two angles p/q (multiples of pi), comma separated.")
@click.option("--degrees", "degrees_list", default=None, help="Two integer angles in degrees.")
@click.option("--curvature", default=None, help="Curvature value or literal (must be negative).")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def ideal(angles, degrees_list, curvature, as_json):
    """Finite side of a hyperbolic triangle with one ideal vertex."""
    report = Report("ideal")
    if bool(angles) == bool(degrees_list):
        raise click.UsageError("give exactly one of --angles, --degrees")
    duo = _parse_angles(angles or degrees_list, degrees_list is not None, 2)
    K = _parse_curvature(curvature) if curvature else -1.0
    try:
        side = trig.solve_ideal_vertex(duo[0], duo[1], K)
        report.check("ideal", True, curvature=K, side=side)
    except DomainError as exc:
        report.error("ideal", str(exc))
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--n", "sides_n", type=int, required=True, help="Number of sides (>= 3).")
@click.option("--angle", default=None, help="Interior angle p/q (multiple of pi).")
@click.option("--degrees", "degrees_one", type=int, default=None, help="Interior angle in degrees.")
@click.option("--curvature", default=None, help="Curvature value or literal (must be negative).")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def polygon(sides_n, angle, degrees_one, curvature, as_json):
    """Side, circumradius, and apothem of a regular hyperbolic polygon."""
    report = Report("polygon")
    if (angle is None) == (degrees_one is None):
        raise click.UsageError("give exactly one of --angle, --degrees")
    theta = AngleQ.parse(angle) if angle else AngleQ.from_degrees(degrees_one)
    K = _parse_curvature(curvature) if curvature else -1.0
    try:
        metrics = trig.regular_polygon_metrics(sides_n, theta, K)
        report.check(
            "polygon",
            True,
            n=sides_n,
            angle=str(theta),
            curvature=K,
            side=metrics.side,
            circumradius=metrics.circumradius,
            apothem=metrics.apothem,
        )
    except DomainError as exc:
        report.error("polygon", str(exc))
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--max-n", type=int, default=100, show_default=True, help="Upper bound for the degree-formula scan.")
@click.option("--totient-max", type=int, default=1_000_000, show_default=True, help="Upper bound for the totient inequality scan.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def degrees(max_n, totient_max, as_json):
    """Scan the cosine degree formula and the totient lower bound."""
    report = Report("degrees")
    scan = cyclo.scan_cos_degree_formula(max_n)
    report.check(
        "cos-degree-formula",
        scan.ok,
        max_n=scan.max_n,
        checked=scan.checked,
        violations=list(scan.violations),
    )
    bound = cyclo.scan_totient_bound(totient_max)
    report.check(
        "totient-bound",
        bound.ok,
        max_n=bound.max_n,
        violations=list(bound.violations),
    )
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--max-den", type=int, default=60, show_default=True, help="Largest angle denominator to enumerate.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def sigma1(max_den, as_json):
    """Enumerate rational-angled triangles with rational side ratios."""
    report = Report("sigma1")
    found = cyclo.scan_sigma1(max_den)
    triples = [[str(a) for a in triple] for triple in found]
    report.check(
        "rational-ratio-triples",
        triples == [["1/3", "1/3", "1/3"]],
        max_den=max_den,
        found=triples,
    )
    sys.exit(report.emit(as_json))


TABLE1_CLASSES = (
    (60, 60, 60), (45, 45, 90), (30, 60, 90), (15, 75, 90),
    (30, 30, 120), (30, 75, 75), (15, 15, 150), (30, 45, 105),
    (45, 60, 75), (15, 45, 120), (15, 60, 105), (15, 30, 135),
    (36, 36, 108), (36, 72, 72),
)


@main.command()
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def table1(as_json):
    """Degree <= 2 representatives for the fourteen similarity classes."""
    report = Report("table1")
    for degs in TABLE1_CLASSES:
        triple = tuple(AngleQ.from_degrees(d) for d in degs)
        rep = cyclo.find_deg2_representative(triple)
        name = "class-" + "-".join(str(d) for d in degs)
        if rep is None:
            report.check(name, False)
            continue
        report.check(
            name,
            all(d <= 2 for d in rep.degrees),
            degrees=list(rep.degrees),
            scaling=f"{rep.multiplier}/sin({rep.unit_angle})",
            minimal_polynomials=[p.to_text() for p in rep.minimal_polynomials],
        )
    negative = cyclo.find_deg2_representative(
        tuple(AngleQ.from_degrees(d) for d in (20, 60, 100))
    )
    report.check("class-20-60-100-absent", negative is None)

    sqrt2 = cyclo.cyc_trig(1, 4, "cos") * 2
    sqrt3 = cyclo.cyc_trig(1, 6, "cos") * 2
    golden = cyclo.cyc_trig(1, 5, "cos") * 2
    one = cyclo.CycNum.rational(1)
    ailles = cyclo.verify_euclidean_triangle((sqrt3 - one, sqrt3 + one, sqrt2 * 2))
    report.check(
        "ailles-reconstruction",
        [str(a) for a in ailles] == ["1/12", "5/12", "1/2"],
        angles=[str(a) for a in ailles],
    )
    golden_tri = cyclo.verify_euclidean_triangle((one, one, golden))
    report.check(
        "golden-reconstruction",
        [str(a) for a in golden_tri] == ["1/5", "1/5", "3/5"],
        angles=[str(a) for a in golden_tri],
    )
    sys.exit(report.emit(as_json))


@main.command(name="evidence")
@click.option("--constant", "constant_name", type=click.Choice(sorted(evidence.CONSTANT_REGISTRY)), default=None)
@click.option("--expr", default=None, help="Raw expression defining the constant.")
@click.option("--name", "expr_name", default="expr", show_default=True, help="Label for --expr constants.")
@click.option("--degree", "degree_bound", type=int, default=3, show_default=True)
@click.option("--height", type=int, default=20, show_default=True)
@click.option("--precision", type=int, default=evidence.DEFAULT_PRECISION_DIGITS, show_default=True, help="Decimal digits for the constant.")
@click.option("--budget", type=int, default=evidence.DEFAULT_BUDGET, show_default=True, help="Largest candidate count allowed.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.pass_context
def evidence_cmd(ctx, constant_name, expr, expr_name, degree_bound, height, precision, budget, as_json):
    """Exhaustive bounded scan for integer polynomial relations at a constant."""
    report = Report("evidence")
    if (constant_name is None) == (expr is None):
        raise click.UsageError("give exactly one of --constant, --expr")
    if constant_name:
        spec = evidence.registry_spec(constant_name, precision)
    else:
        spec = evidence.ConstantSpec(expr_name, expr, precision)
    try:
        result = evidence.scan_algebraicity(
            spec, degree_bound, height, budget=budget, threads=ctx.obj["threads"]
        )
    except (ValueError, DomainError) as exc:
        if isinstance(exc, DomainError):
            report.error("scan", str(exc))
            sys.exit(report.emit(as_json))
        raise click.UsageError(str(exc)) from exc
    report.check(
        "scan",
        True,
        constant=result.constant,
        definition=spec.definition,
        degree_bound=result.degree_bound,
        height_bound=result.height_bound,
        candidates=result.candidates,
        minimum=result.minimum,
        argmin=result.argmin_text,
        error_bound=result.error_bound,
        certified=result.certified,
        algebraic_at_bounds=result.algebraic_at_bounds,
    )
    sys.exit(report.emit(as_json))


@main.command()
@click.option("--triangles", type=int, default=1000, show_default=True)
@click.option("--quads", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tri-tol", type=float, default=1e-8, show_default=True)
@click.option("--quad-tol", type=float, default=1e-6, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
def oracle(triangles, quads, seed, tri_tol, quad_tol, as_json):
    """Evaluate both relations on random geometric samples."""
    report = Report("oracle")
    tri_rel = relations.build_triangle_relation()
    quad_rel = relations.build_quad_relation()
    rng = random.Random(seed)
    worst_tri = 0.0
    for _ in range(triangles):
        sample = trig.sample_triangle(rng)
        worst_tri = max(worst_tri, abs(relations.relative_residual(tri_rel, sample)))
    report.check(
        "triangle-residuals",
        worst_tri < tri_tol,
        samples=triangles,
        seed=seed,
        max_relative_residual=worst_tri,
        tolerance=tri_tol,
    )
    worst_quad = 0.0
    for _ in range(quads):
        sample = trig.sample_quadrilateral(rng)
        worst_quad = max(worst_quad, abs(relations.relative_residual(quad_rel, sample)))
    report.check(
        "quad-residuals",
        worst_quad < quad_tol,
        samples=quads,
        seed=seed,
        max_relative_residual=worst_quad,
        tolerance=quad_tol,
    )
    sys.exit(report.emit(as_json))


if __name__ == "__main__":
    main()
