"""Command line entry point: one subcommand per verification.

Exit status: 0 all checks pass, 1 a check failed, 2 a Groebner budget was
exhausted (partial report), 3 usage error.
"""

from __future__ import annotations

import ast
import math
import operator
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click

from .algebra import parse_scalar, rational
from .classifier import (
    FamilySyntaxError,
    InadmissibleFamily,
    OneParamFamily,
    classification_report,
    cusp_family,
    tseries_family,
)
from .deformation import base_change_identity, verify_discriminant, verify_w0_invariance
from .example import (
    DEFAULT_T,
    DEFAULT_W,
    FIGURE_RESOLUTION,
    FIGURE_T,
    FIGURE_WINDOW,
    ExampleParams,
    boundary_limit_check,
    certify_one_singular_point,
    figure_report,
)
from .groebner import DEFAULT_BUDGET, BudgetExceeded
from .report import FAIL, PARTIAL, VerificationReport
from .resolution import (
    minor_relations,
    pagoda_coordinate_change,
    verify_chart_smoothness,
    verify_charts,
    verify_exceptional_fibers,
    verify_original_chart,
)

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"sqrt": math.sqrt, "cbrt": lambda v: math.copysign(abs(v) ** (1 / 3), v)}


def parse_real(text: str) -> float:
    """A real number: decimal, p/q, or an arithmetic expression such as
    ``(1/2)^(1/3)`` or ``cbrt(1/2)``."""
    try:
        node = ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"not a real number: {text!r}") from exc

    def ev(n):
        if isinstance(n, ast.Constant) and isinstance(n.value, (int, float)):
            return n.value
        if isinstance(n, ast.BinOp) and type(n.op) in _OPS:
            return _OPS[type(n.op)](ev(n.left), ev(n.right))
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, (ast.USub, ast.UAdd)):
            v = ev(n.operand)
            return -v if isinstance(n.op, ast.USub) else v
        if isinstance(n, ast.Call) and isinstance(n.func, ast.Name) and n.func.id in _FUNCS and len(n.args) == 1:
            return _FUNCS[n.func.id](ev(n.args[0]))
        raise ValueError(f"not a real number: {text!r}")

    value = float(ev(node))
    if not math.isfinite(value):
        raise ValueError(f"not a finite real number: {text!r}")
    return value


def parse_t_list(text: str) -> List[float]:
    return [parse_real(part) for part in _split(text)]


def _split(text: str) -> List[str]:
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _exact_t(text: str):
    """Rational t-values stay exact (for the exact sphere checks)."""
    from fractions import Fraction

    out = []
    for part in _split(text):
        try:
            q = rational(part) if "." not in part else Fraction(part)
            out.append(Fraction(int(q.numerator), int(q.denominator)))
        except (TypeError, ValueError):
            out.append(parse_real(part))
    return out


class _Reals(click.ParamType):
    name = "reals"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return value
        try:
            return parse_t_list(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class _Rational(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        try:
            return rational(value) if not isinstance(value, str) else rational(value.strip())
        except (TypeError, ValueError):
            self.fail(f"not a rational number: {value!r}", param, ctx)


class _Window(click.ParamType):
    name = "window"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            vals = [parse_real(v) for v in _split(value)]
        except ValueError as exc:
            self.fail(str(exc), param, ctx)
        if len(vals) == 1:
            vals = [-abs(vals[0]), abs(vals[0]), -abs(vals[0]), abs(vals[0])]
        if len(vals) != 4 or vals[0] >= vals[1] or vals[2] >= vals[3]:
            self.fail("expected L or ymin,ymax,zmin,zmax", param, ctx)
        return tuple(vals)


def exit_code(reports: Sequence[VerificationReport]) -> int:
    statuses = [r.status for r in reports]
    if FAIL in statuses:
        return EXIT_FAIL
    if PARTIAL in statuses:
        return EXIT_BUDGET
    return EXIT_PASS


def _finish(ctx: click.Context, name: str, reports: List[VerificationReport]) -> int:
    obj = ctx.obj
    combined = VerificationReport(name, seed=obj["seed"], budget=obj["budget"])
    for r in reports:
        combined.extend(r, r.name)
    path = combined.write(Path(obj["out_dir"]) / f"report-{name}.json")
    if not obj["quiet"]:
        for line in combined.summary_lines():
            click.echo(line)
        for note in combined.notes:
            click.echo(f"  note: {note}")
    click.echo(f"{name}: {combined.status} ({path})")
    return exit_code(reports)


def _run(ctx: click.Context, name: str, jobs: Sequence[Callable[[], VerificationReport]]) -> int:
    reports = []
    for job in jobs:
        try:
            reports.append(job())
        except BudgetExceeded as exc:
            rep = VerificationReport(getattr(job, "__name__", name))
            rep.add("budget", "Groebner computation within budget", PARTIAL, error=str(exc))
            reports.append(rep)
    return _finish(ctx, name, reports)


@click.group()
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
              help="S-pair budget for each Groebner basis.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized checks.")
@click.option("--out-dir", type=click.Path(file_okay=False), default="reports", show_default=True)
@click.option("--quiet", is_flag=True, help="Only print the final status line.")
@click.pass_context
def cli(ctx, budget, seed, out_dir, quiet):
    """Exact verification of the cD4 small-resolution constructions."""
    ctx.obj = {"budget": budget, "seed": seed, "out_dir": out_dir, "quiet": quiet}


def _versal() -> List[Callable[[], VerificationReport]]:
    return [base_change_identity, verify_w0_invariance]


@cli.command("versal-identity")
@click.pass_context
def versal_identity(ctx):
    """Base change of the versal family and W0-invariance."""
    return _run(ctx, "versal-identity", _versal())


def _discriminant(ctx) -> List[Callable[[], VerificationReport]]:
    o = ctx.obj
    return [lambda: verify_discriminant(o["budget"], o["seed"])]


@cli.command()
@click.pass_context
def discriminant(ctx):
    """Discriminant components and their two-way radical certificates."""
    return _run(ctx, "discriminant", _discriminant(ctx))


def _resolution(ctx) -> List[Callable[[], VerificationReport]]:
    b = ctx.obj["budget"]
    return [pagoda_coordinate_change, lambda: minor_relations(b), lambda: verify_charts(b),
            verify_original_chart, verify_exceptional_fibers]


@cli.command()
@click.pass_context
def resolution(ctx):
    """Determinantal small resolution: minors, syzygies, charts, fibres."""
    return _run(ctx, "resolution", _resolution(ctx))


def _charts(ctx, ks=(1, 2, 3)) -> List[Callable[[], VerificationReport]]:
    b = ctx.obj["budget"]
    return [lambda: verify_chart_smoothness(b, ks)]


@cli.command()
@click.option("--k", "ks", type=int, multiple=True, help="T-series exponents k (default 1, 2, 3).")
@click.pass_context
def charts(ctx, ks):
    """Smoothness of the chart equations (unit Jacobian ideals)."""
    return _run(ctx, "charts", _charts(ctx, tuple(ks) or (1, 2, 3)))


def default_families() -> List[OneParamFamily]:
    fams = [tseries_family(k) for k in (1, 2, 3)]
    fams += [cusp_family(q) for q in (1, 2, 3)]
    fams += [cusp_family(q, r) for q, r in ((2, 1), (3, 1), (3, 2), (4, 1))]
    return fams


def _classify(ctx, families: Sequence[OneParamFamily]) -> List[Callable[[], VerificationReport]]:
    b = ctx.obj["budget"]

    def job(f: OneParamFamily) -> VerificationReport:
        rep = classification_report(f, b)
        rep.name = f"classify[{f.to_text()}]"
        return rep

    return [(lambda f=f: job(f)) for f in families]


@cli.command()
@click.option("--family", "family", default=None,
              help='One-parameter family, e.g. "b1=-2t,b2=0,b4=t,g3=i*t^2".')
@click.pass_context
def classify(ctx, family):
    """Singularity type of a one-parameter smoothing (default: the built-in suite)."""
    if family is None:
        fams = default_families()
    else:
        try:
            fams = [OneParamFamily.parse(family)]
        except (FamilySyntaxError, InadmissibleFamily) as exc:
            raise click.BadParameter(str(exc), param_hint="--family")
    return _run(ctx, "classify", _classify(ctx, fams))


def _params(k, m, eps) -> ExampleParams:
    try:
        return ExampleParams(k, m, eps)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@cli.command("example-singularities")
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--m", type=int, default=6, show_default=True)
@click.option("--eps", type=_Rational(), default="1", show_default=True)
@click.pass_context
def example_singularities(ctx, k, m, eps):
    """Singular locus of h = f + eps t^(2m)."""
    p = _params(k, m, eps)
    return _run(ctx, "example-singularities", [lambda: certify_one_singular_point(p, ctx.obj["budget"])])


def _figures(ctx, p, ts, window, resolution_) -> List[Callable[[], VerificationReport]]:
    return [lambda: figure_report(p, ts, window, resolution_, ctx.obj["out_dir"])]


@cli.command()
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--m", type=int, default=6, show_default=True)
@click.option("--eps", type=_Rational(), default="1", show_default=True)
@click.option("--t", "ts", type=_Reals(), default=None,
              help="Comma list, e.g. 2/3,cbrt(1/2),0.95 (default: the five figure values).")
@click.option("--window", type=_Window(), default=None, help="L or ymin,ymax,zmin,zmax.")
@click.option("--resolution", "resolution_", type=click.IntRange(min=32), default=FIGURE_RESOLUTION,
              show_default=True)
@click.pass_context
def figures(ctx, k, m, eps, ts, window, resolution_):
    """Real curves h(0, y, z, t) = 0 as SVG, with oval and singular-point checks."""
    p = _params(k, m, eps)
    return _run(ctx, "figures", _figures(ctx, p, ts or FIGURE_T, window or FIGURE_WINDOW, resolution_))


@cli.command("boundary-limit")
@click.option("--k", type=int, default=2, show_default=True)
@click.option("--t", "ts", default=None, help="Decreasing comma list (default 1/10,1/100,1/1000,1/10000).")
@click.option("--w", "ws", default=None, help='Comma list of Gaussian rationals, e.g. "2,i,1+i,-1/2+1/3*i".')
@click.option("--tol", type=float, default=1e-3, show_default=True)
@click.option("--with-h", "with_h", is_flag=True, help="Also report h - f along the samples (m = 3k, eps = 1).")
@click.pass_context
def boundary_limit(ctx, k, ts, ws, tol, with_h):
    """S -> 0 and P -> (1/w - w)/2 on V(f) as t -> 0."""
    try:
        t_vals = _exact_t(ts) if ts else DEFAULT_T
        w_vals = [parse_scalar(w) for w in _split(ws)] if ws else DEFAULT_W
    except ValueError as exc:
        raise click.UsageError(str(exc))
    hp = ExampleParams(k, max(3 * k, k + 2), 1) if with_h else None

    def job():
        try:
            return boundary_limit_check(k, w_vals, t_vals, tol, hp)
        except ValueError as exc:
            raise click.UsageError(str(exc))

    return _run(ctx, "boundary-limit", [job])


@cli.command("all")
@click.pass_context
def run_all(ctx):
    """Every verification with default parameters."""
    p = ExampleParams.figures()
    jobs = (_versal() + _discriminant(ctx) + _resolution(ctx) + _charts(ctx)
            + _classify(ctx, default_families())
            + [lambda: certify_one_singular_point(p, ctx.obj["budget"])]
            + _figures(ctx, p, FIGURE_T, FIGURE_WINDOW, FIGURE_RESOLUTION)
            + [lambda: boundary_limit_check(2, DEFAULT_W, DEFAULT_T)])
    return _run(ctx, "all", jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name="smallres",
                        standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except BudgetExceeded as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        return EXIT_BUDGET
    if isinstance(code, int):
        return code
    return EXIT_PASS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
