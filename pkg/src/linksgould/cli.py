"""Command-line front end.

Exit codes: 0 ok, 1 check failure, 2 input error, 3 scalar violation,
4 unsupported, 5 self-test failure.
"""

from __future__ import annotations

import json
import sys
from functools import wraps

import click

from . import alexander as alex
from . import braid as braidmod
from . import families, lgcore, verify
from .errors import (
    BraidSyntaxError,
    ConventionError,
    FamilySpecError,
    IndexOutOfRange,
    LinksGouldError,
    NotAKnot,
    PolynomialSyntaxError,
    ScalarViolation,
    TableParseError,
    Unsupported,
    ZeroPolynomial,
)
from .poly2 import ONE, T0, T1, Laurent2, Rat2, specialize

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_SCALAR, EXIT_UNSUPPORTED, EXIT_SELFTEST = range(6)

_INPUT_ERRORS = (BraidSyntaxError, PolynomialSyntaxError, FamilySpecError, IndexOutOfRange,
                 TableParseError, NotAKnot, ZeroPolynomial, FileNotFoundError, IsADirectoryError)


def _emit(ctx: click.Context, payload: dict, lines: list[str]) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def _guard(fn):
    """Map library errors onto the exit-code contract."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return fn(*args, **kwargs)
        except ScalarViolation as exc:
            click.echo(f"scalar violation: {exc}", err=True)
            ctx.exit(EXIT_SCALAR)
        except Unsupported as exc:
            click.echo(f"unsupported: {exc}", err=True)
            ctx.exit(EXIT_UNSUPPORTED)
        except _INPUT_ERRORS as exc:
            click.echo(f"input error: {exc}", err=True)
            ctx.exit(EXIT_INPUT)
        except ConventionError as exc:
            click.echo(f"R-matrix error: {exc}", err=True)
            ctx.exit(EXIT_SELFTEST)
        except LinksGouldError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            ctx.exit(EXIT_CHECK)

    return wrapper


def _parse_braid(text: str) -> braidmod.BraidWord:
    return braidmod.parse(text)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True, help="Output format.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
              help="Processes for the LG state sum.")
@click.option("--verify-scalar", is_flag=True,
              help="Compute the whole partial trace and check it is scalar.")
@click.version_option(package_name="artifact")
@click.pass_context
def main(ctx: click.Context, fmt: str, workers: int, verify_scalar: bool) -> None:
    """Links-Gould invariant, Alexander polynomial and conjecture checks for braid closures."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, workers=workers, verify_scalar=verify_scalar)


def _lg(ctx, b):
    return lgcore.lg_invariant(b, verify_scalar=ctx.obj["verify_scalar"], workers=ctx.obj["workers"])


@main.command()
@click.argument("braid")
@click.option("--specializations", "-s", is_flag=True,
              help="Also print the antidiagonal/diagonal specializations and the Alexander polynomial.")
@click.pass_context
@_guard
def lg(ctx: click.Context, braid: str, specializations: bool) -> None:
    """LG of the closure of BRAID, given as "n: g1 g2 ..."."""
    b = _parse_braid(braid)
    value = _lg(ctx, b)
    span = None if value.is_zero() else value.span()
    payload = {"braid": str(b), "lg": str(value), "span": span,
               "components": braidmod.components(b)}
    lines = [f"LG = {value}", f"span = {span if span is not None else 'undefined (LG = 0)'}"]
    if specializations:
        delta = alex.alexander_closure(b)
        anti, diag = specialize(value, "antidiag"), specialize(value, "diag")
        payload.update(antidiag=str(anti), diag=str(diag), alexander=str(delta),
                       antidiag_matches=alex.match_up_to_unit(anti, delta.substitute_power(2)) is not None,
                       diag_matches=alex.match_up_to_unit(diag, delta * delta) is not None)
        lines += [f"LG(t, -1/t) = {anti}", f"LG(t, 1/t) = {diag}", f"Alexander = {delta}"]
    _emit(ctx, payload, lines)


@main.command()
@click.argument("braid")
@click.pass_context
@_guard
def alexander(ctx: click.Context, braid: str) -> None:
    """Conway-normalized Alexander polynomial of the closure of BRAID."""
    b = _parse_braid(braid)
    delta = alex.alexander_closure(b)
    br = None if delta.is_zero() else alex.breadth(delta)
    _emit(ctx, {"braid": str(b), "alexander": str(delta), "breadth": br},
          [f"Alexander = {delta}", f"breadth = {br if br is not None else 'undefined'}"])


@main.command()
@click.argument("text")
@click.pass_context
@_guard
def span(ctx: click.Context, text: str) -> None:
    """Span of a polynomial in t0, t1, or of LG for a braid or family spec."""
    s = text.strip()
    if s.startswith(("twist:", "2bridge:", "pretzel:")):
        value = families.lg_family(s)
    elif ":" in s:
        value = _lg(ctx, _parse_braid(s))
    else:
        value = Laurent2.parse(s)
    if value.is_zero():
        raise ZeroPolynomial("span of the zero polynomial is undefined")
    _emit(ctx, {"input": s, "span": value.span()}, [str(value.span())])


@main.command()
@click.argument("spec")
@click.pass_context
@_guard
def family(ctx: click.Context, spec: str) -> None:
    """LG for a family member: twist:n, 2bridge:b1,...,bm or pretzel:p,q,r."""
    fs = families.parse_family(spec)
    value = families.lg_family(fs)
    g, mu = families.family_genus(fs)
    sp = value.span()
    payload = {"spec": str(fs), "lg": str(value), "span": sp, "genus": g, "components": mu,
               "bound": 2 * (2 * g + mu - 1)}
    if fs.kind == "pretzel":
        normal, steps = families.pretzel_normal_form(fs.code)
        payload["normal_form"] = str(normal)
        payload["normalization"] = list(steps)
    _emit(ctx, payload, [f"LG = {value}", f"span = {sp}", f"g = {g}, mu = {mu}"])


@main.command()
@click.argument("table", required=False, type=click.Path(dir_okay=False))
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--checks", default=None,
              help="Comma-separated checks (default: all but 'identities'); 'all' enables every check.")
@click.pass_context
@_guard
def check(ctx: click.Context, table: str | None, output: str | None, checks: str | None) -> None:
    """Run the conjecture harness on TABLE (default: the bundled golden table)."""
    path = table or verify.golden_table_path()
    if checks is None:
        selected = verify.DEFAULT_CHECKS
    elif checks.strip() == "all":
        selected = verify.ALL_CHECKS
    else:
        selected = {c.strip() for c in checks.split(",") if c.strip()}
        unknown = selected - verify.ALL_CHECKS
        if unknown:
            raise click.BadParameter(f"unknown check(s): {', '.join(sorted(unknown))}", param_hint="--checks")
    report = verify.run_table(path, selected, output, workers=ctx.obj["workers"])
    if ctx.obj["format"] == "json":
        click.echo(report.to_json(), nl=False)
    else:
        for rec in report.records:
            statuses = ", ".join(f"{k}={v['status']}" for k, v in rec["checks"].items())
            click.echo(f"{rec['name']}: span={rec.get('span')} {statuses}")
        click.echo(f"summary: {json.dumps(report.summary, sort_keys=True)}; hard failures: {report.hard_failures}")
    if not report.ok:
        ctx.exit(EXIT_CHECK)


def _selftest_results(rmatrix: str | None) -> dict[str, bool]:
    results: dict[str, bool] = {}
    if rmatrix is None:
        data = lgcore.load_rmatrix()
        results.update(data.checks)
    else:
        # run the identities on a user table without convention fixes
        raw, _ = lgcore._read_table(rmatrix)
        r_pos, mu = lgcore._parse_table(raw)
        try:
            r_neg = lgcore._invert(r_pos)
        except ConventionError:
            r_neg = None
        results.update(lgcore.identity_report(r_pos, r_neg, mu))
        if not all(results.values()):
            return results
        data = lgcore.load_rmatrix(rmatrix)
    results["markov_property"] = bool(lgcore.markov_property_check(data))
    coeffs = {n: families.half_twist_coeffs(n) for n in range(-3, 10)}
    results["half_twist_recurrence"] = all(
        coeffs[n + 3][k] == Rat2(T0 + T1 - 1) * coeffs[n + 2][k]
        + Rat2(T0 + T1 - T0 * T1) * coeffs[n + 1][k] - Rat2(T0 * T1) * coeffs[n][k]
        for n in range(-3, 7) for k in range(3)
    )
    results["unknot"] = lgcore.lg_invariant(braidmod.parse("2: 1"), data=data) == ONE
    trefoil = lgcore.lg_invariant(braidmod.parse("2: -1 -1 -1"), verify_scalar=True, data=data)
    results["trefoil_matches_twist_family"] = trefoil == families.lg_twist(1)
    return results


@main.command()
@click.option("--rmatrix", type=click.Path(dir_okay=False, exists=True), hidden=True,
              help="Check an alternative R-matrix table.")
@click.option("--json", "as_json", is_flag=True, help="Structured result (same as --format json).")
@click.pass_context
def selftest(ctx: click.Context, rmatrix: str | None, as_json: bool) -> None:
    """Check the R-matrix identities and the skein coefficient recurrences."""
    try:
        results = _selftest_results(rmatrix)
    except (LinksGouldError, ValueError, KeyError) as exc:
        click.echo(f"selftest error: {type(exc).__name__}: {exc}", err=True)
        ctx.exit(EXIT_SELFTEST)
    ok = all(results.values())
    if as_json or ctx.obj["format"] == "json":
        click.echo(json.dumps({"ok": ok, "identities": results}, indent=2, sort_keys=True))
    else:
        for name, passed in results.items():
            click.echo(f"{'PASS' if passed else 'FAIL'} {name}")
    if not ok:
        failed = ", ".join(k for k, v in results.items() if not v)
        click.echo(f"violated: {failed}", err=True)
        ctx.exit(EXIT_SELFTEST)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
