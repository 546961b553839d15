"""Command-line front end.

Usage:
    corrcopula eval --rho -1 --a 0.1 --b 0.1
    corrcopula density --rho 0.5 --a 0.25 --b 0.25
    corrcopula boundary --rho -0.5 --n 11 --csv
    corrcopula verify --rhos -1:1:0.05 --grid 200 --json
    corrcopula sample --rho 0.5 --count 1000 --seed 7
    corrcopula envelope --a 0.1,0.2 --b 0.3,0.4 --rho 0,0
    corrcopula table --rho 0.5 --n 11

Exit codes: 0 success, 1 verification found violations, 2 bad flags or
domain errors.  JSON numbers carry 17 significant digits, human output 10.
"""

from __future__ import annotations

import csv
import io
import math
import sys

import click
import numpy as np

from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    InvariantError,
    RegionError,
    UnitPoint,
    classify_region,
    copula_eval,
    copula_eval_array,
    mixed_density,
    partial_a,
    raw_and,
)
from corrcopula.envelope import ProbInterval, RhoInterval, and_envelope, parse_interval
from corrcopula.geometry import boundary_table
from corrcopula.sampler import SampleConfig, joint_table, sample_pairs
from corrcopula.verify import DEFAULT_TOLERANCE, parse_sweep, subdivide_and_check, verify_grid

__all__ = ["cli", "main", "to_json"]


def _num(x: float, digits: int) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} in output")
    text = f"{x:.{digits}g}"
    return "0" if text == "-0" else text


def to_json(obj, digits: int = 17) -> str:
    """Compact JSON with floats printed to ``digits`` significant digits."""
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj), digits)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v, digits)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v, digits) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _copula(rho: float) -> CorrelationCopula:
    try:
        return CorrelationCopula(rho)
    except DomainError as exc:
        raise click.BadParameter(str(exc), param_hint="'--rho'") from None


def _point(a: float, b: float) -> UnitPoint:
    for flag, value in (("--a", a), ("--b", b)):
        if not 0.0 <= value <= 1.0:
            raise click.BadParameter(f"must lie in [0, 1], got {value}", param_hint=f"'{flag}'")
    return UnitPoint(a, b)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Correlation-based and-operation: evaluation, geometry, certification."""


@cli.command("eval")
@click.option("--rho", type=float, required=True, help="Correlation in [-1, 1].")
@click.option("--a", "a", type=float, required=True, help="Probability of A.")
@click.option("--b", "b", type=float, required=True, help="Probability of B.")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON document.")
@click.option("--joint", is_flag=True, help="Also report the 2x2 joint event table.")
def cmd_eval(rho: float, a: float, b: float, as_json: bool, joint: bool) -> None:
    """Evaluate f_rho(a, b), its raw estimate and the active region."""
    c, p = _copula(rho), _point(a, b)
    doc = {
        "rho": c.rho,
        "a": p.a,
        "b": p.b,
        "value": copula_eval(c, p),
        "raw": raw_and(c, p),
        "region": str(classify_region(c, p)),
    }
    if joint:
        doc["joint"] = joint_table(c, p).to_dict()
    if as_json:
        click.echo(to_json(doc))
        return
    for key in ("value", "raw"):
        click.echo(f"{key}\t{_num(doc[key], 10)}")
    click.echo(f"region\t{doc['region']}")
    if joint:
        for key, value in doc["joint"].items():
            click.echo(f"{key}\t{_num(value, 10)}")


@cli.command("density")
@click.option("--rho", type=float, required=True)
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, required=True)
@click.option("--json", "as_json", is_flag=True)
def cmd_density(rho: float, a: float, b: float, as_json: bool) -> None:
    """Closed-form partial derivative and density at an Interior point."""
    c, p = _copula(rho), _point(a, b)
    try:
        doc = {"partial_a": partial_a(c, p), "mixed_density": mixed_density(c, p)}
    except (DomainError, RegionError) as exc:
        raise click.UsageError(str(exc)) from None
    except InvariantError as exc:  # pragma: no cover - would contradict the copula property
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(to_json(doc))
    else:
        for key, value in doc.items():
            click.echo(f"{key}\t{_num(value, 10)}")


@cli.command("boundary")
@click.option("--rho", type=float, required=True)
@click.option("--n", "n", type=int, default=11, show_default=True, help="Number of a-values.")
@click.option("--a-min", type=float, default=0.0, show_default=True)
@click.option("--a-max", type=float, default=1.0, show_default=True)
@click.option("--csv", "as_csv", is_flag=True, help="Emit CSV with header a,b,curve.")
def cmd_boundary(rho: float, n: int, a_min: float, a_max: float, as_csv: bool) -> None:
    """Trace the curves separating the Interior from the clamped regions."""
    c = _copula(rho)
    if n < 2:
        raise click.BadParameter(f"must be at least 2, got {n}", param_hint="'--n'")
    if not 0.0 <= a_min <= a_max <= 1.0:
        raise click.BadParameter("need 0 <= a-min <= a-max <= 1", param_hint="'--a-min/--a-max'")
    if c.rho == 0.0:
        raise click.UsageError("rho = 0 has no boundary: the Interior covers the whole square")
    rows = boundary_table(c, n, a_min, a_max)
    if as_csv:
        click.echo(_csv_text(["a", "b", "curve"], [(_num(a, 17), _num(b, 17), k) for a, b, k in rows]), nl=False)
    else:
        for a, b, k in rows:
            click.echo(f"{_num(a, 10):>14} {_num(b, 10):>14}  {k}")


@cli.command("verify")
@click.option("--rhos", default="-1:1:0.05", show_default=True, help="lo:hi:step or comma list.")
@click.option("--grid", "grid_n", type=int, default=200, show_default=True, help="Cells per axis.")
@click.option("--tolerance", type=float, default=DEFAULT_TOLERANCE, show_default=True)
@click.option("--depth", type=int, default=8, show_default=True, help="Subdivision depth for flagged cells.")
@click.option("--json", "as_json", is_flag=True)
def cmd_verify(rhos: str, grid_n: int, tolerance: float, depth: int, as_json: bool) -> None:
    """Certify non-negative rectangle volumes on a grid, refining flagged cells."""
    try:
        rho_values = parse_sweep(rhos)
    except (DomainError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint="'--rhos'") from None
    for r in rho_values:
        _copula(r)
    if grid_n < 2:
        raise click.BadParameter(f"must be at least 2, got {grid_n}", param_hint="'--grid'")
    if tolerance < 0:
        raise click.BadParameter(f"must be non-negative, got {tolerance}", param_hint="'--tolerance'")
    if depth < 0:
        raise click.BadParameter(f"must be non-negative, got {depth}", param_hint="'--depth'")

    report = verify_grid(rho_values, grid_n, tolerance)
    # the grid report does not record which rho flagged a cell, so refine under each
    for cell, _ in report.violations:
        for r in rho_values:
            sub = subdivide_and_check(CorrelationCopula(r), cell, depth, tolerance)
            click.echo(
                f"refine rho={_num(r, 10)} cell={to_json(cell.to_dict(), 10)} "
                f"min_leaf={_num(sub.min_volume, 10)} leaves={sub.leaves} "
                f"violations={len(sub.violations)}",
                err=True,
            )
    if as_json:
        click.echo(to_json(report.to_dict()))
    else:
        click.echo(f"rho values\t{len(report.rho_values)}")
        click.echo(f"grid\t{report.grid_n}x{report.grid_n}")
        click.echo(f"min volume\t{_num(report.min_volume, 10)}")
        click.echo(f"worst cell\t{to_json(report.worst_cell.to_dict(), 10)}")
        click.echo(f"violations\t{len(report.violations)}")
    sys.exit(0 if report.ok else 1)


@cli.command("sample")
@click.option("--rho", type=float, required=True)
@click.option("--count", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--start", type=int, default=0, show_default=True, help="Index of the first pair.")
def cmd_sample(rho: float, count: int, seed: int, start: int) -> None:
    """Stream dependent uniform pairs as CSV with header u,v."""
    c = _copula(rho)
    if count < 1:
        raise click.BadParameter(f"must be at least 1, got {count}", param_hint="'--count'")
    if start < 0:
        raise click.BadParameter(f"must be non-negative, got {start}", param_hint="'--start'")
    pairs = sample_pairs(c, SampleConfig(seed, count), start)
    click.echo(_csv_text(["u", "v"], [(_num(u, 17), _num(v, 17)) for u, v in pairs]), nl=False)


@cli.command("envelope")
@click.option("--a", "a", required=True, help="Interval lo,hi for Prob(A).")
@click.option("--b", "b", required=True, help="Interval lo,hi for Prob(B).")
@click.option("--rho", default="-1,1", show_default=True, help="Interval lo,hi for rho.")
@click.option("--json", "as_json", is_flag=True)
def cmd_envelope(a: str, b: str, rho: str, as_json: bool) -> None:
    """Bounds on Prob(A & B) for interval-valued inputs."""
    parsed = {}
    for flag, text, cls in (("--a", a, ProbInterval), ("--b", b, ProbInterval), ("--rho", rho, RhoInterval)):
        try:
            parsed[flag] = parse_interval(text, cls)
        except (DomainError, ValueError) as exc:
            raise click.BadParameter(str(exc), param_hint=f"'{flag}'") from None
    env = and_envelope(parsed["--a"], parsed["--b"], parsed["--rho"])
    if as_json:
        click.echo(to_json(env.to_dict()))
    else:
        click.echo(f"[{_num(env.lo, 10)}, {_num(env.hi, 10)}]")


@cli.command("table")
@click.option("--rho", type=float, required=True)
@click.option("--n", "n", type=int, default=11, show_default=True, help="Grid points per axis.")
def cmd_table(rho: float, n: int) -> None:
    """n x n CSV of copula values; rows are a, columns are b."""
    c = _copula(rho)
    if n < 2:
        raise click.BadParameter(f"must be at least 2, got {n}", param_hint="'--n'")
    grid = np.linspace(0.0, 1.0, n)
    values = copula_eval_array(c.rho, grid[:, None], grid[None, :])
    header = ["a\\b"] + [_num(x, 17) for x in grid]
    rows = [[_num(a, 17)] + [_num(v, 17) for v in row] for a, row in zip(grid, values)]
    click.echo(_csv_text(header, rows), nl=False)


def main(argv: list[str] | None = None) -> None:
    cli.main(args=argv, prog_name="corrcopula")


if __name__ == "__main__":  # pragma: no cover
    main()
