"""Numerical 2-increasing certification.

A function on the unit square is 2-increasing when every rectangle gets a
non-negative C-volume.  Volumes are additive over any partition of a
rectangle, so a non-negative volume on every cell of a partition certifies
the union.  Two strategies are provided:

* :func:`verify_grid` sweeps a uniform ``n x n`` partition, evaluating the
  copula once per grid node and differencing.
* :func:`subdivide_and_check` quadrisects a rectangle wherever its corners
  fall in different regions of the piecewise definition, so that leaves
  either sit inside one branch or are as small as ``max_depth`` allows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    Rect,
    UnitPoint,
    classify_region,
    copula_eval,
    copula_eval_array,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "SCHEMA_VERSION",
    "VolumeReport",
    "c_volume",
    "additivity_check",
    "grid_volumes",
    "verify_grid",
    "subdivide_and_check",
    "parse_sweep",
]

DEFAULT_TOLERANCE = 1e-12
SCHEMA_VERSION = 1


@dataclass
class VolumeReport:
    """Outcome of a volume sweep.

    ``violations`` holds ``(cell, volume)`` for every checked cell whose
    volume is below ``-tolerance``, sorted by cell coordinates.  The
    subdivision-only counters (``splits``, ``leaves``, ``depth_exhausted``)
    are kept in memory and are not part of the JSON document.
    """

    rho_values: list[float]
    grid_n: int
    min_volume: float
    worst_cell: Rect
    violations: list[tuple[Rect, float]]
    tolerance: float
    splits: int = 0
    leaves: int = 0
    depth_exhausted: bool = False
    worst_rho: float | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "rho_values": list(self.rho_values),
            "grid_n": self.grid_n,
            "min_volume": self.min_volume,
            "worst_cell": self.worst_cell.to_dict(),
            "violations": [
                {"cell": cell.to_dict(), "volume": volume} for cell, volume in self.violations
            ],
            "tolerance": self.tolerance,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> VolumeReport:
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
        return cls(
            rho_values=[float(r) for r in doc["rho_values"]],
            grid_n=int(doc["grid_n"]),
            min_volume=float(doc["min_volume"]),
            worst_cell=Rect(**doc["worst_cell"]),
            violations=[(Rect(**v["cell"]), float(v["volume"])) for v in doc["violations"]],
            tolerance=float(doc["tolerance"]),
        )


def _sort_violations(violations: list[tuple[Rect, float]]) -> list[tuple[Rect, float]]:
    return sorted(violations, key=lambda cv: (cv[0].a_lo, cv[0].b_lo, cv[0].a_hi, cv[0].b_hi, cv[1]))


def c_volume(c: CorrelationCopula, r: Rect) -> float:
    """C-volume ``C(a_hi, b_hi) + C(a_lo, b_lo) - C(a_hi, b_lo) - C(a_lo, b_hi)``."""
    return (
        copula_eval(c, UnitPoint(r.a_hi, r.b_hi))
        + copula_eval(c, UnitPoint(r.a_lo, r.b_lo))
        - copula_eval(c, UnitPoint(r.a_hi, r.b_lo))
        - copula_eval(c, UnitPoint(r.a_lo, r.b_hi))
    )


def _split(r: Rect, split_a: float, split_b: float) -> tuple[Rect, Rect, Rect, Rect]:
    return (
        Rect(r.a_lo, split_a, r.b_lo, split_b),
        Rect(split_a, r.a_hi, r.b_lo, split_b),
        Rect(r.a_lo, split_a, split_b, r.b_hi),
        Rect(split_a, r.a_hi, split_b, r.b_hi),
    )


def additivity_check(c: CorrelationCopula, r: Rect, split_a: float, split_b: float) -> float:
    """Absolute gap between the volume of ``r`` and the sum over its four pieces."""
    if not (r.a_lo < split_a < r.a_hi and r.b_lo < split_b < r.b_hi):
        raise DomainError(f"split ({split_a}, {split_b}) is not strictly inside {r}")
    pieces = _split(r, split_a, split_b)
    return abs(c_volume(c, r) - sum(c_volume(c, q) for q in pieces))


def grid_volumes(rho: float, grid_n: int) -> np.ndarray:
    """Cell volumes of the uniform ``grid_n x grid_n`` partition.

    Entry ``[i, j]`` is the cell ``[a_i, a_{i+1}] x [b_j, b_{j+1}]``.  Each
    grid node is evaluated once and shared between the cells around it.
    """
    nodes = np.linspace(0.0, 1.0, grid_n + 1)
    g = copula_eval_array(rho, nodes[:, None], nodes[None, :])
    return g[1:, 1:] + g[:-1, :-1] - g[1:, :-1] - g[:-1, 1:]


def verify_grid(
    rhos: Iterable[float], grid_n: int, tolerance: float = DEFAULT_TOLERANCE
) -> VolumeReport:
    """Check every cell of a uniform grid for every correlation in ``rhos``."""
    if grid_n < 2:
        raise DomainError(f"grid_n must be at least 2, got {grid_n}")
    if tolerance < 0:
        raise DomainError(f"tolerance must be non-negative, got {tolerance}")
    rho_values = [CorrelationCopula(r).rho for r in rhos]
    if not rho_values:
        raise DomainError("at least one rho value is required")
    nodes = np.linspace(0.0, 1.0, grid_n + 1)

    min_volume = np.inf
    worst: tuple[int, int] = (0, 0)
    worst_rho = rho_values[0]
    violations: list[tuple[Rect, float]] = []
    for rho in rho_values:
        vol = grid_volumes(rho, grid_n)
        k = int(np.argmin(vol))  # first minimum in row-major order
        if vol.flat[k] < min_volume:
            min_volume = float(vol.flat[k])
            worst = divmod(k, grid_n)
            worst_rho = rho
        for i, j in zip(*np.nonzero(vol < -tolerance)):
            cell = Rect(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1])
            violations.append((cell, float(vol[i, j])))

    i, j = worst
    return VolumeReport(
        rho_values=rho_values,
        grid_n=grid_n,
        min_volume=min_volume,
        worst_cell=Rect(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1]),
        violations=_sort_violations(violations),
        tolerance=tolerance,
        leaves=grid_n * grid_n * len(rho_values),
        worst_rho=worst_rho,
    )


def subdivide_and_check(
    c: CorrelationCopula,
    r: Rect,
    max_depth: int,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VolumeReport:
    """Adaptive quadrisection of ``r`` along region boundaries.

    A cell whose four corners share one region tag is a leaf; otherwise it is
    split at its midpoint until ``max_depth``.  Leaves still straddling a
    boundary at ``max_depth`` set ``depth_exhausted`` instead of failing.
    ``grid_n`` in the report is ``2**max_depth``, the finest resolution
    reachable.
    """
    if max_depth < 0:
        raise DomainError(f"max_depth must be non-negative, got {max_depth}")
    state = {"min": np.inf, "worst": r, "splits": 0, "leaves": 0, "exhausted": False}
    violations: list[tuple[Rect, float]] = []

    stack: list[tuple[Rect, int]] = [(r, 0)]
    while stack:
        cell, depth = stack.pop()
        tags = {classify_region(c, p) for p in cell.corners()}
        if len(tags) > 1 and depth < max_depth:
            state["splits"] += 1
            mid_a = 0.5 * (cell.a_lo + cell.a_hi)
            mid_b = 0.5 * (cell.b_lo + cell.b_hi)
            # reversed so the lower-left piece is processed first
            stack.extend((q, depth + 1) for q in reversed(_split(cell, mid_a, mid_b)))
            continue
        if len(tags) > 1:
            state["exhausted"] = True
        state["leaves"] += 1
        volume = c_volume(c, cell)
        if volume < state["min"]:
            state["min"], state["worst"] = volume, cell
        if volume < -tolerance:
            violations.append((cell, volume))

    return VolumeReport(
        rho_values=[c.rho],
        grid_n=2**max_depth,
        min_volume=float(state["min"]),
        worst_cell=state["worst"],
        violations=_sort_violations(violations),
        tolerance=tolerance,
        splits=state["splits"],
        leaves=state["leaves"],
        depth_exhausted=state["exhausted"],
        worst_rho=c.rho,
    )


def parse_sweep(text: str) -> list[float]:
    """Parse ``lo:hi:step`` (both endpoints inclusive) or a comma list.

    Sweep values are rounded to 12 decimals so ``-1:1:0.1`` yields exactly
    ``-0.7`` rather than ``-0.7000000000000001`` and ends on ``hi``.
    """
    text = text.strip()
    if ":" not in text:
        return [float(t) for t in text.split(",") if t.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"sweep must be lo:hi:step, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise DomainError(f"sweep needs step > 0 and lo <= hi, got {text!r}")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    values = [round(lo + k * step, 12) + 0.0 for k in range(count)]
    if abs(values[-1] - hi) <= 1e-12:
        values[-1] = hi
    return values
