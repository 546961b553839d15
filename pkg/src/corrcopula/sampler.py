"""Dependent uniform pairs and joint event tables.

Sampling uses the conditional-distribution method: draw ``u`` and ``t``
independently uniform, then solve ``dC/du(u, v) = t`` for ``v``.  The
conditional CDF is piecewise (closed form on the Interior, 0 or 1 on the
clamped sides) and jumps where a clamp concentrates mass on a boundary
curve, so it is inverted by bisection and jumps resolve to their abscissa.

Random numbers come from Philox4x64-10 (``numpy.random.Philox``), a
counter-based generator keyed by the seed.  Pair ``i`` consumes exactly the
counter block ``i``: its first two 64-bit words become ``u`` and ``t``.  Any
split of the index range across workers therefore reproduces the same
sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    UnitPoint,
    classify_region_array,
    copula_eval,
)

__all__ = [
    "JointTable",
    "SampleConfig",
    "InversionError",
    "conditional_cdf",
    "conditional_cdf_array",
    "invert_conditional",
    "invert_conditional_array",
    "uniform_stream",
    "sample_pairs",
    "joint_table",
    "indicator_correlation",
]

MAX_BISECTIONS = 200
SAMPLE_TOL = 1e-10
_WORDS_PER_BLOCK = 4


class InversionError(RuntimeError):
    """Bisection failed to shrink its bracket within the iteration budget."""


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    count: int

    def __post_init__(self) -> None:
        if int(self.count) < 1:
            raise DomainError(f"count must be at least 1, got {self.count}")
        # the generator key is the seed's unsigned 64-bit pattern
        object.__setattr__(self, "seed", int(self.seed) % 2**64)
        object.__setattr__(self, "count", int(self.count))


@dataclass(frozen=True)
class JointTable:
    """Probabilities of the four outcomes of two events A and B."""

    p11: float
    p10: float
    p01: float
    p00: float

    def to_dict(self) -> dict[str, float]:
        return {"p11": self.p11, "p10": self.p10, "p01": self.p01, "p00": self.p00}


def conditional_cdf_array(rho: float, u, v) -> np.ndarray:
    """Vectorised :func:`conditional_cdf`; ``u`` must lie strictly inside (0, 1)."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    u, v = np.broadcast_arrays(u, v)
    region = classify_region_array(rho, u, v)
    sv = np.sqrt(np.maximum(v * (1.0 - v), 0.0))
    interior = v + rho * (1.0 - 2.0 * u) / (2.0 * np.sqrt(u * (1.0 - u))) * sv
    upper_side = np.where(u < v, 1.0, 0.0)
    lower_side = np.where(u + v > 1.0, 1.0, 0.0)
    return np.where(region == 0, interior, np.where(region > 0, upper_side, lower_side))


def conditional_cdf(c: CorrelationCopula, u: float, v: float) -> float:
    """``dC/du`` at ``(u, v)``: the CDF of ``V`` given ``U = u``."""
    if not 0.0 < u < 1.0:
        raise DomainError(f"u must lie strictly inside (0, 1), got {u!r}")
    p = UnitPoint(u, v)
    return float(conditional_cdf_array(c.rho, p.a, p.b))


def invert_conditional_array(rho: float, u, t, tol: float = SAMPLE_TOL) -> np.ndarray:
    """Smallest ``v`` (to within ``tol``) with ``conditional_cdf(u, v) >= t``."""
    u = np.asarray(u, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    u, t = np.broadcast_arrays(u, t)
    lo = np.zeros(u.shape)
    hi = np.ones(u.shape)
    for _ in range(MAX_BISECTIONS):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        above = conditional_cdf_array(rho, u, mid) >= t
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    else:
        raise InversionError(f"bracket did not shrink below {tol} in {MAX_BISECTIONS} steps")
    v = 0.5 * (lo + hi)
    # t == 0 is attained at v == 0 exactly
    return np.where(t <= 0.0, 0.0, v)


def invert_conditional(c: CorrelationCopula, u: float, t: float, tol: float = SAMPLE_TOL) -> float:
    if not 0.0 < u < 1.0:
        raise DomainError(f"u must lie strictly inside (0, 1), got {u!r}")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    return float(invert_conditional_array(c.rho, u, t, tol))


def uniform_stream(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Uniform ``(u, t)`` draws for pair indices ``start .. start+count-1``.

    Values lie strictly inside (0, 1): the top 53 bits of each word are
    mapped to the midpoints ``(k + 0.5) / 2**53``.
    """
    gen = np.random.Philox(key=int(seed) % 2**64, counter=int(start))
    words = gen.random_raw(_WORDS_PER_BLOCK * count).reshape(count, _WORDS_PER_BLOCK)[:, :2]
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample_pairs(c: CorrelationCopula, cfg: SampleConfig, start: int = 0) -> np.ndarray:
    """Array of shape ``(cfg.count, 2)`` holding pairs ``start ..`` of the stream."""
    draws = uniform_stream(cfg.seed, cfg.count, start)
    u = draws[:, 0]
    v = invert_conditional_array(c.rho, u, draws[:, 1], SAMPLE_TOL)
    return np.column_stack((u, v))


def joint_table(c: CorrelationCopula, p: UnitPoint) -> JointTable:
    p11 = copula_eval(c, p)
    cells = (p11, p.a - p11, p.b - p11, 1.0 - p.a - p.b + p11)
    # the Frechet band keeps every cell >= 0 up to rounding
    assert min(cells) >= -1e-15, cells
    return JointTable(*(max(x, 0.0) for x in cells))


def indicator_correlation(pairs: np.ndarray, a: float, b: float) -> float:
    """Pearson correlation of the events ``U <= a`` and ``V <= b`` over samples."""
    x = pairs[:, 0] <= a
    y = pairs[:, 1] <= b
    pa, pb = x.mean(), y.mean()
    p11 = (x & y).mean()
    denom = math.sqrt(pa * (1 - pa) * pb * (1 - pb))
    return float((p11 - pa * pb) / denom)
