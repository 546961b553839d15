"""Boundary curves between the Interior region and the clamped regions.

For ``rho > 0`` only the upper clamp ``min(a, b)`` can fire.  On the side
``a <= b`` the Interior ends at ``b = a / (a + rho^2 (1-a))``; the side
``b <= a`` is the mirror image, which at abscissa ``a`` gives the lower curve
``b = rho^2 a / (1 - a + rho^2 a)``.

For ``rho < 0`` only the lower clamp ``max(a+b-1, 0)`` can fire, and the
Interior at abscissa ``a`` is the band between::

    rho^2 (1-a) / (rho^2 (1-a) + a)     (raw estimate hits 0, below a+b=1)
    (1-a) / (rho^2 a + (1-a))           (raw estimate hits a+b-1, above a+b=1)

Both curves decrease in ``a`` and coincide with ``b = 1 - a`` when rho = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from corrcopula.core import CorrelationCopula, DomainError

__all__ = [
    "InteriorBand",
    "upper_boundary_pos_rho",
    "lower_boundary_pos_rho",
    "lower_boundary_neg_rho",
    "upper_boundary_neg_rho",
    "interior_band",
    "boundary_table",
]


@dataclass(frozen=True)
class InteriorBand:
    b_lo: float
    b_hi: float

    def __contains__(self, b: float) -> bool:
        return self.b_lo <= b <= self.b_hi


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a must lie in [0, 1], got {a!r}")
    return a


def _need_sign(c: CorrelationCopula, positive: bool) -> float:
    rho = c.rho
    if positive and rho <= 0.0:
        raise DomainError(f"curve defined only for rho > 0, got {rho}")
    if not positive and rho >= 0.0:
        raise DomainError(f"curve defined only for rho < 0, got {rho}")
    return rho * rho


def upper_boundary_pos_rho(c: CorrelationCopula, a: float) -> float:
    """Upper edge of the Interior for ``rho > 0`` (side ``a <= b``)."""
    r2 = _need_sign(c, positive=True)
    a = _check_a(a)
    return a / (a + r2 * (1.0 - a))


def lower_boundary_pos_rho(c: CorrelationCopula, a: float) -> float:
    """Lower edge of the Interior for ``rho > 0``, the mirror of the upper edge."""
    r2 = _need_sign(c, positive=True)
    a = _check_a(a)
    return r2 * a / ((1.0 - a) + r2 * a)


def lower_boundary_neg_rho(c: CorrelationCopula, a: float) -> float:
    """Curve where the raw estimate reaches 0, for ``rho < 0``.

    At ``a = 0`` the expression is 1 and at ``a = 1`` it is 0, the limits of
    the open-interval formula.
    """
    r2 = _need_sign(c, positive=False)
    a = _check_a(a)
    return r2 * (1.0 - a) / (r2 * (1.0 - a) + a)


def upper_boundary_neg_rho(c: CorrelationCopula, a: float) -> float:
    """Curve where the raw estimate reaches ``a + b - 1``, for ``rho < 0``."""
    r2 = _need_sign(c, positive=False)
    a = _check_a(a)
    return (1.0 - a) / (r2 * a + (1.0 - a))


def interior_band(c: CorrelationCopula, a: float) -> InteriorBand:
    """Interior values of ``b`` at abscissa ``a``, edges included.

    Exact for ``0 < a < 1`` and ``0 < b < 1``.  On the edges of the square the
    three branches of the clamp coincide and ``classify_region`` reports
    Interior regardless of the band.
    """
    a = _check_a(a)
    if c.rho > 0.0:
        return InteriorBand(lower_boundary_pos_rho(c, a), upper_boundary_pos_rho(c, a))
    if c.rho < 0.0:
        return InteriorBand(lower_boundary_neg_rho(c, a), upper_boundary_neg_rho(c, a))
    return InteriorBand(0.0, 1.0)


def boundary_table(
    c: CorrelationCopula, n: int, a_min: float = 0.0, a_max: float = 1.0
) -> list[tuple[float, float, str]]:
    """Rows ``(a, b, curve)`` at ``n`` equally spaced abscissae in [a_min, a_max].

    Curves are named ``upper``/``lower``; for ``rho > 0`` the lower one is the
    reflection of the upper one across the diagonal.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if c.rho == 0.0:
        raise DomainError("rho = 0 has no boundary: the Interior covers the whole square")
    if c.rho > 0.0:
        lower, upper = lower_boundary_pos_rho, upper_boundary_pos_rho
    else:
        lower, upper = lower_boundary_neg_rho, upper_boundary_neg_rho
    rows: list[tuple[float, float, str]] = []
    a_min, a_max = _check_a(a_min), _check_a(a_max)
    if a_min > a_max:
        raise DomainError(f"a_min={a_min} exceeds a_max={a_max}")
    for a in np.linspace(a_min, a_max, n):
        a = float(a)
        rows.append((a, lower(c, a), "lower"))
        rows.append((a, upper(c, a), "upper"))
    return rows
