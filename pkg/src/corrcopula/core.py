"""Closed-form evaluation of the correlation-based and-operation.

For event probabilities ``a``, ``b`` and a correlation ``rho`` the raw joint
probability estimate is::

    a*b + rho*sqrt(a(1-a) b(1-b))

which can leave the Frechet band ``[max(a+b-1, 0), min(a, b)]``.  Clamping it
back into the band gives ``f_rho(a, b)``, a copula for every rho in [-1, 1]
that interpolates W (rho=-1), the product copula (rho=0) and M (rho=1).

Scalar functions use :mod:`math`; the ``*_array`` variants use numpy with the
same operation order so that both paths round identically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CorrelationCopula",
    "UnitPoint",
    "Rect",
    "Region",
    "DomainError",
    "RegionError",
    "InvariantError",
    "raw_and",
    "frechet_lower",
    "frechet_upper",
    "clamp_to_frechet",
    "copula_eval",
    "classify_region",
    "partial_a",
    "mixed_density",
    "raw_and_array",
    "frechet_lower_array",
    "frechet_upper_array",
    "copula_eval_array",
    "classify_region_array",
    "partial_a_array",
    "mixed_density_array",
]

# slack on the analytic bounds partial_a <= 1 and mixed_density >= 0
PARTIAL_SLACK = 1e-9
DENSITY_SLACK = 1e-12


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class RegionError(ValueError):
    """A closed form was requested outside the region where it applies."""


class InvariantError(ArithmeticError):
    """A proved analytic bound failed numerically."""


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:  # also rejects nan
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class CorrelationCopula:
    """Member of the family, identified by its correlation ``rho``."""

    rho: float

    def __post_init__(self) -> None:
        rho = float(self.rho)
        if not -1.0 <= rho <= 1.0:
            raise DomainError(f"rho must lie in [-1, 1], got {rho!r}")
        object.__setattr__(self, "rho", rho)

    def __call__(self, a: float, b: float) -> float:
        return copula_eval(self, UnitPoint(a, b))


@dataclass(frozen=True)
class UnitPoint:
    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _check_probability("a", self.a))
        object.__setattr__(self, "b", _check_probability("b", self.b))

    def swapped(self) -> UnitPoint:
        return UnitPoint(self.b, self.a)


@dataclass(frozen=True)
class Rect:
    """Closed box ``[a_lo, a_hi] x [b_lo, b_hi]`` inside the unit square."""

    a_lo: float
    a_hi: float
    b_lo: float
    b_hi: float

    def __post_init__(self) -> None:
        for name in ("a_lo", "a_hi", "b_lo", "b_hi"):
            object.__setattr__(self, name, _check_probability(name, getattr(self, name)))
        if self.a_lo > self.a_hi or self.b_lo > self.b_hi:
            raise DomainError(f"degenerate rectangle ordering: {self!r}")

    @classmethod
    def unit(cls) -> Rect:
        return cls(0.0, 1.0, 0.0, 1.0)

    def corners(self) -> tuple[UnitPoint, UnitPoint, UnitPoint, UnitPoint]:
        """Corners in the order (lo, lo), (hi, lo), (lo, hi), (hi, hi)."""
        return (
            UnitPoint(self.a_lo, self.b_lo),
            UnitPoint(self.a_hi, self.b_lo),
            UnitPoint(self.a_lo, self.b_hi),
            UnitPoint(self.a_hi, self.b_hi),
        )

    def to_dict(self) -> dict[str, float]:
        return {"a_lo": self.a_lo, "a_hi": self.a_hi, "b_lo": self.b_lo, "b_hi": self.b_hi}


class Region(enum.Enum):
    """Which branch of the clamp is active at a point."""

    LOWER_CLAMP = "LowerClamp"
    INTERIOR = "Interior"
    UPPER_CLAMP = "UpperClamp"

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# scalar kernels
# ---------------------------------------------------------------------------


def _spread(a: float, b: float) -> float:
    # one root per factor: commutative in (a, b) bitwise and no underflow of
    # the four-fold product for tiny probabilities
    return math.sqrt(max(a * (1.0 - a), 0.0)) * math.sqrt(max(b * (1.0 - b), 0.0))


def _lower(a: float, b: float) -> float:
    # a + b - 1 evaluated as lo - (1 - hi): 1 - hi is exact for hi >= 1/2 and
    # for hi == 1 the result is exactly lo, so uniform margins hold exactly.
    lo, hi = (a, b) if a <= b else (b, a)
    return max(lo - (1.0 - hi), 0.0)


def raw_and(c: CorrelationCopula, p: UnitPoint) -> float:
    """Unclamped estimate ``a*b + rho*sqrt(a(1-a)b(1-b))``; may leave [0, 1]."""
    return p.a * p.b + c.rho * _spread(p.a, p.b)


def frechet_lower(p: UnitPoint) -> float:
    return _lower(p.a, p.b)


def frechet_upper(p: UnitPoint) -> float:
    return min(p.a, p.b)


def clamp_to_frechet(value: float, p: UnitPoint) -> float:
    """Project ``value`` onto the Frechet band at ``p``."""
    lower = _lower(p.a, p.b)
    if value < lower:
        return lower
    upper = min(p.a, p.b)
    if value > upper:
        return upper
    return float(value)


def copula_eval(c: CorrelationCopula, p: UnitPoint) -> float:
    return clamp_to_frechet(raw_and(c, p), p)


def classify_region(c: CorrelationCopula, p: UnitPoint) -> Region:
    """Branch of the clamp taken at ``p``; exact comparisons, boundary is Interior."""
    raw = raw_and(c, p)
    if raw < _lower(p.a, p.b):
        return Region.LOWER_CLAMP
    if raw > min(p.a, p.b):
        return Region.UPPER_CLAMP
    return Region.INTERIOR


def _require_interior(c: CorrelationCopula, p: UnitPoint, *, need_b: bool) -> None:
    if not 0.0 < p.a < 1.0:
        raise DomainError(f"closed form undefined at a={p.a!r}; needs 0 < a < 1")
    if need_b and not 0.0 < p.b < 1.0:
        raise DomainError(f"closed form undefined at b={p.b!r}; needs 0 < b < 1")
    region = classify_region(c, p)
    if region is not Region.INTERIOR:
        raise RegionError(f"point ({p.a}, {p.b}) lies in {region}, not Interior")


def _partial_a(rho: float, a: float, b: float) -> float:
    sb = math.sqrt(max(b * (1.0 - b), 0.0))
    return b + rho * (1.0 - 2.0 * a) / (2.0 * math.sqrt(a * (1.0 - a))) * sb


def partial_a(c: CorrelationCopula, p: UnitPoint) -> float:
    """Derivative with respect to ``a`` on the Interior region.

    Raises :class:`DomainError` at ``a`` in {0, 1}, :class:`RegionError` off
    the Interior, and :class:`InvariantError` if the result exceeds 1.
    """
    _require_interior(c, p, need_b=False)
    value = _partial_a(c.rho, p.a, p.b)
    if value > 1.0 + PARTIAL_SLACK:
        raise InvariantError(f"partial_a={value!r} exceeds 1 at ({p.a}, {p.b}), rho={c.rho}")
    return value


def mixed_density(c: CorrelationCopula, p: UnitPoint) -> float:
    """Mixed second derivative (the copula density) on the Interior region."""
    _require_interior(c, p, need_b=True)
    a, b = p.a, p.b
    value = 1.0 + c.rho * (1.0 - 2.0 * a) * (1.0 - 2.0 * b) / (4.0 * _spread(a, b))
    if value < -DENSITY_SLACK:
        raise InvariantError(f"negative density {value!r} at ({a}, {b}), rho={c.rho}")
    return value


# ---------------------------------------------------------------------------
# vectorised kernels, same rounding as the scalar path
# ---------------------------------------------------------------------------


def _spread_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sqrt(np.maximum(a * (1.0 - a), 0.0)) * np.sqrt(np.maximum(b * (1.0 - b), 0.0))


def raw_and_array(rho: float, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return a * b + rho * _spread_array(a, b)


def frechet_lower_array(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.maximum(lo - (1.0 - hi), 0.0)


def frechet_upper_array(a, b) -> np.ndarray:
    return np.minimum(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))


def copula_eval_array(rho: float, a, b) -> np.ndarray:
    """Vectorised ``copula_eval``; ``rho``, ``a`` and ``b`` broadcast together."""
    raw = raw_and_array(rho, a, b)
    lower = frechet_lower_array(a, b)
    upper = frechet_upper_array(a, b)
    return np.where(raw < lower, lower, np.where(raw > upper, upper, raw))


def classify_region_array(rho: float, a, b) -> np.ndarray:
    """Region codes: -1 LowerClamp, 0 Interior, +1 UpperClamp."""
    raw = raw_and_array(rho, a, b)
    lower = frechet_lower_array(a, b)
    upper = frechet_upper_array(a, b)
    return np.where(raw < lower, -1, np.where(raw > upper, 1, 0)).astype(np.int8)


def partial_a_array(rho: float, a, b) -> np.ndarray:
    """Closed-form ``dC/da`` without region checks; callers mask to the Interior."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    sb = np.sqrt(np.maximum(b * (1.0 - b), 0.0))
    return b + rho * (1.0 - 2.0 * a) / (2.0 * np.sqrt(a * (1.0 - a))) * sb


def mixed_density_array(rho: float, a, b) -> np.ndarray:
    """Closed-form density without region checks; callers mask to the Interior."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return 1.0 + rho * (1.0 - 2.0 * a) * (1.0 - 2.0 * b) / (4.0 * _spread_array(a, b))


REGION_CODES = {-1: Region.LOWER_CLAMP, 0: Region.INTERIOR, 1: Region.UPPER_CLAMP}
