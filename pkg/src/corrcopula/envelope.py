"""AND-propagation for interval-valued probabilities.

``f_rho(a, b)`` is nondecreasing in ``a``, in ``b`` and in ``rho``, so the
image of a box of inputs is spanned by its lowest and highest corners.  This
avoids the overestimation plain interval arithmetic on the square-root term
would cause.
"""

from __future__ import annotations

from dataclasses import dataclass

from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    UnitPoint,
    copula_eval,
    frechet_lower,
    frechet_upper,
)

__all__ = ["ProbInterval", "RhoInterval", "and_envelope", "frechet_envelope", "parse_interval"]


@dataclass(frozen=True)
class ProbInterval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if not 0.0 <= lo <= hi <= 1.0:
            raise DomainError(f"probability interval needs 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def to_dict(self) -> dict[str, float]:
        return {"lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, doc: dict) -> ProbInterval:
        return cls(doc["lo"], doc["hi"])


@dataclass(frozen=True)
class RhoInterval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if not -1.0 <= lo <= hi <= 1.0:
            raise DomainError(f"correlation interval needs -1 <= lo <= hi <= 1, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def to_dict(self) -> dict[str, float]:
        return {"lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, doc: dict) -> RhoInterval:
        return cls(doc["lo"], doc["hi"])


def and_envelope(a: ProbInterval, b: ProbInterval, r: RhoInterval) -> ProbInterval:
    """Tight bounds on ``Prob(A & B)`` over all ``a``, ``b``, ``rho`` in the intervals."""
    lo = copula_eval(CorrelationCopula(r.lo), UnitPoint(a.lo, b.lo))
    hi = copula_eval(CorrelationCopula(r.hi), UnitPoint(a.hi, b.hi))
    return ProbInterval(lo, hi)


def frechet_envelope(a: ProbInterval, b: ProbInterval) -> ProbInterval:
    """Bounds valid under any dependence: the Frechet band at the extreme corners."""
    return ProbInterval(frechet_lower(UnitPoint(a.lo, b.lo)), frechet_upper(UnitPoint(a.hi, b.hi)))


def parse_interval(text: str, cls=ProbInterval):
    """Parse ``"lo,hi"`` or a single number (a point interval)."""
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) == 1:
        return cls(float(parts[0]), float(parts[0]))
    if len(parts) != 2:
        raise DomainError(f"interval must be 'lo,hi', got {text!r}")
    return cls(float(parts[0]), float(parts[1]))
