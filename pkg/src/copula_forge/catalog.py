"""Primitive copulas and the two asymmetric perturbations of independence.

``P(u, v) = (u - v) min(u, v) min(1 - u, 1 - v)`` is antisymmetric under
argument swap and ``Q(u, v) = (u + v - 1) min(1 - u, v) min(u, 1 - v)`` is
antisymmetric under the reflection ``(u, v) -> (1 - u, 1 - v)``. For
``|theta| <= 1`` both ``uv + theta P`` and ``uv + theta Q`` are copulas.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import CopulaExpr, Point, Rectangle

__all__ = [
    "Independence",
    "UpperFrechet",
    "LowerFrechet",
    "MarshallOlkin",
    "PerturbedP",
    "PerturbedQ",
    "RegionTag",
    "independence",
    "upper_frechet",
    "lower_frechet",
    "marshall_olkin",
    "perturbed_p",
    "perturbed_q",
    "force_perturbed_p",
    "force_perturbed_q",
    "perturbation_p",
    "perturbation_q",
    "p_values",
    "q_values",
    "classify_delta",
    "classify_omega",
    "delta_region",
    "omega_region",
]


def p_values(u, v):
    return (u - v) * np.minimum(u, v) * np.minimum(1.0 - u, 1.0 - v)


def q_values(u, v):
    return (u + v - 1.0) * np.minimum(1.0 - u, v) * np.minimum(u, 1.0 - v)


def perturbation_p(p: Point) -> float:
    return float(p_values(p.u, p.v))


def perturbation_q(p: Point) -> float:
    return float(q_values(p.u, p.v))


@dataclass(frozen=True)
class Independence(CopulaExpr):
    def _values(self, u, v):
        return u * v


@dataclass(frozen=True)
class UpperFrechet(CopulaExpr):
    def _values(self, u, v):
        return np.minimum(u, v)


@dataclass(frozen=True)
class LowerFrechet(CopulaExpr):
    def _values(self, u, v):
        return np.maximum(u + v - 1.0, 0.0)


@dataclass(frozen=True)
class MarshallOlkin(CopulaExpr):
    """``min(u^(1-alpha) v, u v^(1-beta))``, asymmetric unless alpha == beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            x = float(getattr(self, name))
            if not (0.0 < x < 1.0):
                raise ValueError(f"{name} must be in (0,1), got {x!r}")
            object.__setattr__(self, name, x)

    def _values(self, u, v):
        return np.minimum(u ** (1.0 - self.alpha) * v, u * v ** (1.0 - self.beta))


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (-1.0 <= theta <= 1.0):
        raise ValueError(f"theta must be in [-1,1], got {theta!r}")
    return theta


@dataclass(frozen=True)
class PerturbedP(CopulaExpr):
    """``uv + theta P(u, v)``.

    ``guarded=False`` skips the range check on theta; it exists so the axiom
    checker can be shown a genuine non-copula.
    """

    theta: float
    guarded: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        theta = _check_theta(self.theta) if self.guarded else float(self.theta)
        object.__setattr__(self, "theta", theta)

    def _values(self, u, v):
        return u * v + self.theta * p_values(u, v)


@dataclass(frozen=True)
class PerturbedQ(CopulaExpr):
    """``uv + theta Q(u, v)``; see :class:`PerturbedP` for ``guarded``."""

    theta: float
    guarded: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        theta = _check_theta(self.theta) if self.guarded else float(self.theta)
        object.__setattr__(self, "theta", theta)

    def _values(self, u, v):
        return u * v + self.theta * q_values(u, v)


def independence() -> Independence:
    return Independence()


def upper_frechet() -> UpperFrechet:
    return UpperFrechet()


def lower_frechet() -> LowerFrechet:
    return LowerFrechet()


def marshall_olkin(alpha: float, beta: float) -> MarshallOlkin:
    return MarshallOlkin(alpha, beta)


def perturbed_p(theta: float) -> PerturbedP:
    return PerturbedP(theta)


def perturbed_q(theta: float) -> PerturbedQ:
    return PerturbedQ(theta)


def force_perturbed_p(theta: float) -> PerturbedP:
    """Unchecked ``uv + theta P``; a non-copula once ``|theta| > 1``. Test use only."""
    return PerturbedP(theta, guarded=False)


def force_perturbed_q(theta: float) -> PerturbedQ:
    """Unchecked ``uv + theta Q``; a non-copula once ``|theta| > 1``. Test use only."""
    return PerturbedQ(theta, guarded=False)


class RegionTag(enum.Enum):
    LOWER_TRIANGLE = "lower-triangle"
    UPPER_TRIANGLE = "upper-triangle"
    DIAGONAL = "diagonal"
    BELOW_ANTIDIAGONAL = "below-antidiagonal"
    ABOVE_ANTIDIAGONAL = "above-antidiagonal"
    ANTIDIAGONAL = "antidiagonal"


def classify_delta(p: Point) -> RegionTag:
    if p.v < p.u:
        return RegionTag.LOWER_TRIANGLE
    if p.v == p.u:
        return RegionTag.DIAGONAL
    return RegionTag.UPPER_TRIANGLE


def classify_omega(p: Point) -> RegionTag:
    s = p.u + p.v
    if s < 1.0:
        return RegionTag.BELOW_ANTIDIAGONAL
    if s == 1.0:
        return RegionTag.ANTIDIAGONAL
    return RegionTag.ABOVE_ANTIDIAGONAL


def delta_region(r: Rectangle) -> RegionTag | None:
    """Closed triangle containing ``r`` (``v <= u`` first), or None if it straddles."""
    if r.v2 <= r.u1:
        return RegionTag.LOWER_TRIANGLE
    if r.u2 <= r.v1:
        return RegionTag.UPPER_TRIANGLE
    return None


def omega_region(r: Rectangle) -> RegionTag | None:
    """Closed half containing ``r`` (``u + v <= 1`` first), or None if it straddles."""
    if r.u2 + r.v2 <= 1.0:
        return RegionTag.BELOW_ANTIDIAGONAL
    if r.u1 + r.v1 >= 1.0:
        return RegionTag.ABOVE_ANTIDIAGONAL
    return None
