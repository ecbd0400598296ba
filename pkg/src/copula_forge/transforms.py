"""Transpose, survival, (radial) symmetrization and mixing, plus normalization.

The constructors here only build trees; evaluation never depends on
:func:`normalize`. Normalization rewrites an expression with identities that
hold exactly:

* transpose and survival are involutions and commute with each other;
* both distribute over a convex mix (the weights sum to one);
* the primitives absorb them: ``MO(a, b)^T = MO(b, a)``,
  ``(uv + tP)^T = (uv + tP)^ = uv - tP``, ``(uv + tQ)^T = uv + tQ``,
  ``(uv + tQ)^ = uv - tQ``, and Pi, M, W are fixed by both;
* mixes flatten, ``uv + tP`` components combine linearly in ``t`` and
  identical components merge.

The normal form therefore contains only primitives, ``Survival(MarshallOlkin)``
and flat, sorted mixes of those.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .catalog import (
    Independence,
    LowerFrechet,
    MarshallOlkin,
    PerturbedP,
    PerturbedQ,
    UpperFrechet,
)
from .core import CopulaExpr, Mix, Survival, Transpose, lattice

__all__ = [
    "transpose",
    "survival",
    "symmetrize",
    "radial_symmetrize",
    "mix",
    "normalize",
    "structurally_equal",
    "semantically_equal",
    "lattice_distance",
]

SEMANTIC_RESOLUTION = 256
SEMANTIC_TOL = 1e-10


def transpose(c: CopulaExpr) -> CopulaExpr:
    return Transpose(c)


def survival(c: CopulaExpr) -> CopulaExpr:
    return Survival(c)


def symmetrize(c: CopulaExpr) -> CopulaExpr:
    """Nearest symmetric copula in sup norm, ``(C + C^T) / 2``."""
    return Mix((0.5, 0.5), (c, Transpose(c)))


def radial_symmetrize(c: CopulaExpr) -> CopulaExpr:
    """Nearest radially symmetric copula in sup norm, ``(C + C^) / 2``."""
    return Mix((0.5, 0.5), (c, Survival(c)))


def mix(weights: Sequence[float], cs: Sequence[CopulaExpr]) -> CopulaExpr:
    return Mix(tuple(weights), tuple(cs))


_SYMMETRIC_PRIMITIVES = (Independence, UpperFrechet, LowerFrechet)


def _perturbed(cls, theta: float, guarded: bool) -> CopulaExpr:
    if theta == 0.0:
        return Independence()
    if guarded:
        theta = min(1.0, max(-1.0, theta))
    return cls(theta, guarded=guarded)


def _transpose_nf(c: CopulaExpr) -> CopulaExpr:
    if isinstance(c, _SYMMETRIC_PRIMITIVES) or isinstance(c, PerturbedQ):
        return c
    if isinstance(c, MarshallOlkin):
        return MarshallOlkin(c.beta, c.alpha)
    if isinstance(c, PerturbedP):
        return _perturbed(PerturbedP, -c.theta, c.guarded)
    if isinstance(c, Survival):
        return _survival_nf(_transpose_nf(c.child))
    if isinstance(c, Transpose):
        return c.child
    if isinstance(c, Mix):
        return _mix_nf(c.weights, [_transpose_nf(x) for x in c.children])
    raise TypeError(f"unknown expression node {c!r}")


def _survival_nf(c: CopulaExpr) -> CopulaExpr:
    if isinstance(c, _SYMMETRIC_PRIMITIVES):
        return c
    if isinstance(c, (PerturbedP, PerturbedQ)):
        return _perturbed(type(c), -c.theta, c.guarded)
    if isinstance(c, MarshallOlkin):
        return Survival(c)
    if isinstance(c, Survival):
        return c.child
    if isinstance(c, Mix):
        return _mix_nf(c.weights, [_survival_nf(x) for x in c.children])
    raise TypeError(f"unknown expression node {c!r}")


def _mix_nf(weights: Sequence[float], children: Sequence[CopulaExpr]) -> CopulaExpr:
    flat: list[tuple[float, CopulaExpr]] = []
    for w, c in zip(weights, children):
        if isinstance(c, Mix):
            flat.extend((w * cw, cc) for cw, cc in zip(c.weights, c.children))
        else:
            flat.append((w, c))

    # uv + tP terms (and Pi = uv + 0P) combine linearly in t; same for Q
    groups = {PerturbedP: [], PerturbedQ: []}
    rest: list[tuple[float, CopulaExpr]] = []
    indep = 0.0
    for w, c in flat:
        if w == 0.0:
            continue
        if type(c) in groups:
            groups[type(c)].append((w, c))
        elif isinstance(c, Independence):
            indep += w
        else:
            rest.append((w, c))
    # (total weight, weight * theta, guarded) per family; a group whose
    # combined theta is zero (possibly by underflow) is plain independence
    combined = {}
    for cls, members in groups.items():
        if not members:
            continue
        total = sum(w for w, _ in members)
        moment = sum(w * c.theta for w, c in members)
        if moment / total == 0.0:
            indep += total
        else:
            combined[cls] = (total, moment, all(c.guarded for _, c in members))
    if indep and combined:
        host = PerturbedP if PerturbedP in combined else PerturbedQ
        total, moment, guarded = combined[host]
        combined[host] = (total + indep, moment, guarded)
        indep = 0.0
    if indep:
        rest.append((indep, Independence()))
    for cls, (total, moment, guarded) in combined.items():
        rest.append((total, _perturbed(cls, moment / total, guarded)))

    merged: dict[CopulaExpr, float] = {}
    for w, c in rest:
        merged[c] = merged.get(c, 0.0) + w
    items = sorted(merged.items(), key=lambda kv: repr(kv[0]))
    if len(items) == 1:
        return items[0][0]
    return Mix(tuple(w for _, w in items), tuple(c for c, _ in items))


def normalize(c: CopulaExpr) -> CopulaExpr:
    """Canonical form of ``c`` under the exact identities listed in the module doc."""
    if isinstance(c, (PerturbedP, PerturbedQ)):
        return _perturbed(type(c), c.theta, c.guarded)
    if isinstance(c, (Independence, UpperFrechet, LowerFrechet, MarshallOlkin)):
        return c
    if isinstance(c, Transpose):
        return _transpose_nf(normalize(c.child))
    if isinstance(c, Survival):
        return _survival_nf(normalize(c.child))
    if isinstance(c, Mix):
        return _mix_nf(c.weights, [normalize(x) for x in c.children])
    raise TypeError(f"unknown expression node {c!r}")


def structurally_equal(a: CopulaExpr, b: CopulaExpr) -> bool:
    return normalize(a) == normalize(b)


def lattice_distance(a: CopulaExpr, b: CopulaExpr, n: int = SEMANTIC_RESOLUTION) -> float:
    """Largest ``|a - b|`` over the ``(n+1) x (n+1)`` lattice."""
    uu, vv = lattice(n)
    return float(np.max(np.abs(a._values(uu, vv) - b._values(uu, vv))))


def semantically_equal(
    a: CopulaExpr, b: CopulaExpr, n: int = SEMANTIC_RESOLUTION, tol: float = SEMANTIC_TOL
) -> bool:
    return lattice_distance(a, b, n) <= tol
