"""Expression-tree data model for bivariate copulas.

A copula is represented as an immutable tree: primitive families live in
:mod:`copula_forge.catalog`, the structural nodes (transpose, survival and
convex mixing) live here. Every node is callable on scalars or numpy arrays,
``expr(u, v)``, and evaluation never clamps, so a deliberately invalid
expression shows its violations to the checker in :mod:`copula_forge.verify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "IDENTITY_TOL",
    "Point",
    "Rectangle",
    "CopulaExpr",
    "Transpose",
    "Survival",
    "Mix",
    "GridCopula",
    "evaluate",
    "c_volume",
    "sample_grid",
]

# absolute tolerance for identity-type checks in double precision
IDENTITY_TOL = 1e-12


def _unit(name: str, x: float) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return x


@dataclass(frozen=True)
class Point:
    u: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "u", _unit("u", self.u))
        object.__setattr__(self, "v", _unit("v", self.v))


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned box ``[u1, u2] x [v1, v2]`` inside the unit square."""

    u1: float
    u2: float
    v1: float
    v2: float

    def __post_init__(self):
        for name in ("u1", "u2", "v1", "v2"):
            object.__setattr__(self, name, _unit(name, getattr(self, name)))
        if not (self.u1 < self.u2 and self.v1 < self.v2):
            raise ValueError(
                f"degenerate rectangle [{self.u1}, {self.u2}] x [{self.v1}, {self.v2}]"
            )

    @property
    def area(self) -> float:
        return (self.u2 - self.u1) * (self.v2 - self.v1)


class CopulaExpr:
    """Base class of all expression nodes.

    Subclasses are frozen dataclasses and implement ``_values``. Calling a node
    broadcasts over numpy arrays and returns a float for scalar input.
    """

    __slots__ = ()

    def _values(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, u, v):
        uu = np.asarray(u, dtype=float)
        vv = np.asarray(v, dtype=float)
        if uu.ndim == 0 and vv.ndim == 0:
            return _scalar(self, float(uu), float(vv))
        return self._values(uu, vv)


def _scalar(expr: CopulaExpr, u: float, v: float) -> float:
    # numpy scalar pow differs from the array loop in the last ulp; keep one path
    return float(expr._values(np.array([u]), np.array([v]))[0])


@dataclass(frozen=True)
class Transpose(CopulaExpr):
    child: CopulaExpr

    def _values(self, u, v):
        return self.child._values(v, u)


@dataclass(frozen=True)
class Survival(CopulaExpr):
    child: CopulaExpr

    def _values(self, u, v):
        return u + v - 1.0 + self.child._values(1.0 - u, 1.0 - v)


@dataclass(frozen=True)
class Mix(CopulaExpr):
    """Convex combination ``sum_i weights[i] * children[i]``."""

    weights: tuple[float, ...]
    children: tuple[CopulaExpr, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        children = tuple(self.children)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "children", children)
        if not children:
            raise ValueError("mix needs at least one component")
        if len(weights) != len(children):
            raise ValueError(
                f"mix has {len(weights)} weights for {len(children)} components"
            )
        if any(not math.isfinite(w) or w < 0.0 for w in weights):
            raise ValueError(f"mix weights must be nonnegative, got {weights}")
        total = math.fsum(weights)
        if abs(total - 1.0) > IDENTITY_TOL:
            raise ValueError(f"mix weights must sum to 1, got {total!r}")
        for c in children:
            if not isinstance(c, CopulaExpr):
                raise TypeError(f"mix component is not a copula expression: {c!r}")

    def _values(self, u, v):
        acc = self.weights[0] * self.children[0]._values(u, v)
        for w, c in zip(self.weights[1:], self.children[1:]):
            acc = acc + w * c._values(u, v)
        return acc


def evaluate(expr: CopulaExpr, p: Point) -> float:
    """Raw value of ``expr`` at ``p``; no clamping to ``[0, 1]``."""
    return _scalar(expr, p.u, p.v)


def c_volume(expr: CopulaExpr, r: Rectangle) -> float:
    """C-volume ``C(u2,v2) - C(u2,v1) - C(u1,v2) + C(u1,v1)`` of ``r``."""
    u = np.array([r.u2, r.u2, r.u1, r.u1])
    v = np.array([r.v2, r.v1, r.v2, r.v1])
    c = expr._values(u, v)
    return float(c[0] - c[1] - c[2] + c[3])


def volumes(values: np.ndarray) -> np.ndarray:
    """Cell volumes of a sampled lattice; ``values[i, j] = C(u_i, v_j)``."""
    return values[1:, 1:] - values[1:, :-1] - values[:-1, 1:] + values[:-1, :-1]


@dataclass(frozen=True)
class GridCopula:
    """Values of a copula on the uniform ``(n+1) x (n+1)`` lattice.

    ``values[i, j] = C(i/n, j/n)``; the array is read-only.
    """

    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"grid needs n >= 1, got {self.n}")
        arr = np.array(self.values, dtype=float)
        if arr.shape != (self.n + 1, self.n + 1):
            raise ValueError(f"expected shape {(self.n + 1,) * 2}, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n + 1) / self.n

    def border_error(self) -> float:
        """Largest deviation from the border and uniform-margin conditions."""
        t = self.nodes
        vals = self.values
        return float(
            max(
                np.max(np.abs(vals[0, :])),
                np.max(np.abs(vals[:, 0])),
                np.max(np.abs(vals[-1, :] - t)),
                np.max(np.abs(vals[:, -1] - t)),
            )
        )

    def __eq__(self, other):
        if not isinstance(other, GridCopula):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None


def lattice(n: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.arange(n + 1) / n
    return np.meshgrid(t, t, indexing="ij")


def sample_grid(expr: CopulaExpr, n: int) -> GridCopula:
    if int(n) != n or n < 1:
        raise ValueError(f"grid resolution must be a positive integer, got {n!r}")
    n = int(n)
    uu, vv = lattice(n)
    return GridCopula(n, expr._values(uu, vv))

