"""Seeded property checks: copula axioms, (radial) symmetry, identity suites.

Every suite draws from its own ``numpy.random.default_rng(seed)`` and records
the seed, so a reported witness can be replayed from ``(seed, expression)``.
Uniqueness statements are checked by falsification search over a declared
corpus; a passing run means "no counterexample found", nothing more.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .catalog import (
    independence,
    lower_frechet,
    marshall_olkin,
    perturbed_p,
    perturbed_q,
    upper_frechet,
)
from .core import IDENTITY_TOL, CopulaExpr, Point, Rectangle, c_volume, evaluate, lattice
from .measures import DEFAULT_TOL, sup_distance
from .transforms import (
    lattice_distance,
    mix,
    normalize,
    radial_symmetrize,
    survival,
    symmetrize,
    transpose,
)

__all__ = [
    "DEFAULT_SEED",
    "AxiomReport",
    "CheckResult",
    "SuiteReport",
    "SymmetryCheck",
    "check_axioms",
    "replay_axiom_report",
    "check_symmetry",
    "check_radial_symmetry",
    "convexity_suite",
    "inverse_problem_suite",
    "projection_optimality_suite",
    "identity_suite",
    "symmetric_corpus",
    "radial_corpus",
    "catalog_corpus",
    "format_report",
]

DEFAULT_SEED = 42
EDGE_POINTS = 257
SWEEP_CELLS = 64
SYMMETRY_RESOLUTION = 256
RANDOM_POINTS = 10_000
MAX_WITNESSES = 8


@dataclass
class AxiomReport:
    border_violations: list[tuple[Point, float]]
    margin_violations: list[tuple[Point, float, float]]
    negative_volumes: list[tuple[Rectangle, float]]
    range_violations: list[tuple[Point, float]]
    seed: int
    rectangles_tested: int
    tol: float = IDENTITY_TOL
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = not (
            self.border_violations
            or self.margin_violations
            or self.negative_volumes
            or self.range_violations
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "rectangles_tested": self.rectangles_tested,
            "tol": self.tol,
            "border_violations": [
                {"u": p.u, "v": p.v, "value": val} for p, val in self.border_violations
            ],
            "margin_violations": [
                {"u": p.u, "v": p.v, "value": val, "expected": exp}
                for p, val, exp in self.margin_violations
            ],
            "negative_volumes": [
                {"u1": r.u1, "u2": r.u2, "v1": r.v1, "v2": r.v2, "volume": vol}
                for r, vol in self.negative_volumes
            ],
            "range_violations": [
                {"u": p.u, "v": p.v, "value": val} for p, val in self.range_violations
            ],
        }


def _worst(scores: np.ndarray, mask: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(mask)
    order = np.argsort(-scores[idx], kind="stable")
    return idx[order[:MAX_WITNESSES]]


def check_axioms(
    c: CopulaExpr,
    rectangles: int = 10_000,
    seed: int = DEFAULT_SEED,
    tol: float = IDENTITY_TOL,
) -> AxiomReport:
    """Test borders, margins, range and 2-increasingness of ``c``.

    Borders and margins are probed on a 257-point edge lattice plus random
    abscissas. Rectangles are random with log-uniform sides in ``[1e-4, 1]``,
    plus every cell of a deterministic 64 x 64 sweep. Each witness is replayed
    through the scalar evaluation path before it is reported.
    """
    if rectangles < 1:
        raise ValueError("need at least one random rectangle")
    if not tol > 0:
        raise ValueError("tol must be positive")
    rng = np.random.default_rng(seed)

    t = np.concatenate([np.linspace(0.0, 1.0, EDGE_POINTS), rng.random(1000)])
    zeros, ones = np.zeros_like(t), np.ones_like(t)

    border: list[tuple[Point, float]] = []
    for uu, vv in ((zeros, t), (t, zeros)):
        vals = c._values(uu, vv)
        for i in _worst(np.abs(vals), np.abs(vals) > tol):
            p = Point(uu[i], vv[i])
            val = evaluate(c, p)
            if abs(val) > tol:
                border.append((p, val))

    margin: list[tuple[Point, float, float]] = []
    for uu, vv in ((ones, t), (t, ones)):
        vals = c._values(uu, vv)
        err = np.abs(vals - t)
        for i in _worst(err, err > tol):
            p = Point(uu[i], vv[i])
            val = evaluate(c, p)
            if abs(val - t[i]) > tol:
                margin.append((p, val, float(t[i])))

    gu, gv = lattice(SWEEP_CELLS)
    pu = np.concatenate([gu.ravel(), rng.random(RANDOM_POINTS)])
    pv = np.concatenate([gv.ravel(), rng.random(RANDOM_POINTS)])
    vals = c._values(pu, pv)
    excess = np.maximum(-vals, vals - 1.0)
    out_of_range: list[tuple[Point, float]] = []
    for i in _worst(excess, excess > tol):
        p = Point(pu[i], pv[i])
        val = evaluate(c, p)
        if val < -tol or val > 1.0 + tol:
            out_of_range.append((p, val))

    su = 10.0 ** rng.uniform(-4.0, 0.0, rectangles)
    sv = 10.0 ** rng.uniform(-4.0, 0.0, rectangles)
    u1 = rng.uniform(0.0, 1.0 - su)
    v1 = rng.uniform(0.0, 1.0 - sv)
    u2 = np.minimum(u1 + su, 1.0)
    v2 = np.minimum(v1 + sv, 1.0)
    edges = np.arange(SWEEP_CELLS + 1) / SWEEP_CELLS
    cu, cv = np.meshgrid(edges[:-1], edges[:-1], indexing="ij")
    cu2, cv2 = np.meshgrid(edges[1:], edges[1:], indexing="ij")
    u1 = np.concatenate([u1, cu.ravel()])
    u2 = np.concatenate([u2, cu2.ravel()])
    v1 = np.concatenate([v1, cv.ravel()])
    v2 = np.concatenate([v2, cv2.ravel()])
    vol = c._values(u2, v2) - c._values(u2, v1) - c._values(u1, v2) + c._values(u1, v1)
    negative: list[tuple[Rectangle, float]] = []
    for i in _worst(-vol, vol < -tol):
        r = Rectangle(u1[i], u2[i], v1[i], v2[i])
        replay = c_volume(c, r)
        if replay < -tol:
            negative.append((r, replay))

    return AxiomReport(
        border_violations=border,
        margin_violations=margin,
        negative_volumes=negative,
        range_violations=out_of_range,
        seed=seed,
        rectangles_tested=int(u1.size),
        tol=tol,
    )


def replay_axiom_report(c: CopulaExpr, report: AxiomReport) -> bool:
    """True when every witness in ``report`` still violates its axiom for ``c``."""
    tol = report.tol
    return (
        all(abs(evaluate(c, p)) > tol for p, _ in report.border_violations)
        and all(abs(evaluate(c, p) - e) > tol for p, _, e in report.margin_violations)
        and all(c_volume(c, r) < -tol for r, _ in report.negative_volumes)
        and all(
            not (-tol <= evaluate(c, p) <= 1.0 + tol) for p, _ in report.range_violations
        )
    )


class SymmetryCheck(NamedTuple):
    holds: bool
    witness: Point | None


def _probe_points(seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    gu, gv = lattice(SYMMETRY_RESOLUTION)
    pu = np.concatenate([gu.ravel(), rng.random(RANDOM_POINTS)])
    pv = np.concatenate([gv.ravel(), rng.random(RANDOM_POINTS)])
    return pu, pv


def _worst_mismatch(a: CopulaExpr, b: CopulaExpr, tol: float, seed: int) -> SymmetryCheck:
    if not tol > 0:
        raise ValueError("tol must be positive")
    pu, pv = _probe_points(seed)
    dev = np.abs(a._values(pu, pv) - b._values(pu, pv))
    i = int(np.argmax(dev))
    if dev[i] <= tol:
        return SymmetryCheck(True, None)
    return SymmetryCheck(False, Point(pu[i], pv[i]))


def check_symmetry(
    c: CopulaExpr, tol: float = IDENTITY_TOL, seed: int = DEFAULT_SEED
) -> SymmetryCheck:
    """``C(u, v) == C(v, u)`` on the 256-lattice and 10^4 random points."""
    return _worst_mismatch(c, transpose(c), tol, seed)


def check_radial_symmetry(
    c: CopulaExpr, tol: float = IDENTITY_TOL, seed: int = DEFAULT_SEED
) -> SymmetryCheck:
    """``C == C^`` on the 256-lattice and 10^4 random points."""
    return _worst_mismatch(c, survival(c), tol, seed)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    seed: int | None
    checks: list[CheckResult] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def failures(self) -> list[CheckResult]:
        return [ch for ch in self.checks if not ch.passed]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "seed": self.seed,
            "note": self.note,
            "checks": [
                {"name": ch.name, "passed": ch.passed, "detail": ch.detail}
                for ch in self.checks
            ],
        }


def symmetric_corpus() -> list[CopulaExpr]:
    mo = marshall_olkin(0.5, 0.25)
    return [
        independence(),
        upper_frechet(),
        lower_frechet(),
        marshall_olkin(0.4, 0.4),
        perturbed_q(0.5),
        symmetrize(mo),
        symmetrize(perturbed_p(0.7)),
        symmetrize(survival(marshall_olkin(0.3, 0.6))),
    ]


def radial_corpus() -> list[CopulaExpr]:
    return [
        independence(),
        upper_frechet(),
        lower_frechet(),
        radial_symmetrize(marshall_olkin(0.5, 0.25)),
        radial_symmetrize(transpose(marshall_olkin(0.2, 0.7))),
        radial_symmetrize(mix([0.5, 0.5], [marshall_olkin(0.6, 0.3), perturbed_q(1.0)])),
    ]


def catalog_corpus() -> list[CopulaExpr]:
    """Primitives over parameter grids plus a few transforms and mixes of them."""
    grid = (0.2, 0.4, 0.6, 0.8)
    thetas = tuple(np.linspace(-1.0, 1.0, 9))
    base: list[CopulaExpr] = [independence(), upper_frechet(), lower_frechet()]
    base += [marshall_olkin(a, b) for a in grid for b in grid]
    base += [perturbed_p(t) for t in thetas]
    base += [perturbed_q(t) for t in thetas]
    mo = marshall_olkin(0.5, 0.25)
    derived = [
        transpose(mo),
        survival(mo),
        symmetrize(mo),
        radial_symmetrize(mo),
        survival(perturbed_p(1.0)),
        transpose(perturbed_q(-1.0)),
        radial_symmetrize(perturbed_p(1.0)),
        mix([0.25, 0.75], [upper_frechet(), survival(perturbed_p(1.0))]),
        mix([0.2, 0.3, 0.5], [lower_frechet(), mo, perturbed_q(0.5)]),
        symmetrize(radial_symmetrize(transpose(marshall_olkin(0.3, 0.8)))),
    ]
    return base + derived


def convexity_suite(seed: int = DEFAULT_SEED, trials: int = 20) -> SuiteReport:
    """Random convex combinations stay (radially) symmetric."""
    rng = np.random.default_rng(seed)
    report = SuiteReport("convexity", seed)
    for label, corpus, check in (
        ("symmetric", symmetric_corpus(), check_symmetry),
        ("radially symmetric", radial_corpus(), check_radial_symmetry),
    ):
        for _ in range(trials):
            i, j = rng.choice(len(corpus), size=2, replace=False)
            lam = float(rng.random())
            m = mix([lam, 1.0 - lam], [corpus[i], corpus[j]])
            holds, witness = check(m, seed=seed)
            report.add(
                f"{label} mix lambda={lam:.4f} of #{i},#{j}",
                holds,
                "" if holds else f"witness=({witness.u!r}, {witness.v!r})",
            )
    return report


def inverse_problem_suite(
    tol: float = DEFAULT_TOL, thetas: Sequence[float] = (-1.0, -0.5, 0.5, 1.0)
) -> SuiteReport:
    """Non-uniqueness of preimages of Pi; uniqueness search for M and W."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    pi = independence()
    report = SuiteReport(
        "inverse-problem",
        None,
        note="uniqueness for M and W: falsification search; passing means no counterexample found",
    )
    for theta in thetas:
        for name, fam, proj in (
            ("sym", perturbed_p, symmetrize),
            ("rad", perturbed_q, radial_symmetrize),
        ):
            c = fam(theta)
            dist = lattice_distance(proj(c), pi)
            report.add(f"{name}(theta={theta}) == Pi", dist <= IDENTITY_TOL, f"lattice sup={dist:.3e}")
            lo, hi = sup_distance(c, pi, tol)
            need = abs(theta) / 27.0 - tol
            report.add(
                f"{fam.__name__}({theta}) != Pi",
                lo >= need,
                f"sup in [{lo:.6g}, {hi:.6g}], need lower >= {need:.6g}",
            )

    corpus = catalog_corpus()
    for target_name, target in (("M", upper_frechet()), ("W", lower_frechet())):
        for proj_name, proj in (("sym", symmetrize), ("rad", radial_symmetrize)):
            worst = None
            for c in corpus:
                if normalize(c) == target:
                    continue
                lo, _ = sup_distance(proj(c), target, tol)
                if worst is None or lo < worst[0]:
                    worst = (lo, c)
            report.add(
                f"{proj_name}(C) = {target_name} only for C = {target_name}",
                worst[0] > tol,
                f"closest projection is {worst[0]:.6g} away ({worst[1]!r})",
            )
    return report


def projection_optimality_suite(
    c: CopulaExpr,
    candidates: Iterable[CopulaExpr],
    tol: float = DEFAULT_TOL,
    radial: bool = False,
) -> SuiteReport:
    """``||C - proj(C)|| <= ||C - S||`` for every (radially) symmetric candidate S."""
    proj = radial_symmetrize if radial else symmetrize
    check: Callable[..., SymmetryCheck] = check_radial_symmetry if radial else check_symmetry
    candidates = list(candidates)
    for s in candidates:
        if not check(s).holds:
            kind = "radially symmetric" if radial else "symmetric"
            raise ValueError(f"candidate is not {kind}: {s!r}")
    report = SuiteReport("projection-optimality" + ("-radial" if radial else ""), None)
    best = sup_distance(c, proj(c), tol)
    for s in candidates:
        d = sup_distance(c, s, tol)
        report.add(
            repr(s),
            best.upper <= d.lower + 2.0 * tol,
            f"||C-proj|| <= {best.upper:.6g}, ||C-S|| >= {d.lower:.6g}",
        )
    return report


def _random_delta_lower(rng, k):
    v1, v2, u1, u2 = np.sort(rng.random((4, k)), axis=0)
    return u1, u2, v1, v2


def _random_omega_lower(rng, k):
    u1, u2 = np.sort(rng.random((2, k)), axis=0)
    v1, v2 = np.sort(rng.random((2, k)), axis=0) * (1.0 - u2)
    return u1, u2, v1, v2


def identity_suite(
    seed: int = DEFAULT_SEED,
    points: int = RANDOM_POINTS,
    corpus: Sequence[CopulaExpr] | None = None,
) -> SuiteReport:
    """Pointwise transform identities and the region-wise volume factorizations."""
    rng = np.random.default_rng(seed)
    u, v = rng.random(points), rng.random(points)
    corpus = catalog_corpus() if corpus is None else list(corpus)
    report = SuiteReport("identities", seed)

    def same(name, a, b, c):
        dev = float(np.max(np.abs(a._values(u, v) - b._values(u, v))))
        report.add(f"{name} [{c!r}]", dev <= IDENTITY_TOL, f"max dev={dev:.3e}")

    for c in corpus:
        same("(C^T)_S == C_S", symmetrize(transpose(c)), symmetrize(c), c)
        same("(C^)_R == C_R", radial_symmetrize(survival(c)), radial_symmetrize(c), c)
        same("(C_R)^T == (C^T)_R", transpose(radial_symmetrize(c)), radial_symmetrize(transpose(c)), c)
        same("(C_S)^ == (C^)_S", survival(symmetrize(c)), symmetrize(survival(c)), c)
        same("C^TT == C", transpose(transpose(c)), c, c)
        same("C^^ == C", survival(survival(c)), c, c)
        same("(C_S)_S == C_S", symmetrize(symmetrize(c)), symmetrize(c), c)
        same("(C_R)_R == C_R", radial_symmetrize(radial_symmetrize(c)), radial_symmetrize(c), c)

    pp, pq, pi = perturbed_p(1.0), perturbed_q(1.0), independence()

    def vol(c, u1, u2, v1, v2):
        return c._values(u2, v2) - c._values(u2, v1) - c._values(u1, v2) + c._values(u1, v1)

    cases = (
        ("Pi+P on lower triangle", pp, _random_delta_lower, lambda u1, u2, v1, v2: 2 - u1 - u2 + v1 + v2),
        ("Pi+Q below antidiagonal", pq, _random_omega_lower, lambda u1, u2, v1, v2: u1 + u2 + v1 + v2),
        (
            "Pi+Q above antidiagonal",
            pq,
            lambda rng, k: _reflect(_random_omega_lower(rng, k)),
            lambda u1, u2, v1, v2: u1 + u2 + v1 + v2 - 2,
        ),
    )
    for name, c, draw, factor in cases:
        u1, u2, v1, v2 = draw(rng, points)
        got = vol(c, u1, u2, v1, v2)
        want = vol(pi, u1, u2, v1, v2) * factor(u1, u2, v1, v2)
        dev = float(np.max(np.abs(got - want)))
        report.add(f"volume factorization: {name}", dev <= IDENTITY_TOL, f"max dev={dev:.3e}")
    return report


def _reflect(rect):
    u1, u2, v1, v2 = rect
    return 1.0 - u2, 1.0 - u1, 1.0 - v2, 1.0 - v1


def format_report(report: AxiomReport | SuiteReport) -> str:
    """Key/value text with one indented line per witness or check."""
    lines = []
    if isinstance(report, AxiomReport):
        lines.append(f"passed: {str(report.passed).lower()}")
        lines.append(f"seed: {report.seed}")
        lines.append(f"rectangles_tested: {report.rectangles_tested}")
        lines.append(f"tol: {report.tol!r}")
        lines.append(f"border_violations: {len(report.border_violations)}")
        lines += [f"  - u={p.u!r} v={p.v!r} value={val!r}" for p, val in report.border_violations]
        lines.append(f"margin_violations: {len(report.margin_violations)}")
        lines += [
            f"  - u={p.u!r} v={p.v!r} value={val!r} expected={e!r}"
            for p, val, e in report.margin_violations
        ]
        lines.append(f"negative_volumes: {len(report.negative_volumes)}")
        lines += [
            f"  - rect=[{r.u1!r},{r.u2!r}]x[{r.v1!r},{r.v2!r}] volume={vol!r}"
            for r, vol in report.negative_volumes
        ]
        lines.append(f"range_violations: {len(report.range_violations)}")
        lines += [f"  - u={p.u!r} v={p.v!r} value={val!r}" for p, val in report.range_violations]
    else:
        lines.append(f"suite: {report.name}")
        lines.append(f"passed: {str(report.passed).lower()}")
        if report.seed is not None:
            lines.append(f"seed: {report.seed}")
        if report.note:
            lines.append(f"note: {report.note}")
        lines.append(f"checks: {len(report.checks)}")
        lines.append(f"failures: {len(report.failures())}")
        lines += [
            f"  - [{'ok' if ch.passed else 'FAIL'}] {ch.name}" + (f" ({ch.detail})" if ch.detail else "")
            for ch in report.checks
        ]
    return "\n".join(lines) + "\n"


def report_json(report: AxiomReport | SuiteReport) -> str:
    return json.dumps(report.to_dict(), indent=2)
