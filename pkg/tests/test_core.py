import math
import threading

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from copula_forge.catalog import (
    independence,
    lower_frechet,
    marshall_olkin,
    perturbed_p,
    upper_frechet,
)
from copula_forge.core import (
    GridCopula,
    Mix,
    Point,
    Rectangle,
    Survival,
    Transpose,
    c_volume,
    evaluate,
    sample_grid,
)
from strategies import copulas, points, unit

TOL = 1e-12


class TestPointRectangle:
    @pytest.mark.parametrize("u,v", [(-0.1, 0.5), (0.5, 1.0001), (math.nan, 0.2)])
    def test_point_rejects_outside_unit_square(self, u, v):
        with pytest.raises(ValueError):
            Point(u, v)

    def test_point_accepts_corners(self):
        assert Point(0, 1) == Point(0.0, 1.0)

    @pytest.mark.parametrize(
        "coords",
        [(0.5, 0.5, 0.1, 0.2), (0.2, 0.1, 0.1, 0.2), (0.1, 0.2, 0.3, 0.3), (0.1, 0.2, -0.1, 0.3)],
    )
    def test_rectangle_rejects_degenerate_or_outside(self, coords):
        with pytest.raises(ValueError):
            Rectangle(*coords)

    def test_frozen(self):
        p = Point(0.1, 0.2)
        with pytest.raises(AttributeError):
            p.u = 0.3


class TestEvaluate:
    def test_independence(self):
        assert evaluate(independence(), Point(0.5, 0.5)) == 0.25

    def test_upper_frechet(self):
        assert evaluate(upper_frechet(), Point(0.3, 0.7)) == 0.3

    def test_survival_of_independence(self):
        assert evaluate(Survival(independence()), Point(0.3, 0.7)) == pytest.approx(0.21, abs=TOL)

    def test_marshall_olkin_both_branches(self):
        got = evaluate(marshall_olkin(0.5, 0.25), Point(0.1, 0.6))
        first = 0.1**0.5 * 0.6
        second = 0.1 * 0.6**0.75
        assert second < first
        assert got == pytest.approx(second, abs=TOL)
        assert got == pytest.approx(0.068173, abs=1e-6)

    def test_no_clamping(self):
        from copula_forge.catalog import force_perturbed_p

        c = force_perturbed_p(30.0)
        assert evaluate(c, Point(1 / 3, 2 / 3)) < 0.0

    def test_call_broadcasts(self):
        u = np.array([0.1, 0.5, 0.9])
        assert np.allclose(independence()(u, 0.5), u * 0.5)
        assert isinstance(independence()(0.2, 0.3), float)


class TestCVolume:
    def test_independence_square(self):
        assert c_volume(independence(), Rectangle(0, 0.5, 0, 0.5)) == 0.25

    def test_upper_frechet_off_diagonal(self):
        assert c_volume(upper_frechet(), Rectangle(0, 0.5, 0.5, 1)) == 0.0

    def test_perturbed_p_lower_triangle(self):
        r = Rectangle(0.2, 0.4, 0.1, 0.15)
        got = c_volume(perturbed_p(1), r)
        assert got == pytest.approx(0.0165, abs=TOL)
        v_pi = c_volume(independence(), r)
        assert got == pytest.approx(v_pi * (2 - r.u1 - r.u2 + r.v1 + r.v2), abs=TOL)


class TestSampleGrid:
    def test_independence(self):
        g = sample_grid(independence(), 2)
        assert np.array_equal(g.values, [[0, 0, 0], [0, 0.25, 0.5], [0, 0.5, 1]])

    def test_upper_frechet(self):
        g = sample_grid(upper_frechet(), 2)
        assert np.array_equal(g.values, [[0, 0, 0], [0, 0.5, 0.5], [0, 0.5, 1]])

    def test_perturbed_p_vanishes_on_coarse_grid(self):
        assert sample_grid(perturbed_p(1), 2) == sample_grid(independence(), 2)

    @pytest.mark.parametrize("n", [0, -3, 2.5])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            sample_grid(independence(), n)

    @pytest.mark.parametrize(
        "c",
        [marshall_olkin(0.5, 0.25), Survival(marshall_olkin(0.3, 0.7)), Mix((0.3, 0.7), (perturbed_p(0.4), lower_frechet()))],
        ids=repr,
    )
    def test_values_match_pointwise_eval_exactly(self, c):
        n = 32
        g = sample_grid(c, n)
        for i in range(n + 1):
            for j in range(n + 1):
                assert g.values[i, j] == evaluate(c, Point(i / n, j / n))

    def test_grid_is_read_only_and_border_exact(self):
        g = sample_grid(marshall_olkin(0.2, 0.9), 64)
        assert g.border_error() <= TOL
        with pytest.raises(ValueError):
            g.values[1, 1] = 0.0


@given(copulas, unit, unit)
def test_border_and_margins(c, u, v):
    assert abs(c(0.0, v)) <= TOL
    assert abs(c(u, 0.0)) <= TOL
    assert abs(c(1.0, v) - v) <= TOL
    assert abs(c(u, 1.0) - u) <= TOL


@given(copulas, points, points)
def test_lipschitz(c, p, q):
    lhs = abs(evaluate(c, p) - evaluate(c, q))
    assert lhs <= abs(p.u - q.u) + abs(p.v - q.v) + TOL


@given(copulas, points)
def test_frechet_sandwich(c, p):
    val = evaluate(c, p)
    assert max(p.u + p.v - 1.0, 0.0) - TOL <= val <= min(p.u, p.v) + TOL


@given(copulas, points)
def test_involutions(c, p):
    assert abs(evaluate(Transpose(Transpose(c)), p) - evaluate(c, p)) <= TOL
    assert abs(evaluate(Survival(Survival(c)), p) - evaluate(c, p)) <= TOL


def test_expressions_are_immutable():
    c = Mix((0.5, 0.5), (independence(), upper_frechet()))
    with pytest.raises(AttributeError):
        c.weights = (1.0,)
    mo = marshall_olkin(0.5, 0.25)
    with pytest.raises(AttributeError):
        mo.alpha = 0.3


@pytest.mark.parametrize(
    "weights,children",
    [
        ((0.5, 0.6), (independence(), upper_frechet())),
        ((-0.5, 1.5), (independence(), upper_frechet())),
        ((1.0,), (independence(), upper_frechet())),
        ((), ()),
    ],
)
def test_mix_validation(weights, children):
    with pytest.raises(ValueError):
        Mix(weights, children)


def test_concurrent_evaluation_of_shared_expression():
    c = Mix((0.25, 0.75), (marshall_olkin(0.5, 0.25), Survival(perturbed_p(1))))
    expected = sample_grid(c, 128).values
    results = []

    def work():
        results.append(sample_grid(c, 128).values)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(np.array_equal(r, expected) for r in results)
