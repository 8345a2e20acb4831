import math

import numpy as np
import pytest

from mdsteer.inequality import local_bound, pr_closed_form, tilted_closed_form
from mdsteer.kernel import Direction, ValidationError
from mdsteer.optimize import (
    QuantumAnsatz,
    SearchConfig,
    curve,
    quantum_max,
    quantum_value,
)

FAST = SearchConfig(restarts=6, grid_density=5, max_iterations=200)


def random_planar_ansatz(rng, theta=None):
    t = rng.uniform(0, math.pi / 2) if theta is None else theta
    return QuantumAnsatz(t, tuple(Direction.planar(a) for a in rng.uniform(0, 2 * math.pi, 4)))


class TestQuantumValue:
    def test_product_state_never_violates(self):
        # the hidden-variable bound assumes Bob's pair is mutually unbiased
        # (overlap angle pi/4); aligned pairs fall outside the derivation
        rng = np.random.default_rng(17)
        for _ in range(100):
            a1, a2, b1 = rng.uniform(0, 2 * math.pi, 3)
            dirs = (
                Direction.planar(a1),
                Direction.planar(a2),
                Direction.planar(b1),
                Direction.planar(b1 + math.pi / 2),
            )
            assert quantum_value(QuantumAnsatz(0.0, dirs), 0.5) <= 1.0 + 1e-9

    def test_chsh_optimal_configuration(self):
        dirs = (
            Direction.planar(0.0),
            Direction.planar(math.pi / 2),
            Direction.planar(-math.pi / 4),
            Direction.planar(math.pi / 4),
        )
        value = quantum_value(QuantumAnsatz(math.pi / 4, dirs), 0.5)
        assert value == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_p_zero_bound_is_zero(self):
        rng = np.random.default_rng(4)
        ansatz = random_planar_ansatz(rng)
        assert local_bound(0.0) == 0.0
        assert quantum_value(ansatz, 0.0) >= 0.0


class TestQuantumMax:
    def test_half_reaches_sqrt2(self):
        point = quantum_max(0.5, FAST)
        assert point.value == pytest.approx(math.sqrt(2), abs=1e-3)
        assert point.value > local_bound(0.5)

    def test_dominates_tilted_constructions(self):
        point = quantum_max(0.5, FAST)
        for delta in np.linspace(0.05, math.pi / 6, 5):
            assert point.value >= tilted_closed_form(delta, 0.5) - 1e-6

    def test_below_pr_curve(self):
        for p in (0.2, 0.5):
            assert quantum_max(p, FAST).value <= pr_closed_form(p) + 1e-6

    def test_deterministic(self):
        a = quantum_max(0.4, FAST)
        b = quantum_max(0.4, FAST)
        assert a.value == b.value
        assert a.argmax.theta == b.argmax.theta

    def test_full_sphere_agrees_at_half(self):
        cfg = SearchConfig(restarts=4, grid_density=4, max_iterations=200, full_sphere=True)
        point = quantum_max(0.5, cfg)
        assert point.value == pytest.approx(math.sqrt(2), abs=1e-3)


class TestCurve:
    def test_local_endpoints(self):
        pts = curve("local", [0.0, 0.25, 0.5])
        assert [pt.value for pt in pts] == [0.0, 0.75, 1.0]

    def test_prbox_endpoints(self):
        pts = curve("prbox", [0.0, 0.5])
        assert pts[0].value == pytest.approx(2 * math.sqrt(2), abs=1e-15)
        assert pts[1].value == pytest.approx(2.0, abs=1e-15)

    def test_tilted_violation_at_half(self):
        pts = curve("tilted", [0.5], delta=math.pi / 6)
        assert pts[0].delta == pytest.approx(0.4012585384440734, abs=1e-3)

    def test_tilted_matches_closed_form(self):
        pts = curve("tilted", [0.1, 0.3, 0.5], delta=0.2)
        for pt in pts:
            assert pt.value == pytest.approx(tilted_closed_form(0.2, pt.p), abs=1e-9)

    def test_randomness_annotates_rate(self):
        pts = curve("randomness", [0.25, 0.5], gamma=math.pi / 24)
        for pt in pts:
            assert pt.rate is not None and 1.0 <= pt.rate <= 2.0
            assert pt.delta == pytest.approx(pt.value - local_bound(pt.p), abs=1e-12)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            curve("bogus", [0.5])

    def test_grid_range_checked(self):
        with pytest.raises(ValidationError):
            curve("local", [0.7])

    def test_missing_parameter(self):
        with pytest.raises(ValidationError):
            curve("tilted", [0.5])
        with pytest.raises(ValidationError):
            curve("randomness", [0.5])


class TestMonotonicity:
    def test_quantum_max_non_increasing(self):
        # empirical property of the optimizer's curve (it tracks the PR-box
        # curve 2 sqrt(2 - 4p(1-p)), which decreases on [0, 1/2]);
        # coarse grid for speed
        cfg = SearchConfig(restarts=3, grid_density=4, max_iterations=150)
        grid = np.linspace(0.05, 0.5, 6)
        values = [quantum_max(p, cfg).value for p in grid]
        assert all(b <= a + 1e-4 for a, b in zip(values, values[1:]))
