"""Brute-force oracle for the measurement-dependent steering bound.

Hidden-variable strategies are parametrized by a deterministic response type
chi in {1, 2, 3, 4} for Alice and a state parameter xi for Bob, whose outcome
probabilities for the two measurements trace an ellipse:

    2 p_plus(y1) - 1 = cos(xi + beta),   2 p_plus(y2) - 1 = cos(xi - beta),

with beta the measurement-overlap angle (pi/4 by default). Alice's setting
probabilities are fixed to (p1, p2) = (1 - p, p), so the reweighted
correlators reach magnitude 2 and are handled as abstract vectors rather
than embedded in normalized behaviors. The oracle samples convex mixtures of
these extremal strategies and confirms the operator never exceeds the bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .behaviors import CorrelatorVector
from .inequality import local_bound
from .kernel import ValidationError

# Sign of Alice's response for setting x1 / x2 per response type chi.
_SIGN_X1 = {1: +1.0, 2: -1.0, 3: +1.0, 4: -1.0}
_SIGN_X2 = {1: +1.0, 2: -1.0, 3: -1.0, 4: +1.0}

XI_GRID_POINTS = 720


@dataclass(frozen=True)
class ExtremalStrategy:
    chi: int
    xi: float
    beta: float = math.pi / 4
    p1: float = 0.5
    p2: float = 0.5

    def __post_init__(self) -> None:
        if self.chi not in (1, 2, 3, 4):
            raise ValidationError(f"chi must be in {{1,2,3,4}}, got {self.chi}")
        if not 0.0 <= self.beta <= math.pi / 2:
            raise ValidationError(f"beta must be in [0, pi/2], got {self.beta}")
        if abs(self.p1 + self.p2 - 1.0) > 1e-12:
            raise ValidationError(f"p1 + p2 must equal 1, got {self.p1 + self.p2}")

    @classmethod
    def from_md_parameter(cls, chi: int, xi: float, p: float, beta: float = math.pi / 4):
        """Strategy with the standard assignment p1 = 1 - p, p2 = p."""
        return cls(chi=chi, xi=xi, beta=beta, p1=1.0 - p, p2=p)


@dataclass(frozen=True)
class StrategyMixture:
    weights: List[Tuple[ExtremalStrategy, float]]

    def __post_init__(self) -> None:
        ws = [w for _, w in self.weights]
        if any(w < 0 for w in ws):
            raise ValidationError("mixture weights must be non-negative")
        if abs(sum(ws) - 1.0) > 1e-10:
            raise ValidationError(f"mixture weights must sum to 1, got {sum(ws)}")


def extremal_correlators(s: ExtremalStrategy) -> CorrelatorVector:
    """Reweighted correlator vector of a single extremal strategy."""
    c_plus = math.cos(s.xi + s.beta)
    c_minus = math.cos(s.xi - s.beta)
    sa = _SIGN_X1[s.chi]
    sb = _SIGN_X2[s.chi]
    return CorrelatorVector(
        e11=sa * 2.0 * s.p1 * c_plus,
        e12=sa * 2.0 * s.p1 * c_minus,
        e21=sb * 2.0 * s.p2 * c_plus,
        e22=sb * 2.0 * s.p2 * c_minus,
    )


def mixture_correlators(m: StrategyMixture) -> CorrelatorVector:
    total = np.zeros(4)
    for s, w in m.weights:
        total += w * extremal_correlators(s).as_array()
    return CorrelatorVector(*total)


def saturating_mixture(p: float) -> StrategyMixture:
    """Equal mixture of chi=1 and chi=3 at xi = -pi/4 attaining 4 p (1 - p)."""
    s1 = ExtremalStrategy.from_md_parameter(1, -math.pi / 4, p)
    s3 = ExtremalStrategy.from_md_parameter(3, -math.pi / 4, p)
    return StrategyMixture([(s1, 0.5), (s3, 0.5)])


def general_beta_operator(c: CorrelatorVector, p1: float, p2: float, beta: float) -> float:
    """Operator value for arbitrary measurement overlap beta.

    The quadratics pick up a -2 A B cos(2 beta) cross-term and the
    hidden-variable bound becomes 4 p1 p2 sin(2 beta); at beta = pi/4 this
    reduces to md_operator with (p1, p2) = (1 - p, p).
    """
    if abs(p1 + p2 - 1.0) > 1e-12:
        raise ValidationError(f"p1 + p2 must equal 1, got {p1 + p2}")
    if not 0.0 < beta < math.pi / 2:
        raise ValidationError(f"beta must be in (0, pi/2), got {beta}")
    c2b = math.cos(2.0 * beta)
    a_plus = p2 * c.e11 + p1 * c.e21
    b_plus = p2 * c.e12 + p1 * c.e22
    a_minus = p2 * c.e11 - p1 * c.e21
    b_minus = p2 * c.e12 - p1 * c.e22
    alpha1 = a_plus**2 + b_plus**2 - 2.0 * a_plus * b_plus * c2b
    alpha2 = a_minus**2 + b_minus**2 - 2.0 * a_minus * b_minus * c2b
    return math.sqrt(max(alpha1, 0.0)) + math.sqrt(max(alpha2, 0.0))


@dataclass(frozen=True)
class SweepReport:
    p: float
    samples: int
    max_operator: float
    bound: float
    passed: bool
    seed: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "samples": self.samples,
                "maxI": self.max_operator,
                "bound": self.bound,
                "pass": self.passed,
                "seed": self.seed,
            }
        )


def _component_correlators(
    chi: np.ndarray, xi: np.ndarray, p: float
) -> np.ndarray:
    """Vectorized correlators at beta = pi/4; returns shape chi.shape + (4,)."""
    beta = math.pi / 4
    c_plus = np.cos(xi + beta)
    c_minus = np.cos(xi - beta)
    sa = np.where((chi == 1) | (chi == 3), 1.0, -1.0)
    sb = np.where((chi == 1) | (chi == 4), 1.0, -1.0)
    p1, p2 = 1.0 - p, p
    return np.stack(
        [
            sa * 2.0 * p1 * c_plus,
            sa * 2.0 * p1 * c_minus,
            sb * 2.0 * p2 * c_plus,
            sb * 2.0 * p2 * c_minus,
        ],
        axis=-1,
    )


def _operator_values(e: np.ndarray, p: float) -> np.ndarray:
    """Vectorized md_operator over an (..., 4) array of correlator vectors."""
    q = 1.0 - p
    a1 = (p * e[..., 0] + q * e[..., 2]) ** 2 + (p * e[..., 1] + q * e[..., 3]) ** 2
    a2 = (p * e[..., 0] - q * e[..., 2]) ** 2 + (p * e[..., 1] - q * e[..., 3]) ** 2
    return np.sqrt(a1) + np.sqrt(a2)


def bound_sweep(p: float, samples: int, seed: int, components: int = 4) -> SweepReport:
    """Sample random strategy mixtures and report the largest operator value.

    Every sample mixes ``components`` extremal strategies with Dirichlet
    weights; response types are uniform over {1..4} and xi is drawn half the
    time from a uniform 720-point grid and half the time uniformly from
    [-pi, pi). All pure grid strategies are also evaluated as singleton
    mixtures, so the reported maximum approaches the bound. Sampling is a
    single deterministic stream of the given seed.
    """
    if not 0.0 < p <= 0.5:
        raise ValidationError(f"p must be in (0, 0.5], got {p}")
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)

    chi = rng.integers(1, 5, size=(samples, components))
    xi_grid = np.linspace(-math.pi, math.pi, XI_GRID_POINTS, endpoint=False)
    use_grid = rng.uniform(size=(samples, components)) < 0.5
    xi = np.where(
        use_grid,
        xi_grid[rng.integers(0, XI_GRID_POINTS, size=(samples, components))],
        rng.uniform(-math.pi, math.pi, size=(samples, components)),
    )
    weights = rng.dirichlet(np.ones(components), size=samples)

    mixed = np.einsum("sc,sce->se", weights, _component_correlators(chi, xi, p))
    max_mixture = float(np.max(_operator_values(mixed, p)))

    # Pure grid strategies over every response type.
    grid_chi = np.repeat(np.arange(1, 5), XI_GRID_POINTS)
    grid_xi = np.tile(xi_grid, 4)
    max_grid = float(np.max(_operator_values(_component_correlators(grid_chi, grid_xi, p), p)))

    max_operator = max(max_mixture, max_grid)
    bound = local_bound(p)
    return SweepReport(
        p=p,
        samples=samples,
        max_operator=max_operator,
        bound=bound,
        passed=max_operator <= bound + 1e-9,
        seed=seed,
    )
