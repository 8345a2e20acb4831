"""The measurement-dependent steering inequality and its closed forms.

The central quantity is the operator value sqrt(alpha1) + sqrt(alpha2) built
from reweighted correlators, bounded by 4 p (1 - p) for any hidden-variable
model whose setting bias is limited by the measurement-dependence parameter
p in [0, 0.5] (p = 0.5 means fully free choice).
"""

from __future__ import annotations

import math

from .behaviors import CorrelatorVector
from .kernel import ValidationError


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 0.5:
        raise ValidationError(f"measurement dependence parameter must be in [0, 0.5], got {p}")


def md_operator(c: CorrelatorVector, p: float) -> float:
    """sqrt(alpha1) + sqrt(alpha2) for the given correlators.

    alpha1 = (p<x1y1> + (1-p)<x2y1>)^2 + (p<x1y2> + (1-p)<x2y2>)^2
    alpha2 = (p<x1y1> - (1-p)<x2y1>)^2 + (p<x1y2> - (1-p)<x2y2>)^2
    """
    _check_p(p)
    q = 1.0 - p
    alpha1 = (p * c.e11 + q * c.e21) ** 2 + (p * c.e12 + q * c.e22) ** 2
    alpha2 = (p * c.e11 - q * c.e21) ** 2 + (p * c.e12 - q * c.e22) ** 2
    return math.sqrt(alpha1) + math.sqrt(alpha2)


def local_bound(p: float) -> float:
    """Hidden-variable bound 4 p (1 - p); equals 1 at p = 0.5, 0 at p = 0."""
    _check_p(p)
    return 4.0 * p * (1.0 - p)


def violation(c: CorrelatorVector, p: float) -> float:
    """Signed excess of the operator over the local bound.

    Positive values certify that no measurement-dependent hidden-variable
    model with parameter p reproduces the correlators.
    """
    return md_operator(c, p) - local_bound(p)


def pr_closed_form(p: float) -> float:
    """Operator value for PR box correlators: 2 sqrt(2 - 4 p (1 - p))."""
    _check_p(p)
    return 2.0 * math.sqrt(2.0 - 4.0 * p * (1.0 - p))


def tilted_closed_form(delta: float, p: float) -> float:
    """Operator value for the tilted quantum-extremal behavior at angle delta."""
    if not 0.0 < delta <= math.pi / 6:
        raise ValidationError(f"delta must be in (0, pi/6], got {delta}")
    _check_p(p)
    c2 = math.cos(delta) ** 2
    s = math.sin(delta)
    term1 = math.sqrt(c2 * ((2.0 * (p - 1.0) * s + p) ** 2 + (p - 1.0) ** 2))
    term2 = math.sqrt(c2 * ((p - 2.0 * (p - 1.0) * s) ** 2 + (p - 1.0) ** 2))
    return term1 + term2


def tilted_bell_value(c: CorrelatorVector, delta: float) -> float:
    """Tilted Bell functional <x1y1> + (<x1y2> + <x2y1>)/sin(delta) - <x2y2>/cos(2 delta)."""
    if not 0.0 < delta < math.pi / 4:
        raise ValidationError(f"delta must be in (0, pi/4), got {delta}")
    return c.e11 + (c.e12 + c.e21) / math.sin(delta) - c.e22 / math.cos(2.0 * delta)


def binary_entropy(q: float) -> float:
    """H_b(q) in bits; 0 at the endpoints."""
    if not 0.0 <= q <= 1.0:
        raise ValidationError(f"binary entropy argument must be in [0, 1], got {q}")
    if q == 0.0 or q == 1.0:
        return 0.0
    return -q * math.log2(q) - (1.0 - q) * math.log2(1.0 - q)


def randomness_rate(gamma: float) -> float:
    """Certified random bits per round for the randomness-tuned behavior.

    r = 1 + H_b[1/2 + s/2 - (3/sqrt(2)) cos((1/3) arccos(-s / (2 sqrt(2))))]
    with s = sin(3 gamma) + 3 cos(gamma + pi/6).
    """
    if not 0.0 <= gamma <= math.pi / 12:
        raise ValidationError(f"gamma must be in [0, pi/12], got {gamma}")
    s = math.sin(3.0 * gamma) + 3.0 * math.cos(gamma + math.pi / 6.0)
    u = -s / (2.0 * math.sqrt(2.0))
    if abs(u) > 1.0:
        if abs(u) - 1.0 > 1e-12:
            raise ValidationError(f"arccos argument {u} outside [-1, 1]")
        u = math.copysign(1.0, u)  # rounding at the gamma = pi/12 endpoint
    q = 0.5 + s / 2.0 - (3.0 / math.sqrt(2.0)) * math.cos(math.acos(u) / 3.0)
    return 1.0 + binary_entropy(q)
