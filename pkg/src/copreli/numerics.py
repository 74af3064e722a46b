"""Shared finite-difference helpers.

All hazard-type quantities in this package are log-derivatives of smooth,
strictly positive functions, so a central stencil with a step proportional
to t is accurate to ~1e-8 relative and exact for log-quadratic laws.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .exceptions import SingularityError

__all__ = ["adaptive_step", "central_log_derivative", "central_derivative", "richardson_pair"]

_TINY = 1e-12


def adaptive_step(t: float) -> float:
    return max(1e-6, 1e-4 * t)


def central_log_derivative(f: Callable[[float], float], t: float,
                           h: float | None = None) -> float:
    """d/dt ln f(t) by central differences; the step shrinks near t = 0."""
    if h is None:
        h = adaptive_step(t)
    if t - h <= 0.0:
        h = t / 2.0
    if h <= 0.0:
        raise SingularityError("log-derivative needs an interior point t > 0", t=t)
    lo = f(t - h)
    hi = f(t + h)
    if not (lo > _TINY and hi > _TINY):
        raise SingularityError("function vanishes inside the stencil", t=t)
    return (np.log(hi) - np.log(lo)) / (2.0 * h)


def central_derivative(f: Callable[[float], float], t: float,
                       h: float | None = None) -> float:
    if h is None:
        h = adaptive_step(t)
    if t - h < 0.0:
        h = t / 2.0 if t > 0 else 1e-6
    return (f(t + h) - f(t - h)) / (2.0 * h)


def richardson_pair(coarse: float, fine: float, order: int = 2, ratio: float = 2.0) -> float:
    """Combine estimates at step h and h/ratio, cancelling the O(h^order) term."""
    factor = ratio**order
    return (factor * fine - coarse) / (factor - 1.0)
