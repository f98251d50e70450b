"""Single-photon key rates and the secure-region frontier.

R = 1 - H2(e_b) - H2(e_p) bits of key per sifted bit, with e_p taken
from the exact or the closed-form approximate phase-error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .epbound import EP_CAP, approx_bound, exact_bound, simple_bound
from .errors import DomainError

_ROOT_TOL = 1e-6
_MAX_BISECT = 200

METHODS = ("exact", "approximate", "simple")


@dataclass(frozen=True)
class KeyRatePoint:
    e_b: float
    alpha: float
    e_p_used: float
    R: float


def binary_entropy(x: float) -> float:
    """H2(x) = -x*log2(x) - (1-x)*log2(1-x), with H2(0) = H2(1) = 0."""
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"binary entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _bound(e_b: float, alpha: float, method: str) -> float:
    if method == "exact":
        return exact_bound(e_b, alpha).ep_max
    if method == "approximate":
        return approx_bound(e_b, alpha)
    if method == "simple":
        return min(simple_bound(e_b, alpha), EP_CAP)
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def key_rate_single_photon(
    e_b: float, alpha: float, method: str = "exact"
) -> KeyRatePoint:
    """Key rate with the phase error rate bounded by the chosen method.

    The rate may be negative (no key); callers decide whether to clamp.
    """
    ep = _bound(e_b, alpha, method)
    rate = 1.0 - binary_entropy(e_b) - binary_entropy(ep)
    return KeyRatePoint(e_b=e_b, alpha=alpha, e_p_used=ep, R=rate)


def _bisect_root(f, lo: float, hi: float) -> float:
    """Root of f on [lo, hi] with f(lo) > 0 > f(hi)."""
    for _ in range(_MAX_BISECT):
        if hi - lo <= _ROOT_TOL:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tolerable_eb(alpha: float, method: str = "approximate") -> float:
    """Largest e_b with nonnegative key rate at the given alpha.

    Returns 0 when the rate is already nonpositive at e_b = 0.
    """
    rate = lambda e: key_rate_single_photon(e, alpha, method).R
    if rate(0.0) <= 0.0:
        return 0.0
    if rate(0.5) > 0.0:
        return 0.5
    return _bisect_root(rate, 0.0, 0.5)


def tolerable_eb_equal(method: str = "approximate") -> float:
    """Threshold on the diagonal e_b = alpha.

    With the approximate method the bound reduces to e_p = 5*e_b, the
    diagonal value of the small-rate bound.
    """
    if method == "approximate":
        rate = lambda e: 1.0 - binary_entropy(e) - binary_entropy(
            min(5.0 * e, 0.5)
        )
    elif method == "exact":
        rate = lambda e: key_rate_single_photon(e, e, "exact").R
    else:
        raise ValueError(
            f"method must be 'exact' or 'approximate', got {method!r}"
        )
    if rate(0.5) > 0.0:
        return 0.5
    return _bisect_root(rate, 0.0, 0.5)


def bb84_tolerable_eb() -> float:
    """Threshold of 1 - 2*H2(e) = 0, the one-way BB84 comparison point."""
    rate = lambda e: 1.0 - 2.0 * binary_entropy(e)
    return _bisect_root(rate, 0.0, 0.5)


def secure_region_frontier(
    alpha_steps: int, method: str = "approximate"
) -> list[tuple[float, float]]:
    """(alpha, largest tolerable e_b) on a uniform alpha grid over [0, 1/2]."""
    if alpha_steps < 2:
        raise ValueError("alpha_steps must be >= 2")
    alphas = np.linspace(0.0, 0.5, alpha_steps)
    return [(float(a), tolerable_eb(float(a), method)) for a in alphas]
