"""Upper bounds on the phase error rate from observed (e_b, alpha).

The worst-case attack consistent with observed bit error rate e_b and
check-state error rate alpha maximizes e_p = (|a_Z|^2 + |a_Y|^2) * e_b
subject to

    |a_X|^2 + |a_Y|^2 = 1                      (scaling)
    eb_hat    := (1-e_b)/e_b  = |a_I|^2 + |a_Z|^2
    alpha_hat := (1-alpha)/alpha
              = (|a_I| + |a_X|)^2 / (|a_Y| - |a_Z|)^2   (aligned phases)

after aligning a_I with a_X and a_Z with i*a_Y, which only increases the
objective.  Eliminating |a_I| and |a_X| leaves a quartic in |a_Z| whose
relevant root is `az_branch`; the remaining 1-D maximization over |a_Y|
is `exact_bound`.  `approx_bound` is the closed form obtained from an
analytic upper bound on |a_Z|, and `simple_bound` its small-rate
simplification alpha + 2*e_b + 2*sqrt(e_b*alpha).

Reported bounds are capped at 1/2: a phase error rate of 1/2 already
gives away everything, so larger values are never needed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .attack import KrausCoefficients
from .errors import DomainError

_SCAN_POINTS = 10_001  # uniform |a_Y| grid on [0, 1]
_AY_TOL = 1e-9  # golden-section |a_Y| tolerance
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

EP_CAP = 0.5


@dataclass(frozen=True)
class HatParams:
    """Odds ratios eb_hat = (1-e_b)/e_b and alpha_hat = (1-alpha)/alpha."""

    eb_hat: float
    alpha_hat: float

    def __post_init__(self):
        if not (self.eb_hat >= 1.0 and self.alpha_hat >= 1.0):
            raise DomainError(
                "hatted parameters require e_b and alpha in (0, 1/2]"
            )

    @classmethod
    def from_rates(cls, e_b: float, alpha: float) -> "HatParams":
        if not (0.0 < e_b <= 0.5) or not (0.0 < alpha <= 0.5):
            raise DomainError(
                f"(e_b, alpha)=({e_b}, {alpha}) outside (0, 1/2] x (0, 1/2]"
            )
        return cls((1.0 - e_b) / e_b, (1.0 - alpha) / alpha)


@dataclass(frozen=True)
class BoundResult:
    """A phase-error bound with the |a_Y| and attack element achieving it.

    ep_max is capped at 1/2 for reporting; ep_uncapped keeps the raw
    maximization value, which is what arbitrary attacks (whose e_p may
    exceed 1/2) are sound against.
    """

    ep_max: float
    ay_star: float
    witness: KrausCoefficients
    method: str  # "exact" | "limiting"
    ep_uncapped: float


def _check_domain(e_b: float, alpha: float) -> None:
    if not (0.0 <= e_b <= 0.5) or not (0.0 <= alpha <= 0.5):
        raise DomainError(
            f"(e_b, alpha)=({e_b}, {alpha}) outside [0, 1/2] x [0, 1/2]"
        )


def az_branch(ay: float, hats: HatParams) -> float | None:
    """|a_Z| on the (+ + -) root branch at |a_Y| = ay, or None if infeasible.

    Infeasible when the inner radicand is negative (the pre-squaring
    constraint has no solution there) or when |a_Z|^2 > eb_hat (which
    would force |a_I|^2 < 0).
    """
    ah, eh = hats.alpha_hat, hats.eb_hat
    s = math.sqrt(max(ah * (1.0 - ay * ay), 0.0))
    r = eh * (1.0 + ah) - 1.0 - ay * ay * (ah - 1.0) - 2.0 * ay * s
    if r < 0.0:
        return None
    z = (ah * ay + s + math.sqrt(r)) / (1.0 + ah)
    if z * z > eh:
        return None
    return z


def _objective(ay: float, hats: HatParams, e_b: float) -> float:
    """(|a_Z|^2 + |a_Y|^2) * e_b on the branch; -inf when infeasible."""
    z = az_branch(ay, hats)
    if z is None:
        return -math.inf
    return (z * z + ay * ay) * e_b


def _scan(hats: HatParams, e_b: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized objective over the |a_Y| grid (-inf marks infeasible)."""
    ay = np.linspace(0.0, 1.0, _SCAN_POINTS)
    s = np.sqrt(np.maximum(hats.alpha_hat * (1.0 - ay * ay), 0.0))
    r = (
        hats.eb_hat * (1.0 + hats.alpha_hat)
        - 1.0
        - ay * ay * (hats.alpha_hat - 1.0)
        - 2.0 * ay * s
    )
    z = (hats.alpha_hat * ay + s + np.sqrt(np.maximum(r, 0.0))) / (
        1.0 + hats.alpha_hat
    )
    feasible = (r >= 0.0) & (z * z <= hats.eb_hat)
    obj = np.where(feasible, (z * z + ay * ay) * e_b, -np.inf)
    return ay, obj


def _golden_max(f, lo: float, hi: float) -> tuple[float, float]:
    """Golden-section maximization of f on [lo, hi] to _AY_TOL in x."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    while hi - lo > _AY_TOL:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
        if fc > best_f:
            best_x, best_f = c, fc
        if fd > best_f:
            best_x, best_f = d, fd
    return best_x, best_f


def _witness_from_ay(ay: float, hats: HatParams) -> KrausCoefficients:
    """Attack element achieving the branch objective at |a_Y| = ay.

    The branch value solves the squared constraint, which the original
    equation enters either as u + v or as |u - v| (u = |a_X|, v = |a_I|);
    the a_I phase is picked to match whichever sign holds, so the witness
    reproduces (e_b, alpha) exactly in both cases.
    """
    z = az_branch(ay, hats)
    if z is None:
        raise ValueError(f"infeasible |a_Y|={ay}")
    v = math.sqrt(max(hats.eb_hat - z * z, 0.0))
    u = math.sqrt(max(1.0 - ay * ay, 0.0))
    rhs = math.sqrt(hats.alpha_hat) * abs(ay - z)
    scale = max(1.0, rhs)
    if abs(u + v - rhs) <= 1e-9 * scale:
        return KrausCoefficients(v, u, ay, 1j * z)
    if abs(abs(u - v) - rhs) <= 1e-9 * scale:
        return KrausCoefficients(-v, u, ay, 1j * z)
    raise RuntimeError(
        f"branch value at |a_Y|={ay} solves neither constraint sign"
    )


def _capped_witness(hats: HatParams) -> tuple[float, KrausCoefficients] | None:
    """Attack element with e_p = 1/2 at the given (e_b, alpha).

    Fixing |a_Y|^2 + |a_Z|^2 = (eb_hat + 1)/2 pins e_p to 1/2; the two
    interference cosines are then free to meet the alpha constraint,
    which they can whenever the attainable ranges of |a_I + a_X|^2 and
    alpha_hat * |i a_Y - a_Z|^2 overlap for some |a_Y|.
    """
    ah, eh = hats.alpha_hat, hats.eb_hat
    q = 0.5 * (eh + 1.0)  # |a_Y|^2 + |a_Z|^2 forcing e_p = 1/2
    for y in np.linspace(0.0, 1.0, 2001):
        y = float(y)
        z = math.sqrt(max(q - y * y, 0.0))
        x = math.sqrt(max(1.0 - y * y, 0.0))
        ii = math.sqrt(max(eh - z * z, 0.0))
        lo_l, hi_l = (ii - x) ** 2, (ii + x) ** 2
        lo_r, hi_r = ah * (y - z) ** 2, ah * (y + z) ** 2
        if max(lo_l, lo_r) > min(hi_l, hi_r):
            continue
        w = 0.5 * (max(lo_l, lo_r) + min(hi_l, hi_r))
        c_ix = (w - ii * ii - x * x) / (2.0 * ii * x) if ii * x > 0.0 else 0.0
        c_yz = (
            (y * y + z * z - w / ah) / (2.0 * y * z) if y * z > 0.0 else 0.0
        )
        c_ix = min(1.0, max(-1.0, c_ix))
        c_yz = min(1.0, max(-1.0, c_yz))
        witness = KrausCoefficients(
            ii * cmath.exp(1j * math.acos(c_ix)),
            x,
            y,
            z * cmath.exp(1j * (math.pi / 2 - math.acos(c_yz))),
        )
        return y, witness
    return None


def _limiting_case(e_b: float, alpha: float) -> BoundResult:
    """Bounds on the axes, where the hatted parameters are undefined."""
    if e_b == 0.0 and alpha == 0.0:
        return BoundResult(
            0.0, 0.0, KrausCoefficients(1.0, 0, 0, 0), "limiting", 0.0
        )
    if e_b == 0.0:
        # a_X = a_Y = 0 is forced, so e_p = alpha.
        w = KrausCoefficients(math.sqrt(1.0 - alpha), 0, 0, 1j * math.sqrt(alpha))
        return BoundResult(alpha, 0.0, w, "limiting", alpha)
    # alpha = 0 forces a_Z = i*a_Y, so e_p <= 2*e_b, saturated at a_X = 0.
    ep = min(2.0 * e_b, EP_CAP)
    if e_b <= 0.25:
        ay = math.sqrt(e_b)
        w = KrausCoefficients(math.sqrt(1.0 - 2.0 * e_b), 0, ay, 1j * ay)
    else:
        # e_p caps at 1/2; put the surplus bit-error weight into a_X.
        ay = 0.5
        w = KrausCoefficients(
            math.sqrt(0.75 - e_b), math.sqrt(e_b - 0.25), ay, 0.5j
        )
    return BoundResult(ep, ay, w, "limiting", 2.0 * e_b)


def exact_bound(e_b: float, alpha: float) -> BoundResult:
    """Tight phase-error bound by 1-D maximization over |a_Y|.

    Scans the feasible |a_Y| grid, refines with golden section, and caps
    the result at 1/2.  When the cap binds, ay_star/witness are replaced
    by an attack with e_p exactly 1/2 so that the witness still
    reproduces (e_b, alpha, ep_max).
    """
    _check_domain(e_b, alpha)
    if e_b == 0.0 or alpha == 0.0:
        return _limiting_case(e_b, alpha)

    hats = HatParams.from_rates(e_b, alpha)
    ay, obj = _scan(hats, e_b)
    if not np.isfinite(obj).any():
        raise RuntimeError(
            f"no feasible |a_Y| found for (e_b, alpha)=({e_b}, {alpha})"
        )
    i = int(np.argmax(obj))
    lo = ay[max(i - 1, 0)]
    hi = ay[min(i + 1, len(ay) - 1)]
    ay_star, val = _golden_max(
        lambda y: _objective(y, hats, e_b), float(lo), float(hi)
    )
    if obj[i] > val:
        ay_star, val = float(ay[i]), float(obj[i])

    if val <= EP_CAP:
        return BoundResult(
            val, ay_star, _witness_from_ay(ay_star, hats), "exact", val
        )
    capped = _capped_witness(hats)
    if capped is None:
        # Not reachable for any tested (e_b, alpha); keep the maximizer
        # as witness (its e_p then exceeds the reported cap).
        return BoundResult(
            EP_CAP, ay_star, _witness_from_ay(ay_star, hats), "exact", val
        )
    y_cap, witness = capped
    return BoundResult(EP_CAP, y_cap, witness, "exact", val)


def approx_bound(e_b: float, alpha: float, capped: bool = True) -> float:
    """Closed-form phase-error bound.

    alpha + e_b*(2 - 2*alpha - alpha^2)
          + 2*sqrt(alpha*(1-alpha)*e_b*(1 - e_b - e_b*alpha)),
    capped at 1/2 unless ``capped=False``.
    """
    _check_domain(e_b, alpha)
    val = (
        alpha
        + e_b * (2.0 - 2.0 * alpha - alpha * alpha)
        + 2.0
        * math.sqrt(
            max(alpha * (1.0 - alpha) * e_b * (1.0 - e_b - e_b * alpha), 0.0)
        )
    )
    return min(val, EP_CAP) if capped else val


def simple_bound(e_b: float, alpha: float) -> float:
    """Small-rate bound alpha + 2*e_b + 2*sqrt(e_b*alpha)."""
    _check_domain(e_b, alpha)
    return alpha + 2.0 * e_b + 2.0 * math.sqrt(e_b * alpha)
