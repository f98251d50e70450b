"""Monte Carlo simulator of the three-state prepare-and-measure protocol.

Each of the 8N(1+delta) rounds draws Alice's basis (Z sends a uniform
key bit, X sends the check state) and Bob's measurement basis uniformly;
mismatched rounds are sifted out.  Outcomes are sampled from the
analytic per-round distribution of the configured attack: a Z round
flips with probability e_b, an X-check round errs with probability
alpha.  Phase errors are never sampled; they stay analytic, which is
exactly what the bound is for.

Randomness comes from counter-based Philox streams split off one seed:
substream k (of 5: alice basis, bob basis, outcome, Z partition, X
partition) is Philox keyed by the k-th child of SeedSequence(seed), and
round i consumes the i-th variate of its substream.  Any slicing or
parallel generation that respects this addressing is bitwise identical
to a sequential run.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .attack import KrausCoefficients, rates_from_ensemble
from .errors import InsufficientSiftError

_N_SUBSTREAMS = 5
_SIGMA_FACTOR = 5.0  # deviation flag threshold, in binomial sigmas


@dataclass(frozen=True)
class SimConfig:
    N: int  # data bits (and Z check bits; X check bits are 2N)
    attack: KrausCoefficients
    seed: int
    delta: float = 0.1  # oversampling fraction

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.delta <= 0.0:
            raise ValueError("delta must be > 0")


@dataclass(frozen=True)
class ProtocolStats:
    transmitted: int
    sifted: int
    z_check_errors: int
    z_check_total: int
    x_check_errors: int
    x_check_total: int
    observed_eb: float
    observed_alpha: float

    def to_json(self) -> str:
        """Flat JSON object; integer counts, decimal rates."""
        return json.dumps(asdict(self), sort_keys=True)


def _substreams(seed: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(_N_SUBSTREAMS)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def run_protocol(config: SimConfig) -> ProtocolStats:
    """Simulate one protocol run and tally the announced error counts.

    N Z-sifted rounds become check bits, N more become data bits, and 2N
    X-sifted rounds become check bits, all chosen by seeded permutation;
    surplus sifted rounds are unused.  Raises InsufficientSiftError when
    fewer than 2N rounds sift in either basis.
    """
    rates = rates_from_ensemble([config.attack])
    n = config.N
    m = round(8 * n * (1.0 + config.delta))
    basis_a, basis_b, outcome, part_z, part_x = _substreams(config.seed)

    alice_x = basis_a.random(m) < 0.5
    bob_x = basis_b.random(m) < 0.5
    u = outcome.random(m)

    z_rounds = np.flatnonzero(~alice_x & ~bob_x)
    x_rounds = np.flatnonzero(alice_x & bob_x)
    sifted = len(z_rounds) + len(x_rounds)
    if len(z_rounds) < 2 * n or len(x_rounds) < 2 * n:
        raise InsufficientSiftError(
            f"need 2N={2 * n} sifted rounds per basis, got "
            f"{len(z_rounds)} (Z) and {len(x_rounds)} (X)"
        )

    z_err = u[z_rounds] < rates.e_b
    x_err = u[x_rounds] < rates.alpha

    z_order = part_z.permutation(len(z_rounds))
    z_check = z_err[z_order[:n]]
    # data bits are z_err[z_order[n:2n]]; their values are never announced
    x_order = part_x.permutation(len(x_rounds))
    x_check = x_err[x_order[: 2 * n]]

    z_check_errors = int(z_check.sum())
    x_check_errors = int(x_check.sum())
    return ProtocolStats(
        transmitted=m,
        sifted=int(sifted),
        z_check_errors=z_check_errors,
        z_check_total=n,
        x_check_errors=x_check_errors,
        x_check_total=2 * n,
        observed_eb=z_check_errors / n,
        observed_alpha=x_check_errors / (2 * n),
    )


@dataclass(frozen=True)
class AzumaReport:
    """Observed check-state frequencies vs the analytic probabilities."""

    p_error: float
    p_no_error: float
    dev_error: float
    dev_no_error: float
    threshold_error: float
    threshold_no_error: float
    within_error: bool
    within_no_error: bool
    alpha_gap: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def azuma_check(stats: ProtocolStats, attack: KrausCoefficients) -> AzumaReport:
    """Compare X-check counts against the attack's analytic probabilities.

    Deviations are flagged when within 5 binomial sigmas of the analytic
    error / no-error probabilities.
    """
    alpha = rates_from_ensemble([attack]).alpha
    n_x = stats.x_check_total
    f_err = stats.x_check_errors / n_x
    dev_err = abs(f_err - alpha)
    dev_ok = abs((1.0 - f_err) - (1.0 - alpha))
    sigma = math.sqrt(alpha * (1.0 - alpha) / n_x)
    thr = _SIGMA_FACTOR * sigma
    return AzumaReport(
        p_error=alpha,
        p_no_error=1.0 - alpha,
        dev_error=dev_err,
        dev_no_error=dev_ok,
        threshold_error=thr,
        threshold_no_error=thr,
        within_error=dev_err <= thr,
        within_no_error=dev_ok <= thr,
        alpha_gap=abs(stats.observed_alpha - alpha),
    )


class SplitRates(NamedTuple):
    rate_check: float
    rate_data: float
    gap: float


def sampling_check(z_outcomes: Sequence[int], seed: int) -> SplitRates:
    """Random-split agreement test on a 2N error-indicator sequence.

    Splits the sequence into two seeded uniform halves and returns both
    error rates and their absolute gap.
    """
    arr = np.asarray(z_outcomes)
    if arr.ndim != 1 or len(arr) % 2 != 0:
        raise ValueError("z_outcomes must be a flat sequence of even length")
    half = len(arr) // 2
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    order = rng.permutation(len(arr))
    rate_check = float(arr[order[:half]].mean())
    rate_data = float(arr[order[half:]].mean())
    return SplitRates(rate_check, rate_data, abs(rate_check - rate_data))
