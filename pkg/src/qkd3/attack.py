"""Collective attacks as Pauli-decomposed Kraus coefficients.

One attack element is E = a_I*I + a_X*X + a_Y*Y + a_Z*Z with complex
amplitudes.  The error-rate triple (e_b, alpha, e_p) induced on the
three-state protocol depends only on the summed squared magnitudes
|a_beta|^2 and the two interference terms |a_I + a_X|^2 and
|i*a_Y - a_Z|^2.  Because all five quantities are additive over an
ensemble, any two elements can be merged into one that induces exactly
the same rates (`combine_pair`), and any ensemble folds down to a single
element (`reduce_ensemble`).
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateAttackError, SamplingError

_MAX_REJECTION_DRAWS = 10**6


@dataclass(frozen=True)
class KrausCoefficients:
    """Pauli amplitudes (a_I, a_X, a_Y, a_Z) of a single attack element."""

    a_I: complex
    a_X: complex
    a_Y: complex
    a_Z: complex

    def __post_init__(self):
        mags = (abs(self.a_I), abs(self.a_X), abs(self.a_Y), abs(self.a_Z))
        if not all(math.isfinite(m) for m in mags):
            raise ValueError("Kraus coefficients must have finite magnitudes")
        if max(mags) == 0.0:
            raise ValueError("at least one Kraus coefficient must be nonzero")

    @property
    def total_weight(self) -> float:
        """Sum of all four squared magnitudes."""
        return (
            abs(self.a_I) ** 2
            + abs(self.a_X) ** 2
            + abs(self.a_Y) ** 2
            + abs(self.a_Z) ** 2
        )

    def scaled(self, factor: complex) -> "KrausCoefficients":
        return KrausCoefficients(
            self.a_I * factor, self.a_X * factor, self.a_Y * factor, self.a_Z * factor
        )

    def serialize(self) -> str:
        """Eight comma-separated decimals: Re/Im pairs in I, X, Y, Z order."""
        parts = []
        for a in (self.a_I, self.a_X, self.a_Y, self.a_Z):
            a = complex(a)
            parts.append(repr(float(a.real)))
            parts.append(repr(float(a.imag)))
        return ",".join(parts)

    @classmethod
    def deserialize(cls, text: str) -> "KrausCoefficients":
        fields = text.split(",")
        if len(fields) != 8:
            raise ValueError(
                f"expected 8 comma-separated scalars, got {len(fields)}"
            )
        vals = [float(f) for f in fields]
        return cls(
            complex(vals[0], vals[1]),
            complex(vals[2], vals[3]),
            complex(vals[4], vals[5]),
            complex(vals[6], vals[7]),
        )


# An attack ensemble is any nonempty sequence of KrausCoefficients; no
# wrapper type is needed since all operations below validate their input.
AttackEnsemble = Sequence[KrausCoefficients]


@dataclass(frozen=True)
class ErrorRates:
    """Bit, check and phase error rates induced by an attack."""

    e_b: float
    alpha: float
    e_p: float

    def __post_init__(self):
        for name in ("e_b", "alpha", "e_p"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name}={v} outside [0, 1]")


def rates_from_ensemble(ensemble: AttackEnsemble) -> ErrorRates:
    """Error rates induced by an ensemble of attack elements.

    e_b  = sum(|a_X|^2 + |a_Y|^2) / sum over all four magnitudes,
    e_p  = sum(|a_Z|^2 + |a_Y|^2) / same denominator,
    alpha = sum |i a_Y - a_Z|^2 / sum(|i a_Y - a_Z|^2 + |a_I + a_X|^2).

    Raises DegenerateAttackError when either denominator vanishes.
    """
    if len(ensemble) == 0:
        raise ValueError("ensemble must be nonempty")
    total = 0.0
    bit = 0.0
    phase = 0.0
    check_err = 0.0
    check_ok = 0.0
    for k in ensemble:
        total += k.total_weight
        bit += abs(k.a_X) ** 2 + abs(k.a_Y) ** 2
        phase += abs(k.a_Z) ** 2 + abs(k.a_Y) ** 2
        check_err += abs(1j * k.a_Y - k.a_Z) ** 2
        check_ok += abs(k.a_I + k.a_X) ** 2
    if total <= 0.0:
        raise DegenerateAttackError("zero total weight")
    if check_err + check_ok <= 0.0:
        raise DegenerateAttackError("check-state probabilities sum to zero")
    return ErrorRates(
        e_b=bit / total,
        alpha=check_err / (check_err + check_ok),
        e_p=phase / total,
    )


def _pair_cosine(u: complex, v: complex) -> float:
    """cos of the phase gap between u and v; 0 when either magnitude is 0."""
    m = abs(u) * abs(v)
    if m == 0.0:
        return 0.0
    c = (u * v.conjugate()).real / m
    # Cauchy-Schwarz bounds |c| <= 1; clip float rounding.
    return min(1.0, max(-1.0, c))


def phase_cosines(k: KrausCoefficients) -> tuple[float, float]:
    """(c_IX, c_YZ) with |a_I+a_X|^2 = |a_I|^2+|a_X|^2+2*c_IX*|a_I||a_X|
    and |i a_Y-a_Z|^2 = |a_Y|^2+|a_Z|^2-2*c_YZ*|a_Y||a_Z|."""
    return _pair_cosine(k.a_I, k.a_X), _pair_cosine(1j * k.a_Y, k.a_Z)


def combined_cosines(
    s1: KrausCoefficients, s2: KrausCoefficients
) -> tuple[float, float]:
    """Interference cosines of the element that merges s1 and s2.

    Weighted mean of the inputs' cosines; the weights are the magnitude
    products, the normalizer the root-sum-square magnitudes.  Equals 0
    when a normalizing magnitude vanishes (the phase is then immaterial).
    """
    c1_ix, c1_yz = phase_cosines(s1)
    c2_ix, c2_yz = phase_cosines(s2)

    def merge(c1, m1a, m1b, c2, m2a, m2b):
        den = math.hypot(m1a, m2a) * math.hypot(m1b, m2b)
        if den == 0.0:
            return 0.0
        c = (c1 * m1a * m1b + c2 * m2a * m2b) / den
        return min(1.0, max(-1.0, c))

    c_ix = merge(
        c1_ix, abs(s1.a_I), abs(s1.a_X), c2_ix, abs(s2.a_I), abs(s2.a_X)
    )
    c_yz = merge(
        c1_yz, abs(s1.a_Y), abs(s1.a_Z), c2_yz, abs(s2.a_Y), abs(s2.a_Z)
    )
    return c_ix, c_yz


def combine_pair(
    s1: KrausCoefficients, s2: KrausCoefficients
) -> KrausCoefficients:
    """Merge two attack elements into one inducing identical error rates.

    The output magnitudes are root-sum-squares of the inputs'; the output
    phases are chosen so that |a_I + a_X|^2 and |i a_Y - a_Z|^2 both equal
    the sums of the corresponding input terms.  Convention: a_X and a_Y
    are real nonnegative, a_I carries the I/X phase gap, a_Z the Y/Z one.
    """
    c_ix, c_yz = combined_cosines(s1, s2)
    m_i = math.hypot(abs(s1.a_I), abs(s2.a_I))
    m_x = math.hypot(abs(s1.a_X), abs(s2.a_X))
    m_y = math.hypot(abs(s1.a_Y), abs(s2.a_Y))
    m_z = math.hypot(abs(s1.a_Z), abs(s2.a_Z))
    return KrausCoefficients(
        a_I=m_i * cmath.exp(1j * math.acos(c_ix)),
        a_X=m_x,
        a_Y=m_y,
        a_Z=m_z * cmath.exp(1j * (math.pi / 2 - math.acos(c_yz))),
    )


def reduce_ensemble(ensemble: AttackEnsemble) -> KrausCoefficients:
    """Left-fold of combine_pair; the result induces the ensemble's rates."""
    if len(ensemble) == 0:
        raise ValueError("ensemble must be nonempty")
    if len(ensemble) == 1:
        return ensemble[0]
    return functools.reduce(combine_pair, ensemble)


def random_attack(seed: int, region: bool = False) -> KrausCoefficients:
    """Deterministic random attack element with unit total weight.

    Components are i.i.d. standard normals normalized to sum(|a|^2) = 1
    (uniform on the coefficient sphere).  With ``region=True`` draws are
    rejected until the induced rates satisfy e_b <= 1/2 and alpha <= 1/2.
    """
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_REJECTION_DRAWS):
        v = rng.standard_normal(8)
        norm = math.sqrt(float(np.dot(v, v)))
        if norm < 1e-12:
            continue
        v = v / norm
        k = KrausCoefficients(
            complex(v[0], v[1]),
            complex(v[2], v[3]),
            complex(v[4], v[5]),
            complex(v[6], v[7]),
        )
        if not region:
            return k
        try:
            r = rates_from_ensemble([k])
        except DegenerateAttackError:
            continue
        if r.e_b <= 0.5 and r.alpha <= 0.5:
            return k
    raise SamplingError(
        f"no admissible attack within {_MAX_REJECTION_DRAWS} draws"
    )
