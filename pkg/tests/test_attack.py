import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qkd3 import (
    DegenerateAttackError,
    KrausCoefficients,
    combine_pair,
    combined_cosines,
    phase_cosines,
    random_attack,
    rates_from_ensemble,
    reduce_ensemble,
)

component = st.floats(
    min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False
)


@st.composite
def kraus_elements(draw):
    vals = draw(
        st.tuples(*([component] * 8)).filter(lambda v: any(x != 0.0 for x in v))
    )
    return KrausCoefficients(
        complex(vals[0], vals[1]),
        complex(vals[2], vals[3]),
        complex(vals[4], vals[5]),
        complex(vals[6], vals[7]),
    )


def random_ensemble(rng, size):
    return [random_attack(int(rng.integers(0, 2**31))) for _ in range(size)]


class TestRatesFromEnsemble:
    def test_identity_channel(self):
        r = rates_from_ensemble([KrausCoefficients(1, 0, 0, 0)])
        assert (r.e_b, r.alpha, r.e_p) == (0.0, 0.0, 0.0)

    def test_pure_phase_flip(self):
        r = rates_from_ensemble([KrausCoefficients(0, 0, 0, 1)])
        assert (r.e_b, r.alpha, r.e_p) == (0.0, 1.0, 1.0)

    def test_weak_phase_noise(self):
        k = KrausCoefficients(math.sqrt(0.9), 0, 0, 1j * math.sqrt(0.1))
        r = rates_from_ensemble([k])
        assert r.e_b == pytest.approx(0.0, abs=1e-15)
        assert r.alpha == pytest.approx(0.1, abs=1e-15)
        assert r.e_p == pytest.approx(0.1, abs=1e-15)

    def test_two_element_sums(self):
        ens = [KrausCoefficients(1, 0, 0, 0), KrausCoefficients(0, 1, 0, 0)]
        r = rates_from_ensemble(ens)
        assert r.e_b == pytest.approx(0.5, abs=1e-15)
        assert r.alpha == 0.0
        assert r.e_p == 0.0

    def test_empty_ensemble_rejected(self):
        with pytest.raises(ValueError):
            rates_from_ensemble([])

    def test_degenerate_check_denominator(self):
        # a_Z = i*a_Y and a_X = -a_I zero out both check-state outcomes
        k = KrausCoefficients(1.0, -1.0, 0.5, 0.5j)
        with pytest.raises(DegenerateAttackError):
            rates_from_ensemble([k])

    @given(st.lists(kraus_elements(), min_size=1, max_size=5))
    def test_rates_within_unit_interval(self, elements):
        try:
            r = rates_from_ensemble(elements)
        except DegenerateAttackError:
            assume(False)
        assert 0.0 <= r.e_b <= 1.0
        assert 0.0 <= r.alpha <= 1.0
        assert 0.0 <= r.e_p <= 1.0

    @given(kraus_elements(), st.floats(min_value=0.0, max_value=2.0 * math.pi))
    def test_global_phase_invariance(self, k, theta):
        try:
            base = rates_from_ensemble([k])
        except DegenerateAttackError:
            assume(False)
        rotated = rates_from_ensemble([k.scaled(cmath.exp(1j * theta))])
        assert rotated.e_b == pytest.approx(base.e_b, abs=1e-12)
        assert rotated.alpha == pytest.approx(base.alpha, abs=1e-12)
        assert rotated.e_p == pytest.approx(base.e_p, abs=1e-12)


class TestCombinePair:
    def test_identity_with_bit_flip(self):
        out = combine_pair(
            KrausCoefficients(1, 0, 0, 0), KrausCoefficients(0, 1, 0, 0)
        )
        assert abs(out.a_I) == pytest.approx(1.0)
        assert abs(out.a_X) == pytest.approx(1.0)
        assert abs(out.a_Y) == abs(out.a_Z) == 0.0
        # zero I/X cosine puts a quarter turn between a_I and a_X
        assert out.a_I == pytest.approx(1j, abs=1e-15)
        assert out.a_X == pytest.approx(1.0)
        assert abs(out.a_I + out.a_X) ** 2 == pytest.approx(2.0, abs=1e-12)

    def test_self_combination_doubles_weights(self):
        k = random_attack(11)
        out = combine_pair(k, k)
        for name in ("a_I", "a_X", "a_Y", "a_Z"):
            assert abs(getattr(out, name)) == pytest.approx(
                math.sqrt(2.0) * abs(getattr(k, name)), abs=1e-12
            )
        assert combined_cosines(k, k) == pytest.approx(phase_cosines(k), abs=1e-12)
        merged = rates_from_ensemble([out])
        doubled = rates_from_ensemble([k, k])
        assert merged.e_b == pytest.approx(doubled.e_b, abs=1e-12)

    @given(kraus_elements(), kraus_elements())
    @settings(max_examples=200)
    def test_rates_preserved(self, s1, s2):
        try:
            pair = rates_from_ensemble([s1, s2])
        except DegenerateAttackError:
            assume(False)
        merged = rates_from_ensemble([combine_pair(s1, s2)])
        assert merged.e_b == pytest.approx(pair.e_b, abs=1e-12)
        assert merged.alpha == pytest.approx(pair.alpha, abs=1e-12)
        assert merged.e_p == pytest.approx(pair.e_p, abs=1e-12)

    @given(kraus_elements(), kraus_elements())
    @settings(max_examples=200)
    def test_cosines_bounded(self, s1, s2):
        c_ix, c_yz = combined_cosines(s1, s2)
        assert -1.0 <= c_ix <= 1.0
        assert -1.0 <= c_yz <= 1.0

    def test_weight_additivity(self):
        s1, s2 = random_attack(3), random_attack(4)
        out = combine_pair(s1, s2)
        assert out.total_weight == pytest.approx(
            s1.total_weight + s2.total_weight, abs=1e-12
        )


class TestReduceEnsemble:
    def test_singleton_unchanged(self):
        k = random_attack(5)
        out = reduce_ensemble([k])
        assert out == k

    def test_pair_matches_combine(self):
        ens = [KrausCoefficients(1, 0, 0, 0), KrausCoefficients(0, 1, 0, 0)]
        assert reduce_ensemble(ens) == combine_pair(*ens)

    @pytest.mark.parametrize("size", [2, 7, 64])
    def test_rates_preserved_at_size(self, size):
        rng = np.random.default_rng(size)
        ens = random_ensemble(rng, size)
        want = rates_from_ensemble(ens)
        got = rates_from_ensemble([reduce_ensemble(ens)])
        assert got.e_b == pytest.approx(want.e_b, abs=1e-12)
        assert got.alpha == pytest.approx(want.alpha, abs=1e-12)
        assert got.e_p == pytest.approx(want.e_p, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            reduce_ensemble([])


class TestRandomAttack:
    def test_deterministic(self):
        assert random_attack(123) == random_attack(123)
        assert random_attack(123, region=True) == random_attack(123, region=True)

    def test_unit_normalization(self):
        for seed in range(20):
            assert random_attack(seed).total_weight == pytest.approx(1.0, abs=1e-12)

    def test_region_constraint(self):
        for seed in range(1000):
            r = rates_from_ensemble([random_attack(seed, region=True)])
            assert r.e_b <= 0.5
            assert r.alpha <= 0.5


class TestSerialization:
    def test_round_trip(self):
        k = random_attack(9)
        assert KrausCoefficients.deserialize(k.serialize()) == k

    def test_field_order(self):
        k = KrausCoefficients(1, 2j, 3, 4j)
        assert k.serialize() == "1.0,0.0,0.0,2.0,3.0,0.0,0.0,4.0"

    def test_bad_field_count(self):
        with pytest.raises(ValueError):
            KrausCoefficients.deserialize("1,2,3")

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            KrausCoefficients(0, 0, 0, 0)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            KrausCoefficients(math.inf, 0, 0, 0)
