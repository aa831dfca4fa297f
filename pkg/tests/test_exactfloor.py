"""Exact integer parts: brute-force cross-checks and structural properties."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootmean.exactfloor import (
    AlphaThreshold,
    Index,
    alpha_floor,
    floor_A_exact,
    floor_via_alpha,
    isqrt,
)


def brute_floor_mean(n: int) -> int:
    """Independent oracle: floor of (1/n) sum sqrt(k) by scaled-integer
    summation, doubling the scale until the floor is pinned between the
    undershooting and overshooting bounds."""
    shift = 32
    while True:
        lo = sum(math.isqrt(k << (2 * shift)) for k in range(1, n + 1))
        hi = lo + n  # each floored term undershoots by < 1
        denom = n << shift
        f_lo, f_hi = lo // denom, hi // denom
        if f_lo == f_hi:
            return f_lo
        shift *= 2


def test_index_alias_is_int():
    assert Index is int


class TestIsqrt:
    @given(st.integers(min_value=0, max_value=10 ** 40))
    def test_floor_sqrt_bracket(self, k):
        r = isqrt(k)
        assert r * r <= k < (r + 1) * (r + 1)

    @pytest.mark.parametrize("k,expected", [(0, 0), (1, 1), (3, 1), (4, 2), (99, 9)])
    def test_small_values(self, k, expected):
        assert isqrt(k) == expected

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            isqrt(-1)

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            isqrt(4.0)


class TestFloorAExact:
    @pytest.mark.parametrize(
        "n,expected",
        [
            (1, 1),
            (7, 1),  # last n with floor 1
            (8, 2),  # first n with floor 2
            (18, 2),
            (19, 3),
            (10 ** 7, 2108),
            (10 ** 30, 666666666666666),
        ],
    )
    def test_known_values(self, n, expected):
        assert floor_A_exact(n) == expected

    def test_brute_force_small_range(self):
        for n in range(1, 600):
            assert floor_A_exact(n) == brute_floor_mean(n), n

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=1, max_value=4000))
    def test_brute_force_sampled(self, n):
        assert floor_A_exact(n) == brute_floor_mean(n)

    def test_rejects_float_and_nonpositive(self):
        with pytest.raises(TypeError):
            floor_A_exact(8.0)
        with pytest.raises(TypeError):
            floor_A_exact("8")
        with pytest.raises(ValueError):
            floor_A_exact(0)


class TestCrossMethod:
    @given(st.integers(min_value=1, max_value=10 ** 36))
    def test_agreement_everywhere(self, n):
        assert floor_A_exact(n) == floor_via_alpha(n)

    def test_agreement_small_dense(self):
        for n in range(1, 20_000):
            assert floor_A_exact(n) == floor_via_alpha(n), n

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            floor_via_alpha(10.0)


class TestAlphaFloor:
    @given(st.integers(min_value=0, max_value=10 ** 18))
    def test_closed_form_parity(self, s):
        # odd m = 2s-1: alpha is the exact integer 9 s^2 - 2
        if s >= 1:
            assert alpha_floor(2 * s - 1) == 9 * s * s - 2
        # even m = 2s: alpha = 9 s^2 + 9 s + 1/4, so its floor drops the 1/4
        assert alpha_floor(2 * s) == 9 * s * s + 9 * s

    @pytest.mark.parametrize("m,expected", [(1, 7), (2, 18), (3, 34), (4, 54), (5, 79)])
    def test_first_thresholds(self, m, expected):
        assert alpha_floor(m) == expected

    @settings(max_examples=200)
    @given(st.integers(min_value=1, max_value=10 ** 9))
    def test_floor_steps_exactly_at_threshold(self, m):
        n = alpha_floor(m)
        assert floor_A_exact(n) == m
        assert floor_A_exact(n + 1) == m + 1
        assert floor_via_alpha(n) == m
        assert floor_via_alpha(n + 1) == m + 1


class TestAlphaThreshold:
    @given(st.integers(min_value=0, max_value=10 ** 9))
    def test_of_constructs_consistently(self, m):
        at = AlphaThreshold.of(m)
        assert at.m == m
        assert at.alpha_times_4 == 9 * (m + 1) ** 2 - 8
        assert at.alpha_times_4 // 4 == alpha_floor(m)

    @settings(max_examples=200)
    @given(st.integers(min_value=1, max_value=10 ** 9))
    def test_admits_is_the_floor_step(self, m):
        at = AlphaThreshold.of(m)
        n = alpha_floor(m)
        assert at.admits(n)
        assert not at.admits(n + 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            AlphaThreshold(1, 5)  # wrong precomputed threshold
        with pytest.raises(ValueError):
            AlphaThreshold(-1, 1)
        with pytest.raises(TypeError):
            AlphaThreshold.of(1.5)
