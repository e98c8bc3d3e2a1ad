"""Closed-form invariants: frozen values, independent oracles, properties."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallspan.invariants import (
    WallParams,
    flag_lower_bound,
    hurwitz_radon,
    nu,
    pspan_wall,
    sspan_cpn,
    upper_bound_fibration,
)

# Classical Hurwitz-Radon values rho(1..16); span(S^(n-1)) = rho(n) - 1, so
# rho(2) - 1 = 1 = span(S^1), rho(4) - 1 = 3 = span(S^3),
# rho(8) - 1 = 7 = span(S^7), rho(16) - 1 = 8 = span(S^15).
RHO_CLASSICAL = (1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1, 9)


def nu_by_division(k: int) -> int:
    # independent oracle: repeated halving
    e = 0
    while k % 2 == 0:
        k //= 2
        e += 1
    return e


def test_nu_frozen_values():
    assert nu(8) == 3
    assert nu(1) == 0
    assert nu(1024) == 10


def test_nu_rejects_zero():
    with pytest.raises(ValueError):
        nu(0)
    with pytest.raises(ValueError):
        nu(-4)


@given(st.integers(min_value=1, max_value=10**9))
def test_nu_matches_division_oracle(k):
    assert nu(k) == nu_by_division(k)


@given(st.integers(min_value=1, max_value=10**8))
def test_nu_recursion(k):
    assert nu(2 * k) == nu(k) + 1
    assert nu(2 * k - 1) == 0


def test_pspan_wall_examples():
    assert pspan_wall(WallParams(2, 2)) == 3
    assert pspan_wall(WallParams(1, 0)) == 2
    # nu(3+1) = 2 by the division oracle, so 2*2 + 1 + 1 = 6
    assert nu_by_division(4) == 2
    assert pspan_wall(WallParams(1, 3)) == 6


def test_sspan_cpn_examples():
    assert sspan_cpn(7) == 6
    assert sspan_cpn(0) == 0
    assert sspan_cpn(31) == 10
    with pytest.raises(ValueError):
        sspan_cpn(-1)


def test_upper_bound_fibration_examples():
    assert upper_bound_fibration(WallParams(1, 1)) == 2 * nu_by_division(2) + 1 + 1 == 4
    assert upper_bound_fibration(WallParams(3, 0)) == 4
    assert upper_bound_fibration(WallParams(2, 7)) == 9


def test_hurwitz_radon_examples():
    assert hurwitz_radon(1) == 1
    assert hurwitz_radon(16) == 9  # span(S^15) = 8
    assert hurwitz_radon(4) == 4  # span(S^3) = 3
    with pytest.raises(ValueError):
        hurwitz_radon(0)


def test_hurwitz_radon_classical_table():
    for n, rho in enumerate(RHO_CLASSICAL, start=1):
        assert hurwitz_radon(n) == rho


@given(st.integers(min_value=1, max_value=10**6))
def test_hurwitz_radon_formula(n):
    a, b = divmod(nu_by_division(n), 4)
    assert hurwitz_radon(n) == 8 * a + 2**b


def test_flag_lower_bound_examples():
    assert flag_lower_bound(2) == 1
    assert flag_lower_bound(3) == 3
    assert flag_lower_bound(5) == 10 == len(list(itertools.combinations(range(5), 2)))
    with pytest.raises(ValueError):
        flag_lower_bound(1)


def test_wall_params_validation():
    with pytest.raises(ValueError):
        WallParams(0, 1)
    with pytest.raises(ValueError):
        WallParams(1, -1)
    p = WallParams(3, 5)
    assert (p.nu, p.delta, p.dim) == (1, 6, 14)


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=64), st.integers(min_value=0, max_value=256))
def test_bound_consistency(m, n):
    p = WallParams(m, n)
    pspan = pspan_wall(p)
    assert pspan == upper_bound_fibration(p)
    gap = pspan - (m + 1)
    assert gap == 2 * nu(n + 1)
    assert gap >= 0 and gap % 2 == 0
    assert pspan <= p.dim
