import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qclrs.counting import (
    LAMBDA1,
    MU,
    AlgorithmError,
    StateVector,
    asymptotic_slope,
    bounds_S_star,
    closed_form_S0,
    count_S0,
    deduct_q,
    enumerate_S_star,
    enumerate_S_t,
    initial_state,
    recurse_state,
)
from qclrs.monomial import is_qc_good


def brute_S(ell, r, offsets):
    """Direct reading of the set definitions: loop over a, b, i, j, r'."""
    q = 1 << ell
    out = set()
    for a in range(q):
        for b in range(q):
            for i in range(q):
                if i & b != i:
                    continue
                for j in range(q):
                    if j & (b - i) != j:
                        continue
                    if any(2 * i + j + a == target for target in offsets):
                        out.add((a, b))
    return out


def brute_S_t(ell, r, t):
    q = 1 << ell
    return brute_S(ell, r, [q - rp + t * q for rp in range(1, r + 1)])


def brute_S_star(ell, r):
    q = 1 << ell
    return brute_S(ell, r, [q - rp + t * (q - 1) for rp in range(1, r + 1) for t in range(6)])


def test_level_one_examples():
    assert brute_S_t(1, 1, 0) == {(1, 0), (0, 1), (1, 1)}
    assert len(enumerate_S_t(1, 1, 0)) == 3
    assert enumerate_S_t(1, 1, 1) == {(1, 1)}


@pytest.mark.parametrize("ell", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(ell):
    q = 1 << ell
    for r in range(1, q):
        for t in range(4):
            assert enumerate_S_t(ell, r, t) == brute_S_t(ell, r, t)
        assert enumerate_S_star(ell, r) == brute_S_star(ell, r)


@pytest.mark.parametrize("ell", range(1, 7))
def test_t3_empty(ell):
    q = 1 << ell
    for r in range(1, q):
        assert enumerate_S_t(ell, r, 3) == set()


@pytest.mark.parametrize("ell", range(1, 7))
def test_containment_chain(ell):
    q = 1 << ell
    for r in range(1, q):
        s0, s1, s2 = (enumerate_S_t(ell, r, t) for t in range(3))
        assert s2 <= s1 <= s0


@pytest.mark.parametrize("ell", range(1, 6))
def test_S_star_is_bad_set(ell):
    q = 1 << ell
    for r in range(1, q):
        bad = {(a, b) for a in range(q) for b in range(q) if not is_qc_good((a, b), q, q - r)}
        assert enumerate_S_star(ell, r) == bad


@pytest.mark.parametrize("ell", range(1, 7))
def test_S0_is_mod_q_bad_set(ell):
    # (a, b) in S_0 iff some 2i + j + a (mod q) lands in [q - r, q - 1]
    q = 1 << ell
    for r in (1, 2, 3, q - 1):
        if r >= q:
            continue
        direct = set()
        for a in range(q):
            for b in range(q):
                for i in range(q):
                    if i & b == i and any(
                        (2 * i + j + a) % q >= q - r for j in range(q) if j & (b ^ i) == j
                    ):
                        direct.add((a, b))
                        break
        assert enumerate_S_t(ell, r, 0) == direct


def test_sizes_q8_from_dimensions():
    assert len(enumerate_S_star(3, 3)) == 54
    assert len(enumerate_S_star(3, 4)) == 58


@pytest.mark.parametrize("ell", range(2, 7))
def test_projection_drops_top_bit(ell):
    q = 1 << ell
    for r in range(1, q // 2):
        union = set().union(*(enumerate_S_t(ell, r, t) for t in range(3)))
        below = set().union(*(enumerate_S_t(ell - 1, r, t) for t in range(3)))
        half = q // 2
        for a, b in union:
            assert (a % half, b % half) in below


def test_recursion_first_step():
    s1 = StateVector(3, 1, 0, ell=1, r=1)
    assert initial_state(1) == s1
    s2 = recurse_state(s1, 2)
    assert s2.as_tuple() == (10, 4, 0)
    assert s2.as_tuple() == tuple(len(enumerate_S_t(2, 1, t)) for t in range(3))
    assert recurse_state(s1, 1) == s1


@pytest.mark.parametrize("r", range(1, 32))
def test_recursion_matches_enumeration(r):
    start = initial_state(r)
    for ell in range(start.ell, 7):
        got = recurse_state(start, ell)
        assert got.as_tuple() == tuple(len(enumerate_S_t(ell, r, t)) for t in range(3))
        assert got.s2 == start.s2


def test_recursion_rejects_invalid():
    with pytest.raises(ValueError):
        recurse_state(StateVector(1, 1, 1, ell=2, r=5), 3)
    with pytest.raises(ValueError):
        recurse_state(initial_state(1), 0)
    with pytest.raises(ValueError):
        recurse_state(initial_state(1), 33)


def test_recursion_stays_exact_at_large_levels():
    # (2 + sqrt2)^n = u + v sqrt2 with integers u, v; the r = 1 closed form
    # equals (lambda1^(n) + lambda2^(n)) / 4 = u / 2 at n = ell + 1.
    u, v = 1, 0
    for _ in range(33):
        u, v = 2 * u + 2 * v, u + 2 * v
    big = recurse_state(initial_state(1), 32)
    assert big.s0 == u // 2
    assert big.s0 > 2**53


def test_closed_form_examples():
    assert round(closed_form_S0(1, 1)) == 3
    assert abs(closed_form_S0(1, 1) - 3) < 1e-9
    assert abs(closed_form_S0(2, 1) - 10) < 1e-9
    assert round(closed_form_S0(2, 3)) == len(enumerate_S_t(2, 3, 0)) == 15
    with pytest.raises(ValueError):
        closed_form_S0(4, 2)
    with pytest.raises(ValueError):
        closed_form_S0(1, 3)


@pytest.mark.parametrize("r,ell", [(1, ell) for ell in range(1, 11)] + [(3, ell) for ell in range(2, 11)])
def test_closed_form_rounds_to_count(r, ell):
    exact = len(enumerate_S_t(ell, r, 0))
    assert count_S0(ell, r) == exact
    assert abs(closed_form_S0(ell, r) - exact) < 1e-6 * exact


def test_closed_form_decimals_match_printed():
    s2 = math.sqrt(2)
    assert round((5 * s2 + 7) / (2 * (3 * s2 + 4)), 4) == 0.8536
    assert round((5 * s2 - 7) / (2 * (3 * s2 - 4)), 4) == 0.1464
    assert round((65 * s2 + 92) / (4 * (12 * s2 + 17)), 4) == 1.3536
    assert round((65 * s2 - 92) / (4 * (12 * s2 - 17)), 4) in (0.6464, 0.6465)


def test_deduct_q_examples():
    assert deduct_q(4, 10, 4) == (0, 2)
    assert deduct_q(2, 0, 2) == (0, 0)


@pytest.mark.parametrize("ell", range(1, 7))
def test_deduct_q_exhaustive(ell):
    q = 1 << ell
    for i in range(q):
        for j in range(q):
            if i & j or 2 * i + j < q:
                continue
            ip, jp = deduct_q(i, j, ell)
            assert ip & i == ip and jp & j == jp
            assert (2 * i + j) - (2 * ip + jp) == q


@given(st.integers(4, 16), st.data())
def test_deduct_q_random(ell, data):
    q = 1 << ell
    b = data.draw(st.integers(0, q - 1))
    i = data.draw(st.integers(0, q - 1)) & b
    j = data.draw(st.integers(0, q - 1)) & (b ^ i)
    if 2 * i + j < q:
        with pytest.raises(AlgorithmError):
            deduct_q(i, j, ell)
        return
    ip, jp = deduct_q(i, j, ell)
    assert ip & i == ip and jp & j == jp
    assert (2 * i + j) - (2 * ip + jp) == q


def test_deduct_q_rejects_overlap():
    with pytest.raises(ValueError):
        deduct_q(3, 1, 2)


@pytest.mark.parametrize("ell", range(2, 9))
def test_bounds_sandwich(ell):
    q = 1 << ell
    for r in range(1, q // 4 + 1):
        exact = len(enumerate_S_star(ell, r))
        b = bounds_S_star(ell, r)
        assert b.lower < b.upper
        if b.exact_power_of_two:
            assert b.lower - 1e-9 <= exact <= b.upper + 1e-9
        else:
            assert b.lower < exact < b.upper


def test_bounds_power_of_two_uses_tight_branch():
    b = bounds_S_star(5, 4)
    assert b.exact_power_of_two
    assert b.lower == pytest.approx(16 * 34)
    assert b.upper == pytest.approx(16 * 53)
    assert not bounds_S_star(5, 3).exact_power_of_two


def test_bounds_range_checked():
    with pytest.raises(ValueError):
        bounds_S_star(1, 1)
    with pytest.raises(ValueError):
        bounds_S_star(5, 9)


def test_slope():
    samples = [(ell, count_S0(ell, 1)) for ell in range(4, 13)]
    assert abs(asymptotic_slope(samples) - MU) < 0.02
    assert asymptotic_slope([(ell, LAMBDA1**ell) for ell in range(3, 8)]) == pytest.approx(MU, abs=1e-12)
    with pytest.raises(ValueError):
        asymptotic_slope([(1, 3)])
