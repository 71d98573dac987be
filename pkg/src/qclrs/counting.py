"""Counting bad monomials of quadratic-curve-lifted codes.

``S_t(ell)`` collects exponent pairs (a, b) over Z_q^2 that admit i <= b and
j <= b - i (2-shadow) with 2i + j + a = q - r' + t*q for some r' in [1, r].
``S*(ell)`` uses the offset t*(q - 1) instead and is exactly the set of bad
pairs for degree bound q - r.  The |S_t| obey a linear recursion with matrix
[[3, 1, 0], [1, 1, 1], [0, 0, 1]], whose dominant eigenvalue 2 + sqrt(2)
governs the growth of the bad-monomial count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .monomial import submasks

MAX_ELL = 32
LAMBDA1 = 2 + math.sqrt(2)
LAMBDA2 = 2 - math.sqrt(2)
MU = math.log2(LAMBDA1)
LRS_RATE_EXPONENT = math.log2(3) - 2

RECURSION_MATRIX = ((3, 1, 0), (1, 1, 1), (0, 0, 1))


class AlgorithmError(RuntimeError):
    pass


@dataclass(frozen=True)
class StateVector:
    s0: int
    s1: int
    s2: int
    ell: int
    r: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.s0, self.s1, self.s2)


@dataclass(frozen=True)
class BoundsResult:
    lower: float
    upper: float
    exact_power_of_two: bool


def _check(ell: int, r: int):
    if not 1 <= ell <= MAX_ELL:
        raise ValueError(f"ell must lie in [1, {MAX_ELL}], got {ell}")
    q = 1 << ell
    if not 1 <= r <= q - 1:
        raise ValueError(f"r must lie in [1, {q - 1}] for ell={ell}, got {r}")


@lru_cache(maxsize=None)
def pair_sums(b: int) -> frozenset[int]:
    """Distinct values of 2i + j over i <= b, j <= b - i (2-shadow)."""
    return frozenset(2 * i + j for i in submasks(b) for j in submasks(b ^ i))


def _enumerate(ell: int, windows: Sequence[tuple[int, int]]) -> set[tuple[int, int]]:
    """Pairs (a, b) with 2i + j + a inside one of the inclusive windows."""
    q = 1 << ell
    found = set()
    for b in range(q):
        hit = bytearray(q)
        for v in pair_sums(b):
            for lo, hi in windows:
                start, stop = max(0, lo - v), min(q - 1, hi - v)
                if start <= stop:
                    hit[start : stop + 1] = b"\x01" * (stop - start + 1)
        found.update((a, b) for a in range(q) if hit[a])
    return found


def enumerate_S_t(ell: int, r: int, t: int) -> set[tuple[int, int]]:
    _check(ell, r)
    if t < 0:
        raise ValueError("t must be non-negative")
    q = 1 << ell
    return _enumerate(ell, [(q - r + t * q, q - 1 + t * q)])


def enumerate_S_star(ell: int, r: int) -> set[tuple[int, int]]:
    """Exponent pairs of the monomials that are bad for degree bound q - r."""
    _check(ell, r)
    q = 1 << ell
    # t >= 3 is unreachable: 2i + j + a <= 3(q - 1) < q - r + 3(q - 1).
    return _enumerate(ell, [(q - r + t * (q - 1), q - 1 + t * (q - 1)) for t in range(3)])


def initial_level(r: int) -> int:
    """Smallest ell at which S_t(ell) is defined for this r, i.e. r < 2^ell."""
    return r.bit_length()


def initial_state(r: int, ell: int | None = None) -> StateVector:
    if ell is None:
        ell = initial_level(r)
    counts = [len(enumerate_S_t(ell, r, t)) for t in range(3)]
    return StateVector(*counts, ell=ell, r=r)


def recurse_state(initial: StateVector, target_ell: int) -> StateVector:
    """Advance the count vector to ``target_ell`` by repeated matrix application."""
    if target_ell < initial.ell:
        raise ValueError("target level lies below the initial level")
    if target_ell > MAX_ELL:
        raise ValueError(f"levels above {MAX_ELL} are not supported")
    if initial.r >= 1 << initial.ell:
        raise ValueError(f"r={initial.r} is not valid at level {initial.ell}")
    s0, s1, s2 = initial.as_tuple()
    for level in range(initial.ell + 1, target_ell + 1):
        if not initial.r < (1 << level) // 2:
            raise ValueError(f"recursion needs r < q/2 at level {level}")
        s0, s1, s2 = 3 * s0 + s1, s0 + s1 + s2, s2
    return StateVector(s0, s1, s2, ell=target_ell, r=initial.r)


def count_S0(ell: int, r: int) -> int:
    """|S_0(ell)| by recursion from the enumerated initial level."""
    start = initial_level(r)
    if ell <= start:
        return len(enumerate_S_t(ell, r, 0))
    return recurse_state(initial_state(r), ell).s0


def closed_form_S0(ell: int, r: int) -> float:
    """Closed-form |S_0(ell)| for r = 1 (ell >= 1) and r = 3 (ell >= 2)."""
    s2 = math.sqrt(2)
    if r == 1:
        if ell < 1:
            raise ValueError("closed form for r=1 needs ell >= 1")
        c1 = (5 * s2 + 7) / (2 * (3 * s2 + 4))
        c2 = (5 * s2 - 7) / (2 * (3 * s2 - 4))
        return c1 * LAMBDA1**ell + c2 * LAMBDA2**ell
    if r == 3:
        if ell < 2:
            raise ValueError("closed form for r=3 needs ell >= 2")
        c1 = (65 * s2 + 92) / (4 * (12 * s2 + 17))
        c2 = (65 * s2 - 92) / (4 * (12 * s2 - 17))
        return c1 * LAMBDA1**ell + c2 * LAMBDA2**ell - 1.0
    raise ValueError(f"closed forms exist only for r in {{1, 3}}, got r={r}")


def _bit(x: int, k: int) -> int:
    return (x >> k) & 1 if k >= 0 else 0


def deduct_q(i: int, j: int, ell: int) -> tuple[int, int]:
    """Clear bits of i and j so that 2i + j drops by exactly q = 2^ell.

    Scans bit positions of 2i + j from the top (position ell, fed by bit
    ell-1 of i) downward, tracking how many units of 2^h are still owed.
    Position h is fed by bit h-1 of i and bit h of j.
    """
    q = 1 << ell
    if i & j:
        raise ValueError("i and j must have disjoint bits")
    if not (0 <= i < q and 0 <= j < q):
        raise ValueError(f"i and j must lie in [0, {q - 1}]")
    ii, jj = i, j
    owed = 1
    for h in range(ell, -1, -1):
        bi, bj = _bit(ii, h - 1), _bit(jj, h)
        delta = owed - bi - bj
        if delta > 0:
            if bi:
                ii &= ~(1 << (h - 1))
            if bj:
                jj &= ~(1 << h)
            owed = 2 * delta
            continue
        if owed - bi == 0:
            ii &= ~(1 << (h - 1))
        elif owed - bj == 0:
            jj &= ~(1 << h)
        else:
            ii &= ~(1 << (h - 1))
            jj &= ~(1 << h)
        break
    if (2 * i + j) - (2 * ii + jj) != q:
        raise AlgorithmError(f"no reduction by q={q} exists for i={i}, j={j}")
    return ii, jj


def bounds_S_star(ell: int, r: int) -> BoundsResult:
    """Bounds on |S*(ell)| from the r = 1 and r = 3 closed forms at a shifted level."""
    if ell < 2:
        raise ValueError("bounds need ell >= 2")
    q = 1 << ell
    if not 1 <= r <= q // 4:
        raise ValueError(f"bounds need 1 <= r <= q/4 = {q // 4}, got {r}")
    if r & (r - 1) == 0:
        s = r.bit_length() - 1
        lower = r * r * closed_form_S0(ell - s, 1)
        upper = r * r * closed_form_S0(ell - s, 3)
        return BoundsResult(lower, upper, True)
    s_floor = r.bit_length() - 1
    s_ceil = s_floor + 1
    lower = r * r / 4 * closed_form_S0(ell - s_floor, 1)
    upper = 4 * r * r * closed_form_S0(ell - s_ceil, 3)
    return BoundsResult(lower, upper, False)


def asymptotic_slope(samples: Sequence[tuple[int, float]]) -> float:
    """Least-squares slope of log2(count) against ell."""
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    ells = np.array([s[0] for s in samples], dtype=float)
    logs = np.log2(np.array([float(s[1]) for s in samples]))
    slope, _ = np.polyfit(ells, logs, 1)
    return float(slope)
