"""Local recovery of erased symbols and its failure probability.

A symbol at a target point is recoverable from one of its recovery sets (the
other q - 1 points of a curve or line through it) when at least d = q - r of
those points are intact.  Monte-Carlo trials draw their erasure patterns
from a Philox counter-based stream so that trial t always consumes the same
block of random numbers, whatever the chunking or worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .code import CodeInstance, CodeSpec, point_index
from .monomial import Curve, Line

Z95 = 1.959963984540054
CHUNK_TRIALS = 8192
DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class RecoverySet:
    member: Union[Curve, Line]
    others: tuple[tuple[int, int], ...]
    # Coordinate interpolated along the member: 0 -> x, 1 -> y (vertical lines).
    axis: int = 0


@dataclass(frozen=True)
class SimConfig:
    spec: CodeSpec
    tau: float
    trials: int = DEFAULT_TRIALS
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SimEstimate:
    failure_rate: float
    half_width: float
    trials: int
    failures: int


def recovery_sets(spec: CodeSpec, target: tuple[int, int]) -> list[RecoverySet]:
    gf = spec.gf
    q = spec.q
    x0, y0 = target
    if not (0 <= x0 < q and 0 <= y0 < q):
        raise ValueError(f"target {target} is not a point of GF({q})^2")
    sets = []
    if spec.family == "qclrs":
        for alpha in range(q):
            for beta in range(q):
                gamma = y0 ^ gf.mul(alpha, gf.mul(x0, x0)) ^ gf.mul(beta, x0)
                curve = Curve(alpha, beta, gamma)
                others = tuple(p for p in curve.points(gf) if p[0] != x0)
                sets.append(RecoverySet(curve, others))
    else:
        for slope in range(q):
            line = Line(slope, y0 ^ gf.mul(slope, x0))
            others = tuple(p for p in line.points(gf) if p[0] != x0)
            sets.append(RecoverySet(line, others))
        vertical = Line(0, x0, vertical=True)
        others = tuple(p for p in vertical.points(gf) if p[1] != y0)
        sets.append(RecoverySet(vertical, others, axis=1))
    return sets


def recover_symbol(inst: CodeInstance, word, erased, target: tuple[int, int]) -> int | None:
    """Recover the symbol at ``target`` from one recovery set, or None on failure.

    ``erased`` is a boolean mask over the q^2 positions.  The first set with
    d intact points is used, interpolating through the d of them with the
    smallest free coordinate.
    """
    spec = inst.spec
    q, d = spec.q, spec.d
    word = np.asarray(word)
    erased = np.asarray(erased, dtype=bool)
    if not erased[point_index(q, *target)]:
        raise ValueError(f"target {target} is not erased")
    gf = spec.gf
    for rs in recovery_sets(spec, target):
        known = [p for p in rs.others if not erased[point_index(q, *p)]]
        if len(known) < d:
            continue
        known.sort(key=lambda p: p[rs.axis])
        use = known[:d]
        nodes = [p[rs.axis] for p in use]
        values = [int(word[point_index(q, *p)]) for p in use]
        return gf.lagrange_eval(nodes, values, target[rs.axis])
    return None


def fails_locally(spec: CodeSpec, erased, target: tuple[int, int]) -> bool:
    """True iff every recovery set of the target has at least r erased other points."""
    erased = np.asarray(erased, dtype=bool)
    return all(
        sum(bool(erased[point_index(spec.q, *p)]) for p in rs.others) >= spec.r
        for rs in recovery_sets(spec, target)
    )


def lrs_failure_closed_form(q: int, r: int, tau: float) -> float:
    """Exact local-recovery failure probability of the LRS code on an erasure channel."""
    if not 1 <= r <= q - 1:
        raise ValueError(f"r must lie in [1, {q - 1}], got {r}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    n = q - 1
    per_line = math.fsum(math.comb(n, i) * tau**i * (1.0 - tau) ** (n - i) for i in range(r, n + 1))
    return min(1.0, per_line) ** (q + 1)


def half_width(p: float, trials: int) -> float:
    """95% normal-approximation half-width of a binomial proportion."""
    return Z95 * math.sqrt(max(p * (1.0 - p), 0.0) / trials)


@lru_cache(maxsize=None)
def incidence(spec: CodeSpec, target: tuple[int, int]) -> np.ndarray:
    """Position-by-set 0/1 matrix over the other points of each recovery set."""
    sets = recovery_sets(spec, target)
    m = np.zeros((spec.n, len(sets)), dtype=np.float32)
    for c, rs in enumerate(sets):
        for p in rs.others:
            m[point_index(spec.q, *p), c] = 1.0
    m.setflags(write=False)
    return m


def erasure_block(seed: int, n: int, start: int, stop: int) -> np.ndarray:
    """Uniform draws for trials [start, stop), one row of n per trial.

    Row t is the same for every (start, stop) window containing t.
    """
    bitgen = np.random.Philox(key=seed)
    per_trial = n + (-n) % 4  # Philox emits 4 words per counter step.
    bitgen.advance(start * per_trial // 4)
    draws = np.random.Generator(bitgen).random((stop - start, per_trial))
    return draws[:, :n]


def count_failures(config: SimConfig, start: int, stop: int, target: tuple[int, int] = (0, 0)) -> int:
    spec = config.spec
    erased = erasure_block(config.seed, spec.n, start, stop) < config.tau
    erased[:, point_index(spec.q, *target)] = False
    hits = erased.astype(np.float32) @ incidence(spec, target)
    return int(np.all(hits >= spec.r, axis=1).sum())


def _chunk_job(args):
    config, start, stop, target = args
    return count_failures(config, start, stop, target)


def simulate_failure(config: SimConfig, workers: int = 1, target: tuple[int, int] = (0, 0)) -> SimEstimate:
    """Estimate the probability that an erased target symbol cannot be recovered locally."""
    jobs = [
        (config, s, min(config.trials, s + CHUNK_TRIALS), target)
        for s in range(0, config.trials, CHUNK_TRIALS)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(_chunk_job, jobs))
    else:
        failures = sum(map(_chunk_job, jobs))
    p = failures / config.trials
    return SimEstimate(p, half_width(p, config.trials), config.trials, failures)
