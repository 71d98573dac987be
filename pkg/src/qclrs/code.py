"""Construction of QC-LRS and LRS evaluation codes.

Codewords are evaluation vectors over F_q^2 with column index x*q + y.
Membership is decided by interpolating every restriction to a member of the
family (q^3 quadratic curves for QC-LRS, q^2 + q lines for LRS) and checking
that the coefficients of degree >= d vanish.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .gf import GF, field
from .monomial import Monomial, good_monomials

FAMILIES = ("qclrs", "lrs")
EXHAUSTIVE_LIMIT = 1 << 24


@dataclass(frozen=True)
class CodeSpec:
    family: str
    ell: int
    d: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not 1 <= self.ell <= 16:
            raise ValueError(f"ell must lie in [1, 16], got {self.ell}")
        if not 1 <= self.d <= self.q - 1:
            raise ValueError(f"d must lie in [1, {self.q - 1}], got {self.d}")

    @classmethod
    def from_r(cls, family: str, ell: int, r: int) -> "CodeSpec":
        return cls(family, ell, (1 << ell) - r)

    @property
    def q(self) -> int:
        return 1 << self.ell

    @property
    def r(self) -> int:
        return self.q - self.d

    @property
    def n(self) -> int:
        return self.q * self.q

    @property
    def gf(self) -> GF:
        return field(self.ell)


@dataclass(frozen=True, eq=False)
class CodeInstance:
    spec: CodeSpec
    basis: tuple[Monomial, ...]
    generator: np.ndarray

    @property
    def k(self) -> int:
        return len(self.basis)


def point_index(q: int, x: int, y: int) -> int:
    return x * q + y


@lru_cache(maxsize=None)
def _coordinates(ell: int) -> tuple[np.ndarray, np.ndarray]:
    q = 1 << ell
    xs, ys = np.divmod(np.arange(q * q, dtype=np.int64), q)
    return xs, ys


def monomial_vector(gf: GF, a: int, b: int) -> np.ndarray:
    """Evaluations of x^a y^b at every point, with 0^0 = 1."""
    xs, ys = _coordinates(gf.ell)
    return gf.vmul(gf.vpow(xs, a), gf.vpow(ys, b))


def build_code(spec: CodeSpec) -> CodeInstance:
    basis = tuple(good_monomials(spec.family, spec.q, spec.d))
    gf = spec.gf
    if basis:
        generator = np.stack([monomial_vector(gf, m.a, m.b) for m in basis])
    else:
        generator = np.zeros((0, spec.n), dtype=np.int64)
    generator.setflags(write=False)
    return CodeInstance(spec, basis, generator)


def encode(inst: CodeInstance, message) -> np.ndarray:
    message = np.asarray(message, dtype=np.int64)
    if message.shape[-1] != inst.k:
        raise ValueError(f"message length {message.shape[-1]} does not match k={inst.k}")
    return inst.spec.gf.matmul(message, inst.generator)


# -- membership ------------------------------------------------------------


@lru_cache(maxsize=None)
def family_point_indices(family: str, ell: int) -> np.ndarray:
    """Row c lists the q positions on family member c, ordered by the free coordinate.

    QC-LRS rows follow (alpha, beta, gamma) in lexicographic order; LRS rows
    are the q^2 lines y = slope*x + intercept followed by the q vertical lines.
    """
    gf = field(ell)
    q = gf.q
    x = np.arange(q, dtype=np.int64)
    rows = []
    if family == "qclrs":
        xx = gf.vmul(x, x)
        for alpha in range(q):
            ax2 = gf.vmul(alpha, xx)
            for beta in range(q):
                partial = ax2 ^ gf.vmul(beta, x)
                for gamma in range(q):
                    rows.append(x * q + (partial ^ gamma))
    elif family == "lrs":
        for slope in range(q):
            sx = gf.vmul(slope, x)
            for intercept in range(q):
                rows.append(x * q + (sx ^ intercept))
        for c in range(q):
            rows.append(c * q + x)
    else:
        raise ValueError(f"unknown family {family!r}")
    out = np.stack(rows)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def coefficient_transform(ell: int) -> np.ndarray:
    """Matrix W with values @ W = interpolation coefficients, for nodes 0..q-1.

    Over GF(2^ell) the coefficient of t^s (s >= 1) of the interpolant of v is
    sum_t v(t) t^(q-1-s), reading 0^0 as 1; the constant term is v(0).
    """
    gf = field(ell)
    q = gf.q
    t = np.arange(q, dtype=np.int64)
    w = np.zeros((q, q), dtype=np.int64)
    w[0, 0] = 1
    for s in range(1, q):
        w[:, s] = gf.vpow(t, q - 1 - s)
    w.setflags(write=False)
    return w


def restriction_coefficients(spec: CodeSpec, words) -> np.ndarray:
    """Interpolated restriction coefficients, shape (..., members, q)."""
    words = np.asarray(words, dtype=np.int64)
    idx = family_point_indices(spec.family, spec.ell)
    values = words[..., idx]
    return spec.gf.matmul(values, coefficient_transform(spec.ell))


def member_mask(spec: CodeSpec, words) -> np.ndarray:
    """Membership of a batch of words (last axis of length q^2)."""
    words = np.asarray(words, dtype=np.int64)
    if words.shape[-1] != spec.n:
        raise ValueError(f"word length must be {spec.n}, got {words.shape[-1]}")
    idx = family_point_indices(spec.family, spec.ell)
    values = words[..., idx]
    high = coefficient_transform(spec.ell)[:, spec.d:]
    top = spec.gf.matmul(values, high)
    return ~np.any(top != 0, axis=(-2, -1))


def is_member(spec: CodeSpec, word) -> bool:
    return bool(member_mask(spec, word))


def constraint_matrix(spec: CodeSpec) -> np.ndarray:
    """Linear constraints cutting out the code: one row per (member, degree >= d)."""
    idx = family_point_indices(spec.family, spec.ell)
    high = coefficient_transform(spec.ell)[:, spec.d:]
    members, q = idx.shape
    rows = np.zeros((members, high.shape[1], spec.n), dtype=np.int64)
    for t in range(q):
        rows[np.arange(members), :, idx[:, t]] ^= high[t]
    return rows.reshape(-1, spec.n)


def code_dimension(spec: CodeSpec) -> int:
    """Dimension of the code from its defining constraints, without monomials."""
    return spec.n - spec.gf.rank(constraint_matrix(spec))


def verify_dimension(spec: CodeSpec) -> tuple[int, int]:
    """Good-monomial count and generator rank; raises if a bad monomial is accepted."""
    if spec.q > 32:
        raise ValueError("rank verification is limited to q <= 32")
    inst = build_code(spec)
    rank = spec.gf.rank(inst.generator)
    good = set(inst.basis)
    bad = [(a, b) for a in range(spec.q) for b in range(spec.q) if (a, b) not in good]
    if bad:
        words = np.stack([monomial_vector(spec.gf, a, b) for a, b in bad])
        accepted = member_mask(spec, words)
        if accepted.any():
            m = bad[int(np.argmax(accepted))]
            raise AssertionError(f"bad monomial x^{m[0]} y^{m[1]} passes membership")
    return inst.k, rank


# -- distance ----------------------------------------------------------------


def weight(words) -> np.ndarray:
    return np.count_nonzero(np.asarray(words), axis=-1)


def distance_witness(spec: CodeSpec) -> np.ndarray:
    """Evaluations of prod_{alpha in A} (x - alpha), A = {0, ..., q-r-2}.

    The word vanishes on q - r - 1 full columns and has weight q*r + q.
    """
    if spec.family != "qclrs":
        raise ValueError("the distance witness is defined for the QC-LRS family")
    gf = spec.gf
    xs, _ = _coordinates(spec.ell)
    word = np.ones(spec.n, dtype=np.int64)
    for alpha in range(spec.q - spec.r - 1):
        word = gf.vmul(word, xs ^ alpha)
    return word


def sample_min_weight(inst: CodeInstance, trials: int, seed: int, include_witness: bool = False) -> int:
    """Minimum weight over ``trials`` random nonzero codewords."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if inst.k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    rng = np.random.default_rng(seed)
    q = inst.spec.q
    best = inst.spec.n
    done = 0
    while done < trials:
        batch = min(4096, trials - done)
        msgs = rng.integers(0, q, size=(batch, inst.k), dtype=np.int64)
        zero = ~msgs.any(axis=1)
        while zero.any():
            msgs[zero] = rng.integers(0, q, size=(int(zero.sum()), inst.k), dtype=np.int64)
            zero = ~msgs.any(axis=1)
        best = min(best, int(weight(encode(inst, msgs)).min()))
        done += batch
    if include_witness:
        best = min(best, int(weight(distance_witness(inst.spec))))
    return best


def exhaustive_min_weight(inst: CodeInstance) -> int:
    """Exact minimum distance by enumerating every nonzero message."""
    q, k = inst.spec.q, inst.k
    if k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    if q**k > EXHAUSTIVE_LIMIT:
        raise ValueError(f"q^k = {q}^{k} exceeds the exhaustive search limit")
    total = q**k
    best = inst.spec.n
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, 1 << 16):
        ids = np.arange(start, min(total, start + (1 << 16)), dtype=np.int64)
        msgs = (ids[:, None] // powers) % q
        best = min(best, int(weight(encode(inst, msgs)).min()))
    return best


# -- serialisation -----------------------------------------------------------


def write_matrix_csv(path, spec: CodeSpec, matrix) -> None:
    """Write field elements row-major; the first row records family, ell and d."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"family={spec.family}", f"ell={spec.ell}", f"d={spec.d}"])
        w.writerows(matrix.tolist())


def read_matrix_csv(path) -> tuple[CodeSpec, np.ndarray]:
    with open(Path(path), newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    try:
        meta = dict(cell.split("=", 1) for cell in rows[0])
        spec = CodeSpec(meta["family"], int(meta["ell"]), int(meta["d"]))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: malformed header row {rows[0]!r}") from exc
    body = [[int(v) for v in row] for row in rows[1:] if row]
    matrix = np.array(body, dtype=np.int64).reshape(len(body), -1)
    if matrix.size and (matrix.min() < 0 or matrix.max() >= spec.q):
        raise ValueError(f"{path}: entries outside GF({spec.q})")
    return spec, matrix
