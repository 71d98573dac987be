"""Arithmetic in GF(2^ell) for 1 <= ell <= 16.

Elements are plain ints whose bit i is the coefficient of x^i.  Fields up to
ell = 8 multiply through log/antilog tables; larger fields use carry-less
multiplication followed by reduction.  Vectorised numpy variants are provided
for the matrix work done by the code and recovery modules.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

# Primitive (hence irreducible) polynomials, bit i = coefficient of x^i.
MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

TABLE_MAX_ELL = 8


class FieldError(ArithmeticError):
    pass


def clmul(x: int, y: int) -> int:
    """Carry-less product of two bit-polynomials."""
    out = 0
    while y:
        if y & 1:
            out ^= x
        x <<= 1
        y >>= 1
    return out


def poly_reduce(x: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    while x.bit_length() - 1 >= deg:
        x ^= modulus << (x.bit_length() - 1 - deg)
    return x


class GF:
    """The field GF(2^ell) with a fixed modulus.

    Immutable after construction; every method is pure.
    """

    def __init__(self, ell: int, modulus: int | None = None):
        if not 1 <= ell <= 16:
            raise ValueError(f"ell must lie in [1, 16], got {ell}")
        if modulus is None:
            modulus = MODULI[ell]
        if modulus.bit_length() - 1 != ell:
            raise ValueError(f"modulus {modulus:#x} does not have degree {ell}")
        self.ell = ell
        self.q = 1 << ell
        self.modulus = modulus
        self.exp_table: np.ndarray | None = None
        self.log_table: np.ndarray | None = None
        self.mul_table: np.ndarray | None = None
        if ell <= TABLE_MAX_ELL:
            self._build_tables()

    def __repr__(self):
        return f"GF(2^{self.ell}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.ell, self.modulus) == (other.ell, other.modulus)

    def __hash__(self):
        return hash((self.ell, self.modulus))

    def _build_tables(self):
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = poly_reduce(x << 1, self.modulus)
        if x != 1 or len(set(exp[:n].tolist())) != n:
            # The table method needs x to be primitive; fall back otherwise.
            return
        exp[n:] = exp[:n]
        self.exp_table = exp
        self.log_table = log
        el = np.arange(self.q)
        table = exp[log[el][:, None] + log[el][None, :]]
        table[0, :] = 0
        table[:, 0] = 0
        self.mul_table = table

    def elements(self) -> range:
        return range(self.q)

    def _check(self, x: int):
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of GF({self.q})")

    # -- scalar arithmetic -------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return x ^ y

    sub = add

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.exp_table is not None:
            return int(self.exp_table[self.log_table[x] + self.log_table[y]])
        return poly_reduce(clmul(x, y), self.modulus)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self.exp_table is not None:
            return int(self.exp_table[(int(self.log_table[x]) * e) % (self.q - 1)])
        e %= self.q - 1
        out = 1
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no inverse")
        if self.q == 2:
            return 1
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def eval_poly(self, coeffs: Sequence[int], x: int) -> int:
        """Horner evaluation of sum(coeffs[i] * x**i)."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc

    # -- polynomials ---------------------------------------------------------

    def poly_mul(self, f: Sequence[int], g: Sequence[int]) -> list[int]:
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi == 0:
                continue
            for j, gj in enumerate(g):
                if gj:
                    out[i + j] ^= self.mul(fi, gj)
        return out

    def interpolate(self, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
        """Coefficients of the unique polynomial of degree < len(xs) through the points."""
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        n = len(xs)
        coeffs = [0] * n
        for k, (xk, yk) in enumerate(zip(xs, ys)):
            if yk == 0:
                continue
            basis = [1]
            denom = 1
            for m, xm in enumerate(xs):
                if m != k:
                    basis = self.poly_mul(basis, [xm, 1])
                    denom = self.mul(denom, xk ^ xm)
            scale = self.div(yk, denom)
            for i, c in enumerate(basis):
                coeffs[i] ^= self.mul(scale, c)
        return coeffs

    def lagrange_eval(self, xs: Sequence[int], ys: Sequence[int], x0: int) -> int:
        """Value at x0 of the interpolating polynomial, without forming coefficients."""
        total = 0
        for k, (xk, yk) in enumerate(zip(xs, ys)):
            if yk == 0:
                continue
            num, den = 1, 1
            for m, xm in enumerate(xs):
                if m != k:
                    num = self.mul(num, x0 ^ xm)
                    den = self.mul(den, xk ^ xm)
            total ^= self.mul(yk, self.div(num, den))
        return total

    # -- vectorised arithmetic ---------------------------------------------

    def vmul(self, x, y) -> np.ndarray:
        """Elementwise product of broadcastable integer arrays."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[x, y]
        x, y = np.broadcast_arrays(x, y)
        prod = np.zeros(x.shape, dtype=np.int64)
        xx = x.copy()
        for bit in range(self.ell):
            prod ^= np.where((y >> bit) & 1, xx, 0)
            xx = xx << 1
        for bit in range(2 * self.ell - 2, self.ell - 1, -1):
            prod ^= np.where((prod >> bit) & 1, self.modulus << (bit - self.ell), 0)
        return prod

    def vpow(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        out = np.ones_like(x)
        base = x.copy()
        while e:
            if e & 1:
                out = self.vmul(out, base)
            base = self.vmul(base, base)
            e >>= 1
        return out

    def vinv(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise FieldError("zero has no inverse")
        return self.vpow(x, self.q - 2) if self.q > 2 else np.ones_like(x)

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        for k in range(a.shape[-1]):
            out ^= self.vmul(a[..., k, None], b[k])
        return out

    def rref(self, m) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        m = np.array(m, dtype=np.int64, copy=True)
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            p = r + nz[0]
            if p != r:
                m[[r, p]] = m[[p, r]]
            m[r] = self.vmul(m[r], self.inv(int(m[r, c])))
            factors = m[:, c].copy()
            factors[r] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                m[hit] ^= self.vmul(factors[hit, None], m[r][None, :])
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, m) -> int:
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])


@lru_cache(maxsize=None)
def field(ell: int) -> GF:
    """Shared context for GF(2^ell) with the default modulus."""
    return GF(ell)


def is_irreducible(modulus: int) -> bool:
    """Brute-force irreducibility test over GF(2) by trial division."""
    deg = modulus.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if d.bit_length() - 1 > deg // 2:
            break
        if poly_reduce(modulus, d) == 0:
            return False
    return True
