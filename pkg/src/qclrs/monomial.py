"""Monomial classification for curve- and line-lifted codes.

A monomial x^a y^b is *good* for a family of curves and a degree bound d when
its restriction to every member of the family, reduced modulo x^q - x, has
degree below d.  The bit criteria here decide this from the binary digits of
(a, b); ``restrict_to_curve`` / ``restrict_to_line`` compute the restriction
symbolically and act as the brute-force reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .gf import GF


class Monomial(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class Curve:
    """The quadratic curve y = alpha*x^2 + beta*x + gamma."""

    alpha: int
    beta: int
    gamma: int

    def y(self, gf: GF, x: int) -> int:
        return gf.mul(self.alpha, gf.mul(x, x)) ^ gf.mul(self.beta, x) ^ self.gamma

    def points(self, gf: GF) -> list[tuple[int, int]]:
        return [(x, self.y(gf, x)) for x in gf.elements()]


@dataclass(frozen=True)
class Line:
    """Either y = slope*x + intercept, or the vertical line x = intercept."""

    slope: int
    intercept: int
    vertical: bool = False

    def points(self, gf: GF) -> list[tuple[int, int]]:
        if self.vertical:
            return [(self.intercept, y) for y in gf.elements()]
        return [(x, gf.mul(self.slope, x) ^ self.intercept) for x in gf.elements()]


def all_curves(q: int) -> Iterator[Curve]:
    for alpha in range(q):
        for beta in range(q):
            for gamma in range(q):
                yield Curve(alpha, beta, gamma)


def all_lines(q: int) -> Iterator[Line]:
    for slope in range(q):
        for intercept in range(q):
            yield Line(slope, intercept)
    for c in range(q):
        yield Line(0, c, vertical=True)


def _check_q(q: int):
    if q < 2 or q & (q - 1):
        raise ValueError(f"field size must be a power of two, got {q}")


def _check_degree(q: int, d: int):
    if not 1 <= d <= q - 1:
        raise ValueError(f"degree bound d must lie in [1, {q - 1}], got {d}")


def mod_star(a: int, q: int) -> int:
    """Fold an exponent into [0, q-1] the way x^q = x does on GF(q)."""
    if a < 0:
        raise ValueError("exponent must be non-negative")
    if a <= q - 1:
        return a
    r = a % (q - 1)
    return q - 1 if r == 0 else r


def in_shadow(a: int, b: int) -> bool:
    """True iff a lies in the 2-shadow of b (every set bit of a is set in b)."""
    return a & b == a


def submasks(b: int) -> Iterator[int]:
    """All i with i & b == i, in descending order, ending with 0."""
    i = b
    while True:
        yield i
        if i == 0:
            return
        i = (i - 1) & b


def qc_exponents(a: int, b: int) -> Iterator[int]:
    """The unreduced exponents 2i + j + a over i <= b, j <= b - i (2-shadow)."""
    for i in submasks(b):
        for j in submasks(b ^ i):
            yield 2 * i + j + a


def is_qc_good(m: Monomial | tuple[int, int], q: int, d: int) -> bool:
    _check_q(q)
    _check_degree(q, d)
    a, b = m
    return all(mod_star(e, q) < d for e in qc_exponents(a, b))


def is_lrs_good(m: Monomial | tuple[int, int], q: int, d: int) -> bool:
    """Goodness for the family of all affine lines, vertical ones included."""
    _check_q(q)
    _check_degree(q, d)
    a, b = m
    if b >= d:
        return False
    return all(mod_star(a + i, q) < d for i in submasks(b))


def good_monomials(family: str, q: int, d: int) -> list[Monomial]:
    """Good monomials in graded-lex order (by a + b, then a)."""
    test = is_qc_good if family == "qclrs" else is_lrs_good
    found = [Monomial(a, b) for a in range(q) for b in range(q) if test((a, b), q, d)]
    return sorted(found, key=lambda m: (m.a + m.b, m.a))


# -- symbolic restriction oracles ------------------------------------------


def fold(gf: GF, coeffs: list[int]) -> list[int]:
    """Reduce a coefficient list modulo x^q - x; result has length q."""
    q = gf.q
    out = [0] * q
    for e, c in enumerate(coeffs):
        if c:
            out[mod_star(e, q)] ^= c
    return out


def degree(coeffs: list[int]) -> int:
    """Degree of a coefficient list; -1 for the zero polynomial."""
    for e in range(len(coeffs) - 1, -1, -1):
        if coeffs[e]:
            return e
    return -1


def _poly_pow(gf: GF, base: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = gf.poly_mul(out, base)
    return out


def restrict_to_curve(gf: GF, m: Monomial | tuple[int, int], c: Curve) -> list[int]:
    """Coefficients of x^a (alpha x^2 + beta x + gamma)^b modulo x^q - x."""
    a, b = m
    inner = _poly_pow(gf, [c.gamma, c.beta, c.alpha], b)
    return fold(gf, [0] * a + inner)


def restrict_to_line(gf: GF, m: Monomial | tuple[int, int], line: Line) -> list[int]:
    """Restriction to a line, as a polynomial in x (or in y for a vertical line)."""
    a, b = m
    if line.vertical:
        coeffs = [0] * (b + 1)
        coeffs[b] = gf.pow(line.intercept, a)
        return fold(gf, coeffs)
    inner = _poly_pow(gf, [line.intercept, line.slope], b)
    return fold(gf, [0] * a + inner)


def oracle_max_degrees(gf: GF, family: str) -> dict[Monomial, int]:
    """Maximum restriction degree of every monomial over the whole family.

    A monomial is good for d exactly when its entry is < d.  Powers of each
    curve polynomial are built once and shifted for every a.
    """
    q = gf.q
    members = list(all_curves(q)) if family == "qclrs" else list(all_lines(q))
    best = {Monomial(a, b): -1 for a in range(q) for b in range(q)}
    for member in members:
        if family == "lrs" and member.vertical:
            for a in range(q):
                for b in range(q):
                    deg = degree(restrict_to_line(gf, (a, b), member))
                    if deg > best[a, b]:
                        best[Monomial(a, b)] = deg
            continue
        if family == "qclrs":
            base = [member.gamma, member.beta, member.alpha]
        else:
            base = [member.intercept, member.slope]
        power = [1]
        for b in range(q):
            for a in range(q):
                deg = degree(fold(gf, [0] * a + power))
                if deg > best[a, b]:
                    best[Monomial(a, b)] = deg
            power = gf.poly_mul(power, base)
    return best
