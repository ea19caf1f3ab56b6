"""Fixed circles of piecewise-affine homotopies of the torus, by exact congruence solving.

A piece on [t_lo, t_hi] lifts to z -> L z + t r + g with L an integer matrix.
A point (z, t) is fixed iff (L - I) z + t r + g lies in Z^2.  When L - I has
rank one, a unimodular change of torus coordinates z = Q w turns this into
conditions on (t, w1) only, so every solution is a circle swept out by w2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .intlinalg import IntMatrix2, smith_form

Q = Fraction
HALF = Fraction(1, 2)


class NonCircleComponent(ValueError):
    """The fixed set has a component that is not an isolated circle."""


class HomotopyCase(str, Enum):
    SQUARE_B3_ZERO = "squareB3Zero"
    TRI_B4_MINUS_ONE = "triB4MinusOne"


class Variant(str, Enum):
    TWO_STAGE = "two-stage"   # move along x first, then along y
    STRAIGHT = "straight"     # straight-line path between the same end maps


@dataclass(frozen=True)
class ModelHomotopyParams:
    case: HomotopyCase
    c1: int
    c2: int
    b4: int = -1

    def __post_init__(self):
        object.__setattr__(self, "case", HomotopyCase(self.case))
        if self.case is HomotopyCase.TRI_B4_MINUS_ONE and self.b4 != -1:
            raise ValueError("triB4MinusOne fixes b4 = -1")


@dataclass(frozen=True)
class AffinePiece:
    """z -> linear z + t rate + offset on t_lo <= t <= t_hi, lifted to R^2."""

    t_lo: Fraction
    t_hi: Fraction
    linear: IntMatrix2
    rate: tuple[Fraction, Fraction]
    offset: tuple[Fraction, Fraction]

    def __post_init__(self):
        if not 0 <= self.t_lo < self.t_hi <= 1:
            raise ValueError(f"bad parameter interval [{self.t_lo}, {self.t_hi}]")

    @classmethod
    def from_coefficients(cls, t_lo, t_hi, alpha, beta, gamma, delta, epsilon, zeta) -> "AffinePiece":
        """x' = x + alpha y + beta t + gamma,  y' = delta y + epsilon t + zeta."""
        alpha, delta = Q(alpha), Q(delta)
        if alpha.denominator != 1 or delta.denominator != 1:
            raise ValueError("the linear part of a torus map must be integral")
        return cls(Q(t_lo), Q(t_hi), IntMatrix2(1, int(alpha), 0, int(delta)), (Q(beta), Q(epsilon)), (Q(gamma), Q(zeta)))

    def __call__(self, z: Sequence, t) -> tuple[Fraction, Fraction]:
        t = Q(t)
        x, y = Q(z[0]), Q(z[1])
        L = self.linear
        lz = (L.a11 * x + L.a12 * y, L.a21 * x + L.a22 * y)
        return (lz[0] + t * self.rate[0] + self.offset[0], lz[1] + t * self.rate[1] + self.offset[1])


Homotopy = list[AffinePiece]


@dataclass(frozen=True)
class FixedCircle:
    """{base + s direction : s in R} at parameter t, all mod Z^2."""

    t: Fraction
    base: tuple[Fraction, Fraction]
    direction: tuple[int, int]
    class_marker: Optional[object] = None

    @property
    def free_coordinate(self) -> str:
        return {(1, 0): "x", (0, 1): "y"}.get(self.direction, f"{self.direction}")

    @property
    def y(self) -> Fraction:
        return self.base[1] % 1

    def point(self, s) -> tuple[Fraction, Fraction]:
        s = Q(s)
        return (self.base[0] + s * self.direction[0], self.base[1] + s * self.direction[1])

    def to_json(self) -> dict:
        def q(f: Fraction) -> list[int]:
            return [f.numerator, f.denominator]

        return {
            "t": q(self.t),
            "base": [q(self.base[0]), q(self.base[1])],
            "free": self.free_coordinate,
            "direction": list(self.direction),
        }


# -- model homotopies -------------------------------------------------------------


def model_homotopy(p: ModelHomotopyParams, variant: Variant | str = Variant.TWO_STAGE) -> Homotopy:
    variant = Variant(variant)
    c1, c2, b4 = p.c1, p.c2, p.b4
    P = AffinePiece.from_coefficients
    if p.case is HomotopyCase.SQUARE_B3_ZERO:
        if variant is Variant.STRAIGHT:
            return [P(0, 1, 0, c1, -HALF, b4, c2, 0)]
        return [
            P(0, HALF, 0, 2 * c1, -HALF, b4, 0, 0),
            P(HALF, 1, 0, 0, Q(2 * c1 - 1, 2), b4, 2 * c2, -c2),
        ]
    if variant is Variant.STRAIGHT:
        return [P(0, 1, 1, c1, HALF, -1, c2, HALF)]
    return [
        P(0, HALF, 1, 2 * c1, HALF, -1, 0, HALF),
        P(HALF, 1, 1, 0, Q(2 * c1 + 1, 2), -1, 2 * c2, -c2 + HALF),
    ]


def model_homotopy_for(m, variant: Variant | str = Variant.TWO_STAGE) -> Homotopy:
    """The homotopy whose lift a cell model was built from."""
    from .cells import SQUARE

    c1, c2, b4 = m.params
    case = HomotopyCase.SQUARE_B3_ZERO if m.name == SQUARE else HomotopyCase.TRI_B4_MINUS_ONE
    return model_homotopy(ModelHomotopyParams(case, c1, c2, b4), variant)


def straight_homotopy(B: IntMatrix2, c: Sequence[int], offset: Sequence) -> Homotopy:
    """z -> B z + t c + offset for t in [0, 1]."""
    return [AffinePiece(Q(0), Q(1), B, (Q(c[0]), Q(c[1])), (Q(offset[0]), Q(offset[1])))]


def free_offset(B: IntMatrix2) -> tuple[Fraction, Fraction]:
    """A half-integral offset g making z -> B z + g + (integer shift) fixed point free.

    Needs det(B - I) = 0 and B != I.
    """
    K = B - IntMatrix2.identity()
    if K.is_zero() or K.det() != 0:
        raise ValueError("need B - I of rank one")
    for g in ((HALF, Q(0)), (Q(0), HALF), (HALF, HALF)):
        if _points_on_line(K, g) == []:
            return g
    raise AssertionError("no half-integral fixed point free offset")


# -- exact solving ------------------------------------------------------------------


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


def _column_basis(K: IntMatrix2) -> tuple[IntMatrix2, tuple[int, int]]:
    """Unimodular Q with K Q = [k | 0] (second column zero) for K of rank <= 1."""
    L, (d1, d2), R = smith_form(K)
    if d2 != 0:
        raise NonCircleComponent("fixed points are isolated in each fiber, components are arcs")
    # K R = L^-1 diag(d1, 0): the second column of K R vanishes
    KR = K @ R
    return R, (KR.a11, KR.a21)


def _solve_1d(a: Sequence[Fraction], c: Sequence[Fraction], lo: Fraction, hi: Fraction, closed: bool) -> Optional[list[Fraction]]:
    """All s in [lo, hi] (or [lo, hi) when not closed) with a s + c in Z^2; None means every s."""
    a = [Q(x) for x in a]
    c = [Q(x) for x in c]
    if a[0] == 0 and a[1] == 0:
        return None if all(_is_int(x) for x in c) else []
    i, j = (0, 1) if a[0] != 0 else (1, 0)
    if a[j] == 0 and not _is_int(c[j]):
        return []
    vals = sorted([a[i] * lo + c[i], a[i] * hi + c[i]])
    out = []
    for n in range(math.floor(vals[0]), math.ceil(vals[1]) + 1):
        s = (n - c[i]) / a[i]
        if not (lo <= s <= hi) or (not closed and s == hi):
            continue
        if _is_int(a[j] * s + c[j]):
            out.append(s)
    return sorted(set(out))


def _points_on_line(K: IntMatrix2, g: Sequence) -> Optional[list[Fraction]]:
    """Solutions w1 in [0, 1) of (K Q e1) w1 + g in Z^2; None when the whole torus is fixed."""
    if K.is_zero():
        return None if all(_is_int(Q(x)) for x in g) else []
    _, k = _column_basis(K)
    return _solve_1d(k, g, Q(0), Q(1), closed=False)


def _common_linear(h: Homotopy) -> IntMatrix2:
    Ls = {p.linear for p in h}
    if len(Ls) != 1:
        raise ValueError("pieces of one homotopy must share their linear part")
    return Ls.pop()


def boundary_fixed_point_free(h: Homotopy) -> bool:
    """True iff F(., 0) and F(., 1) have no fixed points on the torus."""
    pieces = sorted(h, key=lambda p: p.t_lo)
    K = _common_linear(pieces) - IntMatrix2.identity()
    if K.det() != 0:
        return False  # a hyperbolic or elliptic part always has fixed points
    for piece, t in ((pieces[0], Q(0)), (pieces[-1], Q(1))):
        g = tuple(t * piece.rate[i] + piece.offset[i] for i in range(2))
        sols = _points_on_line(K, g)
        if sols is None or sols:
            return False
    return True


def fixed_set(h: Homotopy) -> list[FixedCircle]:
    """One FixedCircle per component of the fixed set, sorted by (t, base)."""
    pieces = sorted(h, key=lambda p: p.t_lo)
    L = _common_linear(pieces)
    K = L - IntMatrix2.identity()
    if K.is_zero():
        # every fixed parameter value fixes the whole torus
        for p in pieces:
            sols = _solve_1d(p.rate, p.offset, p.t_lo, p.t_hi, closed=True)
            if sols is None or sols:
                raise NonCircleComponent("a whole torus fiber is fixed")
        return []
    Qm, k = _column_basis(K)
    direction = (Qm.a12, Qm.a22)
    seen: dict[tuple[Fraction, Fraction], FixedCircle] = {}
    for p in pieces:
        # unknowns s = (t, w1): t rate + w1 k + offset in Z^2
        for t, w1 in _solve_2d(p.rate, k, p.offset, (p.t_lo, p.t_hi)):
            key = (t, w1 % 1)
            if key not in seen:
                base = (w1 * Qm.a11, w1 * Qm.a21)
                seen[key] = FixedCircle(t, base, direction)
    return [seen[k] for k in sorted(seen)]


def _solve_2d(col_t: Sequence, col_w: Sequence, c: Sequence, trange: tuple) -> list[tuple[Fraction, Fraction]]:
    """(t, w) with t in [lo, hi], w in [0, 1) and t col_t + w col_w + c in Z^2."""
    a = [[Q(col_t[0]), Q(col_w[0])], [Q(col_t[1]), Q(col_w[1])]]
    c = [Q(c[0]), Q(c[1])]
    lo, hi = Q(trange[0]), Q(trange[1])
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det == 0:
        _rank_deficient(a, c, lo, hi)
        return []
    corners = [(t, w) for t in (lo, hi) for w in (Q(0), Q(1))]
    imgs = [[a[i][0] * t + a[i][1] * w + c[i] for t, w in corners] for i in range(2)]
    out = []
    for n0 in range(math.floor(min(imgs[0])), math.ceil(max(imgs[0])) + 1):
        for n1 in range(math.floor(min(imgs[1])), math.ceil(max(imgs[1])) + 1):
            r0, r1 = n0 - c[0], n1 - c[1]
            t = (a[1][1] * r0 - a[0][1] * r1) / det
            w = (a[0][0] * r1 - a[1][0] * r0) / det
            if lo <= t <= hi and 0 <= w < 1:
                out.append((t, w))
    return out


def _rank_deficient(a, c, lo, hi) -> None:
    """Raise if a singular system has solutions in the box (they come in whole segments)."""
    rows = [r for r in a if r[0] != 0 or r[1] != 0]
    if not rows:
        if all(_is_int(x) for x in c):
            raise NonCircleComponent("the whole box is fixed")
        return
    r = rows[0]
    coeffs = []
    for row in a:
        if row[0] == 0 and row[1] == 0:
            coeffs.append(Q(0))
        else:
            coeffs.append(row[0] / r[0] if r[0] != 0 else row[1] / r[1])
    # row_i . s = coeffs_i * sigma with sigma = r . s over the box
    sig = [r[0] * t + r[1] * w for t in (lo, hi) for w in (Q(0), Q(1))]
    sols = _solve_1d(coeffs, c, min(sig), max(sig), closed=True)
    if sols is None or sols:
        raise NonCircleComponent("a fixed component is two-dimensional")


def circle_count(h: Homotopy) -> int:
    return len(fixed_set(h))


def satisfies_fixed_equation(h: Homotopy, circle: FixedCircle, samples: int = 8) -> bool:
    """Check the circle pointwise at ``samples`` rational positions along it."""
    pieces = [p for p in h if p.t_lo <= circle.t <= p.t_hi]
    if not pieces:
        return False
    for k in range(samples):
        z = circle.point(Q(k, samples))
        for p in pieces:
            img = p(z, circle.t)
            if not (_is_int(img[0] - z[0]) and _is_int(img[1] - z[1])):
                return False
    return True


def text_diagram(circles: Iterable[FixedCircle], width: int = 48, height: int = 12) -> str:
    """Circles as marks in the (t, transverse coordinate) square."""
    circles = list(circles)
    grid = [[" "] * width for _ in range(height)]
    for c in circles:
        # transverse coordinate: the one the circle does not sweep
        s = c.base[1] if c.direction[0] != 0 else c.base[0]
        col = min(width - 1, int(c.t * width))
        row = min(height - 1, int((s % 1) * height))
        grid[height - 1 - row][col] = "o"
    lines = ["1 +" + "-" * width + "+"]
    lines += ["  |" + "".join(r) + "|" for r in grid]
    lines.append("0 +" + "-" * width + "+")
    lines.append("   t=0" + " " * (width - 8) + "t=1")
    lines.append(f"   {len(circles)} circle(s)")
    return "\n".join(lines)
