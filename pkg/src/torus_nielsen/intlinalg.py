"""Exact 2x2 integer linear algebra: solving M z = b over Z, lattice normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Vec = tuple[int, int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major 2x2 integer matrix ((a11, a12), (a21, a22))."""

    a11: int
    a12: int
    a21: int
    a22: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @property
    def rows(self) -> tuple[Vec, Vec]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    @property
    def cols(self) -> tuple[Vec, Vec]:
        return ((self.a11, self.a21), (self.a12, self.a22))

    def flat(self) -> tuple[int, int, int, int]:
        return (self.a11, self.a12, self.a21, self.a22)

    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> int:
        return self.a11 + self.a22

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __sub__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(*(a - b for a, b in zip(self.flat(), other.flat())))

    def __neg__(self) -> "IntMatrix2":
        return IntMatrix2(*(-a for a in self.flat()))

    def apply(self, z: Sequence[int]) -> Vec:
        return (self.a11 * z[0] + self.a12 * z[1], self.a21 * z[0] + self.a22 * z[1])

    def inverse(self) -> "IntMatrix2":
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix {self.rows} is not invertible over Z (det {d})")
        return IntMatrix2(self.a22 * d, -self.a12 * d, -self.a21 * d, self.a11 * d)

    def is_zero(self) -> bool:
        return not any(self.flat())

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.flat())


I2 = IntMatrix2.identity()


def smith_form(m: IntMatrix2) -> tuple[IntMatrix2, tuple[int, int], IntMatrix2]:
    """Return (L, (d1, d2), R) with L @ m @ R = diag(d1, d2), L and R unimodular.

    d1 divides d2, both non-negative.
    """
    a = [list(m.rows[0]), list(m.rows[1])]
    L = [[1, 0], [0, 1]]
    R = [[1, 0], [0, 1]]

    def row_op(M, i, j, p, q, r, s):
        # rows (i, j) <- (p*row_i + q*row_j, r*row_i + s*row_j)
        ri, rj = M[i][:], M[j][:]
        M[i] = [p * x + q * y for x, y in zip(ri, rj)]
        M[j] = [r * x + s * y for x, y in zip(ri, rj)]

    def col_op(M, i, j, p, q, r, s):
        for row in M:
            ci, cj = row[i], row[j]
            row[i], row[j] = p * ci + q * cj, r * ci + s * cj

    while True:
        if a[0][1] == 0 and a[1][0] == 0:
            break
        if a[1][0] != 0:
            if a[0][0] != 0 and a[1][0] % a[0][0] == 0:
                k = a[1][0] // a[0][0]
                ops = (1, 0, -k, 1)
            else:
                g, x, y = xgcd(a[0][0], a[1][0])
                ops = (x, y, -(a[1][0] // g), a[0][0] // g)
            row_op(a, 0, 1, *ops)
            row_op(L, 0, 1, *ops)
        if a[0][1] != 0:
            if a[0][0] != 0 and a[0][1] % a[0][0] == 0:
                k = a[0][1] // a[0][0]
                ops = (1, 0, -k, 1)
            else:
                g, x, y = xgcd(a[0][0], a[0][1])
                ops = (x, y, -(a[0][1] // g), a[0][0] // g)
            col_op(a, 0, 1, *ops)
            col_op(R, 0, 1, *ops)
    d1, d2 = a[0][0], a[1][1]
    if d1 != 0 and d2 % d1 != 0:
        # diag(d1, d2) -> diag(gcd, lcm)
        row_op(a, 0, 1, 1, 1, 0, 1)
        row_op(L, 0, 1, 1, 1, 0, 1)
        return _finish_smith(a, L, R)
    if d1 == 0 and d2 != 0:
        row_op(a, 0, 1, 0, 1, 1, 0)
        row_op(L, 0, 1, 0, 1, 1, 0)
        col_op(a, 0, 1, 0, 1, 1, 0)
        col_op(R, 0, 1, 0, 1, 1, 0)
        d1, d2 = a[0][0], a[1][1]
    if d1 < 0:
        row_op(a, 0, 1, -1, 0, 0, 1)
        row_op(L, 0, 1, -1, 0, 0, 1)
        d1 = -d1
    if d2 < 0:
        row_op(a, 0, 1, 1, 0, 0, -1)
        row_op(L, 0, 1, 1, 0, 0, -1)
        d2 = -d2
    return IntMatrix2.from_rows(L), (d1, d2), IntMatrix2.from_rows(R)


def _finish_smith(a, L, R):
    Lm, d, Rm = smith_form(IntMatrix2.from_rows(a))
    return Lm @ IntMatrix2.from_rows(L), d, IntMatrix2.from_rows(R) @ Rm


def solve_integer_system(m: IntMatrix2, b: Sequence[int]) -> Optional[tuple[Vec, list[Vec]]]:
    """All integer solutions of m z = b as (particular, kernel basis), or None.

    The kernel basis spans ker(m) intersected with Z^2 (0, 1 or 2 vectors).
    """
    L, (d1, d2), R = smith_form(m)
    c = L.apply(b)
    w = [0, 0]
    kernel: list[Vec] = []
    for i, (d, ci) in enumerate(((d1, c[0]), (d2, c[1]))):
        if d == 0:
            if ci != 0:
                return None
            e = [0, 0]
            e[i] = 1
            kernel.append(R.apply(e))
        else:
            if ci % d:
                return None
            w[i] = ci // d
    return R.apply(w), kernel


def lattice_basis(gens: Sequence[Sequence[int]]) -> list[Vec]:
    """Hermite-style basis of the sublattice of Z^2 spanned by ``gens``.

    Rank 2: [(a, b), (0, c)] with a > 0, c > 0, 0 <= b < c.
    Rank 1: [(p, q)] with the first nonzero coordinate positive.
    Rank 0: [].
    """
    cols = [(int(x), int(y)) for x, y in gens if x or y]
    # fold every column into one with gcd in the first row
    head: Optional[Vec] = None
    rest: list[int] = []
    for col in cols:
        if head is None:
            head = col
            continue
        g, s, t = xgcd(head[0], col[0])
        if g == 0:
            rest.append(col[1])
            continue
        new_head = (g, s * head[1] + t * col[1])
        p, q = head[0] // g, col[0] // g
        rest.append(-q * head[1] + p * col[1])
        head = new_head
    if head is None:
        return []
    if head[0] == 0:
        # every generator has zero first coordinate
        c = 0
        for y in [head[1]] + rest:
            c = xgcd(c, y)[0]
        return [(0, c)] if c else []
    if head[0] < 0:
        head = (-head[0], -head[1])
    c = 0
    for y in rest:
        c = xgcd(c, y)[0]
    if c == 0:
        return [head]
    return [(head[0], head[1] % c), (0, c)]


def reduce_mod_lattice(z: Sequence[int], basis: Sequence[Vec]) -> Vec:
    """Canonical representative of z modulo the lattice with Hermite ``basis``."""
    x, y = int(z[0]), int(z[1])
    if not basis:
        return (x, y)
    if len(basis) == 2:
        (a, b), (_, c) = basis
        k = x // a
        x, y = x - k * a, y - k * b
        return (x, y % c)
    (p, q), = basis
    if p:
        k = x // p
        return (x - k * p, y - k * q)
    return (x, y % q)
