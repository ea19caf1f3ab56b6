"""Two CW decompositions of the torus with their operator matrices over ZG.

Cells are lifted to R^2 and C_*(R^2) is a right ZG-module: translating a lifted
cell by (a, b) is right multiplication by u^-a v^-b.  A matrix entry [i][j] is
the coefficient of target cell i in the image of source cell j, so composites
read right to left: d(D(E)) is ``partial @ D`` while D(d(E)) is
``D @ phi(partial)`` because D is phi-twisted.

The operator matrices are literal tables in the helper sums X, Y, W.  The
lifted cell geometry is kept alongside so that the boundary matrices and the
end maps F(., 0), F(., 1) can be checked against the actual cells.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import ZERO, Endo, Monomial, RingElt, apply_endo, format_ring, helper_sum

Matrix = tuple[tuple[RingElt, ...], ...]
Point = tuple[Fraction, Fraction]

SQUARE = "square"
TRIANGULATED = "triangulated"

H = Fraction(1, 2)


def _m(a: int = 0, b: int = 0) -> RingElt:
    return RingElt.monomial(a, b)


def _matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(RingElt.coerce(x) for x in row) for row in rows)


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    if a and len(a[0]) != n:
        raise ValueError("dimension mismatch in matrix product")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new_row = []
        for j in range(cols):
            acc = ZERO
            for k in range(n):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
    return tuple(tuple(x + y * sign for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_apply_endo(phi: Endo, a: Matrix) -> Matrix:
    return tuple(tuple(apply_endo(phi, x) for x in row) for row in a)


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_to_strings(a: Matrix) -> list[list[str]]:
    return [[format_ring(x) for x in row] for row in a]


# -- lifted geometry ------------------------------------------------------------


@dataclass(frozen=True)
class CellGeometry:
    """Lifted cells in R^2: vertices, edges as (start, end), faces as vertex cycles."""

    vertices: tuple[Point, ...]
    edges: tuple[tuple[Point, Point], ...]
    faces: tuple[tuple[Point, ...], ...]


def _pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


_SQUARE_GEOMETRY = CellGeometry(
    vertices=(_pt(0, 0), _pt(H, 0)),
    edges=(
        (_pt(0, 0), _pt(H, 0)),
        (_pt(H, 0), _pt(1, 0)),
        (_pt(0, 0), _pt(0, 1)),
        (_pt(H, 0), _pt(H, 1)),
    ),
    faces=(
        (_pt(0, 0), _pt(H, 0), _pt(H, 1), _pt(0, 1)),
        (_pt(H, 0), _pt(1, 0), _pt(1, 1), _pt(H, 1)),
    ),
)

_TRI_GEOMETRY = CellGeometry(
    vertices=(_pt(0, 0), _pt(H, 0), _pt(0, H), _pt(H, H)),
    edges=(
        (_pt(0, 0), _pt(H, 0)),
        (_pt(H, 0), _pt(1, 0)),
        (_pt(0, 0), _pt(0, H)),
        (_pt(0, H), _pt(H, 0)),
        (_pt(H, 0), _pt(H, H)),
        (_pt(H, H), _pt(1, 0)),
        (_pt(0, H), _pt(H, H)),
        (_pt(H, H), _pt(1, H)),
        (_pt(0, H), _pt(0, 1)),
        (_pt(0, 1), _pt(H, H)),
        (_pt(H, H), _pt(H, 1)),
        (_pt(H, 1), _pt(1, H)),
    ),
    faces=(
        (_pt(0, 0), _pt(H, 0), _pt(0, H)),
        (_pt(H, 0), _pt(H, H), _pt(0, H)),
        (_pt(H, 0), _pt(1, 0), _pt(H, H)),
        (_pt(1, 0), _pt(1, H), _pt(H, H)),
        (_pt(0, H), _pt(H, H), _pt(0, 1)),
        (_pt(H, H), _pt(H, 1), _pt(0, 1)),
        (_pt(H, H), _pt(1, H), _pt(H, 1)),
        (_pt(1, H), _pt(1, 1), _pt(H, 1)),
    ),
)


# -- models ---------------------------------------------------------------------


@dataclass(frozen=True)
class CellModel:
    name: str
    partial1: Matrix
    partial2: Matrix
    D0: Matrix
    D1: Matrix
    phi: Endo
    params: tuple[int, int, int]
    geometry: CellGeometry = field(repr=False, compare=False)
    y_shift: int = 2

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.partial1), len(self.partial2), len(self.D1))

    def check_shapes(self) -> None:
        n0, n1, n2 = self.counts
        for label, mat, shape in (
            ("partial1", self.partial1, (n0, n1)),
            ("partial2", self.partial2, (n1, n2)),
            ("D0", self.D0, (n1, n0)),
            ("D1", self.D1, (n2, n1)),
        ):
            if len(mat) != shape[0] or any(len(r) != shape[1] for r in mat):
                raise ValueError(f"{label} should be {shape[0]}x{shape[1]}")

    def lift(self, t) -> Callable[[Point], Point]:
        """The lift F~(., t) of the model homotopy."""
        c1, c2, b4 = self.params
        t = Fraction(t)
        if self.name == SQUARE:
            if t <= H:
                return lambda p: (p[0] + 2 * c1 * t - H, b4 * p[1])
            return lambda p: (p[0] + Fraction(2 * c1 - 1, 2), b4 * p[1] + 2 * c2 * t - c2)
        if t <= H:
            return lambda p: (p[0] + p[1] + 2 * c1 * t + H, -p[1] + H)
        return lambda p: (p[0] + p[1] + Fraction(2 * c1 + 1, 2), -p[1] + 2 * c2 * t - c2 + H)

    def flip(self, dim: int, index: int) -> "CellModel":
        """Reverse the orientation of one cell: negate its row and column everywhere."""
        def neg_row(mat: Matrix, i: int) -> Matrix:
            return tuple(tuple(-x for x in r) if k == i else r for k, r in enumerate(mat))

        def neg_col(mat: Matrix, j: int) -> Matrix:
            return tuple(tuple(-x if k == j else x for k, x in enumerate(r)) for r in mat)

        p1, p2, d0, d1 = self.partial1, self.partial2, self.D0, self.D1
        if dim == 0:
            p1, d0 = neg_row(p1, index), neg_col(d0, index)
        elif dim == 1:
            p1, p2 = neg_col(p1, index), neg_row(p2, index)
            d0, d1 = neg_row(d0, index), neg_col(d1, index)
        elif dim == 2:
            p2, d1 = neg_col(p2, index), neg_row(d1, index)
        else:
            raise ValueError("cells have dimension 0, 1 or 2")
        return replace(self, partial1=p1, partial2=p2, D0=d0, D1=d1)

    def to_json(self) -> dict:
        n0, n1, n2 = self.counts
        return {
            "name": self.name,
            "params": {"c1": self.params[0], "c2": self.params[1], "b4": self.params[2]},
            "phi": [self.phi.b1, self.phi.b2, self.phi.b3, self.phi.b4],
            "cells": {"0": n0, "1": n1, "2": n2},
            "partial1": mat_to_strings(self.partial1),
            "partial2": mat_to_strings(self.partial2),
            "D0": mat_to_strings(self.D0),
            "D1": mat_to_strings(self.D1),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


def build_square_model(c1: int, c2: int, b4: int, *, y_shift: int = 2) -> CellModel:
    """Decomposition with two 0-cells, four 1-cells and two 2-cells; phi = (1, 0, 0, b4)."""
    X = helper_sum("X", c1)
    Y = helper_sum("Y", c1, y_shift=y_shift)
    Wc, Wb = helper_sum("W", c2), helper_sum("W", b4)
    vi = _m(0, -1)
    partial1 = _matrix([
        [-1, _m(-1), vi - 1, 0],
        [1, -1, 0, vi - 1],
    ])
    partial2 = _matrix([
        [vi - 1, 0],
        [0, vi - 1],
        [1, -_m(-1)],
        [-1, 1],
    ])
    D0 = _matrix([
        [-X, -X],
        [-Y, -X],
        [0, -_m(-c1) * Wc],
        [-_m(1 - c1) * Wc, 0],
    ])
    D1 = _matrix([
        [0, _m(1 - c1) * Wc, X * Wb, X * Wb],
        [_m(1 - c1) * Wc, 0, Y * Wb, X * Wb],
    ])
    model = CellModel(SQUARE, partial1, partial2, D0, D1, Endo(1, 0, 0, b4), (c1, c2, b4), _SQUARE_GEOMETRY, y_shift)
    model.check_shapes()
    return model


def _tri_partials() -> tuple[Matrix, Matrix]:
    ui, vi = _m(-1), _m(0, -1)
    partial1 = _matrix([
        [-1, ui, -1, 0, 0, ui, 0, 0, vi, -vi, 0, 0],
        [1, -1, 0, 1, -1, 0, 0, 0, 0, 0, vi, -vi],
        [0, 0, 1, -1, 0, 0, -1, ui, -1, 0, 0, ui],
        [0, 0, 0, 0, 1, -1, 1, -1, 0, 1, -1, 0],
    ])
    partial2 = _matrix([
        [1, 0, 0, 0, 0, -vi, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, -vi],
        [-1, 0, 0, ui, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, -1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 1, 0],
        [0, 0, 0, 0, -1, 0, 0, ui],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, -1, 0],
        [0, 0, 0, 0, 0, 0, -1, 1],
    ])
    return partial1, partial2


def _tri_d1_images(c1: int, c2: int) -> dict[int, dict[int, RingElt]]:
    """Image of each 1-cell under D1, as {2-cell: coefficient}, cells numbered from 1."""
    X, W = helper_sum("X", c1), helper_sum("W", c2)
    e = -c1
    return {
        1: {3: _m(e, -1) * W, 4: _m(e, -1) * W, 7: _m(e) * W, 8: _m(e) * W},
        2: {1: _m(e - 1, -1) * W, 2: _m(e - 1, -1) * W, 5: _m(e - 1) * W, 6: _m(e - 1) * W},
        3: {
            1: _m(e) * X, 2: _m(e) * X,
            3: _m(e) * X + _m(e, -1) * W, 4: X + _m(e) * W,
            7: _m(e) * W, 8: _m(e) * W,
        },
        4: {1: _m(e) * X, 2: _m(e) * X, 3: _m(e) * X, 4: _m(e) * X},
        5: {
            1: _m(-2) * X + _m(e - 1, -1) * W, 2: _m(-1) * X + _m(e - 1) * W,
            3: _m(-1) * X, 4: _m(-1) * X,
            5: _m(e - 1) * W, 6: _m(e - 1) * W,
        },
        6: {1: _m(-2) * X, 2: _m(-2) * X, 3: _m(-1) * X, 4: _m(-1) * X},
        7: {1: _m(e - 1, -1) * W, 2: _m(e - 1, -1) * W, 5: _m(e - 1, -1) * W, 6: _m(e - 1, -1) * W},
        8: {1: _m(e - 1) * W, 2: _m(e - 1) * W, 5: _m(e - 1) * W, 6: _m(e - 1) * W},
        9: {
            1: _m(e - 1) * W, 2: _m(e - 1) * W,
            5: _m(-2, 1) * X + _m(e - 1) * W, 6: _m(-1, 1) * X + _m(e - 1, 1) * W,
            7: _m(-1, 1) * X, 8: _m(-1, 1) * X,
        },
        10: {5: _m(-2, 1) * X, 6: _m(-2, 1) * X, 7: _m(-1, 1) * X, 8: _m(-1, 1) * X},
        11: {
            3: _m(e - 1) * W, 4: _m(e - 1) * W,
            5: _m(-2, 1) * X, 6: _m(-2, 1) * X,
            7: _m(-2, 1) * X + _m(e - 1) * W, 8: _m(-1, 1) * X + _m(e - 1, 1) * W,
        },
        12: {5: _m(-2, 1) * X, 6: _m(-2, 1) * X, 7: _m(-2, 1) * X, 8: _m(-2, 1) * X},
    }


def build_triangulated_model(c1: int, c2: int) -> CellModel:
    """Decomposition with four 0-cells, twelve 1-cells and eight 2-cells; phi = (1, 0, 1, -1)."""
    X, W = helper_sum("X", c1), helper_sum("W", c2)
    e = -c1
    partial1, partial2 = _tri_partials()
    D0 = _matrix([
        [0, 0, -_m(-1) * X, -_m(-2) * X],
        [0, 0, -_m(-1) * X, -_m(-1) * X],
        [0, -_m(0, -1) * W, -_m(e - 1) * W, 0],
        [0, 0, 0, 0],
        [-_m(e, -1) * W, 0, 0, -_m(e - 1) * W],
        [0, 0, 0, 0],
        [-_m(e) * X, -_m(-1) * X, 0, 0],
        [-X, -_m(-1) * X, 0, 0],
        [0, -_m(e - 1) * W, -_m(e - 1) * W, 0],
        [0, 0, 0, 0],
        [-_m(e) * W, 0, 0, -_m(e) * W],
        [0, 0, 0, 0],
    ])
    images = _tri_d1_images(c1, c2)
    D1 = tuple(
        tuple(images[j].get(i, ZERO) for j in range(1, 13))
        for i in range(1, 9)
    )
    model = CellModel(TRIANGULATED, partial1, partial2, D0, D1, Endo(1, 0, 1, -1), (c1, c2, -1), _TRI_GEOMETRY)
    model.check_shapes()
    return model


def verify_complex(m: CellModel) -> bool:
    """partial1 @ partial2 == 0."""
    return mat_is_zero(mat_mul(m.partial1, m.partial2))


# -- geometric cross-checks -------------------------------------------------------


def _translation_element(a: Fraction, b: Fraction) -> Monomial:
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError(f"({a}, {b}) is not a deck translation")
    return Monomial(-int(a), -int(b))


def _locate_vertex(p: Point, geom: CellGeometry) -> Optional[tuple[int, Monomial]]:
    for i, q in enumerate(geom.vertices):
        d = (p[0] - q[0], p[1] - q[1])
        if d[0].denominator == 1 and d[1].denominator == 1:
            return i, _translation_element(*d)
    return None


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _signed_area(poly: Sequence[Point]) -> Fraction:
    n = len(poly)
    return sum((poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1] for i in range(n)), Fraction(0)) / 2


def _segment_chain(p: Point, q: Point, geom: CellGeometry) -> dict[tuple[int, Monomial], int]:
    """The oriented segment p -> q as a sum of translated lifted edges; {} if degenerate."""
    if p == q:
        return {}
    out: dict[tuple[int, Monomial], int] = {}
    lo_x, hi_x = sorted((p[0], q[0]))
    lo_y, hi_y = sorted((p[1], q[1]))
    covered = Fraction(0)
    length_key = abs(q[0] - p[0]) + abs(q[1] - p[1])
    for i, (a, b) in enumerate(geom.edges):
        for tx in range(int(lo_x - max(a[0], b[0])) - 1, int(hi_x - min(a[0], b[0])) + 2):
            for ty in range(int(lo_y - max(a[1], b[1])) - 1, int(hi_y - min(a[1], b[1])) + 2):
                a2 = (a[0] + tx, a[1] + ty)
                b2 = (b[0] + tx, b[1] + ty)
                if _cross(p, q, a2) != 0 or _cross(p, q, b2) != 0:
                    continue
                if not (_between(p, q, a2) and _between(p, q, b2)):
                    continue
                same = (b2[0] - a2[0]) * (q[0] - p[0]) + (b2[1] - a2[1]) * (q[1] - p[1]) > 0
                key = (i, Monomial(-tx, -ty))
                out[key] = out.get(key, 0) + (1 if same else -1)
                covered += abs(b2[0] - a2[0]) + abs(b2[1] - a2[1])
    if covered != length_key:
        raise ValueError(f"segment {p} -> {q} does not lie in the 1-skeleton")
    return out


def _between(p: Point, q: Point, r: Point) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _inside(poly: Sequence[Point], r: Point) -> bool:
    """Strictly inside a convex polygon (either orientation)."""
    signs = {(_cross(poly[i], poly[(i + 1) % len(poly)], r) > 0) for i in range(len(poly))}
    zero = any(_cross(poly[i], poly[(i + 1) % len(poly)], r) == 0 for i in range(len(poly)))
    return not zero and len(signs) == 1


def _centroid(poly: Sequence[Point]) -> Point:
    n = len(poly)
    return (sum((p[0] for p in poly), Fraction(0)) / n, sum((p[1] for p in poly), Fraction(0)) / n)


def edge_orientations(m: CellModel) -> list[int]:
    """+1 where the matrix orientation of a 1-cell agrees with the stored (start, end)."""
    out = []
    for j, (a, b) in enumerate(m.geometry.edges):
        sa, sb = _locate_vertex(a, m.geometry), _locate_vertex(b, m.geometry)
        col = [m.partial1[i][j] for i in range(len(m.partial1))]
        expect = [ZERO] * len(col)
        expect[sb[0]] = expect[sb[0]] + RingElt.coerce(sb[1])
        expect[sa[0]] = expect[sa[0]] - RingElt.coerce(sa[1])
        if col == expect:
            out.append(1)
        elif col == [-x for x in expect]:
            out.append(-1)
        else:
            raise ValueError(f"partial1 column {j + 1} does not match the edge geometry")
    return out


def face_orientations(m: CellModel) -> list[int]:
    """+1 where the matrix orientation of a 2-cell is counterclockwise."""
    eo = edge_orientations(m)
    out = []
    for j, poly in enumerate(m.geometry.faces):
        ccw = list(poly) if _signed_area(poly) > 0 else list(reversed(poly))
        expect = [ZERO] * len(m.partial2)
        for k in range(len(ccw)):
            for (i, g), c in _segment_chain(ccw[k], ccw[(k + 1) % len(ccw)], m.geometry).items():
                expect[i] = expect[i] + RingElt.coerce(g) * (c * eo[i])
        col = [m.partial2[i][j] for i in range(len(m.partial2))]
        if col == expect:
            out.append(1)
        elif col == [-x for x in expect]:
            out.append(-1)
        else:
            raise ValueError(f"partial2 column {j + 1} does not match the face geometry")
    return out


def cellular_chain_map(m: CellModel, f: Callable[[Point], Point]) -> tuple[Matrix, Matrix, Matrix]:
    """Chain maps (F_0, F_1, F_2) of an affine cellular lift f, as twisted matrices."""
    geom = m.geometry
    n0, n1, n2 = m.counts
    eo = edge_orientations(m)
    fo = face_orientations(m)

    f_0 = [[ZERO] * n0 for _ in range(n0)]
    for j, p in enumerate(geom.vertices):
        hit = _locate_vertex(f(p), geom)
        if hit is None:
            raise ValueError(f"vertex {j + 1} does not map to a vertex")
        i, g = hit
        f_0[i][j] = f_0[i][j] + RingElt.coerce(g)

    f_1 = [[ZERO] * n1 for _ in range(n1)]
    for j, (a, b) in enumerate(geom.edges):
        for (i, g), c in _segment_chain(f(a), f(b), geom).items():
            f_1[i][j] = f_1[i][j] + RingElt.coerce(g) * (c * eo[i] * eo[j])

    f_2 = [[ZERO] * n2 for _ in range(n2)]
    for j, poly in enumerate(geom.faces):
        image = [f(p) for p in poly]
        area = _signed_area(image)
        if area == 0:
            continue
        src = 1 if _signed_area(poly) > 0 else -1
        sign = (1 if area > 0 else -1) * src * fo[j]
        xs = [p[0] for p in image]
        ys = [p[1] for p in image]
        for i, cell in enumerate(geom.faces):
            c = _centroid(cell)
            for tx in range(int(min(xs) - c[0]) - 1, int(max(xs) - c[0]) + 2):
                for ty in range(int(min(ys) - c[1]) - 1, int(max(ys) - c[1]) + 2):
                    if _inside(image, (c[0] + tx, c[1] + ty)):
                        f_2[i][j] = f_2[i][j] + RingElt.coerce(Monomial(-tx, -ty)) * (sign * fo[i])
    return _matrix(f_0), _matrix(f_1), _matrix(f_2)


def boundary_chain_maps(m: CellModel) -> tuple[tuple[Matrix, Matrix, Matrix], tuple[Matrix, Matrix, Matrix]]:
    """Cellular chain maps of the lift at t = 0 and t = 1."""
    return cellular_chain_map(m, m.lift(0)), cellular_chain_map(m, m.lift(1))


def chain_homotopy_defect(m: CellModel, sign: int) -> tuple[Matrix, Matrix, Matrix]:
    """dD + Dd - sign (F1 - F0) in each dimension; all zero iff D is a chain homotopy."""
    (a0, a1, a2), (b0, b1, b2) = boundary_chain_maps(m)
    phi = m.phi
    diff0 = mat_add(b0, a0, -1)
    diff1 = mat_add(b1, a1, -1)
    diff2 = mat_add(b2, a2, -1)
    lhs0 = mat_mul(m.partial1, m.D0)
    lhs1 = mat_add(mat_mul(m.partial2, m.D1), mat_mul(m.D0, mat_apply_endo(phi, m.partial1)))
    lhs2 = mat_mul(m.D1, mat_apply_endo(phi, m.partial2))
    return (
        mat_add(lhs0, diff0, -sign),
        mat_add(lhs1, diff1, -sign),
        mat_add(lhs2, diff2, -sign),
    )


def chain_homotopy_sign(m: CellModel) -> Optional[int]:
    """The sign s with dD + Dd = s (F1 - F0) in every dimension, or None."""
    for s in (1, -1):
        if all(mat_is_zero(x) for x in chain_homotopy_defect(m, s)):
            return s
    return None
