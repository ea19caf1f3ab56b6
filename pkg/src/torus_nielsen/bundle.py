"""Torus bundle data (A, B, c1, c2): validation, case table, conjugation, MF.

A is the gluing matrix of M(A), B the matrix induced by the map on the fiber
and (c1, c2) the fiber part of the image of the loop c.  Columns of A and B
are images of a and b, so A = ((a1, a3), (a2, a4)) and B = ((b1, b3), (b2, b4)).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .intlinalg import I2, IntMatrix2, lattice_basis, solve_integer_system, xgcd


class ValidationError(ValueError):
    pass


class Unclassified(ValueError):
    """The data matches no row of the case table."""


@dataclass(frozen=True)
class BundleMapData:
    A: IntMatrix2
    B: IntMatrix2
    c1: int
    c2: int

    @property
    def c(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    def to_json(self) -> dict:
        return {"A": str(self.A), "B": str(self.B), "c1": self.c1, "c2": self.c2}


class CaseLetter(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"


@dataclass(frozen=True)
class CaseLabel:
    letter: CaseLetter
    P: IntMatrix2
    A1: IntMatrix2
    B1: IntMatrix2

    def __str__(self) -> str:
        return f"Case {self.letter.value}"


def validate(d: BundleMapData) -> list[str]:
    out = []
    if d.A.det() not in (1, -1):
        out.append(f"det(A) = {d.A.det()}, expected +1 or -1")
    if d.A @ d.B != d.B @ d.A:
        out.append("A and B do not commute")
    return out


def fiber_deformable(B: IntMatrix2) -> bool:
    """det(B - I) = 0, necessary for a fixed point free fiber map."""
    return (B - I2).det() == 0


def conjugate_data(d: BundleMapData, P: IntMatrix2) -> BundleMapData:
    """(P A P^-1, P B P^-1, P c)."""
    if not P.is_unimodular():
        raise ValueError(f"P = {P} is not unimodular")
    Pi = P.inverse()
    c = P.apply(d.c)
    return BundleMapData(P @ d.A @ Pi, P @ d.B @ Pi, c[0], c[1])


def _complete_basis(e: tuple[int, int]) -> IntMatrix2:
    """Unimodular M with first column e (e primitive) and det M = 1."""
    g, x, y = xgcd(e[0], e[1])
    if g != 1:
        raise ValueError(f"{e} is not primitive")
    # det [[e0, -y], [e1, x]] = e0 x + e1 y = 1
    return IntMatrix2(e[0], -y, e[1], x)


_LETTERS = {(1, 1): CaseLetter.II, (1, -1): CaseLetter.III, (-1, -1): CaseLetter.IV, (-1, 1): CaseLetter.V}

# a3 (b4 - 1) = factor * b3 in each row
_ROW_FACTOR = {CaseLetter.II: 0, CaseLetter.III: -2, CaseLetter.IV: 0, CaseLetter.V: 2}


def _small_unimodular(bound: int = 3):
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    M = IntMatrix2(a, b, c, d)
                    if M.is_unimodular():
                        yield M


def classify(d: BundleMapData) -> CaseLabel:
    problems = validate(d)
    if problems:
        raise ValidationError("; ".join(problems))
    A, B = d.A, d.B
    if B == I2:
        if A.a12 != 0:
            return CaseLabel(CaseLetter.I, I2, A, B)
        for P in sorted(_small_unimodular(2), key=lambda M: (sum(abs(x) for x in M.flat()), M.flat())):
            A1 = P @ A @ P.inverse()
            if A1.a12 != 0:
                return CaseLabel(CaseLetter.I, P, A1, B)
        raise Unclassified("B = I and A = +-I: no conjugate of A has a3 != 0")
    K = B - I2
    if K.det() != 0:
        raise Unclassified(f"det(B - I) = {K.det()} != 0: the fiber map is not deformable to be fixed point free")
    sol = solve_integer_system(K, (0, 0))
    assert sol is not None
    (e,) = lattice_basis(sol[1])
    Pinv = _complete_basis(e)
    P = Pinv.inverse()
    A1, B1 = P @ A @ Pinv, P @ B @ Pinv
    # A preserves ker(B - I), so A1 is upper triangular with +-1 on the diagonal
    assert (B1.a11, B1.a21) == (1, 0) and A1.a21 == 0, (A1, B1)
    letter = _LETTERS[(A1.a11, A1.a22)]
    a3, b3, b4 = A1.a12, B1.a12, B1.a22
    if a3 * (b4 - 1) != _ROW_FACTOR[letter] * b3:
        raise Unclassified(f"normal form {A1}, {B1} violates the row condition of case {letter.value}")
    return CaseLabel(letter, P, A1, B1)


def closed_form(d: BundleMapData, label: Optional[CaseLabel] = None) -> int:
    """|c1 (b4 - 1) - c2 b3| evaluated on the normal form."""
    label = label or classify(d)
    n = conjugate_data(d, label.P)
    b3, b4 = n.B.a12, n.B.a22
    return abs(n.c1 * (b4 - 1) - n.c2 * b3)


def invariant_form(d: BundleMapData) -> int:
    """|det[c, (B - I) f]| for any f completing a primitive kernel vector of B - I to a basis."""
    K = d.B - I2
    sol = solve_integer_system(K, (0, 0))
    assert sol is not None and len(lattice_basis(sol[1])) == 1
    (e,) = lattice_basis(sol[1])
    M = _complete_basis(e)
    f = (M.a12, M.a22)
    w = K.apply(f)
    return abs(d.c1 * w[1] - d.c2 * w[0])


def in_listed_family(label: CaseLabel) -> bool:
    """Whether the normal form lies in one of the (A, B) families with a proven formula."""
    a3, b3, b4 = label.A1.a12, label.B1.a12, label.B1.a22
    if label.letter is CaseLetter.II:
        return a3 == 0 and (b4 == -1 or (b4 != 1 and b3 % (b4 - 1) == 0))
    if label.letter is CaseLetter.III:
        return a3 % 2 == 0 or (b4 == -1 and b3 == a3)
    return False


class MFStatus(str, Enum):
    CASE_I = "case I: zero"
    FAMILY = "formula per listed families"
    VANISHING = "zero by the vanishing criterion"
    FAMILY_NOT_LISTED = "case matched, family not listed"
    NOT_COVERED = "not covered"


@dataclass(frozen=True)
class MFResult:
    value: Optional[int]
    status: MFStatus
    formula: Optional[int]

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status.value, "formula": self.formula}


def mf_result(d: BundleMapData, label: Optional[CaseLabel] = None) -> MFResult:
    label = label or classify(d)
    if label.letter is CaseLetter.I:
        return MFResult(0, MFStatus.CASE_I, None)
    if label.letter in (CaseLetter.IV, CaseLetter.V):
        return MFResult(None, MFStatus.NOT_COVERED, None)
    value = closed_form(d, label)
    if in_listed_family(label):
        return MFResult(value, MFStatus.FAMILY, value)
    if value == 0:
        return MFResult(0, MFStatus.VANISHING, value)
    return MFResult(None, MFStatus.FAMILY_NOT_LISTED, value)


def mf_number(d: BundleMapData) -> Optional[int]:
    return mf_result(d).value


# -- routing to a cellular model ------------------------------------------------------


@dataclass(frozen=True)
class Route:
    model: str            # "square" or "triangulated"
    P: IntMatrix2         # total conjugation from the input data
    data: BundleMapData   # conjugated data, in model shape

    def model_params(self) -> tuple[int, int, int]:
        return (self.data.c1, self.data.c2, self.data.B.a22)


def route(d: BundleMapData, label: Optional[CaseLabel] = None) -> Optional[Route]:
    """Shear the normal form onto b3 = 0 (square) or b3 = 1, b4 = -1 (triangulated)."""
    label = label or classify(d)
    if label.letter not in (CaseLetter.II, CaseLetter.III):
        return None
    b3, b4 = label.B1.a12, label.B1.a22
    if b4 != 1 and b3 % (b4 - 1) == 0:
        n = b3 // (b4 - 1)
        shear, model = IntMatrix2(1, -n, 0, 1), "square"
    elif b4 == -1:
        k = (b3 - 1) // 2
        shear, model = IntMatrix2(1, k, 0, 1), "triangulated"
    else:
        return None
    P = shear @ label.P
    data = conjugate_data(d, P)
    if model == "square":
        assert data.B == IntMatrix2(1, 0, 0, b4), data
    else:
        assert data.B == IntMatrix2(1, 1, 0, -1), data
    return Route(model, P, data)


# -- fundamental group ------------------------------------------------------------------


@dataclass(frozen=True)
class Pi1Relations:
    """<a, b, c | [a, b] = 1, c a c^-1 = a^a1 b^a2, c b c^-1 = a^a3 b^a4>."""

    a_image: tuple[int, int]
    b_image: tuple[int, int]

    def as_strings(self) -> list[str]:
        def word(e):
            parts = [f"{g}^{k}" if k != 1 else g for g, k in zip("ab", e) if k]
            return " ".join(parts) if parts else "1"

        return ["[a, b] = 1", f"c a c^-1 = {word(self.a_image)}", f"c b c^-1 = {word(self.b_image)}"]


def pi1_relations(A: IntMatrix2) -> Pi1Relations:
    if A.det() not in (1, -1):
        raise ValidationError(f"det(A) = {A.det()}, expected +1 or -1")
    return Pi1Relations((A.a11, A.a21), (A.a12, A.a22))


def relation_defects(A: IntMatrix2, B: IntMatrix2) -> list[str]:
    """Relations that a = (B e1), b = (B e2), c -> a^c1 b^c2 c fails to respect, abelianized on the fiber.

    Conjugation by c acts on the fiber by A, so c w c^-1 maps to A B w while the
    right-hand side maps to B A w.
    """
    out = []
    rel = pi1_relations(A).as_strings()
    for i, e in enumerate(((1, 0), (0, 1))):
        if A.apply(B.apply(e)) != B.apply(A.apply(e)):
            out.append(rel[i + 1])
    return out
