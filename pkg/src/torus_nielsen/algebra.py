"""Integral group ring of G = Z^2 = <u, v | uv = vu>.

Elements are finite integer combinations of monomials u^i v^j, i.e. Laurent
polynomials in two commuting variables.  Everything here is exact and
immutable.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, NamedTuple, Union


class Monomial(NamedTuple):
    """The group element u^exp_u v^exp_v."""

    exp_u: int = 0
    exp_v: int = 0

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(self.exp_u + other.exp_u, self.exp_v + other.exp_v)

    def inverse(self) -> "Monomial":
        return Monomial(-self.exp_u, -self.exp_v)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(k * self.exp_u, k * self.exp_v)

    @property
    def vector(self) -> tuple[int, int]:
        return (self.exp_u, self.exp_v)

    def is_identity(self) -> bool:
        return self.exp_u == 0 and self.exp_v == 0

    def __str__(self) -> str:
        return format_monomial(self)


ONE = Monomial(0, 0)
U = Monomial(1, 0)
V = Monomial(0, 1)


def format_monomial(g: Monomial) -> str:
    parts = []
    for name, e in (("u", g.exp_u), ("v", g.exp_v)):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


_FACTOR = re.compile(r"([uv])(?:\^(-?\d+))?")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"u^-1 v^2"``, ``"u v"``, ``"1"`` (factors may repeat)."""
    text = text.strip()
    if text in ("", "1"):
        return ONE
    eu = ev = 0
    for tok in text.replace("*", " ").split():
        m = _FACTOR.fullmatch(tok)
        if m is None:
            raise ValueError(f"bad monomial factor {tok!r} in {text!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) == "u":
            eu += e
        else:
            ev += e
    return Monomial(eu, ev)


Scalar = int
RingLike = Union["RingElt", Monomial, int]


class RingElt:
    """Element of ZG, stored as {Monomial: nonzero int}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            if c:
                acc[g] = acc.get(g, 0) + c
        self._terms = {g: c for g, c in acc.items() if c}
        self._hash = None

    @classmethod
    def coerce(cls, x: RingLike) -> "RingElt":
        if isinstance(x, RingElt):
            return x
        if isinstance(x, Monomial):
            return cls({x: 1})
        if isinstance(x, int):
            return cls({ONE: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to RingElt")

    @classmethod
    def monomial(cls, exp_u: int = 0, exp_v: int = 0, coeff: int = 1) -> "RingElt":
        return cls({Monomial(exp_u, exp_v): coeff})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in canonical (lexicographic) order."""
        for g in sorted(self._terms):
            yield g, self._terms[g]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Monomial)):
            other = RingElt.coerce(other)
        if not isinstance(other, RingElt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: RingLike) -> "RingElt":
        other = RingElt.coerce(other)
        acc = dict(self._terms)
        for g, c in other._terms.items():
            acc[g] = acc.get(g, 0) + c
        return RingElt(acc)

    __radd__ = __add__

    def __neg__(self) -> "RingElt":
        return RingElt({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: RingLike) -> "RingElt":
        return self + (-RingElt.coerce(other))

    def __rsub__(self, other: RingLike) -> "RingElt":
        return RingElt.coerce(other) - self

    def __mul__(self, other: RingLike) -> "RingElt":
        if isinstance(other, int):
            return RingElt({g: other * c for g, c in self._terms.items()})
        other = RingElt.coerce(other)
        acc: dict[Monomial, int] = {}
        for g, a in self._terms.items():
            for h, b in other._terms.items():
                k = g * h
                acc[k] = acc.get(k, 0) + a * b
        return RingElt(acc)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"RingElt({format_ring(self)!r})"

    def __str__(self) -> str:
        return format_ring(self)


ZERO = RingElt()


def ring_add(a: RingLike, b: RingLike) -> RingElt:
    return RingElt.coerce(a) + b


def ring_mul(a: RingLike, b: RingLike) -> RingElt:
    return RingElt.coerce(a) * RingElt.coerce(b)


def _signed_terms(pieces: list[tuple[int, str]]) -> str:
    """Join (coefficient, body) pairs as ``"2 u - v + 3"``."""
    if not pieces:
        return "0"
    out = []
    for i, (c, body) in enumerate(pieces):
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag} {body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(("- " if c < 0 else "+ ") + text)
    return " ".join(out)


def format_ring(a: RingElt) -> str:
    return _signed_terms([(c, format_monomial(g)) for g, c in a.items()])


_TERM_SPLIT = re.compile(r"(?<!\^)\s*([+-])\s*")


def _split_signed(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text.startswith(("+", "-")):
        text = "+" + text
    parts = _TERM_SPLIT.split(text)[1:]
    return [(1 if sign == "+" else -1, body.strip()) for sign, body in zip(parts[0::2], parts[1::2])]


def _coeff_and_rest(body: str) -> tuple[int, str]:
    m = re.match(r"^(\d+)\s*(.*)$", body)
    if m:
        return int(m.group(1)), m.group(2).strip()
    return 1, body


def parse_ring(text: str) -> RingElt:
    """Inverse of :func:`format_ring`: ``"2 - u^-1 v + 3 u^2"``."""
    if text.strip() == "0":
        return ZERO
    acc: dict[Monomial, int] = {}
    for sign, body in _split_signed(text):
        c, rest = _coeff_and_rest(body)
        g = parse_monomial(rest)
        acc[g] = acc.get(g, 0) + sign * c
    return RingElt(acc)


class Endo:
    """Endomorphism phi of Z^2: phi(u) = u^b1 v^b2, phi(v) = u^b3 v^b4.

    As a matrix acting on exponent column vectors this is ((b1, b3), (b2, b4)).
    """

    __slots__ = ("b1", "b2", "b3", "b4")

    def __init__(self, b1: int, b2: int, b3: int, b4: int):
        self.b1, self.b2, self.b3, self.b4 = int(b1), int(b2), int(b3), int(b4)

    @classmethod
    def identity(cls) -> "Endo":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m: tuple[tuple[int, int], tuple[int, int]]) -> "Endo":
        """From the row-major matrix ((b1, b3), (b2, b4))."""
        (b1, b3), (b2, b4) = m
        return cls(b1, b2, b3, b4)

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.b1, self.b3), (self.b2, self.b4))

    def minus_identity(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.b1 - 1, self.b3), (self.b2, self.b4 - 1))

    def on_monomial(self, g: Monomial) -> Monomial:
        m, n = g
        return Monomial(m * self.b1 + n * self.b3, m * self.b2 + n * self.b4)

    def __call__(self, a: RingLike) -> RingElt | Monomial:
        if isinstance(a, Monomial):
            return self.on_monomial(a)
        return apply_endo(self, a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Endo):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"Endo({self.b1}, {self.b2}, {self.b3}, {self.b4})"


def apply_endo(phi: Endo, a: RingLike) -> RingElt:
    a = RingElt.coerce(a)
    return RingElt((phi.on_monomial(g), c) for g, c in a.terms.items())


def helper_sum(kind: str, m: int, *, y_shift: int = 2) -> RingElt:
    """The piecewise sums X(m), Y(m), W(m) used by the cellular models.

    X(m) = sum_{j=1..m} u^(1-j) for m > 0 and -sum_{j=1..-m} u^j for m < 0;
    Y uses u^(2-j) and -u^(j+y_shift); W uses v^(1-j) and -v^j.  All vanish
    at m = 0.  ``y_shift=2`` is the default negative branch of Y;
    ``y_shift=1`` gives Y(m) = u X(m) for every m.
    """
    kind = kind.upper()
    if kind not in ("X", "Y", "W"):
        raise ValueError(f"unknown helper sum {kind!r}")
    if m == 0:
        return ZERO
    var = (lambda e: Monomial(0, e)) if kind == "W" else (lambda e: Monomial(e, 0))
    if m > 0:
        top = 2 if kind == "Y" else 1
        return RingElt((var(top - j), 1) for j in range(1, m + 1))
    shift = y_shift if kind == "Y" else 0
    return RingElt((var(j + shift), -1) for j in range(1, -m + 1))
