"""Twisted Hochschild chains C_n(ZG, (ZG)^phi) for n = 1, 2 and G = Z^2.

The coefficient bimodule is ZG with g.m = g m and m.g = m phi(g), so

    d1(g (x) m)        = m phi(g) - g m
    d2(a (x) b (x) m)  = b (x) m phi(a) - ab (x) m + a (x) bm

A generating chain g (x) m is *marked* by the group element g m; the
differentials only ever connect chains whose markers are semiconjugate, which
splits everything by semiconjugacy class.
"""

from __future__ import annotations

from typing import Callable, Generic, Iterable, Iterator, Mapping, Optional, Sequence, TypeVar

from .algebra import ONE, Endo, Monomial, RingElt, RingLike, U, V, format_monomial, parse_monomial
from .semiconjugacy import SemiClass, kernel_basis, phi_minus_identity, semiclass, solve_integer_system

K = TypeVar("K", bound=tuple)
C = TypeVar("C", bound="_Combination")

TENSOR = "⊗"


class UnsupportedEndomorphism(ValueError):
    """phi is outside the regime where class components are reduced to generators."""


class NotACycle(ValueError):
    pass


class _Combination(Generic[K]):
    """Finite Z-linear combination of tuple keys with no zero coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, int] | Iterable[tuple[K, int]] = ()):
        acc: dict[K, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if c:
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}

    @property
    def terms(self) -> Mapping[K, int]:
        return self._terms

    def items(self) -> Iterator[tuple[K, int]]:
        for k in sorted(self._terms):
            yield k, self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            if isinstance(other, int) and other == 0:
                return not self._terms
            return NotImplemented
        return self._terms == other._terms  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __add__(self: C, other: C) -> C:
        if isinstance(other, int) and other == 0:
            return self
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return type(self)(acc)

    __radd__ = __add__

    def __neg__(self: C) -> C:
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self: C, other: C) -> C:
        return self + (-other)

    def __mul__(self: C, n: int) -> C:
        return type(self)({k: n * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_chain(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_chain(self)!r})"


class Chain1(_Combination[tuple[Monomial, Monomial]]):
    """1-chains: combinations of g (x) m."""

    @classmethod
    def tensor(cls, r: RingLike, m: RingLike) -> "Chain1":
        r, m = RingElt.coerce(r), RingElt.coerce(m)
        acc: dict = {}
        for g, a in r.terms.items():
            for h, b in m.terms.items():
                acc[(g, h)] = acc.get((g, h), 0) + a * b
        return cls(acc)

    @classmethod
    def term(cls, g: Monomial, m: Monomial, coeff: int = 1) -> "Chain1":
        return cls({(g, m): coeff})


class Chain2(_Combination[tuple[Monomial, Monomial, Monomial]]):
    """2-chains: combinations of a (x) b (x) m."""

    @classmethod
    def tensor(cls, r1: RingLike, r2: RingLike, m: RingLike) -> "Chain2":
        r1, r2, m = RingElt.coerce(r1), RingElt.coerce(r2), RingElt.coerce(m)
        acc: dict = {}
        for a, x in r1.terms.items():
            for b, y in r2.terms.items():
                for h, z in m.terms.items():
                    acc[(a, b, h)] = acc.get((a, b, h), 0) + x * y * z
        return cls(acc)

    @classmethod
    def term(cls, a: Monomial, b: Monomial, m: Monomial, coeff: int = 1) -> "Chain2":
        return cls({(a, b, m): coeff})


def format_chain(c: _Combination) -> str:
    """``"2 [u ⊗ v] - [1 ⊗ u^-1]"``; the bracketed pairs are in key order."""
    if not c:
        return "0"
    out = []
    for i, (key, coeff) in enumerate(c.items()):
        body = "[" + f" {TENSOR} ".join(format_monomial(g) for g in key) + "]"
        mag = abs(coeff)
        text = body if mag == 1 else f"{mag} {body}"
        if i == 0:
            out.append(("-" if coeff < 0 else "") + text)
        else:
            out.append(("- " if coeff < 0 else "+ ") + text)
    return " ".join(out)


def _parse_terms(text: str) -> list[tuple[int, list[Monomial]]]:
    import re

    text = text.strip()
    if text == "0":
        return []
    out = []
    for m in re.finditer(r"([+-])?\s*(\d+)?\s*\[([^\]]*)\]", text):
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        factors = [parse_monomial(f) for f in re.split(r"⊗|\(x\)", m.group(3))]
        out.append((sign * coeff, factors))
    return out


def parse_chain1(text: str) -> Chain1:
    acc: dict = {}
    for c, factors in _parse_terms(text):
        if len(factors) != 2:
            raise ValueError(f"1-chain term needs two factors: {factors}")
        key = tuple(factors)
        acc[key] = acc.get(key, 0) + c
    return Chain1(acc)


def parse_chain2(text: str) -> Chain2:
    acc: dict = {}
    for c, factors in _parse_terms(text):
        if len(factors) != 3:
            raise ValueError(f"2-chain term needs three factors: {factors}")
        key = tuple(factors)
        acc[key] = acc.get(key, 0) + c
    return Chain2(acc)


# -- differentials ------------------------------------------------------------


def d1(c: Chain1, phi: Endo) -> RingElt:
    acc: dict[Monomial, int] = {}
    for (g, m), a in c.terms.items():
        p = m * phi.on_monomial(g)
        q = g * m
        acc[p] = acc.get(p, 0) + a
        acc[q] = acc.get(q, 0) - a
    return RingElt(acc)


def d2(w: Chain2, phi: Endo) -> Chain1:
    acc: dict = {}

    def put(key, c):
        acc[key] = acc.get(key, 0) + c

    for (a, b, m), c in w.terms.items():
        put((b, m * phi.on_monomial(a)), c)
        put((a * b, m), -c)
        put((a, b * m), c)
    return Chain1(acc)


def is_cycle(c: Chain1, phi: Endo) -> bool:
    return d1(c, phi).is_zero()


def marker(g: Monomial, m: Monomial) -> Monomial:
    return g * m


def split_by_class(c: Chain1, phi: Endo) -> dict[SemiClass, Chain1]:
    """Components of c keyed by the semiconjugacy class of each term's marker."""
    parts: dict[SemiClass, dict] = {}
    for (g, m), a in c.terms.items():
        parts.setdefault(semiclass(marker(g, m), phi), {})[(g, m)] = a
    return {k: Chain1(v) for k, v in sorted(parts.items(), key=lambda kv: kv[0].rep)}


def left_exponent_sum(c: Chain1) -> tuple[int, int]:
    """Coefficient-weighted sum of the exponent vectors of the left factors.

    This kills every d2-boundary, so on homology it is the map to H_1(G) = Z^2.
    """
    su = sv = 0
    for (g, _), a in c.terms.items():
        su += a * g.exp_u
        sv += a * g.exp_v
    return su, sv


def marker_exponent_sum(c: Chain1, phi: Endo) -> bool:
    """Whether the weighted left-factor exponent sum of c lies in ker([phi] - I)."""
    if (phi.b1, phi.b2) != (1, 0):
        raise UnsupportedEndomorphism("marker_exponent_sum needs b1 = 1 and b2 = 0")
    return phi_minus_identity(phi).apply(left_exponent_sum(c)) == (0, 0)


# -- reduction to generators ---------------------------------------------------


def check_supported(phi: Endo) -> None:
    if (phi.b1, phi.b2) != (1, 0) or kernel_basis(phi).basis != ((1, 0),):
        raise UnsupportedEndomorphism(
            f"unsupported endomorphism shape {phi!r}: need b1 = 1, b2 = 0 and ker([phi] - I) = <(1, 0)>"
        )


def class_generator(cls: SemiClass) -> Chain1:
    """The generator u^-1 (x) u g_C of the C-component (its marker is g_C)."""
    return Chain1.term(U.inverse(), U * cls.rep)


class _Reducer:
    """Rewrites a 1-chain by boundaries, keeping original == work + d2(cert)."""

    def __init__(self, c: Chain1, phi: Endo):
        self.phi = phi
        self.work: dict = dict(c.terms)
        self.cert: dict = {}

    def _add(self, store: dict, key, c: int) -> None:
        v = store.get(key, 0) + c
        if v:
            store[key] = v
        else:
            store.pop(key, None)

    def replace(self, key, coeff: int, chain: Iterable[tuple[tuple, int]], boundary: Iterable[tuple[tuple, int]]):
        """Replace coeff*key by coeff*chain, using key = chain + d2(boundary)."""
        self._add(self.work, key, -coeff)
        for k, c in chain:
            self._add(self.work, k, coeff * c)
        for k, c in boundary:
            self._add(self.cert, k, coeff * c)

    def split(self, g: Monomial, m: Monomial, a: Monomial, b: Monomial, coeff: int) -> None:
        # ab (x) m = b (x) m phi(a) + a (x) bm - d2(a (x) b (x) m)
        phi = self.phi
        self.replace((g, m), coeff, [((b, m * phi.on_monomial(a)), 1), ((a, b * m), 1)], [((a, b, m), -1)])

    def invert(self, h: Monomial, m: Monomial, coeff: int) -> None:
        # h (x) m = 1 (x) m' - h^-1 (x) h m' + d2(h^-1 (x) h (x) m'),  m' = m phi(h)
        mp = m * self.phi.on_monomial(h)
        g = h.inverse()
        self.replace((h, m), coeff, [((ONE, mp), 1), ((g, h * mp), -1)], [((g, h, mp), 1)])

    def kill_unit(self, m: Monomial, coeff: int) -> None:
        # 1 (x) m = d2(1 (x) 1 (x) m)
        self.replace((ONE, m), coeff, [], [((ONE, ONE, m), 1)])

    def step(self) -> bool:
        """Apply one rewrite to the first non-letter term; False when done."""
        for (g, m) in sorted(self.work):
            coeff = self.work[(g, m)]
            k, l = g
            if k == 0 and l == 0:
                self.kill_unit(m, coeff)
            elif k != 0 and l != 0:
                self.split(g, m, Monomial(k, 0), Monomial(0, l), coeff)
            elif k < 0 or l < 0:
                self.invert(g, m, coeff)
            elif k > 1:
                self.split(g, m, Monomial(k - 1, 0), U, coeff)
            elif l > 1:
                self.split(g, m, Monomial(0, l - 1), V, coeff)
            else:
                continue
            return True
        return False


def reduce_cycle(c: Chain1, cls: SemiClass, phi: Endo) -> tuple[int, Chain2]:
    """Index n and certificate w with c - n (u^-1 (x) u g_C) = d2(w).

    c must be a cycle whose markers all lie in the class ``cls``, and phi must
    fix u with ker([phi] - I) = <(1, 0)>.
    """
    check_supported(phi)
    if cls.phi != phi:
        raise ValueError("class belongs to a different endomorphism")
    if not is_cycle(c, phi):
        raise NotACycle(f"not a cycle: {c}")
    for (g, m) in c.terms:
        if semiclass(marker(g, m), phi) != cls:
            raise ValueError(f"term [{g} {TENSOR} {m}] is not marked by {cls}")

    red = _Reducer(c, phi)
    while red.step():
        pass
    # the v (x) n part is a cycle on its own and phi(v) != v, so it collects to zero
    leftover = [key for key in red.work if key[0] != U]
    if leftover:
        raise AssertionError(f"reduction left non-u terms {leftover}")

    # u (x) m = -u^-1 (x) u^2 m + d2(u (x) u^-1 (x) um + 1 (x) 1 (x) um)
    uinv = U.inverse()
    for (g, m) in sorted(red.work):
        coeff = red.work[(g, m)]
        um = U * m
        red.replace((g, m), coeff, [((uinv, U * um), -1)], [((U, uinv, um), 1), ((ONE, ONE, um), 1)])

    # z (x) p = z (x) x^-1 p phi(x) + d2(z (x) x (x) x^-1 p - x (x) z (x) x^-1 p) for z = u^-1
    target = U * cls.rep
    delta_matrix = phi_minus_identity(phi)
    for (g, p) in sorted(red.work):
        if p == target:
            continue
        coeff = red.work[(g, p)]
        sol = solve_integer_system(delta_matrix, (target.exp_u - p.exp_u, target.exp_v - p.exp_v))
        if sol is None:
            raise AssertionError(f"{p} and {target} should be semiconjugate")
        x = Monomial(*sol[0])
        base = x.inverse() * p
        red.replace((g, p), coeff, [((g, target), 1)], [((g, x, base), 1), ((x, g, base), -1)])

    index = red.work.get((uinv, target), 0)
    if set(red.work) - {(uinv, target)}:
        raise AssertionError(f"unexpected terms after reduction: {red.work}")
    cert = Chain2(red.cert)
    if c - class_generator(cls) * index != d2(cert, phi):
        raise AssertionError("reduction certificate failed to verify")
    return index, cert


# -- traces of matrices --------------------------------------------------------

Matrix = Sequence[Sequence[RingElt]]


def _shape(a: Matrix) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    return rows, cols


def tensor_trace(a: Matrix, b: Matrix, phi: Endo) -> tuple[Chain1, bool]:
    """trace(A (x) B) = sum_i sum_k A_ik (x) B_ki, and whether trace(AB) = trace(B phi(A)).

    A is m x n over ZG, B is n x m over (ZG)^phi.  The chain is a cycle
    exactly when the second value is True.
    """
    m, n = _shape(a)
    nb, mb = _shape(b)
    if (nb, mb) != (n, m):
        raise ValueError(f"dimension mismatch: A is {m}x{n}, B is {nb}x{mb}")
    chain = Chain1()
    lhs = RingElt()
    rhs = RingElt()
    for i in range(m):
        for k in range(n):
            x, y = RingElt.coerce(a[i][k]), RingElt.coerce(b[k][i])
            if x.is_zero() or y.is_zero():
                continue
            chain = chain + Chain1.tensor(x, y)
            lhs = lhs + x * y
            rhs = rhs + y * phi(x)
    return chain, lhs == rhs
