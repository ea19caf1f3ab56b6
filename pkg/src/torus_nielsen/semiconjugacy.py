"""Semiconjugacy (twisted conjugacy) in G = Z^2 under an endomorphism phi.

g1 ~ g2 iff g1 = g g2 phi(g)^-1 for some g.  Writing exponent vectors, this is
([phi] - I) z = e(g2) - e(g1), so classes are cosets of the image lattice of
[phi] - I and the semicentralizer of any element is ker([phi] - I).

Class representatives are a convention: we reduce exponent vectors into a
fundamental domain of the image lattice (least non-negative residues along its
Hermite basis; coordinates the lattice does not touch pass through).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Endo, Monomial
from .intlinalg import IntMatrix2, Vec, lattice_basis, reduce_mod_lattice, solve_integer_system

__all__ = [
    "IntMatrix2",
    "KernelLattice",
    "SemiClass",
    "canonical_marker",
    "kernel_basis",
    "phi_minus_identity",
    "same_class",
    "semiclass",
    "solve_integer_system",
]


def phi_minus_identity(phi: Endo) -> IntMatrix2:
    return IntMatrix2(phi.b1 - 1, phi.b3, phi.b2, phi.b4 - 1)


@dataclass(frozen=True)
class KernelLattice:
    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def kernel_basis(phi: Endo) -> KernelLattice:
    """Basis of ker([phi] - I) over Z, i.e. the semicentralizer of any element."""
    sol = solve_integer_system(phi_minus_identity(phi), (0, 0))
    assert sol is not None
    _, ker = sol
    # present the kernel in Hermite shape for stable output
    return KernelLattice(tuple(lattice_basis(ker)))


def same_class(g1: Monomial, g2: Monomial, phi: Endo) -> Optional[Monomial]:
    """A witness g with g1 = g * g2 * phi(g)^-1, or None if g1, g2 are not semiconjugate."""
    rhs = (g2.exp_u - g1.exp_u, g2.exp_v - g1.exp_v)
    sol = solve_integer_system(phi_minus_identity(phi), rhs)
    if sol is None:
        return None
    g = Monomial(*sol[0])
    if g * g2 * phi.on_monomial(g).inverse() != g1:
        raise AssertionError(f"semiconjugacy witness {g} failed to verify")
    return g


def _image_basis(phi: Endo) -> list[Vec]:
    return lattice_basis(phi_minus_identity(phi).cols)


def canonical_marker(g: Monomial, phi: Endo) -> Monomial:
    return Monomial(*reduce_mod_lattice(g.vector, _image_basis(phi)))


@dataclass(frozen=True)
class SemiClass:
    """A semiconjugacy class, keyed by its canonical representative."""

    rep: Monomial
    phi: Endo

    def __str__(self) -> str:
        return f"C({self.rep})"

    def __lt__(self, other: "SemiClass") -> bool:
        return self.rep < other.rep


def semiclass(g: Monomial, phi: Endo) -> SemiClass:
    return SemiClass(canonical_marker(g, phi), phi)
