"""One-parameter trace R(F), class indices, N(F) and L(F) from a cell model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import Endo, format_monomial
from .cells import CellModel
from .hochschild import Chain1, check_supported, format_chain, reduce_cycle, split_by_class, tensor_trace
from .semiconjugacy import SemiClass

# Relative signs of the dimension blocks (partial1 (x) D0, partial2 (x) D1).
# D_* carries (-1)^(k+1) on D_k; applying it once gives (-1, +1).
BLOCK_SIGNS = (-1, 1)


class TraceError(ValueError):
    pass


@dataclass(frozen=True)
class ClassIndexMap:
    """Nonzero indices keyed by semiconjugacy class."""

    entries: Mapping[SemiClass, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.entries.items(), key=lambda kv: kv[0].rep) if v}
        object.__setattr__(self, "entries", clean)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def to_json(self) -> list[dict]:
        return [{"marker": format_monomial(c.rep), "index": n} for c, n in self.entries.items()]


@dataclass(frozen=True)
class TraceReport:
    r_chain: Chain1
    indices: ClassIndexMap
    nielsen: int
    lefschetz: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "r_chain": format_chain(self.r_chain),
            "classes": self.indices.to_json(),
            "nielsen": self.nielsen,
            "lefschetz": list(self.lefschetz),
        }


def trace_blocks(m: CellModel, signs: tuple[int, int] = BLOCK_SIGNS) -> tuple[Chain1, bool]:
    """Signed sum of the two dimension blocks and whether both pass the cycle criterion."""
    c1, ok1 = tensor_trace(m.partial1, m.D0, m.phi)
    c2, ok2 = tensor_trace(m.partial2, m.D1, m.phi)
    return c1 * signs[0] + c2 * signs[1], ok1 and ok2


def one_parameter_trace(m: CellModel, signs: tuple[int, int] = BLOCK_SIGNS, *, check_boundary: bool = True) -> Chain1:
    if check_boundary:
        from .oracle import boundary_fixed_point_free, model_homotopy_for

        if not boundary_fixed_point_free(model_homotopy_for(m)):
            raise TraceError("the model homotopy has fixed points at t = 0 or t = 1")
    chain, ok = trace_blocks(m, signs)
    if not ok:
        raise TraceError("cycle criterion trace(AB) = trace(B phi(A)) fails for the model")
    return chain


def class_indices(r: Chain1, phi: Endo) -> ClassIndexMap:
    check_supported(phi)
    return ClassIndexMap({cls: reduce_cycle(part, cls, phi)[0] for cls, part in split_by_class(r, phi).items()})


def nielsen_number(indices: ClassIndexMap) -> int:
    return len(indices)


def lefschetz_class(indices: ClassIndexMap, phi: Endo) -> tuple[int, int]:
    """Sum of the indices pushed into H_1(G) along the semicentralizer <u>."""
    check_supported(phi)
    return (sum(indices.entries.values()), 0)


def trace_report(m: CellModel, **kw) -> TraceReport:
    r = one_parameter_trace(m, **kw)
    idx = class_indices(r, m.phi)
    return TraceReport(r, idx, nielsen_number(idx), lefschetz_class(idx, m.phi))
