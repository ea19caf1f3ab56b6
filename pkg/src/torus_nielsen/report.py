"""End-to-end report for one bundle map: classifier, trace engine and geometric oracle."""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import asdict, dataclass, field
from enum import IntEnum
from typing import Any, Optional

from .bundle import (
    BundleMapData,
    CaseLetter,
    Unclassified,
    classify,
    mf_result,
    pi1_relations,
    route,
    validate,
)
from .cells import SQUARE, build_square_model, build_triangulated_model
from .oracle import (
    FixedCircle,
    NonCircleComponent,
    Variant,
    boundary_fixed_point_free,
    fixed_set,
    free_offset,
    model_homotopy_for,
    straight_homotopy,
    text_diagram,
)
from .trace import TraceError, trace_report


class ExitCode(IntEnum):
    AGREE = 0
    DISAGREE = 2
    INVALID = 3
    UNSUPPORTED = 4


def dumps(obj: Any) -> str:
    """Canonical JSON used for every machine-readable output."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@dataclass
class Report:
    input: dict
    validation: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    case: Optional[dict] = None
    mf: Optional[dict] = None
    trace: Optional[dict] = None
    oracle: Optional[dict] = None
    agreement: dict = field(default_factory=dict)
    status: str = "agree"

    @property
    def exit_code(self) -> ExitCode:
        return {
            "agree": ExitCode.AGREE,
            "disagree": ExitCode.DISAGREE,
            "invalid": ExitCode.INVALID,
            "unsupported": ExitCode.UNSUPPORTED,
        }[self.status]

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls(**json.loads(text))


def model_for_route(r, *, y_shift: int = 2):
    c1, c2, b4 = r.model_params()
    if r.model == SQUARE:
        return build_square_model(c1, c2, b4, y_shift=y_shift)
    return build_triangulated_model(c1, c2)


def _trace_section(d: BundleMapData, label, *, y_shift: int) -> dict:
    r = route(d, label)
    if r is None:
        return {"available": False, "reason": "no cellular model for this normal form"}
    m = model_for_route(r, y_shift=y_shift)
    out = {
        "available": True,
        "model": m.name,
        "P": str(r.P),
        "params": {"c1": m.params[0], "c2": m.params[1], "b4": m.params[2]},
    }
    try:
        out.update(trace_report(m).to_json())
    except TraceError as exc:
        out.update(available=False, reason=str(exc))
        return out
    try:
        out["model_circles"] = len(fixed_set(model_homotopy_for(m, Variant.STRAIGHT)))
    except NonCircleComponent as exc:
        out["model_circles"] = None
        out["model_circles_error"] = str(exc)
    return out


def _oracle_section(d: BundleMapData) -> dict:
    off = free_offset(d.B)
    h = straight_homotopy(d.B, d.c, off)
    out: dict = {
        "homotopy": "z -> B z + t c + g",
        "offset": [[q.numerator, q.denominator] for q in off],
        "boundary_fixed_point_free": boundary_fixed_point_free(h),
    }
    try:
        circles = fixed_set(h)
    except NonCircleComponent as exc:
        out.update(count=None, circles=[], error=str(exc))
        return out
    out.update(count=len(circles), circles=[c.to_json() for c in circles])
    return out


def build_report(d: BundleMapData, *, y_shift: int = 2) -> Report:
    rep = Report(input=d.to_json())
    rep.validation = validate(d)
    if rep.validation:
        rep.status = "invalid"
        return rep
    rep.relations = pi1_relations(d.A).as_strings()
    try:
        label = classify(d)
    except Unclassified as exc:
        rep.case = {"label": None, "reason": str(exc)}
        rep.status = "unsupported"
        return rep
    rep.case = {
        "label": label.letter.value,
        "P": str(label.P),
        "A1": str(label.A1),
        "B1": str(label.B1),
    }
    mf = mf_result(d, label)
    rep.mf = mf.to_json()
    if label.letter in (CaseLetter.IV, CaseLetter.V):
        rep.status = "unsupported"
        return rep
    if label.letter is CaseLetter.I:
        # the oracle homotopy needs B != I; only the case I vanishing result applies
        rep.agreement = {"values": {"mf": mf.value}, "agree": True}
        return rep

    rep.trace = _trace_section(d, label, y_shift=y_shift)
    rep.oracle = _oracle_section(d)
    values = {
        "mf": mf.value,
        "nielsen": rep.trace.get("nielsen") if rep.trace.get("available") else None,
        "model_circles": rep.trace.get("model_circles"),
        "circles": rep.oracle.get("count"),
    }
    defined = {v for v in values.values() if v is not None}
    agree = len(defined) <= 1
    rep.agreement = {"values": values, "agree": agree}
    rep.status = "agree" if agree else "disagree"
    return rep


def render_text(rep: Report) -> str:
    lines = []
    i = rep.input
    lines.append(f"A = {i['A']}   B = {i['B']}   c1 = {i['c1']}   c2 = {i['c2']}")
    if rep.validation:
        lines.append("validation failed:")
        lines += [f"  - {v}" for v in rep.validation]
        return "\n".join(lines) + "\n"
    lines.append("pi1: " + "; ".join(rep.relations))
    case = rep.case or {}
    if case.get("label") is None:
        lines.append(f"case: unclassified ({case.get('reason')})")
    else:
        lines.append(f"case: {case['label']}   P = {case['P']}   A1 = {case['A1']}   B1 = {case['B1']}")
    if rep.mf is not None:
        v = rep.mf["value"]
        lines.append(f"MF = {'n/a' if v is None else v}   [{rep.mf['status']}]")
    t = rep.trace
    if t is not None:
        if t.get("r_chain") is not None:
            p = t["params"]
            lines.append(f"model: {t['model']} (c1={p['c1']}, c2={p['c2']}, b4={p['b4']}) via P = {t['P']}")
            lines.append(f"R(F) = {t['r_chain']}")
            for c in t["classes"]:
                lines.append(f"  class [{c['marker']}]: index {c['index']:+d}")
        if t.get("available"):
            lines.append(f"N(F) = {t['nielsen']}   L(F) = {tuple(t['lefschetz'])}")
        else:
            lines.append(f"trace: n/a ({t.get('reason')})")
    o = rep.oracle
    if o is not None:
        if o.get("count") is None:
            lines.append(f"oracle: {o.get('error')}")
        else:
            lines.append(f"oracle circles = {o['count']}")
            lines.append(_diagram_from_json(o["circles"]))
    if rep.agreement:
        lines.append(f"agreement: {'yes' if rep.agreement['agree'] else 'NO'} {rep.agreement['values']}")
    lines.append(f"status: {rep.status}")
    return "\n".join(lines) + "\n"


def _diagram_from_json(circles: list[dict]) -> str:
    def q(p):
        return Fraction(p[0], p[1])

    objs = [FixedCircle(q(c["t"]), (q(c["base"][0]), q(c["base"][1])), tuple(c["direction"])) for c in circles]
    return text_diagram(objs)
