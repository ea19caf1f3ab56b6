import itertools

import pytest

from closed_forms import square_closed_form, triangulated_closed_form
from torus_nielsen.algebra import ONE, U, V, Endo, parse_ring
from torus_nielsen.cells import build_square_model, build_triangulated_model
from torus_nielsen.hochschild import Chain1, is_cycle, marker_exponent_sum
from torus_nielsen.semiconjugacy import semiclass
from torus_nielsen.trace import (
    ClassIndexMap,
    TraceError,
    class_indices,
    lefschetz_class,
    nielsen_number,
    one_parameter_trace,
    trace_report,
)

SQ_B4 = (-2, -1, 0, 2, 3)


def test_square_examples():
    rep = trace_report(build_square_model(1, 0, 2))
    assert rep.nielsen == 1
    (cls, n), = rep.indices.items()
    assert cls == semiclass(V.inverse(), Endo(1, 0, 0, 2)) and abs(n) == 1
    assert abs(rep.lefschetz[0]) == 1 and rep.lefschetz[1] == 0
    assert trace_report(build_square_model(2, 0, 2)).nielsen == 2
    for b4 in (-3, 0, 1, 5):
        assert one_parameter_trace(build_square_model(0, 0, b4), check_boundary=False).is_zero()


def test_triangulated_example():
    assert trace_report(build_triangulated_model(1, 1)).nielsen == 3


def test_empty_indices():
    phi = Endo(1, 0, 0, 3)
    idx = class_indices(Chain1(), phi)
    assert len(idx) == 0 and nielsen_number(idx) == 0
    assert lefschetz_class(idx, phi) == (0, 0)


def test_lefschetz_can_cancel():
    phi = Endo(1, 0, 0, 3)
    idx = ClassIndexMap({semiclass(ONE, phi): 1, semiclass(V, phi): -1})
    assert nielsen_number(idx) == 2 and lefschetz_class(idx, phi) == (0, 0)


@pytest.mark.parametrize("c1,c2,b4", list(itertools.product(range(-3, 4), range(-3, 4), SQ_B4)))
def test_square_grid(c1, c2, b4):
    m = build_square_model(c1, c2, b4)
    r = one_parameter_trace(m)
    assert is_cycle(r, m.phi) and marker_exponent_sum(r, m.phi)
    idx = class_indices(r, m.phi)
    assert nielsen_number(idx) == abs(c1 * (b4 - 1))
    assert set(idx.entries.values()) <= {-1, 1}


@pytest.mark.parametrize("c1,c2", list(itertools.product(range(-3, 4), repeat=2)))
def test_triangulated_grid(c1, c2):
    m = build_triangulated_model(c1, c2)
    r = one_parameter_trace(m)
    assert is_cycle(r, m.phi) and marker_exponent_sum(r, m.phi)
    assert nielsen_number(class_indices(r, m.phi)) == abs(2 * c1 + c2)


@pytest.mark.parametrize("c1,b4", list(itertools.product(range(-3, 4), SQ_B4)))
def test_square_closed_form_is_homologous(c1, b4):
    m = build_square_model(c1, 0, b4)
    reference = square_closed_form(c1, b4)
    assert is_cycle(reference, m.phi)
    assert class_indices(reference, m.phi) == class_indices(one_parameter_trace(m), m.phi)


@pytest.mark.parametrize("c1,c2", list(itertools.product(range(-3, 4), repeat=2)))
def test_triangulated_closed_form_is_homologous(c1, c2):
    m = build_triangulated_model(c1, c2)
    reference = triangulated_closed_form(c1, c2)
    assert is_cycle(reference, m.phi)
    assert class_indices(reference, m.phi) == class_indices(one_parameter_trace(m), m.phi)


def test_square_difference_is_unit_terms_only():
    # the computed and closed-form chains differ by 1 (x) m terms, which are boundaries
    for c1, b4 in [(1, 2), (2, 3), (-1, 2)]:
        diff = one_parameter_trace(build_square_model(c1, 0, b4)) - square_closed_form(c1, b4)
        assert diff and all(g == ONE for g, _ in diff.terms)


def test_square_closed_form_example_value():
    assert square_closed_form(1, 2) == (
        Chain1.tensor(U.inverse(), U) - Chain1.tensor(ONE, ONE) * 2 + Chain1.tensor(ONE, U)
        + Chain1.tensor(ONE, parse_ring("1 + v^-1")) - Chain1.tensor(U.inverse(), parse_ring("u + u v^-1"))
    )


def test_shifted_y_moves_markers_not_indices():
    for c1, b4 in itertools.product(range(-3, 0), SQ_B4):
        a = build_square_model(c1, 0, b4)
        b = build_square_model(c1, 0, b4, y_shift=1)
        ia = class_indices(one_parameter_trace(a), a.phi)
        ib = class_indices(one_parameter_trace(b), b.phi)
        assert sorted(ia.entries.values()) == sorted(ib.entries.values())
    # the default branch puts the c1 = -1 class at u^2, the shifted one at u
    a, b = build_square_model(-1, 0, 2), build_square_model(-1, 0, 2, y_shift=1)
    assert class_indices(one_parameter_trace(a), a.phi).to_json() == [{"marker": "u^2", "index": 1}]
    assert class_indices(one_parameter_trace(b), b.phi).to_json() == [{"marker": "u", "index": 1}]


@pytest.mark.parametrize("model", [build_square_model(2, 1, 3), build_square_model(-2, 0, -1), build_triangulated_model(1, -2)])
def test_orientation_flip_invariance(model):
    ref = class_indices(one_parameter_trace(model), model.phi)
    for dim, n in zip((0, 1, 2), model.counts):
        for i in range(n):
            f = model.flip(dim, i)
            assert class_indices(one_parameter_trace(f), f.phi) == ref


def test_trace_rejects_corrupted_model():
    m = build_square_model(1, 0, 2)
    D0 = [list(r) for r in m.D0]
    D0[2][0] = D0[2][0] + parse_ring("v")
    bad = type(m)(**{**m.__dict__, "D0": D0})
    with pytest.raises(TraceError):
        one_parameter_trace(bad)


def test_report_json():
    data = trace_report(build_square_model(1, 0, 2)).to_json()
    assert data["nielsen"] == 1
    assert data["classes"] == [{"marker": "1", "index": -1}]
    assert data["r_chain"] == "-[u^-1 ⊗ u v^-1] + [1 ⊗ v^-1]"
