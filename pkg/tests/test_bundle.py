import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import unimodular
from torus_nielsen.bundle import (
    BundleMapData,
    CaseLetter,
    MFStatus,
    Unclassified,
    ValidationError,
    classify,
    closed_form,
    conjugate_data,
    fiber_deformable,
    in_listed_family,
    invariant_form,
    mf_number,
    mf_result,
    pi1_relations,
    relation_defects,
    route,
    validate,
)
from torus_nielsen.intlinalg import IntMatrix2 as M

I = M(1, 0, 0, 1)

# a small test set: upper and lower triangular unimodular matrices, entries in [-3, 3]
TRIANGULAR = [M(s, k, 0, t) for s, t, k in itertools.product((1, -1), (1, -1), range(-3, 4))] + [
    M(s, 0, k, t) for s, t, k in itertools.product((1, -1), (1, -1), range(-3, 4)) if k
]


def data(A, B, c1=0, c2=0):
    return BundleMapData(A, B, c1, c2)


def test_validate_examples():
    assert validate(data(I, M(1, 0, 0, 3))) == []
    assert any("commute" in v for v in validate(data(M(1, 1, 0, 1), M(0, 1, 1, 0))))
    assert any("det" in v for v in validate(data(M(2, 0, 0, 1), I)))


def test_classify_examples():
    lab = classify(data(I, M(1, 0, 0, 3)))
    assert lab.letter is CaseLetter.II and lab.P == I
    # 2 (b4 - 1) = -2 b3 with b4 = 2, b3 = -1
    assert classify(data(M(1, 2, 0, -1), M(1, -1, 0, 2))).letter is CaseLetter.III
    assert classify(data(M(1, 1, 0, 1), I)).letter is CaseLetter.I
    assert classify(data(M(-1, 0, 0, -1), M(1, 0, 0, 3))).letter is CaseLetter.IV
    assert classify(data(M(-1, 1, 0, 1), M(1, 0, 0, 1))).letter is CaseLetter.I
    assert classify(data(M(-1, 1, 0, 1), M(1, 1, 0, 3))).letter is CaseLetter.V


def test_classify_errors():
    with pytest.raises(ValidationError):
        classify(data(M(2, 0, 0, 1), I))
    with pytest.raises(Unclassified):
        classify(data(I, I))
    with pytest.raises(Unclassified):
        classify(data(I, M(2, 0, 0, 2)))


def test_normal_form_shape():
    for A, B in [(I, M(3, 0, 0, 1)), (I, M(1, 0, 4, 1)), (M(0, 1, -1, 0) @ M(1, 2, 0, -1) @ M(0, -1, 1, 0), M(0, 1, -1, 0) @ M(1, -1, 0, 2) @ M(0, -1, 1, 0))]:
        lab = classify(data(A, B))
        assert lab.P.is_unimodular()
        assert lab.A1 == lab.P @ A @ lab.P.inverse() and lab.B1 == lab.P @ B @ lab.P.inverse()
        assert (lab.B1.a11, lab.B1.a21) == (1, 0) and lab.A1.a21 == 0


def test_conjugate_examples():
    d = data(I, M(1, 4, 0, 3), 5, 2)
    assert conjugate_data(d, I) == d
    # b3 = n (b4 - 1) with n = 2
    e = conjugate_data(d, M(1, -2, 0, 1))
    assert e.B == M(1, 0, 0, 3) and (e.c1, e.c2) == (5 - 2 * 2, 2)
    f = conjugate_data(data(I, M(1, 5, 0, -1), 1, 1), M(1, 2, 0, 1))
    assert f.B == M(1, 1, 0, -1)
    with pytest.raises(ValueError):
        conjugate_data(d, M(2, 0, 0, 1))


def test_mf_examples():
    assert mf_number(data(I, M(1, 0, 0, 2), 3, 7)) == 3
    assert mf_number(data(M(1, 1, 0, 1), I, 5, 5)) == 0
    assert mf_number(data(I, M(1, 1, 0, -1), 1, 1)) == 3
    r = mf_result(data(M(-1, 0, 0, -1), M(1, 0, 0, 3), 1, 0))
    assert r.value is None and r.status is MFStatus.NOT_COVERED


def test_family_status():
    lab = classify(data(I, M(1, 2, 0, 1)))
    assert lab.letter is CaseLetter.II and not in_listed_family(lab)
    r = mf_result(data(I, M(1, 2, 0, 1), 1, 2))
    assert r.value is None and r.formula == 4 and r.status is MFStatus.FAMILY_NOT_LISTED
    z = mf_result(data(I, M(1, 2, 0, 1), 1, 0))
    assert z.value == 0 and z.status is MFStatus.VANISHING
    # odd a3 in case III with b4 != -1 is outside the listed families
    odd = classify(data(M(1, 1, 0, -1), M(1, -3, 0, 7)))
    assert odd.letter is CaseLetter.III and not in_listed_family(odd)


def test_fiber_deformable_examples():
    assert fiber_deformable(M(1, 5, 0, 3))
    assert fiber_deformable(I)
    assert not fiber_deformable(M(2, 0, 0, 2))


def test_pi1_examples():
    assert pi1_relations(I).as_strings() == ["[a, b] = 1", "c a c^-1 = a", "c b c^-1 = b"]
    assert pi1_relations(M(1, 2, 0, -1)).as_strings()[2] == "c b c^-1 = a^2 b^-1"
    assert relation_defects(I, M(1, 0, 0, 3)) == []
    assert relation_defects(M(1, 1, 0, 1), M(0, 1, 1, 0)) != []
    with pytest.raises(ValidationError):
        pi1_relations(M(2, 0, 0, 1))


def test_routes():
    r = route(data(I, M(1, 4, 0, 3), 5, 2))
    assert r.model == "square" and r.model_params() == (1, 2, 3)
    r = route(data(I, M(1, 5, 0, -1), 1, 1))
    assert r.model == "triangulated" and r.model_params() == (3, 1, -1)
    assert route(data(I, M(1, 2, 0, 1), 1, 1)) is None
    assert route(data(M(1, 1, 0, 1), I)) is None


# a pool of case II / III data in normal form
def normal_pool():
    out = []
    for b3, b4 in itertools.product(range(-3, 4), (-2, -1, 0, 2, 3)):
        if b3 % (b4 - 1) == 0 or b4 == -1:
            out.append((I, M(1, b3, 0, b4)))
    for k, b4 in itertools.product(range(-2, 3), (-2, -1, 0, 2, 3)):
        A = M(1, 2 * k, 0, -1)
        # a3 (b4 - 1) = -2 b3
        b3 = -k * (b4 - 1)
        out.append((A, M(1, b3, 0, b4)))
    return out


POOL = normal_pool()


@given(st.sampled_from(POOL), st.integers(-3, 3), st.integers(-3, 3), st.sampled_from(TRIANGULAR))
def test_conjugation_invariance(pair, c1, c2, P):
    d = data(*pair, c1, c2)
    e = conjugate_data(d, P)
    assert classify(e).letter is classify(d).letter
    assert mf_number(e) == mf_number(d) == abs(c1 * (pair[1].a22 - 1) - c2 * pair[1].a12)
    assert invariant_form(e) == invariant_form(d)


@given(st.sampled_from(POOL), st.integers(-3, 3), st.integers(-3, 3), unimodular)
def test_conjugation_invariance_any_unimodular(pair, c1, c2, P):
    d = data(*pair, c1, c2)
    e = conjugate_data(d, P)
    lab = classify(e)
    assert lab.letter is classify(d).letter
    assert in_listed_family(lab)
    assert closed_form(e, lab) == closed_form(d) == invariant_form(e)


@pytest.mark.parametrize("pair", POOL)
def test_vanishing_criterion(pair):
    A, B = pair
    for c1, c2 in itertools.product(range(-3, 4), repeat=2):
        mf = mf_number(data(A, B, c1, c2))
        assert (mf == 0) == (c1 * (B.a22 - 1) - c2 * B.a12 == 0)
