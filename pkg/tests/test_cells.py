import itertools
import json

import pytest

from torus_nielsen.algebra import parse_ring
from torus_nielsen.cells import (
    boundary_chain_maps,
    build_square_model,
    build_triangulated_model,
    chain_homotopy_sign,
    edge_orientations,
    face_orientations,
    mat_is_zero,
    verify_complex,
)
from torus_nielsen.trace import trace_blocks

SQUARE_GRID = list(itertools.product(range(-4, 5), range(-4, 5), range(-3, 5)))
TRI_GRID = list(itertools.product(range(-4, 5), range(-4, 5)))


def test_cell_counts_and_shapes():
    assert build_square_model(1, 0, 2).counts == (2, 4, 2)
    assert build_triangulated_model(1, 1).counts == (4, 12, 8)
    m = build_triangulated_model(0, 0)
    assert (m.phi.b1, m.phi.b2, m.phi.b3, m.phi.b4) == (1, 0, 1, -1)
    assert m.params == (0, 0, -1)


def test_square_examples():
    assert mat_is_zero(build_square_model(0, 0, 2).D0)
    assert build_square_model(1, 0, 2).D1[0][2] == parse_ring("1 + v^-1")


def test_triangulated_examples():
    m = build_triangulated_model(0, 1)
    column = [m.D1[i][0] for i in range(8)]
    nonzero = [x for x in column if not x.is_zero()]
    assert len(nonzero) == 4 and all(len(x) == 1 for x in nonzero)
    z = build_triangulated_model(0, 0)
    assert mat_is_zero(z.D0) and mat_is_zero(z.D1)


def test_complex_on_grid():
    for c1, c2, b4 in SQUARE_GRID:
        assert verify_complex(build_square_model(c1, c2, b4))
    for c1, c2 in TRI_GRID:
        assert verify_complex(build_triangulated_model(c1, c2))


def test_corrupted_matrix_detected():
    m = build_square_model(1, 0, 2)
    bad = [list(r) for r in m.partial2]
    bad[2][0] = -bad[2][0]
    assert not verify_complex(type(m)(**{**m.__dict__, "partial2": bad}))


def test_trace_is_cycle_on_grid():
    for c1, c2, b4 in SQUARE_GRID:
        assert trace_blocks(build_square_model(c1, c2, b4))[1]
    for c1, c2 in TRI_GRID:
        assert trace_blocks(build_triangulated_model(c1, c2))[1]


def test_transcription_matches_geometry():
    # boundary operators recomputed from the lifted cell coordinates
    assert edge_orientations(build_square_model(1, 0, 2)) == [1] * 4
    assert face_orientations(build_square_model(1, 0, 2)) == [-1, -1]
    assert edge_orientations(build_triangulated_model(1, 1)) == [1] * 12
    assert face_orientations(build_triangulated_model(1, 1)) == [1] * 8


def test_boundary_maps_degenerate_square():
    f0, f1 = boundary_chain_maps(build_square_model(0, 0, 1))
    assert f0 == f1


@pytest.mark.parametrize("c1", [0, 1, 2, 3])
@pytest.mark.parametrize("b4", [-2, -1, 0, 2, 3])
def test_chain_homotopy_square_nonnegative(c1, b4):
    m = build_square_model(c1, 0, b4)
    assert chain_homotopy_sign(m) == (1 if c1 == 0 else -1)


def test_chain_homotopy_negative_c1_needs_shifted_y():
    for c1, b4 in itertools.product((-3, -2, -1), (-2, 2, 3)):
        assert chain_homotopy_sign(build_square_model(c1, 0, b4)) is None
        assert chain_homotopy_sign(build_square_model(c1, 0, b4, y_shift=1)) == -1


def test_chain_homotopy_fails_with_c2():
    # the model D is not a chain homotopy once c2 != 0; kept as transcribed
    assert chain_homotopy_sign(build_square_model(1, 1, 2)) is None
    assert chain_homotopy_sign(build_triangulated_model(1, 0)) is None
    assert chain_homotopy_sign(build_triangulated_model(0, 0)) == 1


def test_flip_is_involution():
    m = build_triangulated_model(1, -2)
    for dim, n in zip((0, 1, 2), m.counts):
        for i in range(n):
            f = m.flip(dim, i)
            assert verify_complex(f)
            assert f.flip(dim, i) == m


def test_json_dump():
    data = json.loads(build_square_model(1, 0, 2).dumps())
    assert data["name"] == "square"
    assert data["cells"] == {"0": 2, "1": 4, "2": 2}
    assert data["D1"][0][2] == "v^-1 + 1"
