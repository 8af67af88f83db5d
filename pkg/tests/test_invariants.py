from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elecred.curve import HOMOTOPY, apply_move, components, enumerate_moves, traversal
from elecred.errors import MultiComponent, NotApplicable
from elecred.generators import closed_braid, gen_alpha, gen_flat_torus, gen_random_curve
from elecred.invariants import (
    defect,
    defect_decomposition,
    defect_reference,
    interleaving_matrix,
    positions,
    signs,
)
from elecred.tangle import enumerate_circles


def brute_defect(c):
    """Defect straight from the definition: walk the curve, test every pair."""
    seq = [i // 4 for i, _ in traversal(c)]
    sgn = {s.vertex: s.sign for s in signs(c)}
    total = 0
    for x, y in combinations(sorted(set(seq)), 2):
        pattern = [v for v in seq if v in (x, y)]
        # interleaved iff the pattern alternates x y x y (up to rotation)
        if all(pattern[k] != pattern[k + 1] for k in range(3)):
            total += sgn[x] * sgn[y]
    return -2 * total


def test_simple_and_figure_eight(circle, figure_eight):
    assert defect(circle) == 0
    assert defect(figure_eight) == 0


def test_trefoil(trefoil):
    assert brute_defect(trefoil) == 2
    assert defect(trefoil) == 2
    # every pair interleaves in x y z x y z
    inter = interleaving_matrix(trefoil)
    assert inter.sum() == 6


@pytest.mark.parametrize(
    "p, q, expected",
    [(2, 3, 2), (2, 5, 4), (2, 7, 6), (2, 9, 8), (3, 4, 8), (3, 5, 4), (3, 7, 16), (3, 8, 8),
     (4, 5, 20), (5, 6, 40), (6, 7, 70), (7, 8, 112)],
)
def test_flat_torus_values(p, q, expected):
    c = gen_flat_torus(p, q)
    assert brute_defect(c) == expected
    assert defect(c) == expected


@pytest.mark.parametrize("d", range(2, 8))
def test_alpha_on_sphere(d):
    assert defect(gen_alpha(d).forget_boundary()) == 0


def test_multicomponent_rejected():
    with pytest.raises(MultiComponent):
        defect(closed_braid(2, 2, annulus=False))


def single_curves():
    return st.builds(gen_random_curve, st.integers(0, 9), st.integers(0, 10_000)).filter(lambda c: components(c)[0] == 1)


@settings(max_examples=80, deadline=None)
@given(c=single_curves())
def test_kernel_matches_definitions(c):
    assert defect(c) == defect_reference(c) == brute_defect(c)


@settings(max_examples=60, deadline=None)
@given(c=single_curves(), data=st.data())
def test_basepoint_and_direction(c, data):
    if c.num_darts == 0:
        return
    d = data.draw(st.integers(0, c.num_darts - 1))
    direction = data.draw(st.sampled_from([1, -1]))
    assert defect(c, (d, direction)) == defect(c)


@settings(max_examples=60, deadline=None)
@given(c=single_curves())
def test_mirror(c):
    assert defect(c.mirror()) == defect(c)


@settings(max_examples=60, deadline=None)
@given(c=single_curves())
def test_interleaving_matrix_shape(c):
    mat = interleaving_matrix(c)
    n = c.num_vertices
    assert mat.shape == (n, n)
    assert np.array_equal(mat, mat.T)
    assert not np.any(np.diag(mat))
    pos1, pos2, _ = positions(c)
    assert sorted(pos1.tolist() + pos2.tolist()) == list(range(2 * n))


@settings(max_examples=100, deadline=None)
@given(c=single_curves(), data=st.data())
def test_homotopy_move_changes_defect_by_at_most_two(c, data):
    moves = enumerate_moves(c, HOMOTOPY, upward=True)
    if not moves:
        return
    m = data.draw(st.sampled_from(moves))
    try:
        out = apply_move(c, m)
    except NotApplicable:
        return
    if components(out)[0] != 1:
        return
    change = defect(out) - defect(c)
    assert abs(change) <= 2
    if m.kind in ("H1down", "H1up"):
        assert change == 0
    if m.kind in ("H2down", "H2up"):
        assert change in (0, 2, -2)


def test_decomposition_identity():
    seen = 0
    for seed in range(60):
        c = gen_random_curve(6, seed)
        if components(c)[0] != 1:
            continue
        for s in enumerate_circles(c):
            if len(s.crossed) != 4:
                continue
            parts = defect_decomposition(c, s)
            assert parts.total == defect(c)
            assert parts.mixed == parts.mixed_product
            seen += 1
    assert seen > 20
