import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elecred.curve import (
    DELTA,
    HOMOTOPY,
    MEDIAL,
    CurveMove,
    Multicurve,
    apply_move,
    components,
    depth,
    dual_path,
    enumerate_moves,
    gauss_code,
    is_alpha,
    is_connected_smoothing,
    parse_curve,
    realize,
    serialize_curve,
    simple_circle,
    smooth,
    winding_number,
)
from elecred.errors import (
    BoundaryForbidden,
    Disconnected,
    NoBoundary,
    NotApplicable,
    ParseError,
    UnrealizableCode,
)
from elecred.generators import closed_braid, gen_alpha, gen_bullseye, gen_flat_torus, gen_random_curve
from elecred.planegraph import medial


def kinds(moves):
    return sorted(m.kind for m in moves)


# -- structure ---------------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 8))
def test_alpha_single_component(d):
    assert components(gen_alpha(d))[0] == 1


def test_two_circles_crossing_twice():
    c = closed_braid(2, 2, annulus=False)
    count, labels = components(c)
    assert (count, c.num_vertices) == (2, 2)
    assert len(set(labels.tolist())) == 2


def test_circle_components(circle):
    assert components(circle)[0] == 1
    assert circle.num_vertices == 0


def test_slot_form_is_4_regular(trefoil):
    assert all(len(v) == 4 for v in trefoil.emap.vertices())


def test_free_circle_next_to_curve_rejected():
    with pytest.raises(Disconnected):
        Multicurve([1, 0, 3, 2], circles=1)


# -- Gauss codes -----------------------------------------------------------------


def test_figure_eight_code(figure_eight):
    code = gauss_code(figure_eight)
    assert code.unsigned() == [[1, 1]]


def test_trefoil_code(trefoil):
    seq = gauss_code(trefoil).unsigned()[0]
    assert len(seq) == 6
    # cyclic pattern x y z x y z
    assert seq[:3] == seq[3:]
    assert len(set(seq)) == 3


def test_unrealizable_signs():
    # the code 1 2 1 2 has no planar realization with these signs
    with pytest.raises(UnrealizableCode):
        realize(([[1, 2, 1, 2]], {1: 1, 2: 1}))


def test_wrong_multiplicity():
    with pytest.raises(UnrealizableCode):
        realize(([[1, 2, 1]], {1: 1, 2: 1}))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 9), seed=st.integers(0, 10_000))
def test_realize_round_trip(n, seed):
    c = gen_random_curve(n, seed)
    if components(c)[0] != 1:
        return
    assert realize(gauss_code(c)).key() == c.key()


# -- moves --------------------------------------------------------------------------


def test_figure_eight_moves(figure_eight):
    assert kinds(enumerate_moves(figure_eight, HOMOTOPY)) == ["H1down", "H1down"]
    out = apply_move(figure_eight, enumerate_moves(figure_eight, HOMOTOPY)[0])
    assert out.is_circle


def test_trefoil_face_census(trefoil):
    # three bigons and two trigons in the standard drawing
    assert sorted(len(f) for f in trefoil.emap.faces()) == [2, 2, 2, 3, 3]
    assert kinds(enumerate_moves(trefoil, HOMOTOPY)) == ["H2down"] * 3 + ["H33"] * 2
    assert kinds(enumerate_moves(trefoil, MEDIAL)) == ["M21"] * 3 + ["M33"] * 2


def test_trefoil_triangle_flip(trefoil):
    m = next(m for m in enumerate_moves(trefoil, HOMOTOPY) if m.kind == "H33")
    out = apply_move(trefoil, m)
    assert out.num_vertices == 3
    assert sorted(len(f) for f in out.emap.faces()) == [1, 1, 1, 3, 6]


@pytest.mark.parametrize("d", range(1, 9))
def test_alpha_has_no_moves(d):
    a = gen_alpha(d)
    for system in (HOMOTOPY, MEDIAL):
        assert enumerate_moves(a, system) == []


def test_boundary_face_forbidden():
    a = gen_alpha(2)
    # both monogons of alpha_2 hold a boundary
    for d in range(4):
        if a.phi(d) == d:
            with pytest.raises(BoundaryForbidden):
                apply_move(a, CurveMove("M1down", (d,)))


def test_bad_site(figure_eight):
    with pytest.raises(NotApplicable):
        apply_move(figure_eight, CurveMove("H2down", (0,)))


def curves():
    return st.builds(lambda n, s, a: gen_random_curve(n, s, annulus=a), st.integers(0, 7), st.integers(0, 5000), st.booleans())


@settings(max_examples=80, deadline=None)
@given(c=curves(), data=st.data())
def test_move_vertex_delta(c, data):
    system = data.draw(st.sampled_from([HOMOTOPY, MEDIAL]))
    moves = enumerate_moves(c, system, upward=True)
    if not moves:
        return
    m = data.draw(st.sampled_from(moves))
    try:
        out = apply_move(c, m)
    except NotApplicable:
        return
    assert out.num_vertices == c.num_vertices + DELTA[m.kind]
    assert out.connected


@settings(max_examples=60, deadline=None)
@given(c=curves(), data=st.data())
def test_up_then_down_returns(c, data):
    ups = [m for m in enumerate_moves(c, HOMOTOPY, upward=True) + enumerate_moves(c, MEDIAL, upward=True)
           if DELTA[m.kind] > 0]
    if not ups:
        return
    m = data.draw(st.sampled_from(ups))
    try:
        out = apply_move(c, m)
    except NotApplicable:
        return
    undo = {"H1up": "H1down", "M1up": "M1down", "H2up": "H2down", "M12": "M21"}[m.kind]
    back = set()
    for mv in enumerate_moves(out, HOMOTOPY) + enumerate_moves(out, MEDIAL):
        if mv.kind == undo:
            try:
                back.add(apply_move(out, mv).key())
            except NotApplicable:
                pass
    assert c.key() in back


def test_loop_grows_face():
    c = gen_flat_torus(2, 3)
    x = 0
    before = len(next(f for f in c.emap.faces() if x in f))
    out = apply_move(c, CurveMove("H1up", (x,)))
    sizes = sorted(len(f) for f in out.emap.faces())
    assert 1 in sizes
    assert out.num_faces == c.num_faces + 1
    assert before + 2 in sizes


# -- smoothing -------------------------------------------------------------------


def test_figure_eight_smoothings(figure_eight):
    a = smooth(figure_eight, 0, "A")
    b = smooth(figure_eight, 0, "B")
    assert {a.circles, b.circles} == {1, 2}
    assert a.is_circle and b.is_circle


def test_alpha3_smoothing_leaves_loop():
    a3 = gen_alpha(3)
    s = smooth(a3, 0, "A")
    assert s.num_vertices == 1
    assert kinds(enumerate_moves(s, MEDIAL)) == ["M1down"]
    after = apply_move(s, enumerate_moves(s, MEDIAL)[0])
    assert is_alpha(after) == 1
    assert is_connected_smoothing(a3, {0: "A"})
    assert not is_connected_smoothing(a3, {0: "B"})


@settings(max_examples=60, deadline=None)
@given(c=curves(), data=st.data())
def test_smoothing_drops_vertices(c, data):
    if c.num_vertices == 0:
        return
    v = data.draw(st.integers(0, c.num_vertices - 1))
    ch = data.draw(st.sampled_from("AB"))
    try:
        s = smooth(c, v, ch)
    except Disconnected:
        return
    assert s.num_vertices == c.num_vertices - 1


# -- annulus -------------------------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 10))
def test_alpha_depth_and_winding(d):
    a = gen_alpha(d)
    assert depth(a) == d
    assert abs(winding_number(a)) == d
    assert winding_number(a, dual_path(a, avoid_first=True)) == winding_number(a)
    assert is_alpha(a) == d


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bullseye_medial_depth(k):
    assert depth(medial(gen_bullseye(k))) == 2 * k


def test_circle_in_annulus():
    assert depth(simple_circle((0, 1))) == 1
    assert depth(simple_circle((0, 0))) == 0
    assert winding_number(simple_circle((0, 0))) == 0
    assert abs(winding_number(simple_circle((0, 1)))) == 1


def test_winding_reverses():
    a = gen_alpha(4)
    assert winding_number(a.with_basepoint((0, -1))) == -winding_number(a.with_basepoint((0, 1)))


def test_no_boundary(trefoil):
    with pytest.raises(NoBoundary):
        depth(trefoil)
    with pytest.raises(NoBoundary):
        is_alpha(trefoil)


def test_figure_eight_split_boundary_is_not_alpha(figure_eight):
    fo = figure_eight.face_of
    darts = {}
    for d in range(4):
        darts.setdefault(int(fo[d]), d)
    a, b = sorted(darts.values())[:2]
    assert is_alpha(figure_eight.with_boundary((a, b))) is None


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 8), seed=st.integers(0, 5000))
def test_depth_bound(n, seed):
    c = gen_random_curve(n, seed, annulus=True)
    assert depth(c) <= c.num_vertices + 1


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 5000), data=st.data())
def test_winding_invariant_under_homotopy(n, seed, data):
    c = gen_random_curve(n, seed, annulus=True)
    if components(c)[0] != 1:
        return
    moves = enumerate_moves(c, HOMOTOPY, upward=True)
    if not moves:
        return
    m = data.draw(st.sampled_from(moves))
    try:
        out = apply_move(c, m)
    except NotApplicable:
        return
    assert abs(winding_number(out)) == abs(winding_number(c))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 5000), data=st.data())
def test_medial_moves_keep_depth(n, seed, data):
    c = gen_random_curve(n, seed, annulus=True)
    moves = enumerate_moves(c, MEDIAL, upward=True)
    if not moves:
        return
    m = data.draw(st.sampled_from(moves))
    try:
        out = apply_move(c, m)
    except NotApplicable:
        return
    assert depth(out) == depth(c)


def test_winding_path_independent():
    for seed in range(40):
        c = gen_random_curve(5, seed, annulus=True)
        if components(c)[0] != 1:
            continue
        assert winding_number(c, dual_path(c)) == winding_number(c, dual_path(c, avoid_first=True))


# -- text format ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "c",
    [gen_alpha(4), simple_circle((0, 1)), gen_flat_torus(3, 4), gen_flat_torus(2, 3).with_basepoint((3, -1))],
)
def test_crv_round_trip(c):
    text = serialize_curve(c)
    back = parse_curve(text)
    assert back.key() == c.key()
    assert back.basepoint == c.basepoint
    assert serialize_curve(back) == text


def test_crv_errors():
    with pytest.raises(ParseError):
        parse_curve("darts 4\nalpha 1 0 3 2\nsigma 1 2 3 0\nboundary 0\n")
    with pytest.raises(ParseError):
        parse_curve("darts 4\nalpha 1 0 3 2\nsigma 1 2 3 0\nbasepoint 9 +\n")
    with pytest.raises(ParseError):
        parse_curve("darts 4\nalpha 1 0 3 2\nsigma 1 2 3 0\ncircles 1\n")


def test_crv_accepts_any_4_regular_labeling(figure_eight):
    text = "darts 4\nalpha 3 2 1 0\nsigma 1 2 3 0\n"
    assert parse_curve(text).key() == figure_eight.key()
