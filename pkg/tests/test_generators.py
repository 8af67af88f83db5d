import pytest
from hypothesis import given, settings, strategies as st

from elecred.curve import components, depth, is_alpha, winding_number
from elecred.errors import BadParam
from elecred.generators import (
    closed_braid,
    gen_alpha,
    gen_bullseye,
    gen_flat_torus,
    gen_random_curve,
    gen_random_plane_graph,
)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)])
def test_torus_sizes(p, q):
    c = gen_flat_torus(p, q)
    assert c.num_vertices == q * (p - 1)
    assert c.boundary is None
    assert components(c)[0] == 1


def test_torus_rejects_bad_params():
    with pytest.raises(BadParam):
        gen_flat_torus(2, 4)
    with pytest.raises(BadParam):
        gen_flat_torus(1, 3)
    with pytest.raises(BadParam):
        closed_braid(0, 2)


def test_torus_with_one_twist_is_sphere_alpha():
    assert gen_flat_torus(4, 1).key() == closed_braid(4, 1, annulus=False).key()


@pytest.mark.parametrize("d", range(1, 7))
def test_alpha_shape(d):
    a = gen_alpha(d)
    assert a.num_vertices == d - 1
    assert winding_number(a) == d
    assert depth(a) == d
    assert is_alpha(a) == d


@pytest.mark.parametrize("bad", [0, -2, 1.5])
def test_alpha_bad(bad):
    with pytest.raises(BadParam):
        gen_alpha(bad)


@pytest.mark.parametrize("k", range(1, 6))
def test_bullseye_shape(k):
    g = gen_bullseye(k)
    assert g.num_vertices == k + 1
    assert g.num_edges == 2 * k - 1
    assert g.terminals == (0, k)


def test_bullseye_bad():
    with pytest.raises(BadParam):
        gen_bullseye(0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 7), st.integers(0, 10_000))
def test_random_curve_size_and_determinism(n, seed):
    c = gen_random_curve(n, seed=seed)
    assert c.num_vertices == n
    assert c.connected
    assert gen_random_curve(n, seed=seed).key() == c.key()


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10_000))
def test_random_annulus_curve_has_two_marks(n, seed):
    c = gen_random_curve(n, seed=seed, annulus=True)
    assert c.boundary is not None
    f0, f1 = (int(c.face_of[d]) for d in c.boundary)
    assert f0 != f1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 12), st.integers(0, 10_000))
def test_random_graph_size_and_determinism(e, seed):
    g = gen_random_plane_graph(e, seed=seed, terminals=True)
    assert g.num_edges == e
    assert gen_random_plane_graph(e, seed=seed, terminals=True).key() == g.key()
    if g.num_vertices >= 2:
        a, b = g.terminals
        assert a != b


def test_random_negative_sizes():
    with pytest.raises(BadParam):
        gen_random_curve(-1)
    with pytest.raises(BadParam):
        gen_random_plane_graph(-1)
