from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elecred.errors import Disconnected, NonSphericalGenus, NotInvolution, NotPermutation, ParseError
from elecred.generators import gen_alpha, gen_flat_torus, gen_random_curve
from elecred.maps import (
    EmbeddedMap,
    build_map,
    canonical_form,
    canonical_form_chiral,
    faces,
    find_isomorphism,
    isomorphic,
    parse,
    serialize,
)
from elecred.planegraph import parse_graph

LOOP = ([1, 0], [1, 0])


def relabel(m, perm):
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return EmbeddedMap(perm[m.sigma[inv]], perm[m.alpha[inv]])


def test_single_loop_counts():
    m = build_map(*LOOP)
    assert (m.num_vertices, m.num_edges, m.num_faces) == (1, 1, 2)
    assert sorted(len(f) for f in faces(m)) == [1, 1]


def test_bad_sigma():
    with pytest.raises(NotPermutation):
        build_map([0, 0], [1, 0])


def test_bad_alpha():
    with pytest.raises(NotInvolution):
        build_map([1, 0], [0, 1])


def test_two_disjoint_loops():
    with pytest.raises(Disconnected):
        build_map([1, 0, 3, 2], [1, 0, 3, 2])


def test_torus_map_rejected():
    # one vertex, two interleaved loops: V - E + F = 0
    with pytest.raises(NonSphericalGenus):
        build_map([1, 2, 3, 0], [2, 3, 0, 1])


def test_figure_eight_faces(figure_eight):
    m = figure_eight.emap
    assert m.num_faces == 3
    assert sorted(len(f) for f in faces(m)) == [1, 1, 2]


def test_alpha2_euler():
    m = gen_alpha(2).emap
    assert m.num_vertices - m.num_edges + m.num_faces == 2
    assert m.num_faces == 3


def test_one_vertex_quartic_maps():
    # every planar pairing of the four darts gives the same map up to isomorphism
    codes = set()
    for pairing in ([1, 0, 3, 2], [3, 2, 1, 0], [2, 3, 0, 1]):
        try:
            m = build_map([1, 2, 3, 0], pairing)
        except NonSphericalGenus:
            assert pairing == [2, 3, 0, 1]
            continue
        codes.add(canonical_form(m))
    assert len(codes) == 1
    assert canonical_form(gen_alpha(2).emap) in codes


def test_mirror_invariance(trefoil):
    m = gen_flat_torus(3, 4).emap
    assert canonical_form(m) == canonical_form(m.mirror())
    assert isomorphic(m, m.mirror())


def test_chiral_form_sees_mirror():
    m = gen_random_curve(6, seed=3).emap
    assert canonical_form_chiral(m) == canonical_form_chiral(m)
    # some 6-vertex curves are amphichiral; this one is not
    assert canonical_form_chiral(m) != canonical_form_chiral(m.mirror())


def test_non_isomorphic_differ(figure_eight, trefoil):
    assert not isomorphic(figure_eight.emap, trefoil.emap)
    assert not isomorphic(gen_alpha(4).emap, trefoil.emap)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 8), seed=st.integers(0, 10_000), data=st.data())
def test_relabeling_invariance(n, seed, data):
    m = gen_random_curve(n, seed).emap
    if m.num_darts == 0:
        return
    perm = data.draw(st.permutations(range(m.num_darts)))
    m2 = relabel(m, perm)
    assert canonical_form(m2) == canonical_form(m)
    assert canonical_form_chiral(m2) == canonical_form_chiral(m)
    f = find_isomorphism(m, m2)
    assert f is not None
    assert np.array_equal(f[m.sigma], m2.sigma[f])
    assert np.array_equal(f[m.alpha], m2.alpha[f])


@settings(max_examples=40, deadline=None)
@given(a=st.integers(1, 7), b=st.integers(1, 7), s1=st.integers(0, 500), s2=st.integers(0, 500))
def test_isomorphic_agrees_with_search(a, b, s1, s2):
    m1 = gen_random_curve(a, s1).emap
    m2 = gen_random_curve(b, s2).emap
    chiral_iso = find_isomorphism(m1, m2) is not None
    assert chiral_iso == (canonical_form_chiral(m1) == canonical_form_chiral(m2))
    assert isomorphic(m1, m2) == (chiral_iso or find_isomorphism(m1.mirror(), m2) is not None)


def test_round_trip_loop():
    m = build_map(*LOOP)
    assert parse(serialize(m)) == m


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 9), seed=st.integers(0, 10_000))
def test_round_trip_random(n, seed):
    m = gen_random_curve(n, seed).emap
    text = serialize(m)
    assert serialize(parse(text)) == text


def test_labels_round_trip():
    m = EmbeddedMap([1, 0], [1, 0], labels=[("v", 0, "terminal"), ("f", 1, "outer face")])
    assert parse(serialize(m)).labels == m.labels


def test_odd_dart_count():
    with pytest.raises(ParseError) as exc:
        parse("darts 3\nalpha 1 0 2\nsigma 0 1 2\n")
    assert exc.value.line == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("darts 2\nalpha 1 0\n", 1),
        ("darts 2\nalpha 1\nsigma 1 0\n", 2),
        ("darts 2\nalpha 1 0\nsigma 1 x\n", 3),
        ("darts 2\nalpha 1 0\nsigma 1 0\nbogus 1\n", 4),
        ("alpha 1 0\n", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line


def test_comments_ignored():
    m = parse("# a loop\ndarts 2  # two darts\nalpha 1 0\nsigma 1 0\n")
    assert m == build_map(*LOOP)


def test_b2_file():
    import pathlib

    path = pathlib.Path(__file__).resolve().parent.parent / "data" / "b2.pg"
    g = parse_graph(path.read_text())
    assert g.num_vertices == 3
    assert g.num_edges == 3
    assert len(g.terminals) == 2
    assert sorted(g.degree(v) for v in range(3)) == [1, 1, 4]


def test_isomorphism_respects_labels():
    m = build_map([1, 2, 0, 5, 3, 4], [3, 4, 5, 0, 1, 2])  # theta graph
    lab = np.array([1, 0, 0, 0, 0, 0])
    assert find_isomorphism(m, m, lab, lab) is not None
    assert find_isomorphism(m, m, lab, np.zeros(6, dtype=int)) is None


def test_permutations_small_map_all_isomorphic():
    m = gen_alpha(3).emap
    code = canonical_form(m)
    for perm in list(permutations(range(8)))[:200]:
        assert canonical_form(relabel(m, perm)) == code
