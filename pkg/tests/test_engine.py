import pytest

from elecred.curve import HOMOTOPY, MEDIAL, Multicurve, components, simple_circle
from elecred.engine import (
    H,
    Hbar,
    MoveEvent,
    Trace,
    X,
    Xbar,
    certify_lower_bounds,
    connected_smoothings,
    is_reduced,
    oracle,
    oracle_X,
    reduce_greedy,
    unicursal_smoothing,
    validate_minimal,
)
from elecred.errors import NoUnicursalSmoothing, ParseError, TooLarge
from elecred.generators import gen_alpha, gen_bullseye, gen_flat_torus, gen_random_curve
from elecred.invariants import defect
from elecred.planegraph import medial


def test_figure_eight(figure_eight):
    assert X(figure_eight) == 1
    assert H(figure_eight) == 1


def test_trefoil_values(trefoil):
    assert (X(trefoil), H(trefoil), Xbar(trefoil), Hbar(trefoil)) == (3, 2, 3, 2)


def test_torus_3_4():
    t = gen_flat_torus(3, 4)
    assert X(t) == 10
    assert H(t) == 6


@pytest.mark.parametrize("d", range(1, 6))
def test_alpha_is_already_reduced(d):
    a = gen_alpha(d)
    assert is_reduced(a, MEDIAL)
    assert X(a) == 0
    assert H(a) == 0


def test_circle_zero(circle):
    assert X(circle) == 0


def test_cap():
    with pytest.raises(TooLarge):
        oracle(gen_flat_torus(2, 11), MEDIAL)


@pytest.mark.parametrize("system", [MEDIAL, HOMOTOPY])
@pytest.mark.parametrize("seed", range(6))
def test_validator_finds_nothing_shorter(system, seed):
    c = gen_random_curve(4, seed=seed)
    value = oracle(c, system).value
    assert validate_minimal(c, system, value) is None


def test_validator_finds_shortcut_when_value_is_too_big(trefoil):
    t = validate_minimal(trefoil, MEDIAL, 4)
    assert t is not None and t.charged() == 3


@pytest.mark.parametrize("system", [MEDIAL, HOMOTOPY])
def test_witness_replays(system):
    c = gen_flat_torus(3, 4)
    res = oracle(c, system)
    w = res.witness
    assert w.charged() == res.value
    assert w.replay().key() == w.final.key()
    assert is_reduced(w.final, system)
    again = Trace.from_text(c, w.to_text())
    assert again.final.key() == w.final.key()


def test_flip_witness_replays(trefoil):
    res = oracle(trefoil, HOMOTOPY, flips=True)
    assert res.witness.charged() == res.value
    assert Trace.from_text(trefoil, res.witness.to_text()).final.key() == res.witness.final.key()


def test_trace_text_errors(trefoil):
    with pytest.raises(ParseError) as e:
        Trace.from_text(trefoil, "M21 0\nM21 x\n")
    assert e.value.line == 2
    ev = MoveEvent.parse("flip 1 0 2")
    assert ev.is_flip and ev.site == (1, 0, 2)
    assert str(ev) == "flip 1 0 2"


def test_comments_ignored_in_trace(trefoil):
    w = oracle_X(trefoil).witness
    text = "# header\n" + w.to_text()
    assert Trace.from_text(trefoil, text).final.key() == w.final.key()


@pytest.mark.parametrize("seed", range(8))
def test_greedy_is_an_upper_bound(seed):
    c = gen_random_curve(5, seed=seed)
    t = reduce_greedy(c)
    assert t.replay().key() == t.final.key()
    if is_reduced(t.final, MEDIAL):
        assert len(t) >= X(c)


def test_greedy_on_torus():
    t = reduce_greedy(gen_flat_torus(3, 4))
    assert t.final.num_vertices == 0
    assert len(t) == 10


def test_connected_smoothings_of_trefoil(trefoil):
    out = connected_smoothings(trefoil)
    assert out
    for choices, s in out:
        assert s.connected
        assert s.num_vertices == 3 - len(choices)


def test_unicursal_smoothing():
    assert unicursal_smoothing(gen_flat_torus(2, 3))[0] == {}
    choices, s = unicursal_smoothing(medial(gen_bullseye(3)))
    assert components(s)[0] == 1
    with pytest.raises(NoUnicursalSmoothing):
        unicursal_smoothing(Multicurve([], circles=2))


def test_certificates_on_trefoil(trefoil):
    certs = certify_lower_bounds(trefoil)
    assert len(certs) == 4
    assert all(c.verdict for c in certs)
    assert str(certs[0]).startswith("PASS X >= H")


def test_certificates_on_alpha():
    certs = certify_lower_bounds(gen_alpha(3))
    assert all(c.verdict for c in certs)


def test_certificates_on_bullseye():
    certs = certify_lower_bounds(gen_bullseye(2))
    assert len(certs) == 2
    assert all(c.verdict for c in certs)


def test_defect_bound_on_small_tori():
    for p, q in [(2, 3), (2, 5), (3, 4)]:
        c = gen_flat_torus(p, q)
        assert H(c) >= abs(defect(c)) / 2
