"""One test per acceptance criterion, run at full size.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the pytest terminal summary.
"""

import pytest

from elecred import suite

RESULTS = []

# pinned tolerances
TREFOIL_ABS_DEFECT = 6
MAX_DEFECT_STEP = 2
GROWTH_SLOPE = 1.45
BULLSEYE_KMAX = 8


def record(res, min_instances=1):
    line = res.line()
    print(line)
    RESULTS.append(line)
    assert res.instances >= min_instances, f"vacuous check: {line}"
    assert res.passed, line
    return res


def test_defect_sanity():
    from elecred.curve import Multicurve, simple_circle
    from elecred.generators import gen_flat_torus
    from elecred.invariants import defect

    res = suite.check_defect_sanity()
    line = res.line()
    print(line)
    RESULTS.append(line)
    assert defect(simple_circle()) == 0
    assert defect(Multicurve([1, 0, 3, 2])) == 0
    assert abs(defect(gen_flat_torus(2, 3))) == TREFOIL_ABS_DEFECT, line


def test_homotopy_moves_change_defect_by_at_most_two():
    assert MAX_DEFECT_STEP == 2
    record(suite.check_move_defect(), min_instances=1000)


def test_tangle_flips_preserve_defect():
    record(suite.check_flip_defect(), min_instances=100)


def test_medial_moves_preserve_depth():
    record(suite.check_depth_invariance(), min_instances=1000)


def test_medial_defect_is_embedding_independent():
    record(suite.check_embedding_defect(count=50), min_instances=50)


def test_reduced_annulus_curves_are_alpha_depth():
    record(suite.check_reduced_unique(), min_instances=30)


def test_oracle_inequalities():
    record(suite.check_inequalities(), min_instances=50)


def test_smoothing_inequalities():
    record(suite.check_smoothing(), min_instances=1000)


def test_defect_growth_of_torus_curves():
    res = record(suite.check_defect_growth(threshold=GROWTH_SLOPE), min_instances=10)
    assert "threshold 1.45" in res.detail


def test_bullseye_identities():
    record(suite.check_bullseyes(kmax=BULLSEYE_KMAX), min_instances=BULLSEYE_KMAX + 1)


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and RESULTS:
        reporter.write_sep("-", "acceptance criteria")
        for line in RESULTS:
            reporter.write_line(line)
