import os

# validate every constructed map; must be set before elecred is imported
os.environ.setdefault("ELECRED_CHECK", "1")

import pytest  # noqa: E402

from elecred.curve import Multicurve, simple_circle  # noqa: E402
from elecred.generators import gen_flat_torus  # noqa: E402


@pytest.fixture
def figure_eight():
    return Multicurve([1, 0, 3, 2])


@pytest.fixture
def trefoil():
    return gen_flat_torus(2, 3)


@pytest.fixture
def circle():
    return simple_circle()
