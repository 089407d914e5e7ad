import pytest

from tomostar.config import make_spec


@pytest.fixture
def spec():
    return make_spec(node_count=256, damping=0.0, upper_cutoff=40.0, seed=7, sample_count=200_000)


@pytest.fixture
def oracle_spec():
    return make_spec(node_count=512, damping=0.0, seed=7)
