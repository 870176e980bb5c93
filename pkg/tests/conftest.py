import pytest

from artifact.golden import golden_matrix


@pytest.fixture
def golden():
    return golden_matrix
