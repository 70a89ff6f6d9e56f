import pytest

from preorder_polytopes.preorder import build_preorder, enumerate_preorders


@pytest.fixture(scope="session")
def sample5():
    """Five-element preorder: one doubleton vertex {1,3} and three singletons,
    with {1,3} < {5}, {2} < {5}, {2} < {4}."""
    return build_preorder([(1, 3), (2,), (4,), (5,)], [(0, 3), (1, 3), (1, 2)])


@pytest.fixture(scope="session")
def classes_by_size():
    return {n: enumerate_preorders(n) for n in range(1, 5)}
