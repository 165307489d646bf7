import pytest

from gpd import corpus
from gpd.endo import enumerate_monoid


@pytest.fixture(scope="session")
def c2():
    return corpus.cyclic(2)


@pytest.fixture(scope="session")
def c3():
    return corpus.cyclic(3)


@pytest.fixture(scope="session")
def pair2():
    return corpus.pair_groupoid(2)


@pytest.fixture(scope="session")
def pair3():
    return corpus.pair_groupoid(3)


@pytest.fixture(scope="session")
def sg_c2(c2):
    return enumerate_monoid(c2, "S")


@pytest.fixture(scope="session")
def spg_c2(c2):
    return enumerate_monoid(c2, "S'")


@pytest.fixture(scope="session")
def sg_pair2(pair2):
    return enumerate_monoid(pair2, "S")


@pytest.fixture(scope="session")
def spg_pair2(pair2):
    return enumerate_monoid(pair2, "S'")


@pytest.fixture(scope="session")
def named_corpus():
    return corpus.standard_corpus()


@pytest.fixture(scope="session")
def small_corpus(named_corpus):
    """Corpus members whose monoid tables are cheap enough for table-based checks."""
    return [(name, g) for name, g in named_corpus if name != "pair(3)"]
