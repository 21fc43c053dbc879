import pytest

from wittlab.rings import Context


@pytest.fixture(scope="session")
def zctx():
    """Rank-1 session with the lattice identified with Z."""
    return Context(rank=1, embedding="integer")


@pytest.fixture(scope="session")
def sctx():
    """Rank-1 session with a symbolic lattice generator g1."""
    return Context(rank=1, embedding="symbolic")


@pytest.fixture(scope="session")
def sctx2():
    """Rank-2 session with symbolic lattice generators g1, g2."""
    return Context(rank=2, embedding="symbolic")
