import pytest

from hopfgalois import paperdata
from hopfgalois.gpstruct import find_structures
from hopfgalois.permcore import Perm, PermGroup


def P(text, n=8):
    return Perm.parse(text, n)


@pytest.fixture(scope="session")
def paper_ctx():
    return paperdata.paper_context()[1]


@pytest.fixture(scope="session")
def structures(paper_ctx):
    found = find_structures(paper_ctx, named=paperdata.named_structures())
    return {h.label: h for h in found}


@pytest.fixture(scope="session")
def tau():
    return P("(1,2,3,4)", 4)


@pytest.fixture(scope="session")
def sigma():
    return P("(1,2)", 4)


@pytest.fixture(scope="session")
def N(structures):
    """Named generators per structure, e.g. N["N_3"]["r3"]."""
    return {label: h.names for label, h in structures.items()}


def group(*cycles, n=8):
    return PermGroup([P(c, n) for c in cycles], n)
