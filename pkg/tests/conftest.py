import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lineinv.straightening import ColumnProduct
from lineinv.tableau_core import Tableau, empty_tableau, star_all

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def columns(draw, n, max_k=6, ordered=True):
    k = draw(st.integers(0, max_k))
    cols = []
    for _ in range(k):
        i = draw(st.integers(1, n))
        j = draw(st.integers(1, n).filter(lambda x: x != i))
        cols.append((min(i, j), max(i, j)) if ordered else (i, j))
    return cols


@st.composite
def tableaux(draw, n=None, max_k=6):
    n = n or draw(st.integers(2, 8))
    cols = draw(columns(n, max_k))
    # the *-product of single columns is always semistandard
    return star_all([Tableau(n, (i,), (j,)) for i, j in cols], n) if cols else empty_tableau(n)


@st.composite
def column_products(draw, max_n=8, max_k=6):
    n = draw(st.integers(2, max_n))
    cols = draw(columns(n, max_k, ordered=False))
    return ColumnProduct(n, tuple(cols))


@pytest.fixture
def octagon():
    return (1,) * 8


@pytest.fixture
def pentagon():
    return (2, 2, 2, 2, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
