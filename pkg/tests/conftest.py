import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from apolyknot.laurent import GZFactor, LPoly2

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def lpolys(draw, max_terms=5, lo=-4, hi=4, coeff=6, nonzero=True):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(lo, hi)), draw(st.integers(lo, hi)))
        c = draw(st.integers(-coeff, coeff).filter(bool))
        terms[e] = c
    f = LPoly2(terms)
    if nonzero and f.is_zero():
        f = LPoly2({(0, 0): 1})
    return f


gz_factors = st.builds(GZFactor, st.integers(-20, 20), st.sampled_from([1, -1]))


@pytest.fixture
def rng():
    return random.Random(20240611)


_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture
def verdict(request):
    """Record one acceptance verdict, then fail the test if it did not hold."""
    store = request.config.stash.setdefault(_VERDICTS, {})

    def record(number: int, ok: bool, detail: str = ""):
        store[number] = (ok, detail)
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_VERDICTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        ok, detail = store[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
