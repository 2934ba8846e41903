import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from jetmodules import AlgebraPresentation, Poly  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []

VARS3 = ("x", "y", "z")


@st.composite
def polys(draw, vars=("x", "y"), max_deg=3, max_terms=4):
    n = len(vars)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(e) > max_deg:
            continue
        terms[e] = draw(st.integers(-4, 4))
    return Poly(terms, vars)


@st.composite
def zero_dim_rings(draw, vars=("x", "y"), max_deg=3):
    """Leading terms v^d under degrevlex, so the quotient is finite."""
    rels = []
    for v in vars:
        d = draw(st.integers(1, max_deg))
        tail = draw(polys(vars, d - 1, 2)) if d > 1 else Poly.const(draw(st.integers(-2, 2)), vars)
        rels.append(Poly.monomial({v: d}, vars) + tail)
    return AlgebraPresentation(vars, rels)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
