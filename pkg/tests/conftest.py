from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sdlab.complex import SimplicialComplex

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def complexes(draw, max_vertices: int = 6, max_dim: int = 2, min_facets: int = 1, max_facets: int = 5):
    """Random facet lists on a small vertex set."""
    nv = draw(st.integers(min_value=1, max_value=max_vertices))
    facet = st.lists(st.integers(0, nv - 1), min_size=1, max_size=max_dim + 1, unique=True).map(lambda s: tuple(sorted(s)))
    facets = draw(st.lists(facet, min_size=min_facets, max_size=max_facets))
    return SimplicialComplex(facets)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=30)


# one line per acceptance criterion in the terminal summary ------------------

_criteria: dict[str, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    key = name.split("_")[2]
    _criteria.setdefault(key, []).append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=int):
        results = _criteria[key]
        failed = [n for n, o in results if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {key:>2}: {status} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
