import numpy as np
import pytest
from hypothesis import settings, strategies as st

from riplayer.metric import Inclusion, from_points

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def line(*coords):
    """Points on the real line, labelled by their coordinate."""
    return from_points([[c] for c in coords], labels=[f"{c:g}" for c in coords])


def line_pair(xs, ys):
    return Inclusion.from_points([[c] for c in xs], [[c] for c in ys],
                                 x_labels=[f"{c:g}" for c in xs], y_labels=[f"{c:g}" for c in ys])


def names(forest, sid):
    return frozenset(forest.space.labels[m] for m in forest[sid].members)


def described(forest, points):
    """{(birth, labels)} for layer points or node refs."""
    out = set()
    for p in points:
        s = p.birth if hasattr(p, "birth") else p.s
        sid = p.segment
        out.add((s, names(forest, sid)))
    return out


def labelset(*labels):
    return frozenset(f"{c:g}" for c in labels)


@pytest.fixture
def line4():
    return line(0, 1, 3, 7)


# small integer grids produce many tied distances, which is where sweeps go wrong
grid_points = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)),
                       min_size=1, max_size=9, unique=True)
float_points = st.lists(st.tuples(st.floats(0, 1, allow_nan=False), st.floats(0, 1, allow_nan=False)),
                        min_size=1, max_size=9, unique=True)
any_points = st.one_of(grid_points, float_points)


def space_of(points):
    return from_points(np.array(points, dtype=float), dedup=True)


@st.composite
def inclusions(draw, max_y=8, min_x=1):
    ys = draw(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)),
                       min_size=min_x, max_size=max_y, unique=True))
    mask = draw(st.lists(st.booleans(), min_size=len(ys), max_size=len(ys)))
    xs = [p for p, m in zip(ys, mask) if m]
    if len(xs) < min_x:
        xs = ys[:min_x]
    return Inclusion.from_points(np.array(xs, float), np.array(ys, float))


# -- acceptance summary -----------------------------------------------------

_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        if report.when == "call" or report.failed:
            _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
