import random

import pytest
from hypothesis import strategies as st

from nashgate.graph_core import Component, DualGraph, is_negative_definite


def random_graph(rng, max_size=8, self_range=(-5, -1), mults=(1, 2), genus_max=0, name="rand"):
    """Connected graph: random spanning tree plus a few extra edges."""
    n = rng.randint(1, max_size)
    comps = [
        Component(f"E{k}", rng.randint(*self_range), rng.randint(0, genus_max)) for k in range(n)
    ]
    edges = [(rng.randrange(k), k, rng.choice(mults)) for k in range(1, n)]
    for _ in range(rng.randint(0, n // 2)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            edges.append((i, j, rng.choice(mults)))
    return DualGraph.build(name, comps, edges)


def random_negative_definite_graphs(count, seed, max_size=8, **kw):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, max_size=max_size, **kw)
        if is_negative_definite(g):
            out.append(g)
    return out


@st.composite
def graphs(draw, max_size=6, self_min=-5, self_max=-1, mults=(1, 2), genus_max=2, invariants=False):
    n = draw(st.integers(1, max_size))
    comps = []
    for k in range(n):
        extra = {}
        if invariants:
            extra = dict(
                mu=draw(st.integers(0, 3)), eta=draw(st.integers(0, 3)), nu_extra=draw(st.integers(0, 2))
            )
        comps.append(
            Component(f"E{k}", draw(st.integers(self_min, self_max)), draw(st.integers(0, genus_max)), **extra)
        )
    edges = [(draw(st.integers(0, k - 1)), k, draw(st.sampled_from(mults))) for k in range(1, n)]
    if n > 1:
        for i, j in draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n)):
            if i != j:
                edges.append((i, j, draw(st.sampled_from(mults))))
    return DualGraph.build("hyp", comps, edges)


# -- acceptance summary: one PASS/FAIL line per criterion --------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    number, title = mark
    ok = report.passed
    prev = _criteria.get(number)
    _criteria[number] = (title, ok if prev is None else (prev[1] and ok))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
