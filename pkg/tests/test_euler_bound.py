import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nashgate.catalog import ADE_NAMES, catalog_lookup
from nashgate.errors import NashgateError
from nashgate.euler_bound import (
    IMPOSSIBLE_WEDGE,
    INCONCLUSIVE,
    bound_report,
    certificate,
    final_bound,
    final_bound_terms,
    nc_global_bound,
    refined_bound,
    returns_bound,
    returns_term_from_b,
    support_topology,
    theta_term,
    verdict_for,
)
from nashgate.graph_core import Component, DualGraph, is_negative_definite, minimality_audit

from conftest import graphs, random_graph

A1 = catalog_lookup("A1")
A2 = catalog_lookup("A2")


def test_support_topology_examples():
    t = support_topology(A2, 0, (1, 1))
    assert (t.nu, t.chi_dot, t.delta) == ((2, 1), (0, 1), (1, 1))
    t = support_topology(A1, 0, (1,))
    assert (t.nu, t.chi_dot) == ((1,), (1,))
    t = support_topology(A2, 0, (1, 0))
    assert (t.nu, t.chi_dot, t.delta) == ((1, 0), (1, 2), (1, 0))


def test_support_topology_rejects_unsupported_target():
    with pytest.raises(NashgateError):
        support_topology(A2, 0, (0, 1))
    with pytest.raises(NashgateError):
        support_topology(A2, 0, (1,))


def test_theta_examples():
    assert theta_term(A2, 0, (1, 1), 0) == 0
    assert theta_term(A2, 0, (1, 1), 1) == 0
    g = DualGraph.build("g", [Component("a", -2), Component("b", -2), Component("c", -2)], [("a", "b"), ("b", "c")])
    # c has a_c = 0 and its only neighbour b is outside the support
    assert theta_term(g, 0, (1, 0, 0), 2) == 0


def test_returns_bound_examples():
    assert returns_bound(A2, 0, (1, 1)) == -1
    assert returns_bound(A1, 0, (1,)) == -1
    iso = DualGraph.build("iso", [Component("t", -2)])
    assert returns_bound(iso, 0, (1,)) == -1
    assert returns_bound(iso, 0, (3,)) == 3 * -2 + 1


def test_refined_bound_examples():
    assert refined_bound(A2, 0, (1, 1), returns_bound(A2, 0, (1, 1))) == 0
    assert refined_bound(A2, 0, (1, 1)) == 0
    assert refined_bound(A2, 0, (1, 1), returns_term_from_b((1, 1), (0, 1))) == 2
    # 0 + 1*(chi_dot 1 + theta 0) - 1
    assert refined_bound(A1, 0, (1,), -1) == 0


def test_final_bound_examples():
    e8 = catalog_lookup("E8")
    assert final_bound_terms(e8) == (0,) * 8
    rng = random.Random(1)
    for _ in range(20):
        assert final_bound(e8, [rng.randint(0, 9) for _ in range(8)]) == 0
    assert final_bound_terms(DualGraph.build("g", [Component("a", -1, 1)])) == (-1,)
    assert final_bound_terms(DualGraph.build("g", [Component("a", -1, 0)])) == (1,)
    assert final_bound_terms(DualGraph.build("g", [Component("a", -3, 2, mu=1, eta=2)])) == (2 - 4 - 1 - 2 - 3,)


def test_verdict_threshold():
    assert verdict_for(0) == IMPOSSIBLE_WEDGE
    assert verdict_for(-5) == IMPOSSIBLE_WEDGE
    assert verdict_for(1) == INCONCLUSIVE


def test_certificate_examples():
    cert = certificate(catalog_lookup("E8"))
    assert cert.issued and cert.reasons == () and cert.terms == (0,) * 8
    cert = certificate(catalog_lookup("nonminimal-demo"))
    assert not cert.issued
    assert "NON_MINIMAL" in cert.reasons and cert.terms[0] == 1
    cert = certificate(catalog_lookup("indefinite-demo"))
    assert not cert.issued and "NOT_NEGATIVE_DEFINITE" in cert.reasons
    assert certificate(catalog_lookup("elliptic-minus-one")).issued


@pytest.mark.parametrize("name", ADE_NAMES)
def test_ade_certificates(name):
    cert = certificate(catalog_lookup(name))
    assert cert.issued and set(cert.terms) == {0}


def test_nc_global_bound_examples():
    assert nc_global_bound((1,), (), (1,), (), 0) == 1
    assert nc_global_bound((), (2,), (), (-1,), 3) == 1
    assert nc_global_bound((0, 0), (0,), (0, 0), (0,), 0) == 0
    with pytest.raises(NashgateError):
        nc_global_bound((1,), (), (), (), 0)


def _random_support(rng, g):
    target = rng.randrange(g.size)
    a = [rng.choice((0, 0, 1, 2, 3, 7)) for _ in range(g.size)]
    a[target] = rng.randint(1, 6)
    return target, a


def test_refined_equals_final_identity():
    rng = random.Random(2024)
    for _ in range(600):
        g = random_graph(rng, max_size=7, self_range=(-6, 1), mults=(1, 2, 3), genus_max=2)
        g = DualGraph.build(
            g.name,
            [Component(c.id, c.self_int, c.genus, rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2)) for c in g.components],
            g.edges,
        )
        target, a = _random_support(rng, g)
        assert refined_bound(g, target, a, returns_bound(g, target, a)) == final_bound(g, a)


@given(graphs(max_size=6, self_min=-6, self_max=1, mults=(1, 2, 3), invariants=True), st.data())
@settings(max_examples=200)
def test_refined_equals_final_identity_hypothesis(g, data):
    target = data.draw(st.integers(0, g.size - 1))
    a = data.draw(st.lists(st.integers(0, 10), min_size=g.size, max_size=g.size))
    a[target] = max(a[target], 1)
    assert refined_bound(g, target, a) == final_bound(g, a)


@given(graphs(max_size=7, self_min=-6, self_max=-1, genus_max=2))
@settings(max_examples=200)
def test_minimal_negative_definite_graphs_have_nonpositive_terms(g):
    assume(is_negative_definite(g) and not minimality_audit(g))
    assert all(t <= 0 for t in final_bound_terms(g))
    assert certificate(g).issued


@given(graphs(max_size=6, mults=(1,), invariants=True), st.data())
def test_branch_degree_count(g, data):
    target = data.draw(st.integers(0, g.size - 1))
    a = data.draw(st.lists(st.integers(0, 3), min_size=g.size, max_size=g.size))
    a[target] = max(a[target], 1)
    topo = support_topology(g, target, a)
    supported = [i for i in range(g.size) if a[i]]
    points = sum(m for i, j, m in g.edges if a[i] and a[j])
    extra = sum(g.components[i].nu_extra for i in supported)
    assert sum(topo.nu) == 2 * points + 1 + extra


@given(graphs(max_size=6, invariants=True), st.data())
def test_removing_support_never_increases_branches(g, data):
    target = data.draw(st.integers(0, g.size - 1))
    a = data.draw(st.lists(st.integers(1, 3), min_size=g.size, max_size=g.size))
    before = support_topology(g, target, a).nu
    i = data.draw(st.integers(0, g.size - 1))
    assume(i != target)
    a[i] = 0
    after = support_topology(g, target, a).nu
    assert all(after[j] <= before[j] for j in range(g.size) if j != i)


def test_bound_report():
    rep = bound_report(A2, 0, (1, 1))
    assert rep.refined_bound == rep.final_bound == 0
    assert rep.verdict == IMPOSSIBLE_WEDGE
    rep = bound_report(catalog_lookup("nonminimal-demo"), 0, (1, 0))
    assert rep.final_bound == 1 and rep.verdict == INCONCLUSIVE
