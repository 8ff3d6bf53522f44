import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsplines import EdgeLabeledGraph, parse_graph, reduce_labels, validate_graph, zero_components
from zsplines.errors import (
    Disconnected,
    InvalidModulus,
    LabelOutOfRange,
    MalformedDocument,
    NegativeLabel,
    NonDivisorReduction,
    SelfLoop,
    UnknownVertex,
)
from zsplines.arith import factorize
from zsplines.graph import Edge

from corpus import G, triangle_mod6, square_mod8, five_vertex_mod10, random_connected


def doc(**kw):
    base = {"mode": "mod-m", "modulus": 4, "vertices": ["v1", "v2"], "edges": [{"u": "v1", "v": "v2", "label": 2}]}
    base.update(kw)
    return json.dumps(base)


def test_parse_p2():
    g = parse_graph(doc())
    assert g.vertices == ("v1", "v2")
    assert g.edges == (Edge(0, 1, 2),)
    assert g.modulus == 4


def test_parse_five_vertex_mod10():
    g = five_vertex_mod10()
    back = parse_graph(json.dumps(g.to_dict()))
    assert back == g
    assert back.n == 5 and len(back.edges) == 7


def test_parse_integers_mode():
    text = json.dumps({"mode": "integers", "vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "label": 6}]})
    g = parse_graph(text)
    assert g.modulus is None and g.labels == (6,)


def test_parse_canonicalizes_multiples_of_m():
    g = parse_graph(doc(edges=[{"u": "v1", "v": "v2", "label": 8}]))
    assert g.labels == (0,)


@pytest.mark.parametrize(
    "text, err",
    [
        (doc(edges=[{"u": "v1", "v": "v9", "label": 1}]), UnknownVertex),
        (doc(edges=[{"u": "v1", "v": "v2", "label": -1}]), NegativeLabel),
        (doc(modulus=1), InvalidModulus),
        (doc(modulus=None), MalformedDocument),
        ("{not json", MalformedDocument),
        ("[]", MalformedDocument),
        (doc(mode="reals"), MalformedDocument),
        (doc(vertices=["v1", "v1"]), MalformedDocument),
        (doc(edges=[{"u": "v1", "v": "v2", "label": 1.5}]), MalformedDocument),
        (doc(edges=[{"u": "v1", "v": "v1", "label": 1}]), SelfLoop),
        (doc(vertices=["v1", "v2", "v3"]), Disconnected),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_graph(text)


def test_validate_examples():
    validate_graph(G(2, [(0, 1, 2)], 4))
    with pytest.raises(Disconnected) as info:
        G(2, [], None)
    assert "v1" in str(info.value) and "v2" in str(info.value)
    with pytest.raises(SelfLoop):
        G(2, [(0, 0, 3), (0, 1, 1)])
    with pytest.raises(LabelOutOfRange):
        validate_graph(EdgeLabeledGraph(("v1", "v2"), (Edge(0, 1, 5),), 4))


def test_single_vertex_is_connected():
    validate_graph(G(1, [], 5))


def test_reduce_triangle_mod6_to_3():
    g3 = reduce_labels(triangle_mod6(), 3)
    assert g3.modulus == 3
    # edges in declaration order: v2v1:2, v1v3:2, v3v2:3
    assert g3.labels == (2, 2, 0)
    # as ideals of Z/3, <2> = <1>
    assert g3.ideal_generators() == (1, 1, 0)


def test_reduce_square_mod8_to_4():
    assert reduce_labels(square_mod8(), 4).labels == (2, 2, 2, 0, 0)


def test_reduce_identity_and_errors():
    g = square_mod8()
    assert reduce_labels(g, 8) == g
    with pytest.raises(NonDivisorReduction):
        reduce_labels(g, 3)
    gi = G(2, [(0, 1, 7)])
    assert reduce_labels(gi, 5).labels == (2,)


def names(g, part):
    return [{g.name(v) for v in c} for c in part]


def test_zero_components_five_vertex_mod5():
    g = reduce_labels(five_vertex_mod10(), 5)
    part = zero_components(g)
    assert len(part) == 4
    assert names(g, part) == [{"v1"}, {"v2"}, {"v3"}, {"v4", "v5"}]
    assert part.indices == (0, 1, 2, 3)


def test_zero_components_five_vertex_mod2():
    g = reduce_labels(five_vertex_mod10(), 2)
    part = zero_components(g)
    assert names(g, part) == [{"v1", "v2", "v5"}, {"v3", "v4"}]


def test_zero_components_all_units():
    g = G(4, [(0, 1, 1), (1, 2, 3), (2, 3, 5)], 7)
    assert len(zero_components(g)) == 4


def test_zero_components_needs_modulus():
    with pytest.raises(InvalidModulus):
        zero_components(G(2, [(0, 1, 3)]))


def _brute_components(g):
    # BFS over zero edges, no union-find
    adj = {v: set() for v in range(g.n)}
    for e in g.edges:
        if e.label % g.modulus == 0:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
    seen, comps = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


graphs = st.builds(
    lambda seed, n, m: (random_connected(random.Random(seed), n, 9, range(0, 3 * m), m), m),
    st.integers(0, 10**9), st.integers(1, 6), st.sampled_from([4, 8, 9, 12, 16, 27, 36]),
)


@settings(max_examples=150)
@given(graphs)
def test_components_match_bfs(gm):
    g, _ = gm
    part = zero_components(g)
    assert list(part) == _brute_components(g)
    assert sorted(v for c in part for v in c) == list(range(g.n))
    assert list(part.indices) == sorted(part.indices)


@settings(max_examples=150)
@given(graphs)
def test_components_idempotent(gm):
    g, m = gm
    assert zero_components(reduce_labels(g, m)) == zero_components(g)
    assert reduce_labels(reduce_labels(g, m), m) == reduce_labels(g, m)


@settings(max_examples=150)
@given(graphs)
def test_refinement_chain(gm):
    g, m = gm
    for p, e in factorize(m):
        for hi in range(2, e + 1):
            fine = zero_components(reduce_labels(g, p**hi))
            coarse = zero_components(reduce_labels(g, p ** (hi - 1)))
            for comp in fine:
                owners = {coarse.component_of(v) for v in comp}
                assert len(owners) == 1


@settings(max_examples=150)
@given(graphs, st.randoms(use_true_random=False))
def test_edge_order_independence(gm, rnd):
    g, _ = gm
    edges = list(g.edges)
    rnd.shuffle(edges)
    flipped = tuple(Edge(e.v, e.u, e.label) if rnd.random() < 0.5 else e for e in edges)
    h = EdgeLabeledGraph(g.vertices, flipped, g.modulus)
    assert zero_components(h) == zero_components(g)
