from types import SimpleNamespace

import networkx as nx
import pytest

import gbsiwip
from gbsiwip import BassSerreTree, WhiteheadGraph

TORUS_TURNS = {("v", "X", "y", 0), ("v", "Y", "y", 0), ("v", "Y", "x", 0)}


def test_turn_set(torus):
    result = gbsiwip.turn_set(torus)
    assert result.turns == TORUS_TURNS
    assert result.exponent == 1
    assert result.rounds == 0
    assert result.cap == 6
    assert gbsiwip.turn_set(torus, seed="x").turns == TORUS_TURNS
    assert gbsiwip.turn_set(torus, params={gbsiwip.EXTRA_ROUNDS: 2}).turns == TORUS_TURNS


def test_turn_set_needs_primitive_matrix(permutation):
    with pytest.raises(ValueError):
        gbsiwip.turn_set(permutation)


def test_whitehead_graphs(torus):
    graphs = gbsiwip.whitehead_graphs(torus)
    assert list(graphs.keys()) == ["v"]
    w = graphs["v"]
    assert w.point == torus.tree.root()
    assert w.graph.number_of_nodes() == 4
    assert w.graph.number_of_edges() == 3
    assert nx.is_connected(w.graph)
    assert not w.graph.has_edge((0, "X"), (0, "Y"))


def test_component_index(bs23):
    f = SimpleNamespace(tree=BassSerreTree(bs23))
    assert gbsiwip.component_index(f, frozenset({(0, "t")})) == 2
    assert gbsiwip.component_index(f, frozenset({(0, "t"), (1, "t")})) == 1
    assert gbsiwip.component_index(f, frozenset({(1, "T")})) == 3


def test_component_analysis(bs23):
    tree = BassSerreTree(bs23)
    f = SimpleNamespace(tree=tree)
    graph = nx.Graph()
    graph.add_nodes_from(tree.directions(tree.root()))
    graph.add_edge((0, "t"), (1, "t"))
    w = WhiteheadGraph("v", tree.root(), graph)
    components = gbsiwip.component_analysis(f, w, None)
    assert [c.index for c in components] == [3, 1, 3, 3]
    assert all(c.in_family_A for c in components)
    components = gbsiwip.component_analysis(f, w, [2, 3])
    assert components[0].component == [(0, "T")]
    assert components[0].divisor == 3
    assert components[1].component == [(0, "t"), (1, "t")]
    assert not components[1].in_family_A
    assert components[1].divisor is None


def test_decide_fully_irreducible(torus):
    verdict = gbsiwip.decide_fully_irreducible(torus, override=True)
    assert verdict.fully_irreducible
    assert verdict.certificate is None
    assert [c.index for c in verdict.components["v"]] == [1]
    verdict = gbsiwip.decide_fully_irreducible(torus, family={"v": [2]}, override=True)
    assert verdict.fully_irreducible
    assert not verdict.components["v"][0].in_family_A


def test_decide_fully_irreducible_needs_atoroidal_verdict(torus):
    with pytest.raises(ValueError):
        gbsiwip.decide_fully_irreducible(torus)
    verdict = gbsiwip.decide_pseudo_atoroidal(torus)
    with pytest.raises(ValueError):
        gbsiwip.decide_fully_irreducible(torus, atoroidal=verdict)
