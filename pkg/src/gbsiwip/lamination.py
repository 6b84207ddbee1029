# -*- coding: utf-8 -*-

"""
"""

import logging
from collections import OrderedDict, namedtuple

import networkx as nx

from .const import EXTRA_ROUNDS
from .traintrack import TrainTrackMap, primitivity_exponent, transition_matrix

default_extra_rounds = 0

TurnSet = namedtuple("TurnSet", ["turns", "rounds", "exponent", "cap"])
TurnSet.__doc__ = """The turn classes crossed by the leaves of the stable lamination"""
TurnSet.turns.__doc__ = "The set of turn classes"
TurnSet.rounds.__doc__ = "The rounds of the map used until the set was stable"
TurnSet.exponent.__doc__ = "The primitivity exponent n of the transition matrix"
TurnSet.cap.__doc__ = "The bound K on the number of rounds"

WhiteheadGraph = namedtuple("WhiteheadGraph", ["vertex", "point", "graph"])
WhiteheadGraph.__doc__ = """The Whitehead graph of the lamination at a vertex"""
WhiteheadGraph.vertex.__doc__ = "The quotient vertex"
WhiteheadGraph.point.__doc__ = "The CoverPoint representing the vertex"
WhiteheadGraph.graph.__doc__ = "networkx Graph on the frame germs at the point"

ComponentWitness = namedtuple(
    "ComponentWitness", ["component", "index", "in_family_A", "divisor"]
)
ComponentWitness.__doc__ = """A connected component of a Whitehead graph"""
ComponentWitness.component.__doc__ = "Sorted list of the germs of the component"
ComponentWitness.index.__doc__ = "The index of the stabilizer of the component"
ComponentWitness.in_family_A.__doc__ = "True if the stabilizer belongs to the family"
ComponentWitness.divisor.__doc__ = "The element of I_v dividing the index, if any"

IrreducibilityVerdict = namedtuple(
    "IrreducibilityVerdict", ["fully_irreducible", "graphs", "components", "certificate"]
)
IrreducibilityVerdict.__doc__ = """The full irreducibility decision"""
IrreducibilityVerdict.fully_irreducible.__doc__ = "True if the automorphism is fully irreducible"
IrreducibilityVerdict.graphs.__doc__ = "Dict of vertex to WhiteheadGraph"
IrreducibilityVerdict.components.__doc__ = "Dict of vertex to list of ComponentWitness"
IrreducibilityVerdict.certificate.__doc__ = (
    "For reducible automorphisms a dict with the vertex and its components"
)


def turn_set(f: TrainTrackMap = None, seed: str = None, params: dict = {}):
    """
    Returns the TurnSet of the stable lamination of a primitive map

    The turns crossed by f^(n+1)(e) are closed under the induced map on turns,
    n being the primitivity exponent.

    :param seed: optional chosen edge to start from, all edges if None

    """
    A = transition_matrix(f)
    n = primitivity_exponent(A)
    if n is None:
        raise ValueError("the transition matrix is not primitive")
    table = f.turn_table
    tree = f.tree
    cap = len([c for c in table.classes if not tree.is_degenerate_class(c)])
    extra = params.get(EXTRA_ROUNDS, default_extra_rounds)
    fn = f.power(n + 1)
    edges = [seed] if seed is not None else f.graph.chosen_edges
    turns = set()
    for e in edges:
        path = fn.edge_image(e)
        for k in range(1, len(path) - 1):
            d1 = tree.direction(path[k], path[k - 1])
            d2 = tree.direction(path[k], path[k + 1])
            turns.add(tree.turn_class(path[k], d1, d2))
    logging.debug(".... found turns of first type: " + str(len(turns)))
    rounds = 0
    while rounds < cap:
        new = {table.image[c] for c in turns} - turns
        if not new:
            break
        turns |= new
        rounds += 1
    for _ in range(extra):
        turns |= {table.image[c] for c in turns}
    return TurnSet(turns, rounds, n, cap)


def whitehead_graphs(f: TrainTrackMap = None, seed: str = None, params: dict = {}):
    """
    Returns the dict vertex -> WhiteheadGraph of the stable lamination

    """
    logging.debug(".. computing Whitehead graphs")
    turns = turn_set(f, seed, params).turns
    tree = f.tree
    graphs = OrderedDict()
    for v in f.graph.vertices:
        x = tree.vertex_representative(v)
        germs = tree.directions(x)
        graph = nx.Graph()
        graph.add_nodes_from(germs)
        for i, d1 in enumerate(germs):
            for d2 in germs[i + 1:]:
                if tree.turn_class(x, d1, d2) in turns:
                    graph.add_edge(d1, d2)
        graphs[v] = WhiteheadGraph(v, x, graph)
    return graphs


def component_index(f: TrainTrackMap = None, component: frozenset = None):
    """Returns the size of the orbit of a set of germs under the vertex generator"""
    tree = f.tree
    current = frozenset(tree.shift_germ(d) for d in component)
    n = 1
    while current != component:
        current = frozenset(tree.shift_germ(d) for d in current)
        n += 1
    return n


def component_analysis(f: TrainTrackMap = None, w: WhiteheadGraph = None, divisors: list = None):
    """
    Returns the ComponentWitness list of a Whitehead graph

    :param divisors: the set I_v, None for the unrestricted family

    """
    components = sorted(sorted(c) for c in nx.connected_components(w.graph))
    result = []
    for c in components:
        index = component_index(f, frozenset(c))
        if divisors is None:
            result.append(ComponentWitness(c, index, True, None))
            continue
        divisor = None
        for i in sorted(divisors):
            if index % i == 0:
                divisor = i
                break
        result.append(ComponentWitness(c, index, divisor is not None, divisor))
    return result


def decide_fully_irreducible(
    f: TrainTrackMap = None,
    family: dict = None,
    atoroidal=None,
    override: bool = False,
    params: dict = {},
):
    """
    Decides whether a primitive pseudo-atoroidal train track map represents a fully
    irreducible automorphism

    :param family: dict of vertex to the list I_v, None for the unrestricted family

    :param atoroidal: the AtoroidalVerdict of the map

    :param override: skip the pseudo-atoroidal requirement

    """
    if not override and (atoroidal is None or not atoroidal.atoroidal):
        raise ValueError(
            "full irreducibility is only decided for pseudo-atoroidal automorphisms"
        )
    logging.info("deciding full irreducibility")
    graphs = whitehead_graphs(f, params=params)
    components = OrderedDict()
    certificate = None
    for v, w in graphs.items():
        divisors = None if family is None else family.get(v, [])
        components[v] = component_analysis(f, w, divisors)
        if certificate is None and len(components[v]) > 1:
            if any(c.in_family_A for c in components[v]):
                certificate = OrderedDict(
                    [
                        ("vertex", v),
                        ("components", [c.component for c in components[v]]),
                        ("indices", [c.index for c in components[v]]),
                        ("divisors", [c.divisor for c in components[v]]),
                    ]
                )
    logging.info("fully irreducible: " + str(certificate is None))
    return IrreducibilityVerdict(certificate is None, graphs, components, certificate)
