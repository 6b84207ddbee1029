# -*- coding: utf-8 -*-

"""
"""

import logging
import random
from collections import OrderedDict, namedtuple
from functools import lru_cache
from math import gcd

import networkx as nx
import numpy as np
import pandas as pd

from .const import (
    EDGE_GENERATOR,
    GENERATOR_SEPARATOR,
    INVARIANT_SUBGRAPH,
    MAX_CACHE,
    ISOMETRY,
    PERIODIC_PARTITION,
    SAMPLE_SEED,
    SAMPLE_SIZE,
    SINGLE_EDGE,
    STAGE_INPUT,
    VERTEX_GENERATOR,
)
from .cover import BassSerreTree, default_max_cache
from .graphs import GraphOfGroups, GroupWord, RewriterChain, WordRewriter, collapse_edge
from .utils import InputError

default_sample_size = 20
default_sample_seed = 0

ReducibilityCertificate = namedtuple(
    "ReducibilityCertificate", ["kind", "edges", "detail", "map"]
)
ReducibilityCertificate.__doc__ = """Witness that the automorphism is reducible"""
ReducibilityCertificate.kind.__doc__ = (
    "One of invariant-subgraph, single-edge, isometry or periodic-partition"
)
ReducibilityCertificate.edges.__doc__ = "The chosen edges of the witnessing subgraph"
ReducibilityCertificate.detail.__doc__ = "Dictionary with kind specific data"
ReducibilityCertificate.map.__doc__ = "The TrainTrackMap the certificate refers to"

PrimitiveTT = namedtuple("PrimitiveTT", ["map", "marking"])
PrimitiveTT.__doc__ = """A primitive train track representative"""
PrimitiveTT.map.__doc__ = "The primitive TrainTrackMap"
PrimitiveTT.marking.__doc__ = (
    "The RewriterChain from loops of the input graph to loops of the new graph"
)


def vertex_generator(v: str = None):
    return VERTEX_GENERATOR + GENERATOR_SEPARATOR + v


def edge_generator(e: str = None):
    return EDGE_GENERATOR + GENERATOR_SEPARATOR + e


def marking_generators(tree: BassSerreTree = None):
    """
    Returns the generators of the fundamental group relative to the breadth first
    maximal tree, as an ordered dict of name to loop

    a:v = p_v a_v p_v^-1 for every vertex, t:e = p_o(e) t_e p_t(e)^-1 for every chosen
    edge not in the tree

    """
    g = tree.graph
    generators = OrderedDict()
    for v in g.vertices:
        p = tree.tree_paths[v]
        generators[vertex_generator(v)] = g.product(p, g.vertex_power(v, 1), g.inverse(p))
    for e in g.chosen_edges:
        if e not in tree.tree_edges:
            generators[edge_generator(e)] = edge_loop(tree, e)
    return generators


def edge_loop(tree: BassSerreTree = None, e: str = None):
    """Returns the loop p_o(e) t_e p_t(e)^-1"""
    g = tree.graph
    return g.product(
        tree.tree_paths[g.origin(e)], g.edge_word(e), g.inverse(tree.tree_paths[g.terminus(e)])
    )


class TurnTable:
    """
    Legality of the orbit classes of turns under a map

    :param f: the TrainTrackMap

    """

    def __init__(self, f=None) -> None:
        """ """
        self.f = f
        self.set_image()
        self.set_legal()

    def set_image(self) -> None:
        tree = self.f.tree
        self.classes = []
        self.image = dict()
        for v in self.f.graph.vertices:
            for c in tree.turn_classes(v):
                self.classes.append(c)
                if tree.is_degenerate_class(c):
                    continue
                x, d1, d2 = tree.class_representative(c)
                y, e1, e2 = self.f.turn_image(x, d1, d2)
                self.image[c] = tree.turn_class(y, e1, e2)

    def set_legal(self) -> None:
        """Follows every class until it degenerates or cycles"""
        tree = self.f.tree
        self.legal = dict()
        for c in self.classes:
            seen = []
            current = c
            while current not in self.legal:
                if tree.is_degenerate_class(current):
                    self.legal[current] = False
                    break
                if current in seen:
                    self.legal[current] = True
                    break
                seen.append(current)
                current = self.image[current]
            status = self.legal[current]
            for s in seen:
                self.legal[s] = status
        logging.debug(
            ".... found illegal turn classes: "
            + str(sum(1 for c in self.classes if not self.legal[c]))
        )

    def is_legal(self, turn: tuple = None):
        return self.legal[turn]

    def illegal_classes(self, v: str = None):
        """Returns the illegal nondegenerate turn classes at v"""
        tree = self.f.tree
        return [
            c
            for c in self.classes
            if c[0] == v and not self.legal[c] and not tree.is_degenerate_class(c)
        ]

    def to_frame(self):
        """ """
        rows = [
            {
                "vertex": c[0],
                "germ": c[1],
                "other germ": c[2],
                "offset": c[3],
                "legal": self.legal[c],
                "image": self.image.get(c, None),
            }
            for c in self.classes
        ]
        return pd.DataFrame(rows)


class TrainTrackMap:
    """
    An equivariant map of the Bass-Serre tree given by the automorphism on the
    marking generators and the images of the vertex representatives

    :param graph: the GraphOfGroups

    :param phi: dict of generator name to loop (GroupWord)

    :param vertex_images: dict of vertex to path from the basepoint whose point is the
        image of the vertex representative p_v

    :param phi_inverse: optional dict of generator name to loop for the inverse

    :param edge_images: optional dict of chosen edge to path from the basepoint whose
        point is the image of the end of the representative edge

    :param params: dictionary with parameters

    """

    def __init__(
        self,
        graph: GraphOfGroups = None,
        phi: dict = None,
        vertex_images: dict = None,
        phi_inverse: dict = None,
        edge_images: dict = None,
        params: dict = {},
    ) -> None:
        """ """
        self.graph = graph
        self.params = params
        self.tree = BassSerreTree(graph, params)
        self.generators = marking_generators(self.tree)
        self.set_phi(phi)
        self.set_phi_inverse(phi_inverse)
        self.set_vertex_images(vertex_images)
        self.edge_images_given = dict(edge_images or {})
        self._image_cache = lru_cache(maxsize=params.get(MAX_CACHE, default_max_cache))(
            self._image_point
        )
        self._powers = {1: self}
        self._turn_table = None

    def set_phi(self, phi: dict = None) -> None:
        missing = [name for name in self.generators if name not in (phi or {})]
        if missing:
            raise InputError(
                "automorphism misses generators", stage=STAGE_INPUT, diagnostics=missing
            )
        self.phi = {name: phi[name] for name in self.generators}

    def set_phi_inverse(self, phi_inverse: dict = None) -> None:
        if phi_inverse is None:
            self.phi_inverse = None
            return
        missing = [name for name in self.generators if name not in phi_inverse]
        if missing:
            raise InputError(
                "inverse automorphism misses generators",
                stage=STAGE_INPUT,
                diagnostics=missing,
            )
        self.phi_inverse = {name: phi_inverse[name] for name in self.generators}

    def set_vertex_images(self, vertex_images: dict = None) -> None:
        missing = [v for v in self.graph.vertices if v not in (vertex_images or {})]
        if missing:
            raise InputError(
                "vertex images missing", stage=STAGE_INPUT, diagnostics=missing
            )
        self.vertex_images = {
            v: self.tree.point(vertex_images[v]) for v in self.graph.vertices
        }

    # the automorphism

    def _edge_generator_image(self, e: str = None, images: dict = None):
        if e in self.tree.tree_edges:
            return self.graph.identity()
        if self.graph.is_chosen(e):
            return images[edge_generator(e)]
        return self.graph.inverse(images[edge_generator(self.graph.reverse(e))])

    def _apply(self, w: GroupWord = None, images: dict = None):
        g = self.graph
        if w.start != g.basepoint or not g.is_loop(w):
            raise ValueError("the automorphism acts on loops at the basepoint")
        result = g.identity()
        v = w.start
        for i, k in enumerate(w.exps):
            if k != 0:
                result = g.multiply(result, g.power(images[vertex_generator(v)], k))
            if i < len(w.edges):
                e = w.edges[i]
                result = g.multiply(result, self._edge_generator_image(e, images))
                v = g.terminus(e)
        return result

    def apply(self, w: GroupWord = None):
        """
        Returns the image of a loop under the automorphism

        :param w: a loop at the basepoint

        """
        return self._apply(w, self.phi)

    def apply_inverse(self, w: GroupWord = None):
        """ """
        if self.phi_inverse is None:
            raise ValueError("no inverse automorphism given")
        return self._apply(w, self.phi_inverse)

    # the map on the tree

    def image_point(self, y=None):
        """Returns f(y) = phi(g) f(p_v) where y = g p_v, memoized"""
        return self._image_cache(y)

    def _image_point(self, y=None):
        g = self.graph
        v = y.vertex
        h = g.multiply(self.tree.point_word(y), g.inverse(self.tree.tree_paths[v]))
        return self.tree.act(self.apply(h), self.vertex_images[v])

    def cache_info(self):
        """Returns the statistics of the bounded image memo"""
        return self._image_cache.cache_info()

    def representative_edge(self, e: str = None):
        """Returns the endpoints of the representative cover edge of e"""
        x = self.tree.vertex_representative(self.graph.origin(e))
        return x, self.tree.neighbour(x, (0, e))

    def edge_image(self, e: str = None):
        """Returns the tight path f(e) of the representative edge of e"""
        x, y = self.representative_edge(e)
        return self.tree.geodesic(self.image_point(x), self.image_point(y))

    def image_path(self, path: tuple = None):
        """Returns the tightened image [f(path)] of a path of adjacent points"""
        images = [self.image_point(p) for p in path]
        pieces = [
            self.tree.geodesic(images[k], images[k + 1]) for k in range(len(images) - 1)
        ]
        return self.tree.concatenate((images[0],), *pieces)

    def direction_image(self, x=None, d: tuple = None):
        """Returns Df(d), the first germ of the image of the edge at x in direction d"""
        y = self.tree.neighbour(x, d)
        fx, fy = self.image_point(x), self.image_point(y)
        if fx == fy:
            raise ValueError("edge is collapsed by the map")
        return self.tree.direction(fx, self.tree.point_along(fx, fy, 1))

    def turn_image(self, x=None, d1: tuple = None, d2: tuple = None):
        return self.image_point(x), self.direction_image(x, d1), self.direction_image(x, d2)

    @property
    def turn_table(self):
        if self._turn_table is None:
            logging.debug(".. computing turn table")
            self._turn_table = TurnTable(self)
        return self._turn_table

    def is_legal_turn(self, x=None, d1: tuple = None, d2: tuple = None):
        return self.turn_table.is_legal(self.tree.turn_class(x, d1, d2))

    def illegal_turns(self, path: tuple = None):
        """Returns the indices of the interior points of a path with an illegal turn"""
        result = []
        for k in range(1, len(path) - 1):
            d1 = self.tree.direction(path[k], path[k - 1])
            d2 = self.tree.direction(path[k], path[k + 1])
            if not self.is_legal_turn(path[k], d1, d2):
                result.append(k)
        return result

    def is_legal_path(self, path: tuple = None):
        return len(self.illegal_turns(path)) == 0

    # composition

    def compose(self, other=None):
        """
        Returns the map self o other

        """
        if other.graph is not self.graph:
            raise ValueError("maps live on different graphs")
        phi = {name: self.apply(other.phi[name]) for name in self.generators}
        phi_inverse = None
        if self.phi_inverse is not None and other.phi_inverse is not None:
            phi_inverse = {
                name: other.apply_inverse(self.phi_inverse[name]) for name in self.generators
            }
        vertex_images = {
            v: self.tree.point_word(self.image_point(other.vertex_images[v]))
            for v in self.graph.vertices
        }
        return TrainTrackMap(
            self.graph, phi, vertex_images, phi_inverse=phi_inverse, params=self.params
        )

    def power(self, k: int = 1):
        """Returns the map f^k (k >= 1), memoized"""
        if k < 1:
            raise ValueError("power expects a positive exponent")
        if k not in self._powers:
            self._powers[k] = self.compose(self.power(k - 1))
        return self._powers[k]

    def iterate_point(self, y=None, k: int = 1):
        """Returns f^k(y) by iterating the memoized point map"""
        for _ in range(k):
            y = self.image_point(y)
        return y

    # checks

    def verify(self):
        """
        Checks that the data defines an equivariant train track map

        Returns a tuple (ok, counterexample) where counterexample is None or a dict
        with the check that failed and the offending item

        """
        g = self.graph
        logging.debug(".. verifying train track map")
        # relations of the fundamental group
        for e in g.chosen_edges:
            o, t = g.origin(e), g.terminus(e)
            lhs = g.power(self.phi[vertex_generator(o)], g.label(e))
            te = self._edge_generator_image(e, self.phi)
            rhs = g.product(
                te, g.power(self.phi[vertex_generator(t)], g.label(g.reverse(e))), g.inverse(te)
            )
            if not g.is_trivial(g.multiply(lhs, g.inverse(rhs))):
                return False, {"check": "relation", "item": e}
        if self.phi_inverse is not None:
            for name, w in self.generators.items():
                if not g.is_trivial(g.multiply(self.apply_inverse(self.apply(w)), g.inverse(w))):
                    return False, {"check": "inverse", "item": name}
                if not g.is_trivial(g.multiply(self.apply(self.apply_inverse(w)), g.inverse(w))):
                    return False, {"check": "inverse", "item": name}
        for v in g.vertices:
            a = self.phi[vertex_generator(v)]
            if self.tree.act(a, self.vertex_images[v]) != self.vertex_images[v]:
                return False, {"check": "vertex stabilizer", "item": v}
        for e in g.chosen_edges:
            if e in self.edge_images_given:
                _, y = self.representative_edge(e)
                if self.tree.point(self.edge_images_given[e]) != self.image_point(y):
                    return False, {"check": "edge image", "item": e}
        for e in g.edges:
            path = self.edge_image(e)
            if len(path) < 2:
                return False, {"check": "collapsed edge", "item": e}
            if not self.tree.is_tight(path):
                return False, {"check": "tight", "item": e}
        for e in g.edges:
            path = self.edge_image(e)
            for k in self.illegal_turns(path):
                d1 = self.tree.direction(path[k], path[k - 1])
                d2 = self.tree.direction(path[k], path[k + 1])
                return False, {
                    "check": "legal",
                    "item": e,
                    "turn": self.tree.turn_class(path[k], d1, d2),
                }
        ok, item = self.check_equivariance()
        if not ok:
            return False, {"check": "equivariance", "item": item}
        return True, None

    def check_equivariance(self):
        """Checks f(g y) = phi(g) f(y) on sampled elements and points"""
        rng = random.Random(self.params.get(SAMPLE_SEED, default_sample_seed))
        names = list(self.generators.keys())
        g = self.graph
        for _ in range(self.params.get(SAMPLE_SIZE, default_sample_size)):
            h = g.identity()
            for _ in range(rng.randint(1, 4)):
                w = self.generators[rng.choice(names)]
                if rng.random() < 0.5:
                    w = g.inverse(w)
                h = g.multiply(h, w)
            y = self.tree.root()
            for _ in range(rng.randint(0, 3)):
                y = rng.choice(self.tree.neighbours(y))
            if self.image_point(self.tree.act(h, y)) != self.tree.act(
                self.apply(h), self.image_point(y)
            ):
                return False, g.to_text(h)
        return True, None

    # serialization

    def to_dict(self):
        """ """
        g = self.graph
        data = OrderedDict()
        data["phi"] = {name: g.to_text(w) for name, w in self.phi.items()}
        if self.phi_inverse is not None:
            data["phi_inverse"] = {name: g.to_text(w) for name, w in self.phi_inverse.items()}
        data["vertex_images"] = {
            v: g.to_text(self.tree.point_word(x)) for v, x in self.vertex_images.items()
        }
        return data

    @classmethod
    def from_dict(cls, graph: GraphOfGroups = None, data: dict = None, params: dict = {}):
        """
        Creates a map from a dictionary in the map schema

        """

        def parse(value):
            if isinstance(value, str):
                return graph.word(value, start=graph.basepoint)
            if isinstance(value, list):
                return graph.from_letters(value, start=graph.basepoint)
            raise TypeError("words are strings or letter arrays")

        def parse_all(words):
            if words is None:
                return None
            result = dict()
            for key, value in words.items():
                try:
                    result[key] = parse(value)
                except (ValueError, TypeError) as err:
                    raise InputError(
                        "malformed word for " + str(key),
                        stage=STAGE_INPUT,
                        diagnostics=[str(err)],
                    )
            return result

        if not isinstance(data, dict) or "phi" not in data or "vertex_images" not in data:
            raise InputError("map data should have 'phi' and 'vertex_images'", stage=STAGE_INPUT)
        return cls(
            graph,
            parse_all(data["phi"]),
            parse_all(data["vertex_images"]),
            phi_inverse=parse_all(data.get("phi_inverse", None)),
            edge_images=parse_all(data.get("edge_images", None)),
            params=params,
        )

    def __repr__(self) -> str:
        return "TrainTrackMap(" + repr(self.graph) + ")"


def transition_matrix(f: TrainTrackMap = None):
    """
    Returns the transition matrix of f as numpy array of python integers

    The entry (i, j) counts the edges of orbit i in f(e_j) ignoring orientation.

    """
    chosen = f.graph.chosen_edges
    m = len(chosen)
    A = np.zeros((m, m), dtype=object)
    for j, e in enumerate(chosen):
        path = f.edge_image(e)
        for k in range(len(path) - 1):
            i = f.graph.orbit_index(f.tree.edge_orbit(path[k], path[k + 1]))
            A[i, j] += 1
    return A


def transition_frame(f: TrainTrackMap = None):
    """Returns the transition matrix as pandas DataFrame indexed by the chosen edges"""
    chosen = f.graph.chosen_edges
    return pd.DataFrame(transition_matrix(f), index=chosen, columns=chosen)


def support_graph(A: np.ndarray = None):
    """Returns the digraph with an arc j -> i when A(i, j) > 0"""
    A = np.asarray(A)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(A.shape[0]))
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if A[i, j] > 0:
                graph.add_edge(j, i)
    return graph


def invariant_blocks(A: np.ndarray = None):
    """
    Returns the index sets J closed under A (A(i, j) = 0 for j in J and i not in J)
    that are sink components of the support graph, ordered by their least index

    """
    graph = support_graph(A)
    condensation = nx.condensation(graph)
    blocks = [
        sorted(condensation.nodes[c]["members"])
        for c in condensation.nodes
        if condensation.out_degree(c) == 0
    ]
    return sorted(blocks, key=lambda block: block[0])


def is_irreducible(A: np.ndarray = None):
    """
    Decides irreducibility of a square non-negative matrix

    Returns (True, None) or (False, J) with J an invariant index set

    """
    A = np.asarray(A)
    m = A.shape[0]
    if A.shape != (m, m):
        raise ValueError("square matrix expected")
    graph = support_graph(A)
    if nx.is_strongly_connected(graph) and (m > 1 or A[0, 0] > 0):
        return True, None
    if m == 1:
        return False, []
    return False, invariant_blocks(A)[0]


def primitivity_exponent(A: np.ndarray = None):
    """Returns the least n <= (m-1)^2+1 with A^n > 0, or None"""
    A = np.asarray(A)
    m = A.shape[0]
    B = (A > 0).astype(np.int64)
    P = B.copy()
    for n in range(1, (m - 1) ** 2 + 2):
        if (P > 0).all():
            return n
        P = ((P @ B) > 0).astype(np.int64)
    return None


def is_primitive(A: np.ndarray = None):
    """ """
    return primitivity_exponent(A) is not None


def period_classes(A: np.ndarray = None):
    """
    Returns the cyclic classes of an irreducible matrix, the support graph maps the
    class r into the class r + 1 modulo the period

    """
    graph = support_graph(A)
    levels = nx.single_source_shortest_path_length(graph, 0)
    period = 0
    for u, v in graph.edges:
        period = gcd(period, levels[u] + 1 - levels[v])
    period = abs(period) if period != 0 else 1
    return [sorted(n for n in levels if levels[n] % period == r) for r in range(period)]


def pf_is_one(A: np.ndarray = None):
    """
    Decides whether the Perron-Frobenius eigenvalue of an irreducible non-negative
    integer matrix equals 1, which holds iff it is a permutation matrix

    """
    irreducible, _ = is_irreducible(A)
    if not irreducible:
        raise ValueError("pf_is_one expects an irreducible matrix")
    A = np.asarray(A)
    return bool(
        all(x in (0, 1) for x in A.flat)
        and (A.sum(axis=0) == 1).all()
        and (A.sum(axis=1) == 1).all()
    )


def turn_table(f: TrainTrackMap = None):
    return f.turn_table


def verify_train_track(f: TrainTrackMap = None):
    return f.verify()


def collapse_order(graph: GraphOfGroups = None, edges: list = None):
    """
    Returns the oriented edges to collapse, in order, to contract the subgraph spanned
    by edges, or None if it is not collapsible

    An edge can go when one of its ends has valence 1 in the subgraph and carries the
    label +-1, the edge is oriented with that end as origin.

    """
    remaining = list(edges)
    order = []
    while remaining:
        valence = dict()
        for e in remaining:
            for v in (graph.origin(e), graph.terminus(e)):
                valence[v] = valence.get(v, 0) + 1
        found = None
        for e in remaining:
            if graph.origin(e) == graph.terminus(e):
                continue
            for x in (e, graph.reverse(e)):
                if valence[graph.origin(x)] == 1 and abs(graph.label(x)) == 1:
                    found = x
                    break
            if found is not None:
                break
        if found is None:
            return None
        order.append(found)
        remaining = [e for e in remaining if graph.orbit_index(e) != graph.orbit_index(found)]
    return order


def induced_map(f: TrainTrackMap = None, target: GraphOfGroups = None, rho=None, rho_inv=None):
    """
    Returns the map rho f rho^-1 on the tree of the target graph

    :param rho: rewriter from the graph of f to the target graph

    :param rho_inv: rewriter from the target graph to the graph of f

    """
    tree = BassSerreTree(target, f.params)
    generators = marking_generators(tree)
    phi = {
        name: rho.rewrite(f.apply(rho_inv.rewrite(w))) for name, w in generators.items()
    }
    phi_inverse = None
    if f.phi_inverse is not None:
        phi_inverse = {
            name: rho.rewrite(f.apply_inverse(rho_inv.rewrite(w)))
            for name, w in generators.items()
        }
    vertex_images = dict()
    for v in target.vertices:
        x = f.tree.point(rho_inv.anchored(tree.tree_paths[v]))
        vertex_images[v] = rho.anchored(f.tree.point_word(f.image_point(x)))
    return TrainTrackMap(target, phi, vertex_images, phi_inverse=phi_inverse, params=f.params)


def recheck_certificate(certificate: ReducibilityCertificate = None):
    """Re-verifies a reducibility certificate on its map"""
    f = certificate.map
    A = transition_matrix(f)
    chosen = f.graph.chosen_edges
    if certificate.kind == INVARIANT_SUBGRAPH:
        J = [chosen.index(e) for e in certificate.edges]
        return all(A[i, j] == 0 for j in J for i in range(len(chosen)) if i not in J)
    if certificate.kind == SINGLE_EDGE:
        return len(chosen) == 1
    if certificate.kind == ISOMETRY:
        return pf_is_one(A)
    if certificate.kind == PERIODIC_PARTITION:
        return is_irreducible(A)[0] and not is_primitive(A)
    raise ValueError("unknown certificate kind " + repr(certificate.kind))


def certificate_to_dict(certificate: ReducibilityCertificate = None):
    """ """
    return OrderedDict(
        [
            ("kind", certificate.kind),
            ("edges", list(certificate.edges)),
            ("detail", certificate.detail),
        ]
    )


def collapse_to_irreducible(f: TrainTrackMap = None):
    """
    Collapses invariant collapsible subgraphs until the transition matrix is
    irreducible

    Returns a PrimitiveTT or a ReducibilityCertificate

    """
    marking = RewriterChain([WordRewriter.identity(f.graph)])
    while True:
        chosen = f.graph.chosen_edges
        A = transition_matrix(f)
        logging.debug(".. collapsing map with " + str(len(chosen)) + " edge orbits")
        irreducible, _ = is_irreducible(A)
        if irreducible:
            if len(chosen) == 1:
                return ReducibilityCertificate(SINGLE_EDGE, chosen, {}, f)
            if pf_is_one(A):
                return ReducibilityCertificate(
                    ISOMETRY, chosen, {"matrix": A.tolist()}, f
                )
            if not is_primitive(A):
                classes = [[chosen[i] for i in c] for c in period_classes(A)]
                return ReducibilityCertificate(
                    PERIODIC_PARTITION, classes[0], {"classes": classes}, f
                )
            logging.info("primitive train track with " + str(len(chosen)) + " edge orbits")
            return PrimitiveTT(f, marking)
        blocks = invariant_blocks(A)
        collapsed = False
        for block in blocks:
            edges = [chosen[i] for i in block]
            order = collapse_order(f.graph, edges)
            if order is None:
                continue
            g = f.graph
            steps = []
            for e in order:
                h, rho, rho_inv = collapse_edge(g, e)
                steps.append((rho, rho_inv))
                g = h
            rho = RewriterChain([r for r, _ in steps])
            rho_inv = RewriterChain([r for _, r in reversed(steps)])
            new_map = induced_map(f, g, rho, rho_inv)
            for e in g.chosen_edges:
                if len(new_map.edge_image(e)) < 2:
                    return ReducibilityCertificate(
                        INVARIANT_SUBGRAPH, edges, {"collapsed edge": e, "collapsible": True}, f
                    )
            logging.debug(".... collapsed edges: " + str(order))
            marking = marking.then(rho)
            f = new_map
            collapsed = True
            break
        if not collapsed:
            edges = [chosen[i] for i in blocks[0]]
            return ReducibilityCertificate(
                INVARIANT_SUBGRAPH, edges, {"collapsible": False}, f
            )
