# -*- coding: utf-8 -*-

"""
"""

import logging
import re
from collections import namedtuple
from fractions import Fraction

import networkx as nx

from .const import SCHEMA_VERSION

Edge = namedtuple("Edge", ["id", "reverse", "origin", "terminus", "label"])
Edge.__doc__ = """An oriented edge of a graph of infinite cyclic groups"""
Edge.id.__doc__ = "The identifier (str) of the oriented edge"
Edge.reverse.__doc__ = "The identifier of the reverse edge"
Edge.origin.__doc__ = "The origin vertex"
Edge.terminus.__doc__ = "The terminal vertex"
Edge.label.__doc__ = (
    "The nonzero integer label, the edge group is sent to the origin vertex group "
    "with this index"
)

GroupWord = namedtuple("GroupWord", ["start", "exps", "edges"])
GroupWord.__doc__ = """A path a^k0 t_e1 a^k1 ... t_en a^kn in the Bass group"""
GroupWord.start.__doc__ = "The vertex the path starts at"
GroupWord.exps.__doc__ = "The exponents k0, ..., kn (one more than the edges)"
GroupWord.edges.__doc__ = "The edge letters e1, ..., en"

VERTEX_TOKEN = re.compile(r"^a(\^(-?\d+))?$")


class GraphOfGroups:
    """
    A finite graph of infinite cyclic groups given by integer edge labels

    The relation of an edge e is a_o(e)^label(e) = t_e a_t(e)^label(reverse(e)) t_e^-1.

    :param vertices: list of vertex identifiers, the first one is the basepoint

    :param edges: list of Edge (or dicts with the Edge fields), both orientations of
        every edge are listed and the first orientation seen is the chosen one

    """

    def __init__(self, vertices: list = None, edges: list = None) -> None:
        """ """
        self.set_vertices(vertices)
        self.set_edges(edges)

    def set_vertices(self, vertices: list = None) -> None:
        """ """
        self._vertices = [str(v) for v in (vertices or [])]

    def set_edges(self, edges: list = None) -> None:
        """
        Sets the edges and derives the chosen orientations and the edge orbits

        :param edges: list of Edge or dict

        """
        self._edges = dict()
        for e in edges or []:
            if isinstance(e, dict):
                e = Edge(
                    id=str(e["id"]),
                    reverse=str(e["reverse"]),
                    origin=str(e["origin"]),
                    terminus=str(e["terminus"]),
                    label=int(e["label"]),
                )
            elif not isinstance(e, Edge):
                raise TypeError("edges should be Edge tuples or dicts")
            self._edges[e.id] = e
        self._chosen = []
        self._orbit_index = dict()
        for e in self._edges.values():
            if e.id not in self._orbit_index:
                self._orbit_index[e.id] = len(self._chosen)
                if e.reverse in self._edges:
                    self._orbit_index[e.reverse] = len(self._chosen)
                self._chosen.append(e.id)
        self._edges_from = dict()
        for v in self._vertices:
            self._edges_from[v] = [e.id for e in self._edges.values() if e.origin == v]

    @property
    def vertices(self):
        return list(self._vertices)

    @property
    def edges(self):
        return list(self._edges.keys())

    @property
    def chosen_edges(self):
        """The chosen orientation of every unoriented edge, in input order"""
        return list(self._chosen)

    @property
    def basepoint(self):
        return self._vertices[0]

    def edge(self, e: str = None):
        if e not in self._edges:
            raise ValueError("unknown edge " + repr(e))
        return self._edges[e]

    def label(self, e: str = None):
        return self.edge(e).label

    def reverse(self, e: str = None):
        return self.edge(e).reverse

    def origin(self, e: str = None):
        return self.edge(e).origin

    def terminus(self, e: str = None):
        return self.edge(e).terminus

    def edges_from(self, v: str = None):
        """Returns the edges with origin v in input order"""
        if v not in self._edges_from:
            raise ValueError("unknown vertex " + repr(v))
        return list(self._edges_from[v])

    def orbit_index(self, e: str = None):
        """Returns the index of the unoriented edge of e among the chosen edges"""
        return self._orbit_index[e]

    def is_chosen(self, e: str = None):
        return self._chosen[self._orbit_index[e]] == e

    def degree(self, v: str = None):
        """Returns the valence of a cover vertex over v"""
        return sum(abs(self.label(e)) for e in self.edges_from(v))

    def nx_graph(self):
        """Returns the underlying (multi)graph as a networkx MultiGraph"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self._vertices)
        for e in self._chosen:
            graph.add_edge(self.origin(e), self.terminus(e), key=e)
        return graph

    def validate(self):
        """
        Checks the invariants of the graph and refuses presentations of solvable groups

        Returns a tuple (ok, diagnostics)

        """
        diagnostics = []
        if len(self._vertices) == 0:
            return False, ["graph has no vertices"]
        if len(set(self._vertices)) != len(self._vertices):
            diagnostics.append("duplicate vertex identifiers")
        for e in self._edges.values():
            if VERTEX_TOKEN.match(e.id):
                diagnostics.append("edge " + e.id + ": identifier clashes with 'a^k'")
            if e.label == 0:
                diagnostics.append("edge " + e.id + ": label is zero")
            if e.origin not in self._edges_from:
                diagnostics.append("edge " + e.id + ": unknown origin " + e.origin)
            if e.terminus not in self._edges_from:
                diagnostics.append("edge " + e.id + ": unknown terminus " + e.terminus)
            if e.reverse == e.id:
                diagnostics.append("edge " + e.id + ": reversal has a fixed point")
                continue
            r = self._edges.get(e.reverse, None)
            if r is None:
                diagnostics.append("edge " + e.id + ": reverse " + e.reverse + " missing")
                continue
            if r.reverse != e.id:
                diagnostics.append("edge " + e.id + ": reversal is not an involution")
            if r.origin != e.terminus or r.terminus != e.origin:
                diagnostics.append("edge " + e.id + ": reverse has wrong endpoints")
        if diagnostics:
            return False, diagnostics
        if not nx.is_connected(self.nx_graph()):
            return False, ["graph is not connected"]
        shape = self.solvable_shape()
        if shape is not None:
            return False, ["presentation of a solvable group: " + shape]
        return True, []

    def solvable_shape(self):
        """
        Returns the name of the solvable group if the graph collapses onto one of the
        elementary presentations, otherwise None

        """
        g = self
        collapsed = True
        while collapsed:
            collapsed = False
            for e in g.edges:
                if g.origin(e) != g.terminus(e) and abs(g.label(e)) == 1:
                    g = collapse_edge(g, e)[0]
                    collapsed = True
                    break
        n_vertices, n_edges = len(g.vertices), len(g.chosen_edges)
        if n_vertices == 1 and n_edges == 0:
            return "Z"
        if n_vertices == 1 and n_edges == 1:
            e = g.chosen_edges[0]
            labels = sorted([abs(g.label(e)), abs(g.label(g.reverse(e)))])
            if labels[0] == 1:
                if labels == [1, 1]:
                    if g.label(e) == g.label(g.reverse(e)):
                        return "Z^2"
                    return "Klein bottle group"
                return "BS(1," + str(labels[1]) + ")"
        if n_vertices == 2 and n_edges == 1:
            e = g.chosen_edges[0]
            if abs(g.label(e)) == 2 and abs(g.label(g.reverse(e))) == 2:
                return "Klein bottle group"
        return None

    def to_dict(self):
        """ """
        return {
            "schema_version": SCHEMA_VERSION,
            "vertices": list(self._vertices),
            "edges": [dict(e._asdict()) for e in self._edges.values()],
        }

    @classmethod
    def from_dict(cls, data: dict = None):
        """
        Creates a graph from a dictionary in the graph schema

        :param data: dict with vertices and edges

        """
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise ValueError("graph data should have 'vertices' and 'edges'")
        try:
            return cls(vertices=data["vertices"], edges=data["edges"])
        except (KeyError, TypeError) as err:
            raise ValueError("malformed edge in graph data: " + str(err))

    def __repr__(self) -> str:
        return (
            "GraphOfGroups(vertices="
            + repr(self._vertices)
            + ", edges="
            + repr(self.chosen_edges)
            + ")"
        )

    # words

    def identity(self, v: str = None):
        """Returns the empty path at v (default the basepoint)"""
        return GroupWord(v if v is not None else self.basepoint, (0,), ())

    def end(self, w: GroupWord = None):
        """Returns the terminal vertex of a path"""
        if len(w.edges) == 0:
            return w.start
        return self.terminus(w.edges[-1])

    def is_loop(self, w: GroupWord = None):
        return self.end(w) == w.start

    def check_path(self, w: GroupWord = None) -> None:
        """Raises a ValueError if w is not a path in the graph"""
        if not isinstance(w, GroupWord):
            raise TypeError("expected a GroupWord")
        if len(w.exps) != len(w.edges) + 1:
            raise ValueError("malformed word: expected one more exponent than edges")
        if w.start not in self._edges_from:
            raise ValueError("malformed word: unknown vertex " + repr(w.start))
        v = w.start
        for e in w.edges:
            if self.origin(e) != v:
                raise ValueError("malformed word: edge " + e + " does not start at " + v)
            v = self.terminus(e)

    def word(self, text: str = "", start: str = None):
        """
        Parses a word like "a^2 t a^-1 T"

        :param text: whitespace separated tokens, 'a' or 'a^k' is a power of the
            current vertex generator and any other token is an edge identifier

        :param start: the start vertex, derived from the first edge if not given

        """
        letters = []
        for token in text.split():
            m = VERTEX_TOKEN.match(token)
            if m:
                letters.append({"exp": int(m.group(2)) if m.group(2) else 1})
            else:
                letters.append({"edge": token})
        return self.from_letters(letters, start=start)

    def from_letters(self, letters: list = None, start: str = None):
        """
        Creates a word from tagged letters {"vertex": v, "exp": k} and {"edge": e}

        """
        if start is None:
            start = self.basepoint
            for letter in letters:
                if "edge" in letter:
                    start = self.origin(letter["edge"])
                    break
        exps, edges = [0], []
        v = start
        for letter in letters:
            if "edge" in letter:
                e = str(letter["edge"])
                if self.origin(e) != v:
                    raise ValueError("edge " + e + " does not start at vertex " + v)
                edges.append(e)
                exps.append(0)
                v = self.terminus(e)
            elif "exp" in letter:
                if letter.get("vertex", v) != v:
                    raise ValueError("vertex letter " + str(letter["vertex"]) + " off path")
                exps[-1] += int(letter["exp"])
            else:
                raise ValueError("malformed letter " + repr(letter))
        w = GroupWord(start, tuple(exps), tuple(edges))
        self.check_path(w)
        return w

    def letters(self, w: GroupWord = None):
        """Returns the tagged letters of a word"""
        result = []
        v = w.start
        for i, k in enumerate(w.exps):
            if k != 0:
                result.append({"vertex": v, "exp": k})
            if i < len(w.edges):
                result.append({"edge": w.edges[i]})
                v = self.terminus(w.edges[i])
        return result

    def to_text(self, w: GroupWord = None):
        """Returns the word as text in the format of word()"""
        tokens = []
        for letter in self.letters(w):
            if "edge" in letter:
                tokens.append(letter["edge"])
            elif letter["exp"] == 1:
                tokens.append("a")
            else:
                tokens.append("a^" + str(letter["exp"]))
        return " ".join(tokens)

    def reduce(self, w: GroupWord = None):
        """
        Returns the reduced form of a path

        Every pinch t_f a^(m label(reverse f)) t_(reverse f) is replaced by
        a^(m label(f)), innermost first, in a single left to right pass.

        """
        self.check_path(w)
        edges, exps = [], [w.exps[0]]
        for e, k in zip(w.edges, w.exps[1:]):
            if edges and e == self.reverse(edges[-1]):
                f = edges[-1]
                q = self.label(e)
                if exps[-1] % q == 0:
                    edges.pop()
                    m = exps.pop() // q
                    exps[-1] += self.label(f) * m + k
                    continue
            edges.append(e)
            exps.append(k)
        return GroupWord(w.start, tuple(exps), tuple(edges))

    def normal_form(self, w: GroupWord = None):
        """
        Returns the reduced path where the exponent before each t_e lies in
        [0, |label(e)|), the excess being carried to the right

        """
        w = self.reduce(w)
        exps = list(w.exps)
        for i, e in enumerate(w.edges):
            lam = self.label(e)
            r = exps[i] % abs(lam)
            q = (exps[i] - r) // lam
            exps[i] = r
            exps[i + 1] += self.label(self.reverse(e)) * q
        return GroupWord(w.start, tuple(exps), w.edges)

    def is_trivial(self, w: GroupWord = None):
        """
        Decides the word problem for a loop

        :param w: a loop

        """
        if not self.is_loop(w):
            raise ValueError("is_trivial expects a loop")
        r = self.reduce(w)
        return len(r.edges) == 0 and r.exps[0] == 0

    def modulus(self, w: GroupWord = None):
        """
        Returns the modulus of a loop as a Fraction, the product of
        label(e) / label(reverse e) over its edge letters

        """
        if not self.is_loop(w):
            raise ValueError("modulus expects a loop")
        result = Fraction(1)
        for e in w.edges:
            result *= Fraction(self.label(e), self.label(self.reverse(e)))
        return result

    def is_unimodular(self, w: GroupWord = None):
        return self.modulus(w) == 1

    def multiply(self, u: GroupWord = None, v: GroupWord = None):
        """Returns the reduced concatenation of two paths"""
        if self.end(u) != v.start:
            raise ValueError("paths cannot be concatenated")
        exps = u.exps[:-1] + (u.exps[-1] + v.exps[0],) + v.exps[1:]
        return self.reduce(GroupWord(u.start, exps, u.edges + v.edges))

    def product(self, *words):
        """Returns the reduced product of several paths"""
        result = words[0]
        for w in words[1:]:
            result = self.multiply(result, w)
        return result

    def inverse(self, w: GroupWord = None):
        """ """
        return GroupWord(
            self.end(w),
            tuple(-k for k in reversed(w.exps)),
            tuple(self.reverse(e) for e in reversed(w.edges)),
        )

    def power(self, w: GroupWord = None, k: int = 1):
        """Returns the k-th power of a loop by repeated squaring"""
        if not self.is_loop(w):
            raise ValueError("power expects a loop")
        if k < 0:
            w, k = self.inverse(w), -k
        result = self.identity(w.start)
        base = self.reduce(w)
        while k > 0:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def vertex_power(self, v: str = None, k: int = 1):
        return GroupWord(v, (k,), ())

    def edge_word(self, e: str = None):
        return GroupWord(self.origin(e), (0, 0), (e,))


def baumslag_solitar(p: int = 1, q: int = 1):
    """
    Returns the graph of BS(p, q) with one vertex v and the loop t (label p) with
    reverse T (label q), so that a^p = t a^q t^-1

    """
    return GraphOfGroups(
        vertices=["v"],
        edges=[Edge("t", "T", "v", "v", p), Edge("T", "t", "v", "v", q)],
    )


def rose(labels: dict = None, vertex: str = "v"):
    """
    Returns a one vertex graph with a loop per lowercase name, the reverse of a loop
    being its uppercase name

    :param labels: dict of name to (label, reverse label)

    """
    edges = []
    for name, (p, q) in labels.items():
        edges.append(Edge(name, name.upper(), vertex, vertex, p))
        edges.append(Edge(name.upper(), name, vertex, vertex, q))
    return GraphOfGroups(vertices=[vertex], edges=edges)


class WordRewriter:
    """
    A change of marking between two graphs of groups, defined letter by letter

    :param source: the graph of the input words

    :param target: the graph of the output words

    :param vertex_map: dict of source vertex to (target vertex, exponent multiplier)

    :param edge_map: dict of source edge to a tuple of target edges

    :param conjugator: optional target path from the image of the old basepoint to the
        target basepoint's preimage, used to keep loops based

    :param carry: if True, words are put in normal form before rewriting

    """

    def __init__(
        self,
        source: GraphOfGroups = None,
        target: GraphOfGroups = None,
        vertex_map: dict = None,
        edge_map: dict = None,
        conjugator: GroupWord = None,
        carry: bool = False,
    ) -> None:
        """ """
        self.source = source
        self.target = target
        self.vertex_map = vertex_map
        self.edge_map = edge_map
        self.conjugator = conjugator
        self.carry = carry

    @classmethod
    def identity(cls, graph: GraphOfGroups = None):
        return cls(
            source=graph,
            target=graph,
            vertex_map={v: (v, 1) for v in graph.vertices},
            edge_map={e: (e,) for e in graph.edges},
        )

    def rewrite_path(self, w: GroupWord = None):
        """Rewrites a path letter by letter and reduces the result"""
        if self.carry:
            w = self.source.normal_form(w)
        start, mult = self.vertex_map[w.start]
        exps, edges = [w.exps[0] * mult], []
        for e, k in zip(w.edges, w.exps[1:]):
            for x in self.edge_map[e]:
                edges.append(x)
                exps.append(0)
            exps[-1] += k * self.vertex_map[self.source.terminus(e)][1]
        return self.target.reduce(GroupWord(start, tuple(exps), tuple(edges)))

    def anchored(self, w: GroupWord = None):
        """Rewrites a path starting at the source basepoint into one starting at the
        target basepoint"""
        r = self.rewrite_path(w)
        if self.conjugator is not None:
            r = self.target.multiply(self.conjugator, r)
        return r

    def rewrite(self, w: GroupWord = None):
        """Rewrites a loop at the source basepoint into a loop at the target basepoint"""
        r = self.rewrite_path(w)
        if self.conjugator is not None:
            c = self.conjugator
            r = self.target.product(c, r, self.target.inverse(c))
        return r

    def then(self, other=None):
        """Returns the rewriter applying self and then other"""
        return RewriterChain([self, other])


class RewriterChain:
    """
    A composition of rewriters, applied left to right

    :param rewriters: list of WordRewriter or RewriterChain

    """

    def __init__(self, rewriters: list = None) -> None:
        self.rewriters = []
        for r in rewriters or []:
            if isinstance(r, RewriterChain):
                self.rewriters.extend(r.rewriters)
            else:
                self.rewriters.append(r)

    @property
    def source(self):
        return self.rewriters[0].source

    @property
    def target(self):
        return self.rewriters[-1].target

    def rewrite_path(self, w: GroupWord = None):
        for r in self.rewriters:
            w = r.rewrite_path(w)
        return w

    def anchored(self, w: GroupWord = None):
        for r in self.rewriters:
            w = r.anchored(w)
        return w

    def rewrite(self, w: GroupWord = None):
        for r in self.rewriters:
            w = r.rewrite(w)
        return w

    def then(self, other=None):
        return RewriterChain([self, other])


def _fresh(name: str = None, taken: set = None):
    while name in taken:
        name = name + "'"
    return name


def subdivide_edge(g: GraphOfGroups = None, e: str = None, markers: int = 1):
    """
    Subdivides the edge e (and its reverse) by new vertices

    The chain e.0, ..., e.k replaces e, with label(e.0) = label(e) and all other
    labels equal to 1 except label(reverse e.0) = label(reverse e).

    Returns (new graph, forward rewriter, inverse rewriter)

    :param g: the graph

    :param e: the edge to subdivide

    :param markers: the number of new vertices on the edge

    """
    if e not in g.edges:
        raise ValueError("unknown edge " + repr(e))
    if markers < 1:
        raise ValueError("markers should be positive")
    logging.debug(".. subdividing edge " + e + " with " + str(markers) + " vertices")
    k = markers
    r = g.reverse(e)
    taken = set(g.vertices) | set(g.edges)
    if k == 1:
        names = [_fresh(e + ".v", taken)]
    else:
        names = [_fresh(e + ".v" + str(j), taken) for j in range(1, k + 1)]
    points = [g.origin(e)] + names + [g.terminus(e)]
    forward = [_fresh(e + "." + str(j), taken) for j in range(k + 1)]
    backward = [_fresh(r + "." + str(j), taken) for j in range(k + 1)]
    chain = dict()
    chain[e] = [
        Edge(
            forward[j],
            backward[k - j],
            points[j],
            points[j + 1],
            g.label(e) if j == 0 else 1,
        )
        for j in range(k + 1)
    ]
    chain[r] = [
        Edge(
            backward[j],
            forward[k - j],
            points[k + 1 - j],
            points[k - j],
            g.label(r) if j == 0 else 1,
        )
        for j in range(k + 1)
    ]
    new_edges = []
    for x in g.edges:
        if x in chain:
            new_edges.extend(chain[x])
        else:
            new_edges.append(g.edge(x))
    h = GraphOfGroups(vertices=g.vertices + names, edges=new_edges)

    vertex_map = {v: (v, 1) for v in g.vertices}
    edge_map = {x: (x,) for x in g.edges}
    edge_map[e] = tuple(forward)
    edge_map[r] = tuple(backward)
    rho = WordRewriter(g, h, vertex_map, edge_map)

    inv_vertex_map = {v: (v, 1) for v in g.vertices}
    for name in names:
        inv_vertex_map[name] = (g.origin(e), 0)
    inv_edge_map = {x: (x,) for x in g.edges if x not in chain}
    for j in range(k + 1):
        inv_edge_map[forward[j]] = (e,) if j == 0 else ()
        inv_edge_map[backward[j]] = (r,) if j == 0 else ()
    rho_inv = WordRewriter(h, g, inv_vertex_map, inv_edge_map, carry=True)
    return h, rho, rho_inv


def collapse_edge(g: GraphOfGroups = None, e: str = None):
    """
    Collapses the edge e with label(e) = +-1 and distinct endpoints, the origin of e
    disappears and its group becomes a power of the group of the terminus

    Returns (new graph, forward rewriter, inverse rewriter)

    """
    if e not in g.edges:
        raise ValueError("unknown edge " + repr(e))
    v, u = g.origin(e), g.terminus(e)
    if v == u:
        raise ValueError("cannot collapse the loop " + e)
    if abs(g.label(e)) != 1:
        raise ValueError("cannot collapse " + e + " with label " + str(g.label(e)))
    r = g.reverse(e)
    s = g.label(e) * g.label(r)
    if g.basepoint == v:
        vertices = [u] + [w for w in g.vertices if w not in (u, v)]
    else:
        vertices = [w for w in g.vertices if w != v]
    new_edges = []
    for x in g.edges:
        if x in (e, r):
            continue
        old = g.edge(x)
        new_edges.append(
            Edge(
                old.id,
                old.reverse,
                u if old.origin == v else old.origin,
                u if old.terminus == v else old.terminus,
                s * old.label if old.origin == v else old.label,
            )
        )
    h = GraphOfGroups(vertices=vertices, edges=new_edges)

    vertex_map = {w: (w, 1) for w in g.vertices}
    vertex_map[v] = (u, s)
    edge_map = {x: (x,) for x in g.edges}
    edge_map[e] = ()
    edge_map[r] = ()
    rho = WordRewriter(g, h, vertex_map, edge_map)

    inv_edge_map = dict()
    for x in h.edges:
        seq = ()
        if g.origin(x) == v:
            seq += (r,)
        seq += (x,)
        if g.terminus(x) == v:
            seq += (e,)
        inv_edge_map[x] = seq
    conjugator = g.edge_word(e) if g.basepoint == v else None
    rho_inv = WordRewriter(
        h, g, {w: (w, 1) for w in h.vertices}, inv_edge_map, conjugator=conjugator
    )
    return h, rho, rho_inv
