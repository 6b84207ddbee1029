# -*- coding: utf-8 -*-

"""
"""

import logging
from collections import deque, namedtuple
from functools import lru_cache
from math import gcd

from .const import MAX_CACHE, MAX_SWEEP
from .graphs import GraphOfGroups, GroupWord
from .utils import BoundExhausted, solve_congruence

default_max_sweep = 100000
default_max_cache = 50000

CoverPoint = namedtuple("CoverPoint", ["vertex", "germs"])
CoverPoint.__doc__ = """A vertex of the Bass-Serre tree in normal form"""
CoverPoint.vertex.__doc__ = "The quotient vertex the point lies over"
CoverPoint.germs.__doc__ = (
    "The tuple of (residue, edge) pairs of the normal form path from the root"
)

CoverEdge = namedtuple("CoverEdge", ["origin", "germ"])
CoverEdge.__doc__ = """An oriented edge of the Bass-Serre tree"""
CoverEdge.origin.__doc__ = "The CoverPoint the edge starts at"
CoverEdge.germ.__doc__ = "The frame germ (i, e) of the edge at its origin"

TranslationLength = namedtuple("TranslationLength", ["length", "kind", "axis"])
TranslationLength.__doc__ = """The translation length of a group element"""
TranslationLength.length.__doc__ = "The combinatorial translation length (int)"
TranslationLength.kind.__doc__ = "Either 'elliptic' or 'loxodromic'"
TranslationLength.axis.__doc__ = (
    "For a loxodromic element a fundamental domain [w, gw] of the axis, for an "
    "elliptic element a path consisting of one fixed point"
)

ELLIPTIC = "elliptic"
LOXODROMIC = "loxodromic"


class BassSerreTree:
    """
    Lazy local model of the Bass-Serre tree of a graph of infinite cyclic groups

    Points are normal form paths from the root, no part of the tree is stored.

    :param graph: the GraphOfGroups

    :param params: dictionary with parameters (max_sweep, max_cache)

    """

    def __init__(self, graph: GraphOfGroups = None, params: dict = {}) -> None:
        """ """
        self.graph = graph
        self.params = params
        self._point_cache = lru_cache(maxsize=params.get(MAX_CACHE, default_max_cache))(
            self._normal_point
        )
        self.set_spanning_tree()

    def set_spanning_tree(self) -> None:
        """
        Sets the breadth first maximal tree of the quotient graph and the tree paths
        p_v from the basepoint

        """
        g = self.graph
        self.tree_paths = {g.basepoint: g.identity()}
        self.tree_edges = set()
        queue = deque([g.basepoint])
        while queue:
            v = queue.popleft()
            for e in g.edges_from(v):
                u = g.terminus(e)
                if u not in self.tree_paths:
                    self.tree_paths[u] = g.multiply(self.tree_paths[v], g.edge_word(e))
                    self.tree_edges.add(e)
                    self.tree_edges.add(g.reverse(e))
                    queue.append(u)

    def root(self):
        return CoverPoint(self.graph.basepoint, ())

    def vertex_representative(self, v: str = None):
        """Returns the point p_v over v"""
        return self.point(self.tree_paths[v])

    def point(self, w: GroupWord = None):
        """
        Returns the point reached by a path from the basepoint

        :param w: a GroupWord starting at the basepoint

        """
        if w.start != self.graph.basepoint:
            raise ValueError("points are represented by paths from the basepoint")
        return self._point_cache(w)

    def _normal_point(self, w: GroupWord = None):
        nf = self.graph.normal_form(w)
        return CoverPoint(self.graph.end(nf), tuple(zip(nf.exps[:-1], nf.edges)))

    def cache_info(self):
        """Returns the statistics of the bounded point memo"""
        return self._point_cache.cache_info()

    def point_word(self, x: CoverPoint = None):
        """Returns the normal form path of a point"""
        return GroupWord(
            self.graph.basepoint,
            tuple(r for r, _ in x.germs) + (0,),
            tuple(e for _, e in x.germs),
        )

    def prefix(self, x: CoverPoint = None, k: int = 0):
        """Returns the point at depth k on the path from the root to x"""
        if k == 0:
            return self.root()
        return CoverPoint(self.graph.terminus(x.germs[k - 1][1]), x.germs[:k])

    def parent(self, x: CoverPoint = None):
        if len(x.germs) == 0:
            return None
        return self.prefix(x, len(x.germs) - 1)

    def parent_germ(self, x: CoverPoint = None):
        """Returns the frame germ at x pointing to the root"""
        if len(x.germs) == 0:
            return None
        return (0, self.graph.reverse(x.germs[-1][1]))

    def directions(self, x: CoverPoint = None):
        """Returns all frame germs (i, e) at x"""
        return [
            (i, e)
            for e in self.graph.edges_from(x.vertex)
            for i in range(abs(self.graph.label(e)))
        ]

    def neighbour(self, x: CoverPoint = None, germ: tuple = None):
        """Returns the endpoint of the edge leaving x in the direction germ"""
        if germ == self.parent_germ(x):
            return self.parent(x)
        return CoverPoint(self.graph.terminus(germ[1]), x.germs + (germ,))

    def neighbours(self, x: CoverPoint = None):
        return [self.neighbour(x, d) for d in self.directions(x)]

    def degree(self, x: CoverPoint = None):
        return len(self.directions(x))

    def direction(self, x: CoverPoint = None, y: CoverPoint = None):
        """Returns the frame germ at x of the edge from x to the adjacent point y"""
        if len(y.germs) == len(x.germs) + 1 and y.germs[:-1] == x.germs:
            return y.germs[-1]
        if len(x.germs) == len(y.germs) + 1 and x.germs[:-1] == y.germs:
            return self.parent_germ(x)
        raise ValueError("points are not adjacent")

    def arrival(self, x: CoverPoint = None, germ: tuple = None):
        """
        Returns h such that (path of x) a^i t_e = (path of the neighbour) a^h

        """
        if germ == self.parent_germ(x):
            return x.germs[-1][0]
        return 0

    def shift_germ(self, germ: tuple = None, m: int = 1):
        """Returns the frame germ moved by the m-th power of the vertex generator"""
        i, e = germ
        return ((i + m) % abs(self.graph.label(e)), e)

    def edge_end(self, edge: CoverEdge = None):
        return self.neighbour(edge.origin, edge.germ)

    def reverse_edge(self, edge: CoverEdge = None):
        y = self.edge_end(edge)
        return CoverEdge(y, self.direction(y, edge.origin))

    def path_edges(self, path: tuple = None):
        """Returns the CoverEdges of a path of adjacent points"""
        return [
            CoverEdge(path[k], self.direction(path[k], path[k + 1]))
            for k in range(len(path) - 1)
        ]

    def edge_orbit(self, x: CoverPoint = None, y: CoverPoint = None):
        """Returns the quotient edge (oriented from x to y) of the edge [x, y]"""
        return self.direction(x, y)[1]

    # equality and action

    def point_eq(self, x: CoverPoint = None, y: CoverPoint = None):
        """ """
        return x == y

    def act(self, g: GroupWord = None, x=None):
        """
        Returns the image of a point, an edge or a path under a loop g

        """
        if isinstance(x, CoverPoint):
            if len(g.edges) == 0 and g.exps[0] == 0:
                return x
            return self.point(self.graph.multiply(g, self.point_word(x)))
        if isinstance(x, CoverEdge):
            y = self.act(g, x.origin)
            z = self.act(g, self.edge_end(x))
            return CoverEdge(y, self.direction(y, z))
        return tuple(self.act(g, p) for p in x)

    def stabilizer_generator(self, x: CoverPoint = None):
        """Returns the loop generating the stabilizer of x"""
        w = self.point_word(x)
        g = self.graph
        return g.product(w, g.vertex_power(x.vertex, 1), g.inverse(w))

    def same_orbit(self, x: CoverPoint = None, y: CoverPoint = None):
        """
        Returns a loop g with g x = y, or None if x and y lie over distinct vertices

        """
        if x.vertex != y.vertex:
            return None
        g = self.graph
        return g.multiply(self.point_word(y), g.inverse(self.point_word(x)))

    def pair_same_orbit(
        self,
        x: CoverPoint = None,
        x2: CoverPoint = None,
        y: CoverPoint = None,
        y2: CoverPoint = None,
    ):
        """
        Returns a loop g with g x = y and g x2 = y2, or None

        The stabilizer of x is swept until the orbit of x2 closes.

        """
        g0 = self.same_orbit(x, y)
        if g0 is None:
            return None
        max_sweep = self.params.get(MAX_SWEEP, default_max_sweep)
        s = self.stabilizer_generator(x)
        h = self.graph.identity()
        z = x2
        for _ in range(max_sweep):
            candidate = self.graph.multiply(g0, h)
            if self.act(candidate, x2) == y2:
                return candidate
            h = self.graph.multiply(h, s)
            z = self.act(s, z)
            if z == x2:
                return None
        raise BoundExhausted("stabilizer sweep exceeded " + str(max_sweep), bound=MAX_SWEEP)

    def find_translation(self, sources: list = None, targets: list = None):
        """
        Returns a loop g with g s = t for all pairs of sources and targets, or None

        The element is g = p_t1 a^m p_s1^-1, the admissible m form an arithmetic
        progression that is narrowed down edge by edge along the geodesics.

        """
        s1, t1 = sources[0], targets[0]
        if s1.vertex != t1.vertex:
            return None
        graph = self.graph
        s0, period = 0, 1
        for s, t in zip(sources[1:], targets[1:]):
            ps, pt = self.geodesic(s1, s), self.geodesic(t1, t)
            if len(ps) != len(pt):
                return None
            c, d = s0, period
            for k in range(len(ps) - 1):
                i, e = self.direction(ps[k], ps[k + 1])
                j, f = self.direction(pt[k], pt[k + 1])
                if e != f:
                    return None
                lam, lam_r = graph.label(e), graph.label(graph.reverse(e))
                solution = solve_congruence(d, j - i - c, abs(lam))
                if solution is None:
                    return None
                n0, step = solution
                s0 += period * n0
                period *= step
                c += d * n0
                d *= step
                h_s = self.arrival(ps[k], (i, e))
                h_t = self.arrival(pt[k], (j, e))
                c = h_t - h_s + lam_r * ((c + i - j) // lam)
                d = lam_r * (d // lam)
        return graph.product(
            self.point_word(t1),
            graph.vertex_power(t1.vertex, s0),
            graph.inverse(self.point_word(s1)),
        )

    def path_translation(self, path: tuple = None, other: tuple = None):
        """
        Returns a loop g with g path = other as unoriented paths, or None

        """
        if len(path) != len(other):
            return None
        g = self.find_translation([path[0], path[-1]], [other[0], other[-1]])
        if g is not None:
            return g
        return self.find_translation([path[0], path[-1]], [other[-1], other[0]])

    # metric

    def common_depth(self, x: CoverPoint = None, y: CoverPoint = None):
        k = 0
        for a, b in zip(x.germs, y.germs):
            if a != b:
                break
            k += 1
        return k

    def distance(self, x: CoverPoint = None, y: CoverPoint = None):
        """ """
        return len(x.germs) + len(y.germs) - 2 * self.common_depth(x, y)

    def geodesic(self, x: CoverPoint = None, y: CoverPoint = None):
        """Returns the geodesic from x to y as a tuple of points"""
        k = self.common_depth(x, y)
        up = [self.prefix(x, n) for n in range(len(x.germs), k - 1, -1)]
        down = [self.prefix(y, n) for n in range(k + 1, len(y.germs) + 1)]
        return tuple(up + down)

    def point_along(self, x: CoverPoint = None, y: CoverPoint = None, i: int = 0):
        """Returns the point at distance i from x on [x, y]"""
        return self.geodesic(x, y)[i]

    def median(self, x: CoverPoint = None, y: CoverPoint = None, z: CoverPoint = None):
        """Returns the centre of the tripod spanned by three points"""
        depths = [
            (self.common_depth(x, y), x),
            (self.common_depth(y, z), y),
            (self.common_depth(x, z), x),
        ]
        k, p = max(depths, key=lambda item: item[0])
        return self.prefix(p, k)

    def is_tight(self, path: tuple = None):
        """ """
        return all(path[k] != path[k + 2] for k in range(len(path) - 2))

    def tighten(self, path: tuple = None):
        """Returns the geodesic with the endpoints of a path of adjacent points"""
        stack = []
        for p in path:
            if stack and p == stack[-1]:
                continue
            if len(stack) >= 2 and p == stack[-2]:
                stack.pop()
            else:
                stack.append(p)
        return tuple(stack)

    def concatenate(self, *paths):
        """Returns the tightened concatenation of paths of adjacent points"""
        points = []
        for p in paths:
            points.extend(p)
        return self.tighten(points)

    def edge_paths_from(self, x: CoverPoint = None, n: int = 0):
        """
        Returns all tight edge paths of length n starting at x

        """
        paths = [(x,)]
        for _ in range(n):
            extended = []
            for path in paths:
                for y in self.neighbours(path[-1]):
                    if len(path) >= 2 and y == path[-2]:
                        continue
                    extended.append(path + (y,))
            paths = extended
        return paths

    def translation_length(self, g: GroupWord = None):
        """
        Returns the TranslationLength of a loop

        With p = [x, gx] and l the overlap of reverse(p) and g p at gx, the
        length is d(x, gx) - 2 l, and g is elliptic when this vanishes.

        """
        x = self.root()
        y = self.act(g, x)
        p = self.geodesic(x, y)
        gp = self.act(g, p)
        overlap = 0
        for u, w in zip(p[::-1][1:], gp[1:]):
            if u != w:
                break
            overlap += 1
        length = len(p) - 1 - 2 * overlap
        if length > 0:
            w = p[overlap]
            return TranslationLength(length, LOXODROMIC, self.geodesic(w, self.act(g, w)))
        fixed = p[(len(p) - 1) // 2]
        return TranslationLength(0, ELLIPTIC, (fixed,))

    def is_elliptic(self, g: GroupWord = None):
        return self.translation_length(g).kind == ELLIPTIC

    def conjugate_to_axis(self, g: GroupWord = None, tl: TranslationLength = None):
        """
        Returns a conjugate u^-1 g u whose axis (or fixed point) passes through a
        vertex representative, so that its length is at most the translation length
        plus twice the depth of the vertex representatives

        :param g: a loop at the basepoint

        :param tl: the TranslationLength of g, computed if not given

        """
        if tl is None:
            tl = self.translation_length(g)
        w = tl.axis[0]
        graph = self.graph
        u = graph.multiply(self.point_word(w), graph.inverse(self.tree_paths[w.vertex]))
        return graph.product(graph.inverse(u), g, u)

    # orbits of turns and paths

    def turn_class(self, x: CoverPoint = None, d1: tuple = None, d2: tuple = None):
        """
        Returns the orbit class (vertex, e, e', offset) of the turn {d1, d2} at x

        """
        (i, e), (j, f) = d1, d2
        m = gcd(abs(self.graph.label(e)), abs(self.graph.label(f)))
        return (x.vertex,) + min((e, f, (j - i) % m), (f, e, (i - j) % m))

    def is_degenerate_class(self, turn: tuple = None):
        return turn[1] == turn[2] and turn[3] == 0

    def turn_classes(self, v: str = None):
        """Returns all orbit classes of turns at points over v"""
        x = self.vertex_representative(v)
        classes = []
        edges = self.graph.edges_from(v)
        for a, e in enumerate(edges):
            for f in edges[a:]:
                m = gcd(abs(self.graph.label(e)), abs(self.graph.label(f)))
                for d in range(m):
                    c = self.turn_class(x, (0, e), (d, f))
                    if c not in classes:
                        classes.append(c)
        return classes

    def class_representative(self, turn: tuple = None):
        """Returns (x, d1, d2) realizing a turn class at the vertex representative"""
        v, e, f, d = turn
        return self.vertex_representative(v), (0, e), (d, f)

    def path_orbit_key(self, path: tuple = None, oriented: bool = True):
        """
        Returns a canonical key of the G-orbit of a path of adjacent points

        The path is moved to start at the vertex representative and the least
        sequence of frame germs over the stabilizer of that point is taken.

        """
        if not oriented:
            return min(self.path_orbit_key(path), self.path_orbit_key(path[::-1]))
        graph = self.graph
        q = self.vertex_representative(path[0].vertex)
        c, d = 0, 1
        key = []
        for k in range(len(path) - 1):
            i, e = self.direction(path[k], path[k + 1])
            lam, lam_r = graph.label(e), graph.label(graph.reverse(e))
            j = (i + c) % gcd(d, abs(lam))
            n0, step = solve_congruence(d, j - i - c, abs(lam))
            c += d * n0
            d *= step
            h_s = self.arrival(path[k], (i, e))
            h_t = self.arrival(q, (j, e))
            c = h_t - h_s + lam_r * ((c + i - j) // lam)
            d = lam_r * (d // lam)
            q = self.neighbour(q, (j, e))
            key.append((j, e))
        return (path[0].vertex, tuple(key))

    def key_path(self, key: tuple = None):
        """Returns the canonical path of an oriented orbit key"""
        q = self.vertex_representative(key[0])
        path = [q]
        for germ in key[1]:
            q = self.neighbour(q, germ)
            path.append(q)
        return tuple(path)

    def orbit_size(self, x: CoverPoint = None, y: CoverPoint = None):
        """Returns the size of the orbit of y under the stabilizer of x"""
        max_sweep = self.params.get(MAX_SWEEP, default_max_sweep)
        s = self.stabilizer_generator(x)
        z = self.act(s, y)
        n = 1
        while z != y:
            z = self.act(s, z)
            n += 1
            if n > max_sweep:
                raise BoundExhausted("orbit sweep exceeded " + str(max_sweep), bound=MAX_SWEEP)
        logging.debug(".... orbit size: " + str(n))
        return n
