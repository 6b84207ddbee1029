# -*- coding: utf-8 -*-

"""
"""

import logging
from collections import OrderedDict, namedtuple

from .const import MAX_ITERATIONS, MAX_L, STAGE_PINPS
from .cover import BassSerreTree, CoverEdge, CoverPoint
from .graphs import GroupWord, RewriterChain, subdivide_edge
from .traintrack import TrainTrackMap, marking_generators
from .utils import BoundExhausted, lcm

default_max_l = 8
default_max_iterations = 12

PseudoPINP = namedtuple("PseudoPINP", ["start", "turn", "end", "period", "twist"])
PseudoPINP.__doc__ = """A path with one illegal turn contained in a translate of its image"""
PseudoPINP.start.__doc__ = "The CoverPoint at the end of the first branch"
PseudoPINP.turn.__doc__ = "The CoverPoint of the illegal turn"
PseudoPINP.end.__doc__ = "The CoverPoint at the end of the second branch"
PseudoPINP.period.__doc__ = "The period p >= 1"
PseudoPINP.twist.__doc__ = "The loop g with path contained in g [f^p(path)]"

PINP = namedtuple(
    "PINP",
    ["start", "turn", "end", "period", "twist", "start_at_vertex", "end_at_vertex", "host"],
)
PINP.__doc__ = """A periodic indivisible Nielsen path"""
PINP.start.__doc__ = (
    "The start point (CoverPoint) or, if it is not a vertex, the CoverEdge containing "
    "it oriented away from the turn"
)
PINP.turn.__doc__ = "The CoverPoint of the illegal turn"
PINP.end.__doc__ = "The end point (CoverPoint) or the CoverEdge containing it"
PINP.period.__doc__ = "The period p"
PINP.twist.__doc__ = "The loop tau with [f^p(path)] = tau path"
PINP.start_at_vertex.__doc__ = "True if the start point is a vertex"
PINP.end_at_vertex.__doc__ = "True if the end point is a vertex"
PINP.host.__doc__ = "The minimal PseudoPINP containing the path"

Classification = namedtuple("Classification", ["case", "iteration", "period", "witness"])
Classification.__doc__ = """The behaviour of the iterates of a path with one illegal turn"""
Classification.case.__doc__ = "1: legal, 2: one branch swallowed, 3 and 4: pseudo-pINP found"
Classification.iteration.__doc__ = "The iteration n at which the case was decided"
Classification.period.__doc__ = "The period of the pseudo-pINP (cases 3 and 4)"
Classification.witness.__doc__ = "A PseudoPINP witness (cases 3 and 4), None if memoized"


class PinpFinder:
    """
    Search for the orbits of periodic indivisible Nielsen paths of a train track map

    :param f: a primitive TrainTrackMap

    :param params: dictionary with parameters (max_l, max_iterations)

    """

    def __init__(self, f: TrainTrackMap = None, params: dict = {}) -> None:
        """ """
        self.f = f
        self.tree = f.tree
        self.params = params
        self._cases = dict()
        self._pseudo = dict()

    def hull(self, path: tuple = None):
        """Returns the points of the path (start, turn, end)"""
        a, z, b = path
        return self.tree.geodesic(a, z) + self.tree.geodesic(z, b)[1:]

    def check_path(self, path: tuple = None) -> None:
        a, z, b = path
        tree = self.tree
        if tree.distance(a, z) == 0 or tree.distance(z, b) == 0:
            raise ValueError("branches of a path should have positive length")
        points = self.hull(path)
        if not tree.is_tight(points):
            raise ValueError("path is not tight")
        if self.f.illegal_turns(points) != [tree.distance(a, z)]:
            raise ValueError("path should have exactly one illegal turn at its turn point")

    def _images(self, path: tuple = None, n: int = 0):
        return tuple(self.f.iterate_point(p, n) for p in path)

    def is_pseudo_pinp(self, path: tuple = None, p: int = 1):
        """
        Returns a PseudoPINP if path is contained in g [f^p(path)] for some g with the
        same orientation, otherwise None

        """
        if (path, p) in self._pseudo:
            return self._pseudo[(path, p)]
        tree = self.tree
        result = None
        a, z, b = path
        fa, fz, fb = self._images(path, p)
        c = tree.median(fa, fz, fb)
        if c != fa and c != fb:
            d1 = tree.direction(c, tree.point_along(c, fa, 1))
            d2 = tree.direction(c, tree.point_along(c, fb, 1))
            i, j = tree.distance(z, a), tree.distance(z, b)
            if (
                not self.f.is_legal_turn(c, d1, d2)
                and i <= tree.distance(c, fa)
                and j <= tree.distance(c, fb)
            ):
                g = tree.find_translation(
                    [c, tree.point_along(c, fa, i), tree.point_along(c, fb, j)], [z, a, b]
                )
                if g is not None:
                    result = PseudoPINP(a, z, b, p, g)
        self._pseudo[(path, p)] = result
        return result

    def branch_lengths(self, pseudo: PseudoPINP = None):
        """Returns the branch lengths of [f^p(path)] at its illegal turn"""
        tree = self.tree
        fa, fz, fb = self._images((pseudo.start, pseudo.turn, pseudo.end), pseudo.period)
        c = tree.median(fa, fz, fb)
        return tree.distance(c, fa), tree.distance(c, fb)

    def sub_pseudo_pinps(self, path: tuple = None, p: int = 1, cap: int = None):
        """
        Returns the dict (i, j) -> PseudoPINP of the subpaths with branches of length
        i and j around the turn point that are pseudo-pINPs of period p

        """
        a, z, b = path
        tree = self.tree
        la, lb = tree.distance(z, a), tree.distance(z, b)
        if cap is not None:
            la, lb = min(la, cap), min(lb, cap)
        found = OrderedDict()
        for i in range(1, la + 1):
            for j in range(1, lb + 1):
                sub = (tree.point_along(z, a, i), z, tree.point_along(z, b, j))
                pseudo = self.is_pseudo_pinp(sub, p)
                if pseudo is not None:
                    found[(i, j)] = pseudo
        return found

    def classify(self, path: tuple = None):
        """
        Returns the Classification of a path (start, turn, end) with legal branches
        and an illegal turn

        """
        self.check_path(path)
        key = self.tree.path_orbit_key(self.hull(path), oriented=False)
        if key in self._cases:
            case, n, period = self._cases[key]
            return Classification(case, n, period, None)
        tree = self.tree
        max_iterations = self.params.get(MAX_ITERATIONS, default_max_iterations)
        cap = self.params.get(MAX_L, default_max_l)
        for n in range(max_iterations + 1):
            fa, fz, fb = self._images(path, n)
            c = tree.median(fa, fz, fb)
            if c == fa or c == fb:
                result = Classification(2, n, None, None)
                break
            d1 = tree.direction(c, tree.point_along(c, fa, 1))
            d2 = tree.direction(c, tree.point_along(c, fb, 1))
            if self.f.is_legal_turn(c, d1, d2):
                result = Classification(1, n, None, None)
                break
            witness = self._search(c, fa, fb, n + 1, cap)
            if witness is not None:
                inside = self.sub_pseudo_pinps(path, witness.period)
                if inside:
                    result = Classification(3, n, witness.period, list(inside.values())[0])
                else:
                    result = Classification(4, n, witness.period, witness)
                break
        else:
            raise BoundExhausted(
                "path not classified after " + str(max_iterations) + " iterations",
                stage=STAGE_PINPS,
                bound=MAX_ITERATIONS,
            )
        self._cases[key] = (result.case, result.iteration, result.period)
        return result

    def _search(self, c: CoverPoint = None, a: CoverPoint = None, b: CoverPoint = None,
                max_period: int = 1, cap: int = None):
        """Searches [a, b] for a pseudo-pINP with its turn at c and period at most max_period"""
        for p in range(1, max_period + 1):
            found = self.sub_pseudo_pinps((a, c, b), p, cap=cap)
            if found:
                return list(found.values())[0]
        return None

    def legal_rays(self, x: CoverPoint = None, d: tuple = None, n: int = 1):
        """Returns the legal paths of length n from x starting in direction d"""
        tree = self.tree
        paths = [(x, tree.neighbour(x, d))]
        for _ in range(n - 1):
            extended = []
            for path in paths:
                y = path[-1]
                back = tree.direction(y, path[-2])
                for d2 in tree.directions(y):
                    if d2 != back and self.f.is_legal_turn(y, back, d2):
                        extended.append(path + (tree.neighbour(y, d2),))
            paths = extended
        return paths

    def candidate_paths(self, n: int = 1):
        """
        Returns orbit representatives of the paths with one illegal turn and legal
        branches of length exactly n

        """
        tree = self.tree
        keys = set()
        candidates = []
        for v in self.f.graph.vertices:
            for c in self.f.turn_table.illegal_classes(v):
                z, d1, d2 = tree.class_representative(c)
                for alpha in self.legal_rays(z, d1, n):
                    for beta in self.legal_rays(z, d2, n):
                        points = alpha[::-1] + beta[1:]
                        key = tree.path_orbit_key(points, oriented=False)
                        if key not in keys:
                            keys.add(key)
                            candidates.append((alpha[-1], z, beta[-1]))
        logging.debug(".... found candidate paths: " + str(len(candidates)))
        return candidates

    def minimal_pseudo_pinp(self, path: tuple = None, p: int = 1):
        """Returns the unique minimal pseudo-pINP of period p inside path"""
        found = self.sub_pseudo_pinps(path, p)
        minimal = [
            ij
            for ij in found
            if not any(kl != ij and kl[0] <= ij[0] and kl[1] <= ij[1] for kl in found)
        ]
        if len(minimal) != 1:
            raise ValueError("expected a unique minimal pseudo-pINP, found " + str(minimal))
        return found[minimal[0]]

    def extract_pinp(self, pseudo: PseudoPINP = None):
        """
        Returns the PINP inside a minimal pseudo-pINP, the endpoints that are not
        vertices are kept as the CoverEdge of the branch that contains them

        """
        tree = self.tree
        g = self.f.graph
        a, z, b = pseudo.start, pseudo.turn, pseudo.end
        i, j = tree.distance(z, a), tree.distance(z, b)
        for sub in [
            (tree.point_along(z, a, i - 1), z, b),
            (a, z, tree.point_along(z, b, j - 1)),
        ]:
            if sub[0] != z and sub[2] != z and self.is_pseudo_pinp(sub, pseudo.period):
                raise ValueError("pseudo-pINP is not minimal")
        la, lb = self.branch_lengths(pseudo)
        start, end = a, b
        if la != i:
            x = tree.point_along(z, a, i - 1)
            start = CoverEdge(x, tree.direction(x, a))
        if lb != j:
            x = tree.point_along(z, b, j - 1)
            end = CoverEdge(x, tree.direction(x, b))
        return PINP(
            start,
            z,
            end,
            pseudo.period,
            g.inverse(pseudo.twist),
            la == i,
            lb == j,
            pseudo,
        )

    def find_all_pinps(self):
        """
        Returns orbit representatives of all pINPs

        The branch length L grows until no candidate path has a branch swallowed by
        the other one, the pINPs are read off the candidates with a pseudo-pINP.

        """
        tree = self.tree
        max_l = self.params.get(MAX_L, default_max_l)
        n = 1
        while True:
            if n > max_l:
                raise BoundExhausted(
                    "branch length exceeded " + str(max_l), stage=STAGE_PINPS, bound=MAX_L
                )
            logging.debug(".. searching pINPs with branch length " + str(n))
            candidates = self.candidate_paths(n)
            results = []
            for path in candidates:
                result = self.classify(path)
                if result.case == 2:
                    break
                results.append((path, result))
            else:
                pinps = []
                keys = set()
                for path, result in results:
                    if result.case != 3:
                        continue
                    pseudo = self.minimal_pseudo_pinp(path, result.period)
                    key = tree.path_orbit_key(
                        self.hull((pseudo.start, pseudo.turn, pseudo.end)), oriented=False
                    )
                    if key in keys:
                        continue
                    keys.add(key)
                    pinps.append(self.extract_pinp(pseudo))
                logging.debug(".... found pINP orbits: " + str(len(pinps)))
                return pinps
            n += 1

    def image_pinp(self, pinp: PINP = None, pinps: list = None):
        """
        Returns (index, g, reversed) such that g translates the host of pinps[index]
        into [f(host of pinp)], or None

        """
        tree = self.tree
        host = pinp.host
        fa, fz, fb = self._images((host.start, host.turn, host.end), 1)
        c = tree.median(fa, fz, fb)
        la, lb = tree.distance(c, fa), tree.distance(c, fb)
        for index, other in enumerate(pinps):
            h = other.host
            i, j = tree.distance(h.turn, h.start), tree.distance(h.turn, h.end)
            for reverse, (u, lu), (w, lw) in [
                (False, (fa, la), (fb, lb)),
                (True, (fb, lb), (fa, la)),
            ]:
                if i <= lu and j <= lw:
                    g = tree.find_translation(
                        [h.turn, h.start, h.end],
                        [c, tree.point_along(c, u, i), tree.point_along(c, w, j)],
                    )
                    if g is not None:
                        return index, g, reverse
        return None

    def pinp_identity(self, pinp: PINP = None):
        """Rechecks [f^p(path)] = tau path for vertex endpoints, the host otherwise"""
        tree = self.tree
        if pinp.start_at_vertex and pinp.end_at_vertex:
            fa, fz, fb = self._images((pinp.start, pinp.turn, pinp.end), pinp.period)
            tau = pinp.twist
            return (
                fa == tree.act(tau, pinp.start)
                and fb == tree.act(tau, pinp.end)
                and tree.median(fa, fz, fb) == tree.act(tau, pinp.turn)
            )
        host = pinp.host
        return self.is_pseudo_pinp((host.start, host.turn, host.end), host.period) is not None

    def pinp_to_dict(self, pinp: PINP = None):
        """ """
        tree = self.tree
        g = self.f.graph

        def endpoint(x, at_vertex):
            if at_vertex:
                return g.letters(tree.point_word(x))
            return {"edge": g.letters(tree.point_word(x.origin)), "germ": list(x.germ)}

        return OrderedDict(
            [
                ("start", endpoint(pinp.start, pinp.start_at_vertex)),
                ("turn", g.letters(tree.point_word(pinp.turn))),
                ("end", endpoint(pinp.end, pinp.end_at_vertex)),
                ("period", pinp.period),
                ("twist", g.letters(pinp.twist)),
            ]
        )


def classify(f: TrainTrackMap = None, path: tuple = None, params: dict = {}):
    return PinpFinder(f, params).classify(path)


def is_pseudo_pinp(f: TrainTrackMap = None, path: tuple = None, p: int = 1, params: dict = {}):
    return PinpFinder(f, params).is_pseudo_pinp(path, p)


def candidate_paths(f: TrainTrackMap = None, n: int = 1, params: dict = {}):
    return PinpFinder(f, params).candidate_paths(n)


def find_all_pinps(f: TrainTrackMap = None, params: dict = {}):
    """
    Returns orbit representatives of the periodic indivisible Nielsen paths of a
    primitive train track map

    """
    return PinpFinder(f, params).find_all_pinps()


def extract_pinp(f: TrainTrackMap = None, pseudo: PseudoPINP = None, params: dict = {}):
    return PinpFinder(f, params).extract_pinp(pseudo)


def pinp_identity(f: TrainTrackMap = None, pinp: PINP = None, params: dict = {}):
    return PinpFinder(f, params).pinp_identity(pinp)


def image_pinp(f: TrainTrackMap = None, pinp: PINP = None, pinps: list = None, params: dict = {}):
    return PinpFinder(f, params).image_pinp(pinp, pinps)


class _Marker:
    """An endpoint of a pINP inside the edge h e~ of a chosen edge e"""

    def __init__(self, index, side, edge, h, position) -> None:
        self.index = index
        self.side = side
        self.edge = edge
        self.h = h
        self.position = position
        self.rank = None


def _twist_power(f: TrainTrackMap = None, g=None, p: int = 1, k: int = 1):
    """Returns the loop G with (g f^p)^(k/p) = G f^k"""
    graph = f.graph
    result = graph.identity()
    for i in range(k // p):
        term = g if i == 0 else f.power(i * p).apply(g)
        result = graph.multiply(result, term)
    return result


def subdivide_at_pinps(f: TrainTrackMap = None, pinps: list = None, params: dict = {}):
    """
    Subdivides the edges containing pINP endpoints so that all endpoints are vertices

    Returns (new TrainTrackMap, new list of PINP)

    """
    if all(p.start_at_vertex and p.end_at_vertex for p in pinps):
        logging.debug(".. pINP endpoints are vertices, no subdivision")
        return f, list(pinps)
    finder = PinpFinder(f, params)
    tree = f.tree
    g = f.graph
    k = 1
    for pinp in pinps:
        k = lcm(k, pinp.period)
    fk = f.power(k)

    markers = []
    for index, pinp in enumerate(pinps):
        for side in ("start", "end"):
            at_vertex = pinp.start_at_vertex if side == "start" else pinp.end_at_vertex
            if at_vertex:
                continue
            edge = pinp.start if side == "start" else pinp.end
            x, y = edge.origin, tree.edge_end(edge)
            e = edge.germ[1]
            if not g.is_chosen(e):
                x, y, e = y, x, g.reverse(e)
            rx, ry = f.representative_edge(e)
            h = tree.find_translation([rx, ry], [x, y])
            twist = _twist_power(f, g.inverse(pinp.twist), pinp.period, k)
            c = g.product(g.inverse(h), twist, fk.apply(h))
            c_inv = g.inverse(c)
            target = (tree.act(c_inv, rx), tree.act(c_inv, ry))
            image = fk.edge_image(e)
            position = None
            for m in range(len(image) - 1):
                if (image[m], image[m + 1]) in (target, target[::-1]):
                    position = m
                    break
            if position is None:
                raise ValueError("inconsistent endpoint ordering on edge " + e)
            markers.append(_Marker(index, side, e, h, position))

    # subdivide every edge orbit at its distinct marker positions
    positions = OrderedDict()
    for marker in markers:
        positions.setdefault(marker.edge, set()).add(marker.position)
    for marker in markers:
        marker.rank = sorted(positions[marker.edge]).index(marker.position) + 1
    current = g
    forward, backward, chains = [], [], dict()
    for e, ps in positions.items():
        current, rho, rho_inv = subdivide_edge(current, e, len(ps))
        chains[e] = rho.edge_map[e]
        forward.append(rho)
        backward.append(rho_inv)
    rho = RewriterChain(forward)
    rho_inv = RewriterChain(backward[::-1])
    new_tree = BassSerreTree(current, params)
    logging.debug(".... subdivided edges: " + str(list(positions.keys())))

    def to_new(x):
        return new_tree.point(rho.anchored(tree.point_word(x)))

    def act_new(loop, x):
        return new_tree.act(rho.rewrite(loop), x)

    def marker_point(e, j):
        w = rho.anchored(tree.tree_paths[g.origin(e)])
        for name in chains[e][:j]:
            w = current.multiply(w, current.edge_word(name))
        return new_tree.point(w)

    def find_marker(index, side):
        for marker in markers:
            if marker.index == index and marker.side == side:
                return marker
        return None

    # images of the marker points on the representative edges
    marker_images = dict()
    for marker in markers:
        found = finder.image_pinp(pinps[marker.index], pinps)
        if found is None:
            raise ValueError("pINP list is not closed under the map")
        index, g1, reverse = found
        side = marker.side
        if reverse:
            side = "end" if side == "start" else "start"
        other = pinps[index]
        loop = g.multiply(f.apply(g.inverse(marker.h)), g1)
        if (other.start_at_vertex if side == "start" else other.end_at_vertex):
            point = other.start if side == "start" else other.end
            image = to_new(tree.act(loop, point))
        else:
            m1 = find_marker(index, side)
            image = act_new(g.multiply(loop, m1.h), marker_point(m1.edge, m1.rank))
        marker_images[(marker.edge, marker.rank)] = image

    reverse_translations = dict()
    for e in positions:
        rx, ry = f.representative_edge(e)
        sx, sy = f.representative_edge(g.reverse(e))
        reverse_translations[e] = tree.find_translation([sx, sy], [ry, rx])

    def new_image(y):
        """Returns f'(y) for a vertex y of the subdivided tree"""
        w = new_tree.point_word(y)
        if y.vertex in g.vertices:
            x = tree.point(rho_inv.anchored(w))
            return to_new(f.image_point(x))
        n = len(w.edges)
        while current.origin(w.edges[n - 1]) not in g.vertices:
            n -= 1
        depth = len(w.edges) - n + 1
        first = w.edges[n - 1]
        prefix = GroupWord(w.start, w.exps[:n], w.edges[:n - 1])
        for e, names in chains.items():
            if first == names[0]:
                old, j = e, depth
                break
            if first == _reverse_chain_start(current, names):
                old, j = e, len(names) - depth
                break
        h = g.multiply(rho_inv.anchored(prefix), g.inverse(tree.tree_paths[current.origin(first)]))
        if first != chains[old][0]:
            h = g.multiply(h, g.inverse(reverse_translations[old]))
        return new_tree.act(rho.rewrite(f.apply(h)), marker_images[(old, j)])

    generators = marking_generators(new_tree)
    phi = {name: rho.rewrite(f.apply(rho_inv.rewrite(w))) for name, w in generators.items()}
    phi_inverse = None
    if f.phi_inverse is not None:
        phi_inverse = {
            name: rho.rewrite(f.apply_inverse(rho_inv.rewrite(w)))
            for name, w in generators.items()
        }
    vertex_images = {
        v: new_tree.point_word(new_image(new_tree.point(new_tree.tree_paths[v])))
        for v in current.vertices
    }
    new_map = TrainTrackMap(current, phi, vertex_images, phi_inverse=phi_inverse, params=f.params)
    ok, counterexample = new_map.verify()
    if not ok:
        raise ValueError("subdivided map is not a train track map: " + str(counterexample))

    new_pinps = []
    for index, pinp in enumerate(pinps):
        ends = []
        for side in ("start", "end"):
            at_vertex = pinp.start_at_vertex if side == "start" else pinp.end_at_vertex
            if at_vertex:
                ends.append(to_new(pinp.start if side == "start" else pinp.end))
            else:
                marker = find_marker(index, side)
                ends.append(act_new(marker.h, marker_point(marker.edge, marker.rank)))
        twist = rho.rewrite(pinp.twist)
        turn = to_new(pinp.turn)
        host = PseudoPINP(ends[0], turn, ends[1], pinp.period, current.inverse(twist))
        new_pinps.append(PINP(ends[0], turn, ends[1], pinp.period, twist, True, True, host))
    return new_map, new_pinps


def _reverse_chain_start(graph=None, names: tuple = None):
    """Returns the first edge of the reversed chain of a subdivided edge"""
    return graph.reverse(names[-1])
