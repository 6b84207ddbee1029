# -*- coding: utf-8 -*-

"""
"""

import logging
from collections import OrderedDict, deque, namedtuple

from .const import MAX_ROUNDS, MAX_SWEEP, STAGE_ATOROIDAL
from .cover import BassSerreTree, default_max_sweep
from .nielsen import PinpFinder, subdivide_at_pinps
from .traintrack import TrainTrackMap
from .utils import BoundExhausted, lcm

default_max_rounds = 50

NielsenClass = namedtuple(
    "NielsenClass", ["seed", "vy_reps", "ey_reps", "stabilizer_generators"]
)
NielsenClass.__doc__ = """The points and pINPs reachable from a pINP by concatenation"""
NielsenClass.seed.__doc__ = "The seed pINP as (start, turn, end)"
NielsenClass.vy_reps.__doc__ = "The endpoints of the representative pINPs"
NielsenClass.ey_reps.__doc__ = "Representatives (start, turn, end) of the pINP orbits"
NielsenClass.stabilizer_generators.__doc__ = (
    "Loops generating the stabilizer, the connecting elements followed by a generator "
    "of the stabilizer of the seed"
)

AtoroidalVerdict = namedtuple(
    "AtoroidalVerdict", ["atoroidal", "pinps", "classes", "witness", "map"]
)
AtoroidalVerdict.__doc__ = """The pseudo-atoroidal decision with its witnesses"""
AtoroidalVerdict.atoroidal.__doc__ = "True if no pseudo-periodic conjugacy class exists"
AtoroidalVerdict.pinps.__doc__ = "The PINP orbit representatives with vertex endpoints"
AtoroidalVerdict.classes.__doc__ = "List of (NielsenClass, elliptic, witness loop or None)"
AtoroidalVerdict.witness.__doc__ = "A loxodromic loop with bounded growth, or None"
AtoroidalVerdict.map.__doc__ = "The subdivided TrainTrackMap the pINPs live on"


def _triple(pinp=None):
    return (pinp.start, pinp.turn, pinp.end)


def _hull(tree: BassSerreTree = None, path: tuple = None):
    a, z, b = path
    return tree.geodesic(a, z) + tree.geodesic(z, b)[1:]


def _act(tree: BassSerreTree = None, g=None, path: tuple = None):
    return tuple(tree.act(g, p) for p in path)


def path_stabilizer_generator(tree: BassSerreTree = None, path: tuple = None):
    """Returns a generator of the stabilizer of a path (start, turn, end)"""
    g = tree.graph
    s = tree.stabilizer_generator(path[0])
    n = 1
    for p in path[1:]:
        n = lcm(n, tree.orbit_size(path[0], p))
    return g.power(s, n)


def compute_nielsen_class(f: TrainTrackMap = None, pinps: list = None, seed=None, params: dict = {}):
    """
    Saturates the Nielsen class of a pINP over the translates of the listed pINPs
    sharing an endpoint

    :param f: the subdivided TrainTrackMap

    :param pinps: the PINP list with vertex endpoints

    :param seed: the index of the seed pINP in pinps

    """
    if seed is None or not 0 <= seed < len(pinps):
        raise ValueError("seed is not in the pINP list")
    tree = f.tree
    g = f.graph
    max_rounds = params.get(MAX_ROUNDS, default_max_rounds)
    max_sweep = params.get(MAX_SWEEP, default_max_sweep)
    start = _triple(pinps[seed])
    representatives = OrderedDict()
    representatives[tree.path_orbit_key(_hull(tree, start), oriented=False)] = start
    points = []
    generators = []
    words = set()
    queue = deque([start])
    rounds = 0
    logging.debug(".. saturating Nielsen class")
    while queue:
        rounds += 1
        if rounds > max_rounds:
            raise BoundExhausted(
                "Nielsen class not saturated after " + str(max_rounds) + " rounds",
                stage=STAGE_ATOROIDAL,
                bound=MAX_ROUNDS,
            )
        eta = queue.popleft()
        for x in (eta[0], eta[2]):
            if x not in points:
                points.append(x)
            s = tree.stabilizer_generator(x)
            for other in pinps:
                zeta = _triple(other)
                for y in (zeta[0], zeta[2]):
                    g0 = tree.same_orbit(y, x)
                    if g0 is None:
                        continue
                    first = _act(tree, g0, zeta)
                    translate = first
                    for _ in range(max_sweep):
                        key = tree.path_orbit_key(_hull(tree, translate), oriented=False)
                        if key not in representatives:
                            representatives[key] = translate
                            queue.append(translate)
                        else:
                            rep = representatives[key]
                            h = tree.path_translation(_hull(tree, rep), _hull(tree, translate))
                            if h is not None and not g.is_trivial(h):
                                word = g.to_text(g.reduce(h))
                                if word not in words:
                                    words.add(word)
                                    generators.append(h)
                        translate = _act(tree, s, translate)
                        if translate == first:
                            break
    generators.append(path_stabilizer_generator(tree, start))
    logging.debug(".... found stabilizer generators: " + str(len(generators)))
    return NielsenClass(start, points, list(representatives.values()), generators)


def is_elliptic_subgroup(tree: BassSerreTree = None, generators: list = None):
    """
    Decides whether the subgroup generated by loops fixes a point, which holds iff
    every generator and every product of two generators is elliptic

    Returns (True, None) or (False, loxodromic witness)

    """
    g = tree.graph
    for s in generators:
        if not tree.is_elliptic(s):
            return False, s
    for i, s in enumerate(generators):
        for t in generators[i + 1:]:
            st = g.multiply(s, t)
            if not tree.is_elliptic(st):
                return False, st
    return True, None


def bounded_growth(f: TrainTrackMap = None, g=None, n: int = 6):
    """
    Returns the translation lengths of phi^k(g) for k = 0, ..., n

    Each iterate is replaced by a conjugate through its axis before phi is applied
    again, the lengths being conjugacy invariants.

    """
    tree = f.tree
    lengths = []
    for k in range(n + 1):
        tl = tree.translation_length(g)
        lengths.append(tl.length)
        if k < n:
            g = f.apply(tree.conjugate_to_axis(g, tl))
    return lengths


def common_period(pinps: list = None):
    """Returns the lcm of the periods of the pINPs"""
    k = 1
    for pinp in pinps:
        k = lcm(k, pinp.period)
    return k


def has_periodic_growth(lengths: list = None, period: int = 1):
    """Returns True if the lengths are positive and repeat with the given period"""
    if len(lengths) <= period or lengths[0] == 0:
        return False
    return all(lengths[k + period] == lengths[k] for k in range(len(lengths) - period))


def decide_pseudo_atoroidal(f: TrainTrackMap = None, params: dict = {}):
    """
    Decides whether a primitive train track map has a pseudo-periodic conjugacy class

    Returns an AtoroidalVerdict

    """
    logging.info("deciding pseudo-atoroidality")
    pinps = PinpFinder(f, params).find_all_pinps()
    if len(pinps) == 0:
        logging.info("no pINPs, automorphism is pseudo-atoroidal")
        return AtoroidalVerdict(True, [], [], None, f)
    f, pinps = subdivide_at_pinps(f, pinps, params)
    classes = []
    witness = None
    for index in range(len(pinps)):
        nielsen = compute_nielsen_class(f, pinps, index, params)
        elliptic, loxodromic = is_elliptic_subgroup(f.tree, nielsen.stabilizer_generators)
        classes.append((nielsen, elliptic, loxodromic))
        if not elliptic and witness is None:
            witness = loxodromic
    logging.info("pseudo-atoroidal: " + str(witness is None))
    return AtoroidalVerdict(witness is None, pinps, classes, witness, f)


def nielsen_class_to_dict(f: TrainTrackMap = None, nielsen: NielsenClass = None,
                          elliptic: bool = True, witness=None):
    """ """
    g = f.graph
    tree = f.tree
    data = OrderedDict()
    data["seed"] = [g.to_text(tree.point_word(p)) for p in nielsen.seed]
    data["generators"] = [g.to_text(s) for s in nielsen.stabilizer_generators]
    data["representatives"] = len(nielsen.ey_reps)
    data["elliptic"] = elliptic
    if witness is not None:
        data["witness"] = g.to_text(witness)
        data["translation_length"] = tree.translation_length(witness).length
    return data
