from hypothesis import given, settings
from hypothesis import strategies as st

import gbsiwip
from gbsiwip import BassSerreTree, CoverPoint

bs_letters = st.lists(st.sampled_from(["a", "a^-1", "t", "T"]), max_size=6)


def make_tree(graph):
    tree = BassSerreTree(graph)
    return tree, lambda text: tree.point(graph.word(text, start=graph.basepoint))


def test_points(bs23):
    tree, point = make_tree(bs23)
    assert tree.root() == CoverPoint("v", ())
    assert point("t") == CoverPoint("v", ((0, "t"),))
    assert point("a t") == CoverPoint("v", ((1, "t"),))
    assert point("a^2 t") == point("t a^3")
    assert point("t a^3") == point("t")
    assert tree.point_eq(point("a^2 t"), point("t"))
    assert not tree.point_eq(point("a t"), point("t"))
    assert tree.point_word(point("a t")) == gbsiwip.GroupWord("v", (1, 0), ("t",))
    assert point("a t T") == tree.root()


def test_local_structure(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    assert tree.degree(root) == 5
    assert all(tree.distance(root, y) == 1 for y in tree.neighbours(root))
    assert len(set(tree.neighbours(root))) == 5
    x = point("t")
    assert tree.neighbour(x, (0, "T")) == root
    assert tree.neighbour(x, (1, "T")) == CoverPoint("v", ((0, "t"), (1, "T")))
    assert tree.direction(x, root) == (0, "T")
    assert tree.direction(root, x) == (0, "t")
    assert tree.shift_germ((1, "t")) == (0, "t")
    assert tree.shift_germ((1, "T"), 2) == (0, "T")


def test_stabilizers(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    assert tree.act(bs23.word("a"), root) == root
    assert tree.act(bs23.word("a"), point("t")) == point("a t")
    x = point("t")
    assert tree.act(tree.stabilizer_generator(x), x) == x
    assert tree.orbit_size(root, point("t")) == 2
    assert tree.orbit_size(root, point("T")) == 3
    assert tree.orbit_size(root, root) == 1


def test_metric(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    assert tree.distance(point("t t"), point("T")) == 3
    assert tree.geodesic(root, point("t t")) == (root, point("t"), point("t t"))
    assert tree.point_along(point("t t"), point("T"), 2) == root
    assert tree.median(point("t t"), point("t a T"), point("T")) == point("t")
    assert tree.median(point("t"), point("T"), point("a t")) == root
    assert tree.median(point("t t"), point("t a t"), root) == point("t")
    assert tree.tighten((root, point("t"), root, point("T"))) == (root, point("T"))
    assert not tree.is_tight((root, point("t"), root))
    assert len(tree.edge_paths_from(root, 2)) == 20


def test_orbits(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    g = tree.same_orbit(point("t"), point("a t"))
    assert tree.act(g, point("t")) == point("a t")
    g = tree.pair_same_orbit(root, point("t"), root, point("a t"))
    assert tree.act(g, root) == root
    assert tree.act(g, point("t")) == point("a t")
    assert tree.pair_same_orbit(root, point("t"), root, point("T")) is None


def test_find_translation(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    g = tree.find_translation([root, point("t")], [point("t"), point("t t")])
    assert tree.act(g, root) == point("t")
    assert tree.act(g, point("t")) == point("t t")
    assert tree.find_translation([root, point("t")], [root, point("T")]) is None
    g = tree.path_translation((point("t"), root), (root, point("a t")))
    assert {tree.act(g, point("t")), tree.act(g, root)} == {root, point("a t")}


def test_path_orbit_key(bs23):
    tree, point = make_tree(bs23)
    root = tree.root()
    key = tree.path_orbit_key((root, point("t")))
    assert key == ("v", ((0, "t"),))
    assert tree.path_orbit_key((root, point("a t"))) == key
    assert tree.path_orbit_key((root, point("T"))) != key
    assert tree.key_path(key) == (root, point("t"))
    path = (point("T"), root, point("t"))
    assert tree.path_orbit_key(path, oriented=False) == tree.path_orbit_key(
        path[::-1], oriented=False
    )


def test_turn_classes(bs23):
    tree, _ = make_tree(bs23)
    classes = tree.turn_classes("v")
    assert len(classes) == 5
    assert sum(1 for c in classes if tree.is_degenerate_class(c)) == 2
    root = tree.root()
    assert tree.turn_class(root, (0, "T"), (1, "T")) == tree.turn_class(root, (0, "T"), (2, "T"))
    assert tree.turn_class(root, (0, "t"), (0, "T")) == ("v", "T", "t", 0)


def test_translation_length(bs23):
    tree, point = make_tree(bs23)
    result = tree.translation_length(bs23.word("t"))
    assert result.length == 1
    assert result.kind == gbsiwip.LOXODROMIC
    assert len(result.axis) == 2
    result = tree.translation_length(bs23.word("a"))
    assert result == (0, gbsiwip.ELLIPTIC, (tree.root(),))
    result = tree.translation_length(bs23.word("t a T"))
    assert result.kind == gbsiwip.ELLIPTIC
    assert result.axis == (point("t"),)
    assert tree.translation_length(bs23.word("a t a T")).length == 2
    assert not tree.is_elliptic(bs23.word("a t a T"))


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_translation_length_against_displacement(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    tree = BassSerreTree(graph)
    g = graph.word(" ".join(letters), start="v")
    x = tree.root()
    d1 = tree.distance(x, tree.act(g, x))
    d2 = tree.distance(x, tree.act(graph.power(g, 2), x))
    assert tree.translation_length(g).length == max(0, d2 - d1)


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_degree_law(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    tree = BassSerreTree(graph)
    y = tree.point(graph.word(" ".join(letters), start="v"))
    expected = sum(abs(graph.label(e)) for e in graph.edges if graph.origin(e) == y.vertex)
    assert tree.degree(y) == expected == graph.degree(y.vertex)
    neighbours = tree.neighbours(y)
    assert len(set(neighbours)) == expected
    assert all(tree.distance(y, z) == 1 for z in neighbours)


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_translation_length_of_square(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    tree = BassSerreTree(graph)
    g = graph.word(" ".join(letters), start="v")
    length = tree.translation_length(g).length
    assert tree.translation_length(graph.power(g, 2)).length == 2 * length


def test_translation_length_of_disjoint_axes(f2z):
    tree = BassSerreTree(f2z)
    word = f2z.word
    g = word("x")
    # axes at distance 1 and 2
    for h, d in [(word("y x Y"), 1), (word("y y x Y Y"), 2)]:
        assert tree.translation_length(h).length == 1
        gh = f2z.multiply(g, h)
        assert tree.translation_length(gh).length == 1 + 1 + 2 * d


def test_conjugate_to_axis(bs23):
    tree = BassSerreTree(bs23)
    g = bs23.word("t t a t a T T")
    h = tree.conjugate_to_axis(g)
    assert tree.translation_length(h).length == tree.translation_length(g).length
    assert len(h.edges) < len(g.edges)
    h = tree.conjugate_to_axis(bs23.word("t a T"))
    assert tree.is_elliptic(h)
    assert tree.act(h, tree.root()) == tree.root()


def test_point_cache_is_bounded(bs23):
    tree = BassSerreTree(bs23, {gbsiwip.MAX_CACHE: 4})
    for k in range(1, 10):
        tree.point(bs23.word("t " * k))
    info = tree.cache_info()
    assert info.maxsize == 4
    assert info.currsize <= 4
    assert tree.point(bs23.word("t t")) == CoverPoint("v", ((0, "t"), (0, "t")))
