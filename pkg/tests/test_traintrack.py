import itertools

import numpy as np
import pytest

import gbsiwip
from gbsiwip import InputError, TrainTrackMap

from .conftest import TORUS_MAP


def test_marking_generators(torus, collapsible):
    assert list(torus.generators.keys()) == ["a:v", "t:x", "t:y"]
    assert list(collapsible.generators.keys()) == ["a:u", "a:v", "t:x", "t:y"]
    g = collapsible.graph
    assert g.to_text(collapsible.generators["a:v"]) == "a^2"


def test_apply(torus):
    g = torus.graph
    w = g.word("x Y a")
    assert g.to_text(torus.apply(w)) == "Y a"
    assert g.is_trivial(g.multiply(torus.apply_inverse(torus.apply(w)), g.inverse(w)))


def test_edge_images(torus):
    tree = torus.tree
    assert len(torus.edge_image("x")) == 3
    assert len(torus.edge_image("y")) == 4
    assert len(torus.edge_image("Y")) == 4
    assert tree.is_tight(torus.edge_image("X"))
    assert len(torus.power(2).edge_image("x")) == 6
    assert torus.power(2).edge_image("x") == torus.image_path(torus.edge_image("x"))


def test_transition_matrix(torus, fibonacci, tribonacci):
    assert gbsiwip.transition_matrix(torus).tolist() == [[1, 1], [1, 2]]
    assert gbsiwip.transition_matrix(fibonacci).tolist() == [[1, 1], [1, 0]]
    assert gbsiwip.transition_matrix(tribonacci).tolist() == [
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 0],
    ]
    frame = gbsiwip.transition_frame(torus)
    assert list(frame.index) == ["x", "y"]
    assert frame.loc["y", "y"] == 2


def test_matrix_decisions():
    assert gbsiwip.is_irreducible(np.array([[1, 1], [1, 0]])) == (True, None)
    assert gbsiwip.is_irreducible(np.array([[1, 0], [1, 1]])) == (False, [1])
    assert gbsiwip.is_irreducible(np.array([[0]])) == (False, [])
    assert gbsiwip.primitivity_exponent(np.array([[1, 1], [1, 2]])) == 1
    assert gbsiwip.primitivity_exponent(np.array([[1, 1], [1, 0]])) == 2
    assert gbsiwip.primitivity_exponent(np.array([[0, 0, 1], [1, 0, 1], [0, 1, 0]])) == 5
    assert not gbsiwip.is_primitive(np.array([[0, 1], [1, 0]]))
    assert gbsiwip.period_classes(np.array([[0, 1], [1, 0]])) == [[0], [1]]
    assert gbsiwip.pf_is_one(np.array([[0, 1], [1, 0]]))
    assert not gbsiwip.pf_is_one(np.array([[1, 1], [1, 0]]))
    with pytest.raises(ValueError):
        gbsiwip.pf_is_one(np.array([[1, 0], [1, 1]]))
    assert gbsiwip.invariant_blocks(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])) == [
        [0, 1],
        [2],
    ]


def test_turn_table(torus):
    table = torus.turn_table
    assert len(table.classes) == 10
    assert table.illegal_classes("v") == [("v", "X", "Y", 0)]
    assert table.image[("v", "X", "y", 0)] == ("v", "Y", "y", 0)
    assert table.is_legal(("v", "x", "y", 0))
    frame = table.to_frame()
    assert len(frame) == 10
    assert frame["legal"].sum() == 5


def test_legal_paths(torus):
    tree = torus.tree
    root = tree.root()
    x = tree.neighbour(root, (0, "X"))
    y = tree.neighbour(root, (0, "Y"))
    assert torus.illegal_turns((x, root, y)) == [1]
    assert torus.is_legal_path(torus.power(3).edge_image("y"))


def test_verify(torus, fibonacci, tribonacci, reducible, collapsible):
    for f in [torus, fibonacci, tribonacci, reducible, collapsible]:
        assert f.verify() == (True, None)
    assert gbsiwip.verify_train_track(torus) == (True, None)


def test_verify_counterexamples(f2z):
    data = dict(TORUS_MAP)
    data["phi"] = {"a:v": "a x", "t:x": "x y", "t:y": "y x y"}
    del data["phi_inverse"]
    ok, counterexample = TrainTrackMap.from_dict(f2z, data).verify()
    assert not ok
    assert counterexample["check"] == "relation"

    data = dict(TORUS_MAP)
    data["phi_inverse"] = {"a:v": "a", "t:x": "x", "t:y": "y"}
    ok, counterexample = TrainTrackMap.from_dict(f2z, data).verify()
    assert counterexample["check"] == "inverse"

    data = dict(TORUS_MAP)
    data["phi"] = {"a:v": "a", "t:x": "x y", "t:y": "Y"}
    del data["phi_inverse"]
    ok, counterexample = TrainTrackMap.from_dict(f2z, data).verify()
    assert counterexample["check"] == "legal"


def test_map_input_errors(f2z):
    with pytest.raises(InputError):
        TrainTrackMap.from_dict(f2z, {"phi": {"a:v": "a"}, "vertex_images": {"v": ""}})
    with pytest.raises(InputError):
        TrainTrackMap.from_dict(f2z, {"phi": TORUS_MAP["phi"]})
    with pytest.raises(InputError):
        TrainTrackMap.from_dict(
            f2z, {"phi": dict(TORUS_MAP["phi"], **{"t:x": "x q"}), "vertex_images": {"v": ""}}
        )


def test_to_dict(torus):
    data = torus.to_dict()
    assert data["phi"] == TORUS_MAP["phi"]
    assert data["vertex_images"] == {"v": ""}
    assert TrainTrackMap.from_dict(torus.graph, data).verify()[0]


def test_collapse_to_irreducible(torus, reducible, collapsible, permutation):
    result = gbsiwip.collapse_to_irreducible(torus)
    assert isinstance(result, gbsiwip.PrimitiveTT)
    assert result.map is torus

    result = gbsiwip.collapse_to_irreducible(reducible)
    assert result.kind == gbsiwip.INVARIANT_SUBGRAPH
    assert result.edges == ["t"]
    assert not result.detail["collapsible"]
    assert gbsiwip.recheck_certificate(result)

    result = gbsiwip.collapse_to_irreducible(collapsible)
    assert result.kind == gbsiwip.ISOMETRY
    assert result.edges == ["x", "y"]
    assert result.map.graph.vertices == ["u"]
    assert gbsiwip.recheck_certificate(result)
    assert gbsiwip.certificate_to_dict(result)["detail"] == {"matrix": [[0, 1], [1, 0]]}

    result = gbsiwip.collapse_to_irreducible(permutation)
    assert result.kind == gbsiwip.ISOMETRY


def test_collapse_order(two_vertex_graph):
    assert gbsiwip.collapse_order(two_vertex_graph, ["c"]) == ["C"]
    assert gbsiwip.collapse_order(two_vertex_graph, ["x"]) is None


def test_collapse_to_smaller_primitive_map(collapsible_primitive):
    f = collapsible_primitive
    assert f.verify() == (True, None)
    assert not gbsiwip.is_irreducible(gbsiwip.transition_matrix(f))[0]
    result = gbsiwip.collapse_to_irreducible(f)
    assert isinstance(result, gbsiwip.PrimitiveTT)
    assert result.map.graph.vertices == ["u"]
    assert result.map.graph.chosen_edges == ["x", "y"]
    assert gbsiwip.transition_matrix(result.map).tolist() == [[1, 1], [1, 2]]
    assert result.map.verify() == (True, None)


def test_transition_matrix_of_square(torus, fibonacci, tribonacci):
    for f in [torus, fibonacci, tribonacci]:
        A = gbsiwip.transition_matrix(f)
        assert gbsiwip.transition_matrix(f.power(2)).tolist() == A.dot(A).tolist()


def test_legal_paths_stay_legal(torus, fibonacci, tribonacci):
    for f in [torus, fibonacci, tribonacci]:
        for e in f.graph.chosen_edges:
            path = f.edge_image(e)
            for _ in range(3):
                assert f.is_legal_path(path)
                path = f.image_path(path)


def test_is_primitive_against_powers():
    for n in range(1, 4):
        bound = (n - 1) ** 2 + 1
        for entries in itertools.product([0, 1], repeat=n * n):
            A = np.array(entries, dtype=np.int64).reshape(n, n)
            expected = bool((np.linalg.matrix_power(A, bound) > 0).all())
            assert gbsiwip.is_primitive(A) == expected


def test_vertex_groups_are_preserved(torus, collapsible, collapsible_primitive, twisted):
    for f in [torus, collapsible, collapsible_primitive, twisted]:
        tree = f.tree
        for v in f.graph.vertices:
            a = f.generators[gbsiwip.vertex_generator(v)]
            p = tree.vertex_representative(v)
            assert tree.act(a, p) == p
            image = f.apply(a)
            assert tree.is_elliptic(image)
            assert tree.act(image, f.vertex_images[v]) == f.vertex_images[v]
            assert f.image_point(p) == f.vertex_images[v]


def test_image_cache_is_bounded(f2z):
    f = TrainTrackMap.from_dict(f2z, TORUS_MAP, params={gbsiwip.MAX_CACHE: 3})
    assert gbsiwip.transition_matrix(f).tolist() == [[1, 1], [1, 2]]
    assert f.is_legal_path(f.power(3).edge_image("y"))
    info = f.cache_info()
    assert info.maxsize == 3
    assert info.currsize <= 3
