from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gbsiwip
from gbsiwip import Edge, GraphOfGroups

bs_letters = st.lists(st.sampled_from(["a", "a^-1", "t", "T"]), max_size=8)


def test_baumslag_solitar_graph(bs23):
    assert bs23.vertices == ["v"]
    assert bs23.edges == ["t", "T"]
    assert bs23.chosen_edges == ["t"]
    assert bs23.label("t") == 2
    assert bs23.label("T") == 3
    assert bs23.reverse("t") == "T"
    assert bs23.degree("v") == 5
    assert bs23.validate() == (True, [])


def test_solvable_presentations_are_refused():
    ok, diagnostics = gbsiwip.baumslag_solitar(1, 2).validate()
    assert not ok
    assert "BS(1,2)" in diagnostics[0]
    ok, diagnostics = gbsiwip.rose({"x": (1, 1)}).validate()
    assert not ok
    assert "Z^2" in diagnostics[0]
    ok, diagnostics = gbsiwip.rose({"x": (1, -1)}).validate()
    assert not ok
    assert "Klein" in diagnostics[0]


def test_validate_reports_malformed_edges():
    graph = GraphOfGroups(
        vertices=["v", "w"],
        edges=[
            Edge("t", "T", "v", "v", 0),
            Edge("T", "t", "v", "v", 1),
            Edge("s", "S", "v", "w", 1),
        ],
    )
    ok, diagnostics = graph.validate()
    assert not ok
    assert any("label is zero" in d for d in diagnostics)
    assert any("reverse S missing" in d for d in diagnostics)


def test_disconnected_graph():
    graph = GraphOfGroups(
        vertices=["v", "w"],
        edges=[Edge("t", "T", "v", "v", 2), Edge("T", "t", "v", "v", 3)],
    )
    assert graph.validate() == (False, ["graph is not connected"])


def test_from_dict(bs23):
    graph = GraphOfGroups.from_dict(bs23.to_dict())
    assert graph.chosen_edges == ["t"]
    assert graph.label("T") == 3
    with pytest.raises(ValueError):
        GraphOfGroups.from_dict({"vertices": ["v"]})
    with pytest.raises(ValueError):
        GraphOfGroups.from_dict({"vertices": ["v"], "edges": [{"id": "t"}]})


def test_parse_and_print(bs23):
    w = bs23.word("a^2 t a^-1 T")
    assert w.start == "v"
    assert w.exps == (2, -1, 0)
    assert w.edges == ("t", "T")
    assert bs23.to_text(w) == "a^2 t a^-1 T"
    assert bs23.letters(bs23.word("a t")) == [{"vertex": "v", "exp": 1}, {"edge": "t"}]


def test_word_off_path(two_vertex_graph):
    with pytest.raises(ValueError):
        two_vertex_graph.word("c x")


def test_reduce(bs23):
    assert bs23.to_text(bs23.reduce(bs23.word("t a^3 T"))) == "a^2"
    assert bs23.to_text(bs23.reduce(bs23.word("T a^2 t"))) == "a^3"
    # no pinch when the exponent is not a multiple of the label
    assert bs23.to_text(bs23.reduce(bs23.word("t a T"))) == "t a T"


def test_normal_form(bs23):
    nf = bs23.normal_form(bs23.word("a^3 t"))
    assert bs23.to_text(nf) == "a t a^3"
    nf = bs23.normal_form(bs23.word("a^5 T"))
    assert nf.exps == (2, 2)


def test_word_problem(bs23, two_vertex_graph):
    assert bs23.is_trivial(bs23.word("a^2 t a^-3 T"))
    assert not bs23.is_trivial(bs23.word("a t a^-3 T"))
    with pytest.raises(ValueError):
        two_vertex_graph.is_trivial(two_vertex_graph.word("c"))


def test_modulus(bs23, f2z):
    assert bs23.modulus(bs23.word("t")) == Fraction(2, 3)
    assert bs23.modulus(bs23.word("t a T")) == 1
    assert bs23.is_unimodular(bs23.word("t a T"))
    assert f2z.is_unimodular(f2z.word("x y X"))


def test_power(bs23):
    t = bs23.word("t")
    assert bs23.power(t, 3).edges == ("t", "t", "t")
    assert bs23.is_trivial(bs23.multiply(bs23.power(t, -2), bs23.power(t, 2)))
    assert bs23.to_text(bs23.power(bs23.word("a"), 0)) == ""


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_inverse_law(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    w = graph.word(" ".join(letters), start="v")
    assert graph.is_trivial(graph.multiply(w, graph.inverse(w)))
    assert graph.is_trivial(graph.multiply(graph.normal_form(w), graph.inverse(w)))


def test_collapse_edge(two_vertex_graph):
    graph, rho, rho_inv = gbsiwip.collapse_edge(two_vertex_graph, "C")
    assert graph.vertices == ["u"]
    assert graph.chosen_edges == ["x", "y"]
    assert rho.vertex_map["v"] == ("u", 2)
    w = two_vertex_graph.word("c a C")
    assert graph.to_text(rho.rewrite(w)) == "a^2"
    with pytest.raises(ValueError):
        gbsiwip.collapse_edge(two_vertex_graph, "c")
    with pytest.raises(ValueError):
        gbsiwip.collapse_edge(two_vertex_graph, "x")


def test_subdivide_edge(bs23):
    graph, rho, rho_inv = gbsiwip.subdivide_edge(bs23, "t", 2)
    assert len(graph.vertices) == 3
    assert rho.edge_map["t"] == ("t.0", "t.1", "t.2")
    assert rho.edge_map["T"] == ("T.0", "T.1", "T.2")
    assert graph.label("t.0") == 2
    assert graph.label("T.0") == 3
    assert graph.label("t.1") == 1
    assert graph.reverse("t.0") == "T.2"
    assert graph.validate() == (True, [])
    w = bs23.word("a t a^-1 T")
    image = rho.rewrite(w)
    assert image.edges == ("t.0", "t.1", "t.2", "T.0", "T.1", "T.2")
    assert bs23.is_trivial(bs23.multiply(rho_inv.rewrite(image), bs23.inverse(w)))


def test_nx_graph(two_vertex_graph):
    graph = two_vertex_graph.nx_graph()
    assert graph.number_of_nodes() == 2
    assert graph.number_of_edges() == 3


rose_letters = st.lists(st.sampled_from(["a", "a^-1", "x", "X", "y", "Y"]), max_size=10)


def free_reduction(letters):
    stack = []
    for token in letters:
        if token.startswith("a"):
            continue
        if stack and stack[-1] == token.swapcase():
            stack.pop()
        else:
            stack.append(token)
    return tuple(stack)


@settings(max_examples=100, deadline=None)
@given(rose_letters)
def test_reduce_against_free_reduction(letters):
    graph = gbsiwip.rose({"x": (1, 1), "y": (1, 1)})
    w = graph.word(" ".join(letters), start="v")
    exponent = letters.count("a") - letters.count("a^-1")
    edges = free_reduction(letters)
    r = graph.reduce(w)
    assert r.edges == edges
    assert sum(r.exps) == exponent
    assert graph.is_trivial(w) == (len(edges) == 0 and exponent == 0)


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_reduce_is_idempotent(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    r = graph.reduce(graph.word(" ".join(letters), start="v"))
    assert graph.reduce(r) == r


@settings(max_examples=50, deadline=None)
@given(bs_letters, bs_letters)
def test_modulus_is_a_homomorphism(first, second):
    graph = gbsiwip.baumslag_solitar(2, 3)
    u = graph.word(" ".join(first), start="v")
    w = graph.word(" ".join(second), start="v")
    assert graph.modulus(graph.multiply(u, w)) == graph.modulus(u) * graph.modulus(w)
    assert graph.modulus(graph.inverse(u)) == 1 / graph.modulus(u)


@settings(max_examples=50, deadline=None)
@given(bs_letters)
def test_subdivide_edge_keeps_word_problem(letters):
    graph = gbsiwip.baumslag_solitar(2, 3)
    subdivided, rho, rho_inv = gbsiwip.subdivide_edge(graph, "t", 2)
    w = graph.word(" ".join(letters), start="v")
    assert subdivided.is_trivial(rho.rewrite(w)) == graph.is_trivial(w)
    assert graph.is_trivial(graph.multiply(rho_inv.rewrite(rho.rewrite(w)), graph.inverse(w)))
