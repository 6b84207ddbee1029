"""
    - https://docs.pytest.org/en/stable/fixture.html
    - https://docs.pytest.org/en/stable/writing_plugins.html
"""

import pytest

import gbsiwip
from gbsiwip import Edge, GraphOfGroups, TrainTrackMap

TORUS_MAP = {
    "phi": {"a:v": "a", "t:x": "x y", "t:y": "y x y"},
    "phi_inverse": {"a:v": "a", "t:x": "x x Y", "t:y": "y X"},
    "vertex_images": {"v": ""},
}

FIBONACCI_MAP = {
    "phi": {"a:v": "a", "t:x": "x y", "t:y": "x"},
    "phi_inverse": {"a:v": "a", "t:x": "y", "t:y": "Y x"},
    "vertex_images": {"v": ""},
}

TRIBONACCI_MAP = {
    "phi": {"a:v": "a", "t:x": "y", "t:y": "z", "t:z": "x y"},
    "phi_inverse": {"a:v": "a", "t:x": "z X", "t:y": "x", "t:z": "y"},
    "vertex_images": {"v": ""},
}

PERMUTATION_MAP = {
    "phi": {"a:v": "a", "t:x": "y", "t:y": "x"},
    "phi_inverse": {"a:v": "a", "t:x": "y", "t:y": "x"},
    "vertex_images": {"v": ""},
}

REDUCIBLE_MAP = {
    "phi": {"a:v": "a", "t:s": "s t", "t:t": "t"},
    "vertex_images": {"v": ""},
}

COLLAPSIBLE_MAP = {
    "phi": {"a:u": "a", "a:v": "c a C", "t:x": "y", "t:y": "x"},
    "vertex_images": {"u": "", "v": "c"},
}

TWISTED_MAP = {
    "phi": {"a:v": "a", "t:x": "y x", "t:y": "y x y x x"},
    "vertex_images": {"v": ""},
}

COLLAPSIBLE_PRIMITIVE_MAP = {
    "phi": {"a:u": "a", "a:v": "c a C", "t:x": "x y", "t:y": "y x y"},
    "vertex_images": {"u": "", "v": "c"},
}


@pytest.fixture
def bs23():
    return gbsiwip.baumslag_solitar(2, 3)


@pytest.fixture
def bs24():
    return gbsiwip.baumslag_solitar(2, 4)


@pytest.fixture
def f2z():
    return gbsiwip.rose({"x": (1, 1), "y": (1, 1)})


@pytest.fixture
def f3z():
    return gbsiwip.rose({"x": (1, 1), "y": (1, 1), "z": (1, 1)})


@pytest.fixture
def torus(f2z):
    return TrainTrackMap.from_dict(f2z, TORUS_MAP)


@pytest.fixture
def fibonacci(f2z):
    return TrainTrackMap.from_dict(f2z, FIBONACCI_MAP)


@pytest.fixture
def tribonacci(f3z):
    return TrainTrackMap.from_dict(f3z, TRIBONACCI_MAP)


@pytest.fixture
def permutation(f2z):
    return TrainTrackMap.from_dict(f2z, PERMUTATION_MAP)


@pytest.fixture
def reducible():
    graph = gbsiwip.rose({"s": (2, 2), "t": (1, 1)})
    return TrainTrackMap.from_dict(graph, REDUCIBLE_MAP)


@pytest.fixture
def two_vertex_graph():
    return GraphOfGroups(
        vertices=["u", "v"],
        edges=[
            Edge("x", "X", "u", "u", 1),
            Edge("X", "x", "u", "u", 1),
            Edge("y", "Y", "u", "u", 1),
            Edge("Y", "y", "u", "u", 1),
            Edge("c", "C", "u", "v", 2),
            Edge("C", "c", "v", "u", 1),
        ],
    )


@pytest.fixture
def collapsible(two_vertex_graph):
    return TrainTrackMap.from_dict(two_vertex_graph, COLLAPSIBLE_MAP)


@pytest.fixture
def twisted(f2z):
    return TrainTrackMap.from_dict(f2z, TWISTED_MAP)


@pytest.fixture
def collapsible_primitive(two_vertex_graph):
    return TrainTrackMap.from_dict(two_vertex_graph, COLLAPSIBLE_PRIMITIVE_MAP)
