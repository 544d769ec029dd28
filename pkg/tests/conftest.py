import pytest

from graphheight.graphs import Edge, FamilyId, TopoGraph, make_family


def fam(label: str) -> TopoGraph:
    return make_family(FamilyId.parse(label))


@pytest.fixture
def interval():
    return fam("interval")


@pytest.fixture
def circle():
    return fam("circle")


@pytest.fixture
def star3():
    return fam("star:3")


@pytest.fixture
def lollipop():
    return fam("lollipop")


@pytest.fixture
def theta():
    return TopoGraph(
        ("a", "b"),
        (Edge("e1", "a", "b"), Edge("e2", "a", "b"), Edge("e3", "a", "b")),
    )


@pytest.fixture
def dumbbell():
    return TopoGraph(
        ("a", "b"),
        (Edge("la", "a", "a"), Edge("bridge", "a", "b"), Edge("lb", "b", "b")),
    )
