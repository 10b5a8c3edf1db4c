import pytest

from k3lat.graph import config_from_data


def d6tilde_plus_three(attach=("f1", "f2", "f3")):
    """Double-fork chain (the 7-vertex degenerate diagram) with three extra
    curves attached to three of the four simple components."""
    verts = [(v, -2, 1) for v in ["f1", "f2", "c1", "c2", "c3", "f3", "f4"]]
    verts += [(f"s{i}", -2, 1) for i in range(1, 4)]
    edges = [("f1", "c1"), ("f2", "c1"), ("c1", "c2"), ("c2", "c3"),
             ("c3", "f3"), ("c3", "f4")]
    edges += [(f"s{i}", v) for i, v in enumerate(attach, start=1)]
    return config_from_data(verts, edges, name="d6tilde-plus-three")


def i3star_four_sections():
    """8-vertex double-fork chain with a disjoint section on each simple
    component; 12 vertices, hyperbolic of rank 12."""
    verts = [(v, -2, 1) for v in
             ["f1", "f2", "c1", "c2", "c3", "c4", "f3", "f4"]]
    verts += [(f"s{i}", -2, 1) for i in range(1, 5)]
    edges = [("f1", "c1"), ("f2", "c1"), ("c1", "c2"), ("c2", "c3"),
             ("c3", "c4"), ("c4", "f3"), ("c4", "f4")]
    edges += [("s1", "f1"), ("s2", "f2"), ("s3", "f3"), ("s4", "f4")]
    return config_from_data(verts, edges, name="i3star-four-sections")


def ivstar_three_a2():
    """Star with three arms of length four: the 7-vertex additive fiber
    diagram extended by a 2-chain on each arm; 13 vertices."""
    verts = [("z", -2, 1)]
    verts += [(f"a{i}{j}", -2, 1) for i in (1, 2, 3) for j in (1, 2, 3, 4)]
    edges = []
    for i in (1, 2, 3):
        edges.append(("z", f"a{i}1"))
        for j in (1, 2, 3):
            edges.append((f"a{i}{j}", f"a{i}{j + 1}"))
    return config_from_data(verts, edges, name="ivstar-three-a2")


@pytest.fixture
def d6tilde_cfg():
    return d6tilde_plus_three()


@pytest.fixture
def char3_cfg():
    return i3star_four_sections()


@pytest.fixture
def char2_cfg():
    return ivstar_three_a2()
