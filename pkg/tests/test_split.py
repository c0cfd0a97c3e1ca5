import random

import pytest

from fixtures import W, cuboctahedron, octahedron, pretzel, sandwich, w34_graph
from ravol import andreev_pipeline, enumerate_four_circuits, split_along, validate_andreev
from ravol.errors import NotPrismatic
from ravol.split import PolyhedralGraph, decompose, is_simple, is_three_connected
from ravol.tangles import tangle_sum


def test_split_conserves_vertices():
    d = tangle_sum(W(3, 3), 0, W(3, 4), 0)
    g = PolyhedralGraph(d.map)
    c = next(c for c in enumerate_four_circuits(d) if not c.is_trivial)
    a, b = split_along(g, c)
    assert a.num_vertices + b.num_vertices == g.num_vertices + 2
    assert {a.canonical_code, b.canonical_code} == {W(3, 3).map.canonical_code, W(3, 4).map.canonical_code}
    assert a.markers and b.markers


def test_split_rejects_non_prismatic():
    for c in enumerate_four_circuits(octahedron()):
        with pytest.raises(NotPrismatic):
            split_along(octahedron(), c)
    c = next(c for c in enumerate_four_circuits(W(3, 2)) if not c.is_trivial)
    with pytest.raises(NotPrismatic):
        split_along(PolyhedralGraph(W(3, 2).map), c)


def test_andreev_validator():
    assert validate_andreev(octahedron())
    assert validate_andreev(cuboctahedron())
    assert validate_andreev(w34_graph())
    assert not validate_andreev(W(2, 5).map)
    assert not validate_andreev(tangle_sum(W(3, 3), 0, W(3, 3), 0).map)
    assert not is_simple(W(2, 5).map)
    assert is_three_connected(octahedron().map)


def test_pipeline_outputs():
    assert [g.num_vertices for g in andreev_pipeline(W(3, 3))] == [6]
    assert andreev_pipeline(pretzel(3)) == []
    assert andreev_pipeline(W(3, 2)) == []
    for q in range(3, 8):
        (g,) = andreev_pipeline(W(3, q))
        assert g.canonical_code == W(3, q).map.canonical_code


def test_pipeline_emits_only_andreev_graphs():
    for d in (sandwich(6, 2), tangle_sum(tangle_sum(W(3, 3), 0, W(3, 4), 0), 3, W(3, 3), 2)):
        result = decompose(d)
        assert result.polyhedra
        assert all(validate_andreev(g) for g in result.polyhedra)
        events = [e["event"] for e in result.trace]
        assert "split" in events and events.count("emit") == len(result.polyhedra)


def test_emitted_multiset_independent_of_split_order():
    d = tangle_sum(tangle_sum(W(3, 3), 0, W(3, 4), 0), 3, W(3, 5), 2)
    base = sorted(g.canonical_code for g in andreev_pipeline(d))
    assert len(base) == 3
    for seed in range(4):
        rnd = random.Random(seed)
        out = decompose(d, pick=lambda cs: rnd.choice(cs)).polyhedra
        assert sorted(g.canonical_code for g in out) == base


def test_json_form():
    js = PolyhedralGraph(octahedron().map).to_json()
    assert js["vertices"] == 6 and js["faces"] == [3] * 8
