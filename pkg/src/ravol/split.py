"""Splitting along prismatic 4-circuits and the decomposition pipeline."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .circuits import FourCircuit, collapse_side, enumerate_four_circuits, is_prismatic
from .diagram import Diagram
from .errors import NotPrismatic, ReductionBrokeInvariant
from .planar import PlanarMap
from .reduce import TrivialDiagram, rational_reduce


@dataclass(frozen=True, eq=False)
class PolyhedralGraph:
    """A 4-valent planar graph produced by the decomposition.

    ``markers`` are the labels of vertices created by splits; ``trace``
    records the operations that produced the graph.
    """

    map: PlanarMap
    markers: frozenset[int] = frozenset()
    trace: tuple[str, ...] = ()

    @property
    def num_vertices(self) -> int:
        return self.map.num_vertices

    @property
    def faces(self):
        return self.map.faces

    @property
    def canonical_code(self) -> tuple[int, ...]:
        return self.map.canonical_code

    def planar_code(self) -> list[list[int]]:
        return self.map.rotation()

    def to_json(self) -> dict:
        return {
            "vertices": self.num_vertices,
            "rotation": self.planar_code(),
            "faces": sorted(len(f) for f in self.faces),
            "markers": sorted(self.markers),
            "trace": list(self.trace),
        }


def _split_maps(pm: PlanarMap, c: FourCircuit) -> tuple[tuple[PlanarMap, int, dict], tuple[PlanarMap, int, dict]]:
    label = max(pm.labels) + 1
    inner = collapse_side(pm, c, c.outside, label)
    outer = collapse_side(pm, c, c.inside, label)
    return inner, outer


def split_along(p: PolyhedralGraph, g: FourCircuit) -> tuple[PolyhedralGraph, PolyhedralGraph]:
    """Cut ``p`` along ``g`` and cap each side with one new vertex.

    Returns the piece keeping the smaller side first.
    """
    if not is_prismatic(g):
        raise NotPrismatic(f"circuit through edges {g.edges} is not prismatic")
    (a, ya, _), (b, yb, _) = _split_maps(p.map, g)
    step = f"split {len(g.inside)}|{len(g.outside)}"
    return (
        PolyhedralGraph(a, p.markers | {a.labels[ya]}, p.trace + (step,)),
        PolyhedralGraph(b, p.markers | {b.labels[yb]}, p.trace + (step,)),
    )


def _split_diagram(d: Diagram, c: FourCircuit) -> tuple[Diagram, Diagram]:
    out = []
    for new_map, y, index in _split_maps(d.map, c):
        over = [False] * new_map.num_darts
        for v, i in index.items():
            if i == y:
                continue
            for k in range(4):
                over[4 * i + k] = d.over[4 * v + k]
        for k in range(4):
            over[4 * y + k] = not over[new_map.mate[4 * y + k]]
        try:
            piece = Diagram(new_map, tuple(over))
        except Exception as exc:
            raise ReductionBrokeInvariant(f"split produced an invalid piece: {exc}") from exc
        if not piece.is_alternating():
            raise ReductionBrokeInvariant("split produced a non-alternating piece")
        out.append(piece)
    return out[0], out[1]


def is_simple(pm: PlanarMap) -> bool:
    for v in range(pm.num_vertices):
        nbrs = pm.neighbors(v)
        if v in nbrs or len(set(nbrs)) != 4:
            return False
    return True


def is_three_connected(pm: PlanarMap) -> bool:
    n = pm.num_vertices
    if n < 4:
        return False
    for pair in itertools.combinations(range(n), 2):
        if len(pm.components(removed_vertices=pair)) != 1:
            return False
    return True


def validate_andreev(g) -> bool:
    pm = g if isinstance(g, PlanarMap) else g.map
    if pm.num_vertices < 6 or not is_simple(pm) or not is_three_connected(pm):
        return False
    return all(c.is_trivial for c in enumerate_four_circuits(pm))


def split_priority(c: FourCircuit) -> tuple:
    return (-c.inside_count, c.edges)


@dataclass
class PipelineResult:
    polyhedra: list[PolyhedralGraph]
    trace: list[dict] = field(default_factory=list)


def decompose(
    d: Diagram,
    rng: random.Random | None = None,
    pick: Callable[[list[FourCircuit]], FourCircuit] | None = None,
) -> PipelineResult:
    """Rationally reduce and split until only Andreev polyhedra remain.

    ``rng`` permutes the greedy choice of disjoint tangles during reduction;
    ``pick`` overrides which nontrivial circuit to split along.
    """
    result = PipelineResult([])
    work: list[tuple[Diagram, tuple[str, ...]]] = [(d, ())]
    while work:
        cur, history = work.pop()
        before = cur.num_crossings
        red = rational_reduce(cur, rng)
        if isinstance(red, TrivialDiagram):
            result.trace.append({"event": "discard", "crossings": before})
            continue
        if red.num_crossings != before:
            history = history + (f"reduce {before}->{red.num_crossings}",)
            result.trace.append({"event": "reduce", "before": before, "after": red.num_crossings})
        circuits = enumerate_four_circuits(red)
        nontrivial = [c for c in circuits if not c.is_trivial]
        if not nontrivial:
            g = PolyhedralGraph(red.map, frozenset(), history)
            if not validate_andreev(g):
                raise ReductionBrokeInvariant(
                    f"reduced diagram with {red.num_crossings} crossings is not an Andreev graph")
            result.trace.append({"event": "emit", "vertices": red.num_crossings})
            result.polyhedra.append(g)
            continue
        bad = [c for c in nontrivial if not is_prismatic(c)]
        if bad:
            raise ReductionBrokeInvariant("nontrivial circuit survived reduction without being prismatic")
        c = pick(nontrivial) if pick else min(nontrivial, key=split_priority)
        inner, outer = _split_diagram(red, c)
        step = f"split {c.inside_count}|{c.outside_count}"
        result.trace.append({
            "event": "split", "edges": list(c.edges),
            "sides": [c.inside_count, c.outside_count],
        })
        work.append((outer, history + (step,)))
        work.append((inner, history + (step,)))
    result.polyhedra.sort(key=lambda g: g.canonical_code)
    return result


def andreev_pipeline(d: Diagram, rng: random.Random | None = None, pick=None) -> list[PolyhedralGraph]:
    return decompose(d, rng, pick).polyhedra
