"""Rational reduction.

Each step collapses every selected one-boundary rational tangle to a single
crossing and deletes the crossings of every selected two-boundary rational
tangle, splicing the four strands straight through the emptied annulus.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .circuits import (
    BoundingPair,
    SideLattice,
    bounding_pair_candidates,
    collapse_side,
    select_disjoint,
)
from .diagram import Diagram
from .errors import ReductionBrokeInvariant
from .planar import PlanarMap


@dataclass(frozen=True)
class TrivialDiagram:
    """Stand-in for a diagram reduced to at most one crossing."""

    crossings: int = 1

    @property
    def num_crossings(self) -> int:
        return self.crossings


TRIVIAL = TrivialDiagram()


def _finish(pm: PlanarMap, over: list[bool]) -> Diagram:
    try:
        out = Diagram(pm, tuple(over))
    except Exception as exc:
        raise ReductionBrokeInvariant(str(exc)) from exc
    if not out.is_alternating():
        raise ReductionBrokeInvariant("reduction produced a non-alternating diagram")
    return out


def collapse_tangle(d: Diagram, pair: BoundingPair) -> Diagram:
    """Replace a one-boundary rational tangle by one crossing."""
    pm = d.map
    label = max(pm.labels) + 1
    new_map, y, index = collapse_side(pm, pair.outer, pair.outer_side, label)
    over = [False] * new_map.num_darts
    for v, i in index.items():
        if v == pm.num_vertices:
            continue
        for k in range(4):
            over[4 * i + k] = d.over[4 * v + k]
    for k in range(4):
        dart = 4 * y + k
        over[dart] = not over[new_map.mate[dart]]
    return _finish(new_map, over)


def splice_out(d: Diagram, pair: BoundingPair) -> Diagram:
    """Delete the crossings between two parallel circuits."""
    pm = d.map
    slots = list(pair.outer.oriented(pair.outer_side))
    first = tuple(slots)
    for s, circuit in pair.chain[1:]:
        nxt = circuit.oriented(s)
        shared = [i for i, e in enumerate(slots) if e in nxt]
        for r in range(4):
            if all(nxt[(i + r) % 4] == slots[i] for i in shared):
                slots = [nxt[(i + r) % 4] for i in range(4)]
                break
        else:
            raise ReductionBrokeInvariant("parallel circuits disagree on orientation")

    top, bottom = pair.outer_side, pair.inner_side
    region = top - bottom
    links = []
    for a, b in zip(first, slots):
        if a == b:
            continue
        da, ma = pm.edges[a]
        outer = da if (da >> 2) not in top else ma
        db, mb = pm.edges[b]
        inner = db if (db >> 2) in bottom else mb
        if d.over[outer] == d.over[inner]:
            raise ReductionBrokeInvariant("splice would break alternation")
        links.append((outer, inner))
    keep = [v for v in range(pm.num_vertices) if v not in region]
    new_map, index = pm.rebuild(keep, 0, links)
    over = [False] * new_map.num_darts
    for v, i in index.items():
        for k in range(4):
            over[4 * i + k] = d.over[4 * v + k]
    return _finish(new_map, over)


def _relocate(d: Diagram, labels: frozenset[int], boundaries: int) -> BoundingPair | None:
    lattice = SideLattice.of(d)
    for p in bounding_pair_candidates(lattice):
        if p.boundaries == boundaries and frozenset(d.map.labels[v] for v in p.tangle) == labels:
            return p
    return None


def rational_reduce_step(d, rng: random.Random | None = None):
    """One round of reduction; returns ``(diagram, changed)``."""
    if isinstance(d, TrivialDiagram):
        return d, False
    if d.num_crossings <= 1:
        return TRIVIAL, True
    lattice = SideLattice.of(d)
    if lattice.visibly_two_bridge() is not None:
        return TRIVIAL, True
    pairs = select_disjoint(bounding_pair_candidates(lattice), rng)
    if not pairs:
        return d, False
    targets = [(frozenset(d.map.labels[v] for v in p.tangle), p.boundaries) for p in pairs]
    cur = d
    for i, (labels, boundaries) in enumerate(targets):
        pair = pairs[0] if i == 0 else _relocate(cur, labels, boundaries)
        if pair is None:
            continue
        before = cur.num_crossings
        cur = collapse_tangle(cur, pair) if boundaries == 1 else splice_out(cur, pair)
        if cur.num_crossings >= before:
            raise ReductionBrokeInvariant("reduction step did not remove a crossing")
        if cur.num_crossings <= 1:
            return TRIVIAL, True
    return cur, True


def rational_reduce(d, rng: random.Random | None = None):
    """Iterate reduction steps to the fixpoint."""
    for _ in range(max(1, d.num_crossings) + 1):
        d, changed = rational_reduce_step(d, rng)
        if not changed:
            return d
    raise ReductionBrokeInvariant("rational reduction did not terminate")


def is_torus_2q(g) -> bool:
    """True iff one colour class of faces consists of bigons forming one cycle."""
    pm = g if isinstance(g, PlanarMap) else g.map
    colors = pm.face_colors
    if colors is None or pm.num_vertices < 2:
        return False
    for c in (0, 1):
        faces = [f for i, f in enumerate(pm.faces) if colors[i] == c]
        # every crossing then meets exactly two of these bigons, so they
        # chain into cycles, and connectivity leaves a single one
        if all(len(f) == 2 for f in faces) and pm.is_connected():
            return True
    return False
