"""4-circuits of the dual graph and how they relate.

A 4-circuit is a simple closed curve meeting the projection in four edge
points and passing through four distinct faces.  It splits the crossings into
two sides.  Two circuits are crossing-parallel when one is obtained from the
other by sliding the curve across a single crossing.
"""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .planar import PlanarMap

Side = frozenset


def as_map(obj) -> PlanarMap:
    return obj if isinstance(obj, PlanarMap) else obj.map


class CircuitKind(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class FourCircuit:
    """A dual 4-cycle in canonical orientation.

    The curve sits in ``faces[i]``, crosses ``edges[i]`` into
    ``faces[i+1]`` and so on around.  ``left`` holds the crossings on its
    left-hand side.
    """

    edges: tuple[int, int, int, int]
    faces: tuple[int, int, int, int]
    left: frozenset[int]
    right: frozenset[int]
    ends: tuple[tuple[int, int], ...] = field(repr=False, compare=False)

    @property
    def sides(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.left, self.right

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @property
    def inside(self) -> frozenset[int]:
        """The smaller side (the left one on ties)."""
        return self.right if len(self.right) < len(self.left) else self.left

    @property
    def outside(self) -> frozenset[int]:
        return self.left if self.inside is self.right else self.right

    @property
    def inside_count(self) -> int:
        return len(self.inside)

    @property
    def outside_count(self) -> int:
        return len(self.outside)

    @property
    def is_trivial(self) -> bool:
        return min(len(self.left), len(self.right)) == 1

    def side_of(self, v: int) -> frozenset[int]:
        return self.left if v in self.left else self.right

    def other(self, side: frozenset[int]) -> frozenset[int]:
        return self.right if side == self.left else self.left

    def oriented(self, side: frozenset[int]) -> tuple[int, ...]:
        """Crossed edges in the cyclic order that keeps ``side`` on the left."""
        if side == self.left:
            return self.edges
        if side == self.right:
            return tuple(reversed(self.edges))
        raise ValueError("not a side of this circuit")

    def to_json(self) -> dict:
        return {
            "edges": list(self.edges),
            "faces": list(self.faces),
            "sides": [sorted(self.left), sorted(self.right)],
            "kind": classify_circuit(self).value,
        }


def classify_circuit(c: FourCircuit) -> CircuitKind:
    return CircuitKind.TRIVIAL if c.is_trivial else CircuitKind.NONTRIVIAL


def is_prismatic(c: FourCircuit) -> bool:
    return len({v for end in c.ends for v in end}) == 8


def _dart_in_face(pm: PlanarMap, e: int, f: int) -> int:
    d, m = pm.edges[e]
    return d if pm.face_of[d] == f else m


def make_circuit(pm: PlanarMap, faces: tuple[int, ...], edges: tuple[int, ...]) -> FourCircuit:
    """Build a circuit from a face cycle; ``edges[i]`` joins ``faces[i]`` and ``faces[i+1]``."""
    left_seed: set[int] = set()
    right_seed: set[int] = set()
    for i in range(4):
        f = faces[i]
        a = _dart_in_face(pm, edges[i - 1], f)
        b = _dart_in_face(pm, edges[i], f)
        x = pm.face_step(a)
        while True:
            left_seed.add(x >> 2)
            if x == b:
                break
            x = pm.face_step(x)
        x = pm.face_step(b)
        while True:
            right_seed.add(x >> 2)
            if x == a:
                break
            x = pm.face_step(x)
    cut = set(edges)
    left = _flood(pm, left_seed, cut)
    right = _flood(pm, right_seed, cut)
    if left & right or len(left) + len(right) != pm.num_vertices:
        raise ValueError(f"dual cycle through faces {faces} does not separate cleanly")

    best = None
    for flip in (False, True):
        fs, es, lt, rt = (faces, edges, left, right)
        if flip:
            fs = (faces[0], faces[3], faces[2], faces[1])
            es = (edges[3], edges[2], edges[1], edges[0])
            lt, rt = right, left
        for r in range(4):
            cand = (es[r:] + es[:r], fs[r:] + fs[:r], lt, rt)
            if best is None or cand[0] < best[0]:
                best = cand
    es, fs, lt, rt = best
    ends = tuple(pm.edge_vertices(e) for e in es)
    return FourCircuit(tuple(es), tuple(fs), frozenset(lt), frozenset(rt), ends)


def _flood(pm: PlanarMap, seeds: Iterable[int], cut: set[int]) -> set[int]:
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for d in pm.darts(v):
            if pm.edge_of[d] in cut:
                continue
            w = pm.mate[d] >> 2
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def dual_adjacency(pm: PlanarMap) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in pm.faces]
    for e, (d, m) in enumerate(pm.edges):
        f, g = pm.face_of[d], pm.face_of[m]
        if f != g:
            adj[f].append((e, g))
            adj[g].append((e, f))
    return adj


def enumerate_four_circuits(obj) -> list[FourCircuit]:
    """All simple dual 4-cycles, each once, sorted by crossed-edge sequence."""
    pm = as_map(obj)
    adj = dual_adjacency(pm)
    found: dict[frozenset[int], FourCircuit] = {}
    for f0 in range(len(adj)):
        for e0, f1 in adj[f0]:
            if f1 <= f0:
                continue
            for e1, f2 in adj[f1]:
                if f2 <= f0 or f2 == f1 or e1 == e0:
                    continue
                for e2, f3 in adj[f2]:
                    if f3 <= f0 or f3 in (f1, f2) or e2 in (e0, e1):
                        continue
                    for e3, g in adj[f3]:
                        if g != f0 or e3 in (e0, e1, e2):
                            continue
                        key = frozenset((e0, e1, e2, e3))
                        if key not in found:
                            found[key] = make_circuit(pm, (f0, f1, f2, f3), (e0, e1, e2, e3))
    return sorted(found.values(), key=lambda c: c.edges)


def crossing_parallel(a: FourCircuit, b: FourCircuit) -> bool:
    return parallel_crossing(a, b) is not None


def parallel_crossing(a: FourCircuit, b: FourCircuit) -> int | None:
    """The crossing that ``a`` and ``b`` pass on opposite sides of, if any."""
    if len(a.edge_set & b.edge_set) != 2:
        return None
    diff = a.edge_set ^ b.edge_set
    ends = dict(zip(a.edges, a.ends)) | dict(zip(b.edges, b.ends))
    common = set.intersection(*(set(ends[e]) for e in diff))
    for x in common:
        sa = a.side_of(x)
        if sa - {x} in b.sides:
            return x
    return None


class SideLattice:
    """Circuit sides ordered by sliding a circuit across one crossing.

    A side ``S`` descends to ``S - {x}`` when that set is the side of a
    circuit crossing-parallel to the circuit of ``S`` through ``x``.  A side
    is rational when a chain of descents shrinks it to a single crossing.
    """

    def __init__(self, circuits: list[FourCircuit], num_vertices: int):
        self.circuits = circuits
        self.num_vertices = num_vertices
        self.everything = frozenset(range(num_vertices))
        self.owner: dict[frozenset[int], FourCircuit] = {}
        for c in circuits:
            for s in c.sides:
                self.owner[s] = c
        self._children: dict[frozenset[int], list[tuple[int, frozenset[int]]]] = {}
        self._rational: dict[frozenset[int], bool] = {}

    @classmethod
    def of(cls, obj) -> SideLattice:
        pm = as_map(obj)
        return cls(enumerate_four_circuits(pm), pm.num_vertices)

    def children(self, s: frozenset[int]) -> list[tuple[int, frozenset[int]]]:
        if s not in self._children:
            out = []
            if len(s) > 1:
                for x in sorted(s):
                    t = s - {x}
                    if t in self.owner and parallel_crossing(self.owner[s], self.owner[t]) == x:
                        out.append((x, t))
            self._children[s] = out
        return self._children[s]

    def has_parent(self, s: frozenset[int]) -> bool:
        for x in self.everything - s:
            t = s | {x}
            if t in self.owner and parallel_crossing(self.owner[s], self.owner[t]) == x:
                return True
        return False

    def is_rational(self, s: frozenset[int]) -> bool:
        if s not in self._rational:
            self._rational[s] = len(s) == 1 or any(self.is_rational(t) for _, t in self.children(s))
        return self._rational[s]

    def chain(self, top: frozenset[int], bottom: frozenset[int]) -> list[frozenset[int]] | None:
        """A descent chain from ``top`` to ``bottom``, or None."""
        if not bottom <= top:
            return None
        prev: dict[frozenset[int], frozenset[int] | None] = {top: None}
        queue = deque([top])
        while queue:
            s = queue.popleft()
            if s == bottom:
                path = [s]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            for _, t in self.children(s):
                if bottom <= t and t not in prev:
                    prev[t] = s
                    queue.append(t)
        return None

    def owned_chain(self, top, bottom) -> tuple[tuple[frozenset[int], FourCircuit], ...]:
        return tuple((s, self.owner[s]) for s in self.chain(top, bottom))

    def descendants(self, top: frozenset[int]) -> list[frozenset[int]]:
        seen = {top}
        queue = deque([top])
        while queue:
            for _, t in self.children(queue.popleft()):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        seen.discard(top)
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def rational_bottom(self, s: frozenset[int]) -> frozenset[int]:
        """A single-crossing side reachable from the rational side ``s``."""
        while len(s) > 1:
            s = next(t for _, t in self.children(s) if self.is_rational(t))
        return s

    def visibly_two_bridge(self) -> FourCircuit | None:
        """A circuit with rational tangles on both sides, if there is one."""
        for c in self.circuits:
            if self.is_rational(c.left) and self.is_rational(c.right):
                return c
        return None


@dataclass(frozen=True)
class BoundingPair:
    """Two circuits cobounding a rational tangle.

    With ``boundaries == 1`` the tangle is a whole side of ``outer`` and
    ``inner`` is a trivial circuit inside it; with ``boundaries == 2`` it is
    the region ``outer_side - inner_side`` between the circuits.
    """

    outer: FourCircuit
    inner: FourCircuit
    outer_side: frozenset[int]
    inner_side: frozenset[int]
    boundaries: int
    chain: tuple[tuple[frozenset[int], FourCircuit], ...] = field(repr=False, compare=False)

    @property
    def tangle(self) -> frozenset[int]:
        if self.boundaries == 1:
            return self.outer_side
        return self.outer_side - self.inner_side

    @property
    def size(self) -> int:
        return len(self.tangle)


@dataclass(frozen=True)
class ParallelClass:
    members: tuple[FourCircuit, ...]
    pairs: tuple[tuple[int, int], ...]
    contains_trivial: bool
    extremal_pair: tuple[FourCircuit, FourCircuit] | None
    between: frozenset[int]


def parallel_classes(circuits: list[FourCircuit], lattice: SideLattice | None = None) -> list[ParallelClass]:
    """Partition circuits by chains of crossing-parallel moves."""
    n = len(circuits)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    related = []
    for i in range(n):
        for j in range(i + 1, n):
            if crossing_parallel(circuits[i], circuits[j]):
                related.append((i, j))
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    if lattice is None and circuits:
        nv = len(circuits[0].left) + len(circuits[0].right)
        lattice = SideLattice(circuits, nv)
    out = []
    for idx in sorted(groups.values()):
        members = tuple(circuits[i] for i in idx)
        local = {i: k for k, i in enumerate(idx)}
        pairs = tuple((local[i], local[j]) for i, j in related if i in local and j in local)
        best = None
        for c in members:
            for top in c.sides:
                for bottom in lattice.descendants(top):
                    region = top - bottom
                    key = (-len(region), c.edges, sorted(bottom))
                    if best is None or key < best[0]:
                        best = (key, c, lattice.owner[bottom], region)
        out.append(ParallelClass(
            members=members,
            pairs=pairs,
            contains_trivial=any(c.is_trivial for c in members),
            extremal_pair=(best[1], best[2]) if best else None,
            between=best[3] if best else frozenset(),
        ))
    return out


def bounding_pair_candidates(lattice: SideLattice) -> list[BoundingPair]:
    """Every maximal rational tangle the lattice exhibits, largest first."""
    everything = lattice.everything
    out = []
    seen_regions = set()
    for s in sorted(lattice.owner, key=lambda s: (len(s), sorted(s))):
        rest = everything - s
        if len(s) < 2 or len(s) > len(rest) or not lattice.is_rational(s):
            continue
        bottom = lattice.rational_bottom(s)
        out.append(BoundingPair(
            outer=lattice.owner[s], inner=lattice.owner[bottom],
            outer_side=s, inner_side=bottom, boundaries=1,
            chain=lattice.owned_chain(s, bottom),
        ))
    for top in sorted(lattice.owner, key=lambda s: (len(s), sorted(s))):
        if lattice.is_rational(top) or lattice.is_rational(everything - top):
            continue
        if lattice.has_parent(top):
            continue
        for bottom in lattice.descendants(top):
            if lattice.children(bottom) or lattice.is_rational(bottom):
                continue
            region = top - bottom
            # the complementary description covers the same region
            if region in seen_regions:
                continue
            seen_regions.add(region)
            out.append(BoundingPair(
                outer=lattice.owner[top], inner=lattice.owner[bottom],
                outer_side=top, inner_side=bottom, boundaries=2,
                chain=lattice.owned_chain(top, bottom),
            ))
    out.sort(key=lambda p: (-p.size, sorted(p.tangle), p.boundaries, p.outer.edges))
    return out


def select_disjoint(pairs: list[BoundingPair], rng: random.Random | None = None) -> list[BoundingPair]:
    """Greedy pairwise-disjoint subfamily; ``rng`` shuffles the greedy order."""
    order = list(pairs)
    if rng is not None:
        rng.shuffle(order)
    used: set[int] = set()
    chosen = []
    for p in order:
        if used.isdisjoint(p.tangle):
            chosen.append(p)
            used |= p.tangle
    return chosen


def maximal_bounding_pairs(obj, rng: random.Random | None = None) -> list[BoundingPair]:
    lattice = SideLattice.of(obj)
    return select_disjoint(bounding_pair_candidates(lattice), rng)


def collapse_side(pm: PlanarMap, c: FourCircuit, side: frozenset[int], label: int | None = None) -> tuple[PlanarMap, int, dict[int, int]]:
    """Replace one side of ``c`` by a single new crossing.

    Returns the new map, the index of the new crossing and the old-to-new
    vertex index for survivors.
    """
    if side not in c.sides:
        raise ValueError("not a side of this circuit")
    keep = sorted(set(range(pm.num_vertices)) - side)
    new = pm.num_vertices
    # the curve runs counterclockwise around its left side, so the fresh
    # crossing sees the cut edges in circuit order when it replaces that side
    order = c.oriented(side)
    links = []
    for slot, e in enumerate(order):
        d, m = pm.edges[e]
        outer = d if (d >> 2) not in side else m
        links.append((outer, 4 * new + slot))
    extra = () if label is None else (label,)
    new_map, index = pm.rebuild(keep, 1, links, extra)
    return new_map, index[new], index
