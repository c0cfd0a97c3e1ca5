"""Combinatorial maps of 4-valent planar graphs.

A vertex ``v`` owns the darts ``4*v .. 4*v+3`` listed counterclockwise.  The
map is the involution ``mate`` pairing darts into edges.  Faces are orbits of
``d -> ccw(mate[d])``; each orbit is the face lying to the right of its darts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


def vertex_of(d: int) -> int:
    return d >> 2


def ccw(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def cw(d: int) -> int:
    return (d & ~3) | ((d - 1) & 3)


def opposite(d: int) -> int:
    return (d & ~3) | ((d + 2) & 3)


@dataclass(frozen=True, eq=False)
class PlanarMap:
    mate: tuple[int, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.mate)
        if n % 4:
            raise ValueError("dart count must be a multiple of 4")
        for d, e in enumerate(self.mate):
            if not 0 <= e < n or e == d or self.mate[e] != d:
                raise ValueError(f"mate is not a fixed-point-free involution at dart {d}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(n // 4)))
        elif len(self.labels) != n // 4:
            raise ValueError("one label per vertex required")

    @property
    def num_vertices(self) -> int:
        return len(self.mate) // 4

    @property
    def num_darts(self) -> int:
        return len(self.mate)

    @property
    def num_edges(self) -> int:
        return len(self.mate) // 2

    def darts(self, v: int) -> range:
        return range(4 * v, 4 * v + 4)

    def face_step(self, d: int) -> int:
        return ccw(self.mate[d])

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.num_darts
        out = []
        for d in range(self.num_darts):
            if seen[d]:
                continue
            orbit = []
            x = d
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = self.face_step(x)
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        f = [0] * self.num_darts
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                f[d] = i
        return tuple(f)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((d, e) for d, e in enumerate(self.mate) if d < e)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for i, (d, e) in enumerate(self.edges):
            out[d] = out[e] = i
        return tuple(out)

    def vertex_edges(self, v: int) -> frozenset[int]:
        return frozenset(self.edge_of[d] for d in self.darts(v))

    def edge_vertices(self, e: int) -> tuple[int, int]:
        d, m = self.edges[e]
        return d >> 2, m >> 2

    def neighbors(self, v: int) -> list[int]:
        return [self.mate[d] >> 2 for d in self.darts(v)]

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + len(self.faces)

    def components(self, removed_vertices: Iterable[int] = (), removed_edges: Iterable[int] = ()) -> list[set[int]]:
        gone = set(removed_vertices)
        cut = set(removed_edges)
        seen: set[int] = set()
        out = []
        for s in range(self.num_vertices):
            if s in gone or s in seen:
                continue
            comp = {s}
            seen.add(s)
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for d in self.darts(v):
                    if self.edge_of[d] in cut:
                        continue
                    w = self.mate[d] >> 2
                    if w not in gone and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    @cached_property
    def face_colors(self) -> tuple[int, ...] | None:
        """Proper 2-colouring of the faces, or None if none exists."""
        nf = len(self.faces)
        color = [-1] * nf
        for s in range(nf):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                f = queue.popleft()
                for d in self.faces[f]:
                    g = self.face_of[self.mate[d]]
                    if color[g] < 0:
                        color[g] = 1 - color[f]
                        queue.append(g)
                    elif color[g] == color[f]:
                        return None
        return tuple(color)

    def mirror(self) -> PlanarMap:
        def flip(d):
            return (d & ~3) | ((-d) & 3)

        mate = [0] * self.num_darts
        for d, e in enumerate(self.mate):
            mate[flip(d)] = flip(e)
        return PlanarMap(tuple(mate), self.labels)

    def rebuild(
        self,
        keep: Sequence[int],
        extra: int,
        links: Iterable[tuple[int, int]],
        extra_labels: Sequence[int] = (),
    ) -> tuple[PlanarMap, dict[int, int]]:
        """New map on ``keep`` plus ``extra`` fresh vertices.

        Darts of fresh vertex ``j`` are addressed as ``4*(V+j)+slot``.  Every
        kept dart not touched by ``links`` keeps its old mate, which must
        also be kept.  Returns the map and the old-to-new vertex index.
        """
        nv = self.num_vertices
        order = list(keep) + [nv + j for j in range(extra)]
        index = {v: i for i, v in enumerate(order)}

        def nd(x):
            return 4 * index[x >> 2] + (x & 3)

        mate = [-1] * (4 * len(order))
        for a, b in links:
            mate[nd(a)] = nd(b)
            mate[nd(b)] = nd(a)
        for v in keep:
            for d in self.darts(v):
                if mate[nd(d)] >= 0:
                    continue
                m = self.mate[d]
                if (m >> 2) not in index:
                    raise ValueError(f"dart {d} would dangle")
                mate[nd(d)] = nd(m)
        labels = [self.labels[v] for v in keep]
        if extra_labels:
            labels += list(extra_labels)
        else:
            top = max(self.labels, default=-1)
            labels += [top + 1 + j for j in range(extra)]
        return PlanarMap(tuple(mate), tuple(labels)), index

    def _bfs_code(self, start: int) -> tuple[int, ...]:
        num = {start >> 2: 0}
        entry = {start >> 2: start}
        queue = [start >> 2]
        code: list[int] = []
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            d = entry[v]
            for _ in range(4):
                m = self.mate[d]
                w = m >> 2
                if w not in num:
                    num[w] = len(num)
                    entry[w] = m
                    queue.append(w)
                code.append(num[w])
                code.append((m - entry[w]) & 3)
                d = ccw(d)
        return tuple(code)

    @cached_property
    def canonical_code(self) -> tuple[int, ...]:
        """Least breadth-first code over all start darts and both orientations.

        Two connected maps get equal codes iff they are isomorphic as
        unoriented embedded graphs.
        """
        best = None
        for m in (self, self.mirror()):
            for start in range(m.num_darts):
                code = m._bfs_code(start)
                if best is None or code < best:
                    best = code
        return best if best is not None else ()

    def rotation(self) -> list[list[int]]:
        """Neighbour vertex ids of each vertex in counterclockwise order."""
        return [self.neighbors(v) for v in range(self.num_vertices)]


def disjoint_union(a: PlanarMap, b: PlanarMap) -> PlanarMap:
    shift = a.num_darts
    mate = a.mate + tuple(m + shift for m in b.mate)
    top = max(a.labels, default=-1) + 1
    return PlanarMap(mate, a.labels + tuple(top + x for x in b.labels))
