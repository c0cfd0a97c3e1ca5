"""Link diagrams: PD parsing, planar structure, validation and statistics.

PD tuples list the four arc labels of a crossing counterclockwise, starting
from the incoming under-strand.  Slot ``k`` of a tuple becomes dart
``4*i + k`` of crossing ``i``; slots 0 and 2 are under, 1 and 3 are over.
"""
from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass

from .errors import (
    Disconnected,
    DuplicateArcUse,
    MalformedToken,
    NonContiguousLabels,
    NonPlanarEmbedding,
    NotAlternating,
    NotPrime,
    NotReduced,
)
from .planar import PlanarMap, opposite

_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_SEPARATORS = re.compile(r"[\s,]*")


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __str__(self) -> str:
        return format_pd(self)


def parse_pd(text: str) -> PDCode:
    """Parse ``X(a,b,c,d)`` tokens separated by whitespace or commas.

    Lines starting with ``#`` are comments.
    """
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    crossings = []
    pos = 0
    for m in _TOKEN.finditer(body):
        gap = body[pos:m.start()]
        if not _SEPARATORS.fullmatch(gap):
            raise MalformedToken(f"unexpected text {gap.strip()[:40]!r}")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    tail = body[pos:]
    if not _SEPARATORS.fullmatch(tail):
        raise MalformedToken(f"unexpected text {tail.strip()[:40]!r}")
    if not crossings:
        raise MalformedToken("no crossings found")
    code = PDCode(tuple(crossings))
    check_labels(code)
    return code


def check_labels(code: PDCode) -> None:
    counts = Counter(label for x in code.crossings for label in x)
    bad = sorted(label for label, k in counts.items() if k != 2)
    if bad:
        raise DuplicateArcUse(f"labels not used exactly twice: {bad[:10]}")
    if sorted(counts) != list(range(1, 2 * len(code.crossings) + 1)):
        raise NonContiguousLabels(f"labels must be exactly 1..{2 * len(code.crossings)}")


def format_pd(code: PDCode) -> str:
    return " ".join("X(%d,%d,%d,%d)" % x for x in code.crossings)


@dataclass(frozen=True, eq=False)
class Diagram:
    """A connected planar 4-valent link projection with crossing data.

    ``over[d]`` tells whether dart ``d`` belongs to the over-strand at its
    crossing.  ``outer_face`` marks the face treated as unbounded.
    """

    map: PlanarMap
    over: tuple[bool, ...]
    outer_face: int = -1

    def __post_init__(self):
        pm = self.map
        if len(self.over) != pm.num_darts:
            raise ValueError("one over flag per dart required")
        if not pm.is_connected():
            raise Disconnected("diagram graph is disconnected")
        if pm.euler_characteristic() != 2:
            raise NonPlanarEmbedding(f"V - E + F = {pm.euler_characteristic()}")
        for v in range(pm.num_vertices):
            flags = [self.over[d] for d in pm.darts(v)]
            if flags[0] == flags[1] or flags[0] != flags[2] or flags[1] != flags[3]:
                raise ValueError(f"crossing {v} does not alternate over and under")
        if self.outer_face < 0:
            # largest face, earliest on ties
            sizes = [len(f) for f in pm.faces]
            object.__setattr__(self, "outer_face", sizes.index(max(sizes)))

    @property
    def num_crossings(self) -> int:
        return self.map.num_vertices

    @property
    def faces(self):
        return self.map.faces

    @property
    def colors(self) -> tuple[int, ...]:
        colors = self.map.face_colors
        if colors is None:
            raise NonPlanarEmbedding("faces admit no checkerboard colouring")
        return colors

    def is_alternating(self) -> bool:
        return all(self.over[d] != self.over[e] for d, e in self.map.edges)

    def strands(self) -> list[list[int]]:
        """Outgoing darts along each link component, one orientation each."""
        pm = self.map
        seen = set()
        out = []
        for d0 in range(pm.num_darts):
            if d0 in seen:
                continue
            orbit = []
            d = d0
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = opposite(pm.mate[d])
            # the reverse orientation of this component
            d = pm.mate[d0]
            while d not in seen:
                seen.add(d)
                d = opposite(pm.mate[d])
            out.append(orbit)
        return out

    def to_json(self) -> dict:
        pm = self.map
        return {
            "vertices": pm.num_vertices,
            "labels": list(pm.labels),
            "rotation": [[pm.mate[d] for d in pm.darts(v)] for v in range(pm.num_vertices)],
            "over": [[self.over[d] for d in pm.darts(v)] for v in range(pm.num_vertices)],
            "faces": [list(f) for f in pm.faces],
            "colors": list(self.colors),
            "outer_face": self.outer_face,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_diagram(code: PDCode) -> Diagram:
    check_labels(code)
    where: dict[int, list[int]] = {}
    for i, x in enumerate(code.crossings):
        for k, label in enumerate(x):
            where.setdefault(label, []).append(4 * i + k)
    mate = [0] * (4 * len(code.crossings))
    for a, b in where.values():
        mate[a], mate[b] = b, a
    over = tuple(bool(d & 1) for d in range(len(mate)))
    return Diagram(PlanarMap(tuple(mate)), over)


def alternating_flags(pm: PlanarMap, ref: tuple[int, bool] | None = None) -> tuple[bool, ...]:
    """Over flags making ``pm`` alternating; ``ref=(dart, flag)`` fixes the mirror."""
    colors = pm.face_colors
    if colors is None:
        raise NonPlanarEmbedding("faces admit no checkerboard colouring")
    over = [colors[pm.face_of[d]] == 0 for d in range(pm.num_darts)]
    if ref is not None and over[ref[0]] != ref[1]:
        over = [not x for x in over]
    return tuple(over)


def alternating_diagram(pm: PlanarMap, ref: tuple[int, bool] | None = None) -> Diagram:
    return Diagram(pm, alternating_flags(pm, ref))


def diagram_to_pd(d: Diagram) -> PDCode:
    pm = d.map
    label = {}
    outgoing = set()
    for strand in d.strands():
        for dart in strand:
            outgoing.add(dart)
            label[pm.edge_of[dart]] = len(label) + 1
    crossings = []
    for v in range(pm.num_vertices):
        start = next(x for x in pm.darts(v) if not d.over[x] and x not in outgoing)
        k0 = start & 3
        crossings.append(tuple(label[pm.edge_of[4 * v + (k0 + j) % 4]] for j in range(4)))
    return PDCode(tuple(crossings))


def nugatory_crossings(pm: PlanarMap) -> list[int]:
    out = []
    for v in range(pm.num_vertices):
        f = [pm.face_of[d] for d in pm.darts(v)]
        if f[0] == f[2] or f[1] == f[3]:
            out.append(v)
    return out


def two_edge_cuts(pm: PlanarMap) -> list[tuple[int, int]]:
    """Edge pairs whose removal disconnects the graph."""
    out = []
    for e1, e2 in itertools.combinations(range(pm.num_edges), 2):
        if len(pm.components(removed_edges=(e1, e2))) > 1:
            out.append((e1, e2))
    return out


@dataclass(frozen=True)
class ValidationReport:
    alternating: bool
    reduced: bool
    prime: bool
    connected: bool

    @property
    def ok(self) -> bool:
        return self.alternating and self.reduced and self.prime and self.connected

    def raise_for_failure(self) -> None:
        if not self.connected:
            raise Disconnected("diagram is disconnected")
        if not self.alternating:
            raise NotAlternating("diagram is not alternating")
        if not self.reduced:
            raise NotReduced("diagram has a nugatory crossing")
        if not self.prime:
            raise NotPrime("diagram has a 2-edge cut with crossings on both sides")

    def to_json(self) -> dict:
        return {
            "alternating": self.alternating,
            "reduced": self.reduced,
            "prime": self.prime,
            "connected": self.connected,
            "ok": self.ok,
        }


def validate_diagram(d: Diagram) -> ValidationReport:
    pm = d.map
    return ValidationReport(
        alternating=d.is_alternating(),
        reduced=not nugatory_crossings(pm),
        prime=not two_edge_cuts(pm),
        connected=pm.is_connected(),
    )


def bigon_faces(pm: PlanarMap) -> list[int]:
    return [
        i for i, f in enumerate(pm.faces)
        if len(f) == 2 and (f[0] >> 2) != (f[1] >> 2)
    ]


def twist_regions(pm: PlanarMap) -> list[list[int]]:
    """Crossings grouped into maximal chains joined by bigons."""
    parent = list(range(pm.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in bigon_faces(pm):
        a, b = (d >> 2 for d in pm.faces[i])
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for v in range(pm.num_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def twist_number(d: Diagram) -> int:
    return len(twist_regions(d.map))


@dataclass(frozen=True)
class DiagramStats:
    crossings: int
    twist_number: int
    components: int


def diagram_stats(d: Diagram) -> DiagramStats:
    return DiagramStats(d.num_crossings, twist_number(d), len(d.strands()))
