"""Diagram surgery: twist insertion, tangle sums, flypes, kinks and connected sums.

Slots at a crossing are read counterclockwise starting from the north-east
arm, so slot ``k`` points at 45 + 90k degrees.  Every operation rebuilds the
planar map and then recomputes alternating over/under flags, keeping the
mirror of the first input.
"""
from __future__ import annotations

from .diagram import Diagram, alternating_diagram
from .errors import InvalidParameters
from .planar import PlanarMap, disjoint_union


def _reference(d: Diagram, index: dict[int, int], skip: set[int]) -> tuple[int, bool] | None:
    for v, i in index.items():
        if v < d.map.num_vertices and v not in skip:
            return 4 * i, d.over[4 * v]
    return None


def _outer_arms(pm: PlanarMap, v: int) -> list[int]:
    arms = [pm.mate[4 * v + k] for k in range(4)]
    if any(a >> 2 == v for a in arms):
        raise InvalidParameters(f"crossing {v} carries a loop")
    return arms


def twist_insert(d: Diagram, v: int, k: int, vertical: bool = True) -> Diagram:
    """Replace crossing ``v`` by a twist of ``k`` crossings.

    A vertical twist stacks bigons between the north and south arms; a
    horizontal one between the west and east arms.
    """
    if k < 1:
        raise InvalidParameters("twist length must be positive")
    pm = d.map
    arms = _outer_arms(pm, v)
    nv = pm.num_vertices
    fresh = [4 * (nv + j) for j in range(k)]
    links = []
    if vertical:
        # u_j's north arms meet u_{j+1}'s south arms
        for a, b in zip(fresh, fresh[1:]):
            links += [(a + 0, b + 3), (a + 1, b + 2)]
        top, bottom = fresh[-1], fresh[0]
        links += [(arms[0], top + 0), (arms[1], top + 1), (arms[2], bottom + 2), (arms[3], bottom + 3)]
    else:
        for a, b in zip(fresh, fresh[1:]):
            links += [(a + 0, b + 1), (a + 3, b + 2)]
        left, right = fresh[0], fresh[-1]
        links += [(arms[1], left + 1), (arms[2], left + 2), (arms[0], right + 0), (arms[3], right + 3)]
    keep = [w for w in range(nv) if w != v]
    new_map, index = pm.rebuild(keep, k, links)
    return alternating_diagram(new_map, _reference(d, index, {v}))


def tangle_sum(a: Diagram, va: int, b: Diagram, vb: int, turn: int = 3) -> Diagram:
    """Delete crossing ``va`` of ``a`` and ``vb`` of ``b`` and join the loose arms.

    Arm ``k`` of ``va`` meets arm ``(turn - k) mod 4`` of ``vb``; ``turn = 3``
    places ``b``'s tangle unrotated in the hole left by ``va``, other values
    rotate it by quarter turns.
    """
    joined = disjoint_union(a.map, b.map)
    shift = a.map.num_vertices
    arms_a = _outer_arms(a.map, va)
    arms_b = [x + 4 * shift for x in _outer_arms(b.map, vb)]
    links = [(arms_a[k], arms_b[(turn - k) % 4]) for k in range(4)]
    keep = [w for w in range(joined.num_vertices) if w not in (va, vb + shift)]
    new_map, index = joined.rebuild(keep, 0, links)
    return alternating_diagram(new_map, _reference(a, index, {va}))


def mirror_diagram(d: Diagram) -> Diagram:
    """Planar reflection of the diagram (crossings re-derived by alternation)."""
    return alternating_diagram(d.map.mirror())


def flype_pair(host: Diagram, site: int, inner: Diagram, vi: int) -> tuple[Diagram, Diagram]:
    """Two diagrams of one link that differ by a flype.

    ``site`` of ``host`` becomes a horizontal pair of crossings.  The tangle
    of ``inner`` (around ``vi``) replaces the right one in the first diagram.
    In the second it replaces the left one after a half turn about the
    horizontal axis, so the remaining single crossing has moved across it.
    """
    pair = twist_insert(host, site, 2, vertical=False)
    left, right = pair.num_crossings - 2, pair.num_crossings - 1
    first = tangle_sum(pair, right, inner, vi, turn=3)
    second = tangle_sum(pair, left, mirror_diagram(inner), vi, turn=0)
    return first, second


def add_kink(d: Diagram, edge: int) -> Diagram:
    """Insert a nugatory curl on ``edge``."""
    pm = d.map
    x, y = pm.edges[edge]
    w = 4 * pm.num_vertices
    links = [(w + 0, w + 1), (x, w + 2), (y, w + 3)]
    new_map, index = pm.rebuild(range(pm.num_vertices), 1, links)
    return alternating_diagram(new_map, _reference(d, index, set()))


def connected_sum(a: Diagram, ea: int, b: Diagram, eb: int) -> Diagram:
    """Cut edge ``ea`` of ``a`` and ``eb`` of ``b`` and reconnect across."""
    joined = disjoint_union(a.map, b.map)
    x, y = a.map.edges[ea]
    s, t = (z + b.map.num_darts for z in b.map.edges[eb])
    new_map, index = joined.rebuild(range(joined.num_vertices), 0, [(x, s), (y, t)])
    return alternating_diagram(new_map, _reference(a, index, set()))


def switch_crossing(d: Diagram, v: int) -> Diagram:
    """Exchange over and under at crossing ``v``."""
    over = list(d.over)
    for k in range(4):
        over[4 * v + k] = not over[4 * v + k]
    return Diagram(d.map, tuple(over))
