"""Diagram builders and frozen reference numbers shared by the tests."""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from pathlib import Path

from ravol import PDCode, build_diagram, weaving_diagram
from ravol.split import decompose
from ravol.tangles import flype_pair, tangle_sum, twist_insert

DATA = Path(__file__).parent / "data"

# Reference right-angled and hyperbolic volumes of weaving links to four decimals,
# keyed by (p, q).  Used only as comparison targets.
REFERENCE_RIGHT_ANGLED = {
    (3, 2): 0.0,
    (3, 3): 7.3277,
    (3, 4): 12.0461,
    (4, 3): 14.6554,
    (3, 5): 16.2758,
    (3, 6): 19.4287,
    (3, 7): 24.2126,
    (4, 4): 24.0922,
}
REFERENCE_HYPERBOLIC = {
    (3, 2): 2.0299,
    (3, 3): 7.3277,
    (3, 4): 12.3509,
    (4, 3): 15.0183,
    (3, 5): 17.0857,
    (3, 6): 21.6316,
    (3, 7): 26.0544,
    (4, 4): 24.0922,
}

# Values computed by this package and frozen after cross-checking the
# generic solver against the explicit W(3,q) tiling (agreement < 1e-12).
FROZEN_W3Q = {
    3: 7.327724753417751,
    4: 12.046092040094374,
    5: 16.275770155137018,
    6: 20.29883212819307,
    7: 24.212595984662947,
    8: 28.060922382894077,
    9: 31.86677134495497,
}


def W(p: int, q: int):
    return weaving_diagram(p, q)


def load(name: str):
    from ravol import parse_pd

    return build_diagram(parse_pd((DATA / name).read_text()))


@lru_cache(maxsize=None)
def octahedron():
    return decompose(W(3, 3)).polyhedra[0]


@lru_cache(maxsize=None)
def w34_graph():
    return decompose(W(3, 4)).polyhedra[0]


@lru_cache(maxsize=None)
def cuboctahedron():
    return decompose(W(4, 4)).polyhedra[0]


def pretzel(k: int):
    """Pretzel diagram with three columns of ``k`` crossings."""
    d = W(2, 3)
    for _ in range(3):
        # the original crossings sit at the front after each rebuild
        d = twist_insert(d, 0, k, vertical=True)
    return d


def sandwich(twist: int, cut: int, left=None, right=None):
    """Two tangles joined through a (2, twist)-torus annulus.

    The crossings of the annulus form a two-boundary rational tangle; ``cut``
    chooses where along the chain the second tangle is attached.
    """
    left = left or W(3, 3)
    right = right or W(3, 4)
    mid = tangle_sum(left, 0, W(2, twist), 0)
    start = left.num_crossings - 1
    return tangle_sum(mid, start + cut - 1, right, 0)


def flype_pairs():
    inner = twist_insert(W(3, 5), 0, 3)
    return [flype_pair(W(3, 3), site, inner, vi) for site in (0, 1) for vi in (0, 5)]


def brute_force_circuits(pm) -> dict[frozenset[int], list[set[int]]]:
    """All closed dual 4-cycles with distinct faces, keyed by edge set.

    The value lists the components of the graph with the four edges removed.
    """
    faces_of_edge = []
    for d, m in pm.edges:
        faces_of_edge.append((pm.face_of[d], pm.face_of[m]))
    found = {}
    for quad in itertools.combinations(range(pm.num_edges), 4):
        ok = False
        for order in itertools.permutations(quad[1:]):
            cyc = (quad[0],) + order
            for pick in itertools.product((0, 1), repeat=4):
                # face i is shared by edges cyc[i] and cyc[i+1]
                faces = [faces_of_edge[cyc[i]][pick[i]] for i in range(4)]
                if len(set(faces)) != 4:
                    continue
                if all(faces[i] in faces_of_edge[cyc[(i + 1) % 4]] for i in range(4)):
                    ok = True
                    break
            if ok:
                break
        if ok:
            comps = pm.components(removed_edges=quad)
            found[frozenset(quad)] = comps
    return found


def small_fixtures():
    """Every diagram with at most 12 crossings used across the suite."""
    out = {f"W({p},{q})": W(p, q) for p, q in [(2, 3), (2, 5), (2, 7), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (4, 3)]}
    out["W(4,4)"] = W(4, 4)
    out["pretzel(3,3,3)"] = pretzel(3)
    out["W(3,5)+twist"] = twist_insert(W(3, 5), 0, 3)
    out["W(3,3)*W(3,3)"] = tangle_sum(W(3, 3), 0, W(3, 3), 0)
    return out


def tri_angles(a, b, c) -> tuple[float, float, float]:
    def at(p, q, r):
        u, v = q - p, r - p
        return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])

    return at(a, b, c), at(b, c, a), at(c, a, b)


__all__ = [
    "DATA", "FROZEN_W3Q", "PDCode", "REFERENCE_HYPERBOLIC", "REFERENCE_RIGHT_ANGLED", "W",
    "brute_force_circuits", "cuboctahedron", "flype_pairs", "load", "octahedron", "pretzel",
    "sandwich", "small_fixtures", "tri_angles", "w34_graph",
]
