"""Weaving links W(p,q) and a fast path for the volume of W(3,q)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .diagram import Diagram, PDCode, build_diagram
from .errors import InvalidParameters, RootNotBracketed
from .hypvol import lobachevsky


def closed_braid_pd(strands: int, word: list[int]) -> PDCode:
    """PD code of a closed braid.

    ``word`` holds signed generator indices (``+i`` / ``-i`` for the twist of
    strands ``i`` and ``i+1``, counted from 1).  The braid runs upwards and is
    closed on the right, so the tuples are counterclockwise in the plane.
    """
    if strands < 2 or not word:
        raise InvalidParameters("need at least two strands and one letter")
    if any(not 1 <= abs(g) < strands for g in word):
        raise InvalidParameters("generator index out of range")
    fresh = strands + 1
    current = list(range(1, strands + 1))
    raw = []
    for g in word:
        i = abs(g) - 1
        a, b = current[i], current[i + 1]
        c, d = fresh, fresh + 1
        fresh += 2
        # a: bottom-left, b: bottom-right, c: top-left, d: top-right
        raw.append((b, d, c, a) if g > 0 else (a, b, d, c))
        current[i], current[i + 1] = c, d
    top = dict(zip(current, range(1, strands + 1)))
    renum: dict[int, int] = {}
    crossings = []
    for x in raw:
        t = []
        for label in x:
            label = top.get(label, label)
            t.append(renum.setdefault(label, len(renum) + 1))
        crossings.append(tuple(t))
    return PDCode(tuple(crossings))


def weaving_word(p: int, q: int) -> list[int]:
    return [i if i % 2 else -i for i in range(1, p)] * q


def weaving_diagram(p: int, q: int) -> Diagram:
    """Alternating diagram of the closure of (s1 s2^-1 s3 ...)^q."""
    if p < 2 or q < 2:
        raise InvalidParameters(f"W({p},{q}) needs p >= 2 and q >= 2")
    return build_diagram(closed_braid_pd(p, weaving_word(p, q)))


def torus_2q_diagram(q: int) -> Diagram:
    return weaving_diagram(2, q)


# --- W(3,q) fast path -------------------------------------------------------


@dataclass(frozen=True)
class WeavingState:
    """Generating lengths of the kite tiling of W(3,q) in a 2 x 2z rectangle.

    ``x[i-1]`` and ``y[i-1]`` hold x_i and y_i for i = 1..n-1 with n = q // 2.
    """

    q: int
    x: tuple[float, ...]
    y: tuple[float, ...]
    z: float
    closure: float

    @property
    def n(self) -> int:
        return self.q // 2

    @property
    def x1(self) -> float:
        return self.x[0] if self.x else 1.0

    @property
    def thetas(self) -> tuple[float, ...]:
        return tuple(2 * math.atan(yi / xi) for xi, yi in zip(self.x, self.y))


def _lengths(x1: float, count: int) -> tuple[list[float], list[float]] | None:
    """x_i, y_i from x_1 by the recurrence; None past a pole or sign change."""
    xs, ys = [x1], [x1 * x1]
    while len(xs) < count:
        xi, yi = xs[-1], ys[-1]
        den = xi - x1 * yi * yi
        if den <= 0:
            return None
        nxt = (x1 * xi * yi * yi + yi * yi) / den
        xs.append(nxt)
        ys.append(nxt * nxt / yi)
    return xs[:count], ys[:count]


def _closure(q: int, x1: float) -> float:
    out = _lengths(x1, q // 2 - 1)
    if out is None:
        return math.nan
    total = sum(out[0])
    return total - (1 / x1 - 1) if q % 2 else total - 1 / (2 * x1)


def w3q_state(q: int, eps: float = 1e-9, samples: int = 4000) -> WeavingState:
    """Solve the one-variable closure equation for the W(3,q) tiling."""
    if q < 3:
        raise InvalidParameters("the W(3,q) tiling needs q >= 3")
    if q == 3:
        return WeavingState(3, (), (), 1.0, 0.0)
    grid = np.linspace(eps, 1 - eps, samples)
    vals = [_closure(q, t) for t in grid]
    brackets = [
        (a, b) for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:])
        if math.isfinite(fa) and math.isfinite(fb) and fa * fb <= 0
    ]
    if len(brackets) != 1:
        raise RootNotBracketed(f"found {len(brackets)} admissible brackets for q={q}")
    x1 = brentq(lambda t: _closure(q, t), *brackets[0], xtol=1e-16, rtol=4 * np.finfo(float).eps)
    xs, ys = _lengths(x1, q // 2 - 1)
    return WeavingState(q, tuple(xs), tuple(ys), 1 / x1, _closure(q, x1))


@dataclass(frozen=True)
class KiteTiling:
    centers: np.ndarray
    radii: np.ndarray
    kites: tuple[tuple[int, int], ...]
    angles: np.ndarray             # angle at the first circle of each kite
    orthogonality: float           # worst violation of |c_f - c_g|^2 = r_f^2 + r_g^2


def _orthogonal_to_both(c1, r1, c2, r2, r):
    """Centre of the radius-r circle orthogonal to two circles centred on x = 2, left of that line."""
    d1 = math.sqrt(r1 * r1 + r * r)
    d2 = math.sqrt(r2 * r2 + r * r)
    gap = c2[1] - c1[1]
    along = (d1 * d1 - d2 * d2 + gap * gap) / (2 * gap)
    across = math.sqrt(max(d1 * d1 - along * along, 0.0))
    return np.array([2 - across, c1[1] + along])


def w3q_tiling(state: WeavingState) -> KiteTiling:
    """Circle centres and kites of the W(3,q) tiling with the q-gon on the left side."""
    q, z = state.q, state.z
    xs, ys = state.x, state.y
    centers: list[np.ndarray] = []
    radii: list[float] = []

    def add(c, r):
        centers.append(np.asarray(c, dtype=float))
        radii.append(float(r))
        return len(centers) - 1

    polygon = add((0.0, z), z)
    bottom = add((1.0, 0.0), 1.0)
    side = []
    level = 0.0
    for i, xi in enumerate(xs):
        level = xi if i == 0 else level + xs[i - 1] + xi
        side.append(add((2.0, level), xi))
    # odd q: one side circle sits on the midline; even q: an interior one does
    mid_side = add((2.0, z), ys[-1] if ys else 1.0) if q % 2 else None
    inner = []
    for i, yi in enumerate(ys):
        a = side[i]
        if i + 1 < len(side):
            cb, rb = centers[side[i + 1]], radii[side[i + 1]]
        elif mid_side is not None:
            cb, rb = centers[mid_side], radii[mid_side]
        else:
            cb, rb = np.array([2.0, 2 * z - centers[a][1]]), radii[a]
        inner.append(add(_orthogonal_to_both(centers[a], radii[a], cb, rb, yi), yi))

    # chain from the bottom up to the midline, closed off by its mirror image
    rise = [bottom]
    for s, i in zip(side, inner):
        rise += [s, i]
    middle = rise.pop() if mid_side is None else mid_side
    mirror = {}
    for idx in rise:
        c = centers[idx]
        mirror[idx] = add((c[0], 2 * z - c[1]), radii[idx])
    chain = rise + [middle] + [mirror[idx] for idx in reversed(rise)]
    kites = list(zip(chain, chain[1:]))
    touching = [bottom] + inner + [mirror[i] for i in inner if i in mirror] + [mirror[bottom]]
    kites += [(polygon, c) for c in touching]

    cs, rs = np.array(centers), np.array(radii)
    worst = 0.0
    angles = []
    for f, g in kites:
        gap = cs[g] - cs[f]
        dist = float(np.hypot(*gap))
        worst = max(worst, abs(dist * dist - rs[f] ** 2 - rs[g] ** 2))
        # the two intersection points of the circles, seen from the centre of f
        along = (rs[f] ** 2 - rs[g] ** 2 + dist * dist) / (2 * dist)
        half = math.sqrt(max(rs[f] ** 2 - along * along, 0.0))
        unit = gap / dist
        normal = np.array([-unit[1], unit[0]])
        p1 = cs[f] + along * unit + half * normal
        p2 = cs[f] + along * unit - half * normal
        v1, v2 = p1 - cs[f], p2 - cs[f]
        angles.append(math.atan2(abs(v1[0] * v2[1] - v1[1] * v2[0]), float(v1 @ v2)))
    return KiteTiling(cs, rs, tuple(kites), np.array(angles), worst)


def w3q_volume(q: int) -> float:
    """Right-angled volume of W(3,q) from the explicit kite tiling."""
    if q < 2:
        raise InvalidParameters("W(3,q) needs q >= 2")
    if q == 2:
        return 0.0
    tiling = w3q_tiling(w3q_state(q))
    if tiling.orthogonality > 1e-9:
        raise RootNotBracketed(f"tiling for q={q} is not orthogonal ({tiling.orthogonality:.2e})")
    return 2 * sum(lobachevsky(t / 2) + lobachevsky((math.pi - t) / 2) for t in tiling.angles)
