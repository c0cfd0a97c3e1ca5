"""Right-angled ideal polyhedra as tilings of a rectangle by right kites.

Sending one crossing ``c`` of an Andreev graph to infinity turns the four
faces around ``c`` into the sides of a rectangle.  Every other face becomes a
circle, adjacent faces give orthogonal circles, and each remaining edge gives
a kite with right angles at its two crossings.  The kite angles at the circle
centres are found from the radii, and the volume is a sum of Lobachevsky
terms over kites.
"""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidVertex, LayoutClosureFailure, SolverDiverged
from .hypvol import lobachevsky
from .planar import PlanarMap

INTERIOR, SIDE, CORNER = "interior", "side", "corner"
TARGETS = {INTERIOR: 2 * math.pi, SIDE: math.pi, CORNER: math.pi / 2}


@dataclass(frozen=True)
class Kite:
    edge: int
    dart: int      # dart of the edge whose right-hand face is ``f``
    f: int         # index into KiteComplex.centers
    g: int
    tail: int      # crossing where ``dart`` starts
    head: int


@dataclass(frozen=True, eq=False)
class KiteComplex:
    graph: PlanarMap
    crossing: int
    closed_faces: tuple[int, ...]
    centers: tuple[int, ...]          # face ids
    boundary: tuple[str, ...]         # per centre
    kites: tuple[Kite, ...]
    corners: tuple[int, ...]          # neighbours of the chosen crossing, ccw

    @property
    def targets(self) -> np.ndarray:
        return np.array([TARGETS[b] for b in self.boundary])

    @property
    def closure_edges(self) -> frozenset[int]:
        pm = self.graph
        closed = set(self.closed_faces)
        return frozenset(
            e for e, (d, m) in enumerate(pm.edges)
            if pm.face_of[d] in closed or pm.face_of[m] in closed
        )


def build_kite_complex(p, c: int) -> KiteComplex:
    pm = p if isinstance(p, PlanarMap) else p.map
    if not 0 <= c < pm.num_vertices:
        raise InvalidVertex(f"crossing {c} not in a graph with {pm.num_vertices} vertices")
    ring = [pm.face_of[d] for d in pm.darts(c)]
    if len(set(ring)) != 4:
        raise InvalidVertex(f"faces around crossing {c} are not distinct")
    closed = set(ring)
    centers = tuple(f for f in range(len(pm.faces)) if f not in closed)
    index = {f: i for i, f in enumerate(centers)}

    boundary = []
    for f in centers:
        touching = sorted({ring.index(pm.face_of[pm.mate[d]]) for d in pm.faces[f]
                           if pm.face_of[pm.mate[d]] in closed})
        if not touching:
            boundary.append(INTERIOR)
        elif len(touching) == 1:
            boundary.append(SIDE)
        elif len(touching) == 2 and (touching[1] - touching[0]) % 2 == 1:
            boundary.append(CORNER)
        else:
            raise SolverDiverged(f"face {f} meets opposite sides of the rectangle")

    kites = []
    for e, (d, m) in enumerate(pm.edges):
        f, g = pm.face_of[d], pm.face_of[m]
        if f in closed or g in closed:
            continue
        kites.append(Kite(e, d, index[f], index[g], d >> 2, m >> 2))
    corners = tuple(pm.mate[d] >> 2 for d in pm.darts(c))
    return KiteComplex(pm, c, tuple(ring), centers, tuple(boundary), tuple(kites), corners)


@dataclass(frozen=True, eq=False)
class CirclePattern:
    complex: KiteComplex
    log_radii: np.ndarray
    angles: np.ndarray                 # kite angle at centre ``f`` of each kite
    residual: float
    iterations: int
    radii: np.ndarray | None = None    # scaled so the rectangle has width 2
    centers_xy: np.ndarray | None = None
    vertices_xy: dict[int, np.ndarray] = field(default_factory=dict)
    width: float = float("nan")
    height: float = float("nan")
    closure: float = float("nan")

    @property
    def z(self) -> float:
        return self.height / 2

    @property
    def volume(self) -> float:
        return polyhedron_volume(self)


def _kite_arrays(k: KiteComplex) -> tuple[np.ndarray, np.ndarray]:
    f = np.array([kt.f for kt in k.kites], dtype=int)
    g = np.array([kt.g for kt in k.kites], dtype=int)
    return f, g


def angle_residual(k: KiteComplex, u: np.ndarray) -> np.ndarray:
    f, g = _kite_arrays(k)
    theta = 2 * np.arctan(np.exp(u[g] - u[f]))
    r = -k.targets
    np.add.at(r, f, theta)
    np.add.at(r, g, math.pi - theta)
    return r


def angle_jacobian(k: KiteComplex, u: np.ndarray) -> np.ndarray:
    """Derivative of the angle sums in the log-radii; off-diagonal entries are sin(theta)."""
    f, g = _kite_arrays(k)
    s = 1 / np.cosh(u[g] - u[f])
    n = len(k.centers)
    jac = np.zeros((n, n))
    np.add.at(jac, (f, g), s)
    np.add.at(jac, (g, f), s)
    np.add.at(jac, (f, f), -s)
    np.add.at(jac, (g, g), -s)
    return jac


def _max_iter(max_iter: int | None) -> int:
    if max_iter is not None:
        return max_iter
    return int(os.environ.get("RAV_MAX_ITER", "200"))


def solve_pattern(k: KiteComplex, tol: float = 1e-12, max_iter: int | None = None) -> CirclePattern:
    """Damped Newton solve for the radii, followed by layout and scaling."""
    n = len(k.centers)
    if n == 0 or not k.kites:
        raise SolverDiverged("empty kite complex")
    if abs(k.targets.sum() - math.pi * len(k.kites)) > 1e-9:
        raise SolverDiverged("angle targets are inconsistent with the kite count")
    limit = _max_iter(max_iter)
    u = np.zeros(n)
    r = angle_residual(k, u)
    it = 0
    while np.max(np.abs(r)) >= tol:
        if it >= limit:
            raise SolverDiverged(f"residual {np.max(np.abs(r)):.3e} after {it} Newton steps")
        it += 1
        jac = angle_jacobian(k, u)
        # first centre pinned at u = 0, its equation dropped
        step = np.zeros(n)
        step[1:] = np.linalg.solve(jac[1:, 1:], -r[1:])
        base = np.linalg.norm(r)
        t = 1.0
        while True:
            trial = u + t * step
            rt = angle_residual(k, trial)
            if np.linalg.norm(rt) < base or t < 1e-10:
                break
            t /= 2
        if np.linalg.norm(rt) >= base:
            # no descent left: the residual sits at rounding level
            if np.max(np.abs(r)) < tol:
                break
            raise SolverDiverged(f"line search stalled at residual {np.max(np.abs(r)):.3e}")
        u, r = trial, rt
    f, g = _kite_arrays(k)
    angles = 2 * np.arctan(np.exp(u[g] - u[f]))
    pat = CirclePattern(k, u, angles, float(np.max(np.abs(r))), it)
    return layout_pattern(pat, k)


def _rotation(v: np.ndarray) -> np.ndarray:
    return np.array([math.cos(v), math.sin(v)])


def layout_pattern(pat: CirclePattern, k: KiteComplex | None = None, tol: float = 1e-9) -> CirclePattern:
    """Place circle centres and crossings, then normalise the rectangle."""
    k = k or pat.complex
    pm = k.graph
    radii = np.exp(pat.log_radii)
    index = {f: i for i, f in enumerate(k.centers)}
    kite_of_dart = {}
    for j, kt in enumerate(k.kites):
        kite_of_dart[kt.dart] = (j, pat.angles[j])
        kite_of_dart[pm.mate[kt.dart]] = (j, math.pi - pat.angles[j])

    centers = np.full((len(k.centers), 2), np.nan)
    spots: dict[int, list[np.ndarray]] = {}
    center_spots: dict[int, list[np.ndarray]] = {}

    def place(i: int, where: np.ndarray, anchor_dart: int, anchor_angle: float):
        f = k.centers[i]
        orbit = pm.faces[f]
        start = orbit.index(anchor_dart)
        kite_sum = sum(kite_of_dart[d][1] for d in orbit if d in kite_of_dart)
        gap = 2 * math.pi - kite_sum
        angles = {}
        a = anchor_angle
        for step in range(len(orbit)):
            d = orbit[(start + step) % len(orbit)]
            angles[d] = a
            # orbits run clockwise around the face
            a -= kite_of_dart[d][1] if d in kite_of_dart else gap
        centers[i] = where
        for d in orbit:
            spots.setdefault(d >> 2, []).append(where + radii[i] * _rotation(angles[d]))
        return angles

    first = 0
    queue = deque()
    angles0 = place(first, np.zeros(2), pm.faces[k.centers[first]][0], math.pi / 2)
    queue.append((first, angles0))
    done = {first}
    while queue:
        i, angles = queue.popleft()
        f = k.centers[i]
        for d in pm.faces[f]:
            if d not in kite_of_dart:
                continue
            j, theta = kite_of_dart[d]
            m = pm.mate[d]
            gi = index[pm.face_of[m]]
            # bisector of the kite between the tails of d and of the next dart
            mid = angles[d] - theta / 2
            where = centers[i] + math.hypot(radii[i], radii[gi]) * _rotation(mid)
            center_spots.setdefault(gi, []).append(where)
            if gi in done:
                continue
            done.add(gi)
            head = centers[i] + radii[i] * _rotation(angles[d] - theta)
            diff = head - where
            queue.append((gi, place(gi, where, m, math.atan2(diff[1], diff[0]))))
    if len(done) != len(k.centers):
        raise LayoutClosureFailure("kite graph is disconnected")

    closure = 0.0
    for i, pts in center_spots.items():
        closure = max(closure, max(float(np.linalg.norm(p - centers[i])) for p in pts))
    vertices = {}
    for v, pts in spots.items():
        base = pts[0]
        closure = max(closure, max(float(np.linalg.norm(p - base)) for p in pts))
        vertices[v] = np.mean(pts, axis=0)

    corners = [vertices[v] for v in k.corners]
    sides = [float(np.linalg.norm(corners[(i + 1) % 4] - corners[i])) for i in range(4)]
    short = 0 if sides[0] <= sides[1] else 1
    scale = 2 / sides[short]
    origin = corners[short]
    axis = corners[(short + 1) % 4] - origin
    rot = -math.atan2(axis[1], axis[0])
    cs, sn = math.cos(rot), math.sin(rot)
    rmat = np.array([[cs, -sn], [sn, cs]])

    def tf(p):
        return scale * (rmat @ (p - origin))

    centers = np.array([tf(p) for p in centers])
    vertices = {v: tf(p) for v, p in vertices.items()}
    width = scale * sides[short]
    height = scale * sides[(short + 1) % 4]
    # the rectangle may come out on either side of its first edge
    if vertices[k.corners[(short + 2) % 4]][1] < 0:
        flip = np.array([1.0, -1.0])
        centers = centers * flip
        vertices = {v: p * flip for v, p in vertices.items()}

    c = [vertices[v] for v in k.corners]
    closure = max(closure * scale, abs(sides[0] - sides[2]) * scale, abs(sides[1] - sides[3]) * scale,
                  abs(float(np.dot(c[1] - c[0], c[3] - c[0]))))
    for i, b in enumerate(k.boundary):
        if b == INTERIOR:
            continue
        # a side circle is centred on the rectangle edge it meets
        f = k.centers[i]
        for d in pm.faces[f]:
            side_face = pm.face_of[pm.mate[d]]
            if side_face in k.closed_faces:
                s = k.closed_faces.index(side_face)
                # consecutive corners around c bound the side lying in ring face s
                p0, p1 = vertices[k.corners[(s - 1) % 4]], vertices[k.corners[s]]
                closure = max(closure, _line_distance(centers[i], p0, p1))
    if not closure < tol:
        raise LayoutClosureFailure(f"layout closure residual {closure:.3e}")
    return replace(
        pat, radii=radii * scale, centers_xy=centers, vertices_xy=vertices,
        width=width, height=height, closure=closure,
    )


def _line_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    cross = ab[0] * (p - a)[1] - ab[1] * (p - a)[0]
    return abs(cross) / float(np.linalg.norm(ab))


def polyhedron_volume(pat: CirclePattern) -> float:
    return sum(lobachevsky(t / 2) + lobachevsky((math.pi - t) / 2) for t in pat.angles)


def realize(p, c: int = 0, tol: float = 1e-12, max_iter: int | None = None) -> CirclePattern:
    """Solve and lay out the kite tiling with crossing ``c`` sent to infinity."""
    k = build_kite_complex(p, c)
    return layout_pattern(solve_pattern(k, tol=tol, max_iter=max_iter), k)


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def empty_svg(width: float = 600.0) -> str:
    """Frame-only drawing for inputs without any polyhedron."""
    pad = 0.15 * width / 2
    size = _fmt(width + 2 * pad)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
        f'<rect class="frame" x="{_fmt(pad)}" y="{_fmt(pad)}" width="{_fmt(width)}" height="{_fmt(width)}" '
        'fill="none" stroke="black" stroke-width="2"/>\n</svg>\n'
    )


def render_svg(pat: CirclePattern, width: float = 600.0) -> str:
    """Standalone SVG of the rectangle, the circles and the kites with their angles."""
    if pat.centers_xy is None:
        pat = layout_pattern(pat)
    w, h = pat.width, pat.height
    if not (math.isfinite(w) and math.isfinite(h)) or w <= 0:
        w, h = 2.0, 2.0
    unit = width / w
    pad = 0.15 * unit
    tw, th = width + 2 * pad, h * unit + 2 * pad

    def pt(p) -> tuple[str, str]:
        # flip y so the rectangle's bottom edge is drawn at the bottom
        return _fmt(pad + p[0] * unit), _fmt(pad + (h - p[1]) * unit)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(tw)}" height="{_fmt(th)}" '
        f'viewBox="0 0 {_fmt(tw)} {_fmt(th)}">',
        f'<rect class="frame" x="{_fmt(pad)}" y="{_fmt(pad)}" width="{_fmt(width)}" '
        f'height="{_fmt(h * unit)}" fill="none" stroke="black" stroke-width="2"/>',
    ]
    k = pat.complex
    if not k.kites or pat.radii is None:
        out.append("</svg>")
        return "\n".join(out) + "\n"
    out.append('<g class="circles" fill="none" stroke="#3465a4" stroke-width="1">')
    for c, r in zip(pat.centers_xy, pat.radii):
        x, y = pt(c)
        out.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(r * unit)}"/>')
    out.append("</g>")
    out.append('<g class="kites" fill="#fce94f" fill-opacity="0.25" stroke="#cc0000" stroke-width="1">')
    labels = []
    for kt, theta in zip(k.kites, pat.angles):
        quad = [pat.centers_xy[kt.f], pat.vertices_xy[kt.tail], pat.centers_xy[kt.g], pat.vertices_xy[kt.head]]
        pts = " ".join(",".join(pt(p)) for p in quad)
        out.append(f'<polygon class="kite" points="{pts}"/>')
        for centre, other, angle in ((kt.f, kt.g, theta), (kt.g, kt.f, math.pi - theta)):
            a, b = pat.centers_xy[centre], pat.centers_xy[other]
            spot = a + 0.3 * (b - a)
            x, y = pt(spot)
            labels.append(f'<text x="{x}" y="{y}">{math.degrees(angle):.1f}</text>')
    out.append("</g>")
    out.append('<g class="angles" font-size="10" text-anchor="middle" fill="black">')
    out.extend(labels)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
