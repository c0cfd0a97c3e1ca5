"""End-to-end acceptance checks.

Each test records its checks through the ``criterion`` fixture; the run ends
with one PASS/FAIL line per criterion.
"""
import math
import time

import numpy as np
import pytest

from fixtures import (
    REFERENCE_HYPERBOLIC,
    REFERENCE_RIGHT_ANGLED,
    W,
    brute_force_circuits,
    cuboctahedron,
    flype_pairs,
    octahedron,
    pretzel,
    small_fixtures,
    w34_graph,
)
from ravol import ast_lower_bound, enumerate_four_circuits, lobachevsky, realize, volp, w3q_volume
from ravol.geometry import angle_jacobian, angle_residual, build_kite_complex
from ravol.split import decompose
from ravol.tangles import twist_insert
from test_hypvol import quad_lobachevsky

C1 = "1 reference right-angled volumes"
C2 = "2 Borromean identity"
C3 = "3 fast path equals generic"
C4 = "4 lower bounds"
C5 = "5 constants"
C6 = "6 zero-volume class"
C7 = "7 invariance"
C8 = "8 numerical health"


def _check(record, name, ok, detail):
    record(name, ok, detail)
    return ok


@pytest.mark.parametrize("pq", sorted(REFERENCE_RIGHT_ANGLED), ids=lambda pq: f"W({pq[0]},{pq[1]})")
def test_reference_volumes(criterion, pq):
    start = time.perf_counter()
    got = volp(W(*pq)).volp
    elapsed = time.perf_counter() - start
    want = REFERENCE_RIGHT_ANGLED[pq]
    ok = abs(got - want) < 1e-3
    criterion(C1, ok, f"W{pq}: got {got:.4f}, expected {want:.4f}")
    assert ok, f"W{pq}: got {got:.6f}, expected {want}"
    assert elapsed < 1.0


def test_borromean_identity(criterion):
    got = volp(W(3, 3)).volp
    ok = abs(got - 16 * lobachevsky(math.pi / 4)) < 1e-10
    criterion(C2, ok, f"volp={got!r}")
    assert ok


@pytest.mark.parametrize("q", range(3, 10))
def test_fast_path_equals_generic(criterion, q):
    fast, generic = w3q_volume(q), volp(W(3, q)).volp
    ok = abs(fast - generic) < 1e-8
    criterion(C3, ok, f"q={q}: diff {abs(fast - generic):.2e}")
    assert ok


def test_lower_bounds(criterion):
    ok = True
    for pq, vol in REFERENCE_HYPERBOLIC.items():
        got = volp(W(*pq)).volp
        # the references carry four decimals, so compare at that precision
        ok &= _check(criterion, C4, round(got, 4) <= vol + 1e-6, f"W{pq}: {got:.6f} > {vol}")
    for q in range(4, 10):
        d = W(3, q)
        got, bound = volp(d).volp, ast_lower_bound(d)
        ok &= _check(criterion, C4, got > bound, f"W(3,{q}): {got:.4f} <= twist bound {bound:.4f}")
    assert ok


def test_constants(criterion):
    oct_ok = abs(8 * lobachevsky(math.pi / 4) - 3.66386) < 1e-5
    tet_ok = abs(3 * lobachevsky(math.pi / 3) - 1.01494) < 1e-5
    criterion(C5, oct_ok, "octahedron")
    criterion(C5, tet_ok, "tetrahedron")
    assert oct_ok and tet_ok


def test_zero_volume_class(criterion):
    cases = {"trefoil": W(2, 3), "figure-eight": W(3, 2), "pretzel(3,3,3)": pretzel(3)}
    cases.update({f"T(2,{q})": W(2, q) for q in range(2, 10)})
    ok = True
    for name, d in cases.items():
        got = volp(d).volp
        ok &= _check(criterion, C6, got == 0.0, f"{name}: {got}")
    assert ok


@pytest.mark.parametrize("graph", [octahedron, w34_graph, cuboctahedron], ids=["octahedron", "W(3,4)", "W(4,4)"])
def test_choice_of_infinity(criterion, graph):
    g = graph()
    vols = [realize(g, c).volume for c in range(g.num_vertices)]
    spread = max(vols) - min(vols)
    ok = spread < 1e-8
    criterion(C7, ok, f"{g.num_vertices}-vertex spread {spread:.1e}")
    assert ok


def test_flype_invariance(criterion):
    ok = True
    for a, b in flype_pairs():
        va, vb = volp(a).volp, volp(b).volp
        ok &= _check(criterion, C7, abs(va - vb) < 1e-8, f"flype {va} vs {vb}")
    assert ok


def test_twist_insertion(criterion):
    base = volp(W(3, 5)).volp
    ok = True
    for v in range(10):
        for vertical in (True, False):
            got = volp(twist_insert(W(3, 5), v, 3, vertical)).volp
            ok &= _check(criterion, C7, abs(got - base) < 1e-8, f"crossing {v}: {got} vs {base}")
    assert ok


def _graphs():
    yield octahedron()
    yield w34_graph()
    yield cuboctahedron()
    for pq in [(3, 5), (3, 6), (3, 7), (4, 3)]:
        yield decompose(W(*pq)).polyhedra[0]


def test_solver_and_layout_health(criterion):
    ok = True
    for g in _graphs():
        for c in range(g.num_vertices):
            pat = realize(g, c)
            ok &= _check(criterion, C8, pat.residual < 1e-12, f"residual {pat.residual:.1e}")
            ok &= _check(criterion, C8, pat.closure < 1e-9, f"closure {pat.closure:.1e}")
    assert ok


def test_jacobian_health(criterion):
    ok = True
    for g in _graphs():
        k = build_kite_complex(g, 0)
        u = realize(g, 0).log_radii
        jac = angle_jacobian(k, u)
        num = np.empty_like(jac)
        h = 1e-6
        for j in range(len(u)):
            e = np.zeros_like(u)
            e[j] = h
            num[:, j] = (angle_residual(k, u + e) - angle_residual(k, u - e)) / (2 * h)
        rel = float(np.linalg.norm(jac - num) / np.linalg.norm(jac))
        ok &= _check(criterion, C8, rel < 1e-6, f"jacobian rel err {rel:.1e}")
    assert ok


def test_lobachevsky_health(criterion):
    grid = [math.pi * k / 64 for k in range(65)]
    worst = max(abs(lobachevsky(t) - quad_lobachevsky(t)) for t in grid)
    ok = worst < 1e-12
    criterion(C8, ok, f"lobachevsky error {worst:.1e}")
    assert ok


def test_circuit_enumeration_health(criterion):
    ok = True
    for name, d in small_fixtures().items():
        same = {c.edge_set for c in enumerate_four_circuits(d)} == set(brute_force_circuits(d.map))
        ok &= _check(criterion, C8, same, f"circuits differ on {name}")
    assert ok
