"""Lobachevsky function and right-angled volume assembly."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NonFiniteInput


@lru_cache(maxsize=1)
def _clausen_coefficients(terms: int = 40) -> tuple[float, ...]:
    """Coefficients |B_2k| / (2k (2k+1)!) of the Clausen series."""
    # Bernoulli numbers via the Akiyama-Tanigawa recurrence
    n = 2 * terms + 1
    a = [Fraction(0)] * (n + 1)
    bern = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    return tuple(
        float(abs(bern[2 * k]) / (2 * k * math.factorial(2 * k + 1)))
        for k in range(1, terms + 1)
    )


def _clausen2(x: float) -> float:
    """Cl_2(x) for 0 <= x <= pi."""
    if x == 0.0:
        return 0.0
    x2 = x * x
    power = x * x2
    total = x - x * math.log(x)
    for c in _clausen_coefficients():
        term = c * power
        total += term
        if term < 1e-18:
            break
        power *= x2
    return total


def lobachevsky(theta: float) -> float:
    """Lobachevsky function: minus the integral of log|2 sin t| from 0 to theta."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise NonFiniteInput(f"lobachevsky({theta})")
    t = math.fmod(theta, math.pi)
    if t < 0:
        t += math.pi
    if t > math.pi / 2:
        return -0.5 * _clausen2(2 * (math.pi - t))
    return 0.5 * _clausen2(2 * t)


V_OCT = 8 * lobachevsky(math.pi / 4)
V_TET = 3 * lobachevsky(math.pi / 3)


def ast_bound_from_twists(t: int) -> float:
    return V_OCT / 2 * (t - 2)


def ast_lower_bound(d) -> float:
    """Twist-number lower bound (v_oct/2)(t - 2) for the hyperbolic volume."""
    from .diagram import twist_number

    return ast_bound_from_twists(twist_number(d))


@dataclass
class VolumeReport:
    volp: float
    polyhedra: list[tuple[tuple[int, ...], float]]
    twist_number: int
    ast_bound: float
    trace: list[dict] = field(default_factory=list)
    constants: dict[str, float] = field(default_factory=lambda: {"v_oct": V_OCT, "v_tet": V_TET})
    diagnostics: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "volp": self.volp,
            "polyhedra": [
                {"code": list(code), "volume": vol, "vertices": len(code) // 8}
                for code, vol in self.polyhedra
            ],
            "twist_number": self.twist_number,
            "ast_bound": self.ast_bound,
            "trace": self.trace,
            "constants": dict(self.constants),
            "diagnostics": self.diagnostics,
        }


def volp(d, tol: float = 1e-12, max_iter: int | None = None, rng=None, pick=None) -> VolumeReport:
    """Right-angled volume of a validated reduced prime alternating diagram."""
    from .diagram import twist_number, validate_diagram
    from .geometry import realize
    from .split import decompose

    validate_diagram(d).raise_for_failure()
    result = decompose(d, rng=rng, pick=pick)
    polyhedra = []
    diagnostics = []
    for g in result.polyhedra:
        pat = realize(g, tol=tol, max_iter=max_iter)
        polyhedra.append((g.canonical_code, pat.volume))
        diagnostics.append({
            "vertices": g.num_vertices,
            "kites": len(pat.angles),
            "residual": pat.residual,
            "iterations": pat.iterations,
            "closure": pat.closure,
        })
    t = twist_number(d)
    return VolumeReport(
        volp=2.0 * math.fsum(v for _, v in polyhedra),
        polyhedra=polyhedra,
        twist_number=t,
        ast_bound=ast_bound_from_twists(t),
        trace=result.trace,
        diagnostics=diagnostics,
    )
