"""Generators of the global holonomy group from a base point.

For each invariant fiber ``x_j`` the loop ``delta_j`` runs from the base
point ``b`` straight towards ``x_j`` (bending around other fibers it would
pass too close to), goes once counterclockwise around ``x_j`` and returns
the same way.  Fibers are ordered counterclockwise by direction seen from
``b``, starting just after a cut ray placed in the widest angular gap; equal
directions are ordered by distance.  The loop around infinity leaves along
the cut ray, circles every finite fiber clockwise and returns.  With this
ordering ``delta_1 * ... * delta_k * gamma_inf`` is null-homotopic, hence::

    H_inf @ H_k @ ... @ H_1 ~ identity
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from ..errors import RoutingFailure
from ..matrix_core import ProjMap
from ..normal_form import check_riccati_cp2, invariant_fibers
from ..poly_vf import PolyVectorField
from .integrate import HolonomyResult, compile_field, numeric_holonomy
from .loops import TAU, Arc, LoopPath, reverse_pieces, segment_with_detours


def _cut_angle(base: complex, fibers: Sequence[complex]) -> float:
    if not fibers:
        return 0.0
    angles = sorted(cmath.phase(x - base) % TAU for x in fibers)
    gaps = [(angles[(i + 1) % len(angles)] - angles[i]) % TAU for i in range(len(angles))]
    if len(angles) == 1:
        gaps = [TAU]
    i = int(np.argmax(gaps))
    return (angles[i] + gaps[i] / 2.0) % TAU


def default_clearance(base: complex, fibers: Sequence[complex]) -> float:
    """``min(1, pair distance / 4, distance from base to fibers / 2)``."""
    c = 1.0
    for i, a in enumerate(fibers):
        c = min(c, 0.5 * abs(a - base))
        for b in fibers[i + 1:]:
            c = min(c, 0.25 * abs(a - b))
    return c


def order_fibers(base: complex, fibers: Sequence[complex]) -> tuple[list[complex], float]:
    """Fibers in counterclockwise order from the cut ray, and the cut angle."""
    cut = _cut_angle(base, fibers)
    key = lambda x: (round((cmath.phase(x - base) - cut) % TAU, 12), abs(x - base))  # noqa: E731
    return sorted(fibers, key=key), cut


def generator_loops(base: complex, fibers: Sequence[complex], include_infinity: bool,
                    clearance: float | None = None) -> list[tuple[complex | float, LoopPath]]:
    """Standard loops ``delta_j`` (and the loop around infinity), in order.

    Raises
    ------
    RoutingFailure
        Two fibers are closer than four clearances, or the base point is
        within one clearance of a fiber.
    """
    base = complex(base)
    fibers = [complex(x) for x in fibers]
    c = default_clearance(base, fibers) if clearance is None else float(clearance)
    for i, a in enumerate(fibers):
        if abs(a - base) < 2 * c:
            raise RoutingFailure(f"base point too close to the fiber x = {a}")
        for b in fibers[i + 1:]:
            if abs(a - b) < 4 * c:
                raise RoutingFailure(f"fibers {a} and {b} are closer than 4 x clearance")
    ordered, cut = order_fibers(base, fibers)
    loops: list[tuple[complex | float, LoopPath]] = []
    for xj in ordered:
        others = [x for x in fibers if x != xj]
        rho = c
        for x in others:
            rho = min(rho, 0.5 * abs(x - xj))
        direction = (base - xj) / abs(base - xj)
        q = xj + rho * direction
        out = segment_with_detours(base, q, others, c)
        phi = cmath.phase(q - xj)
        circle = Arc(xj, rho, phi, phi + TAU)
        pieces = out + [circle] + reverse_pieces(out)
        loops.append((xj, LoopPath(tuple(pieces), base, min(c, rho))))
    if include_infinity:
        R = max((abs(x - base) for x in fibers), default=0.0) + 2 * c
        if not fibers:
            R = 1.0
        far = base + R * cmath.exp(1j * cut)
        out = segment_with_detours(base, far, fibers, c)
        circle = Arc(base, R, cut, cut - TAU)
        pieces = out + [circle] + reverse_pieces(out)
        loops.append((math.inf, LoopPath(tuple(pieces), base, c)))
    return loops


def holonomy_generators(X: PolyVectorField, base_point: complex, tol: float = 1e-9,
                        n_samples: int = 8, seed: int = 0,
                        clearance: float | None = None) -> list[HolonomyResult]:
    """One fitted holonomy per invariant fiber (infinity last when invariant).

    The results carry their loop and fiber label; see the module docstring
    for the ordering and the product relation they satisfy.
    """
    check = check_riccati_cp2(X)
    compile_field(X)  # raises NotRiccati early
    fibers = invariant_fibers(check.form, X)
    out = []
    for label, loop in generator_loops(base_point, fibers.finite_fibers,
                                       fibers.infinity_invariant, clearance):
        res = numeric_holonomy(X, loop, n_samples=n_samples, tol=tol, seed=seed,
                               margin=0.5 * loop.clearance)
        res.fiber = label
        out.append(res)
    return out


def product_relation(generators: Sequence[HolonomyResult]) -> tuple[ProjMap, float]:
    """``H_last @ ... @ H_first`` and its projective distance from the identity."""
    m = np.eye(3, dtype=complex)
    for g in generators:
        m = g.map.matrix @ m
        m = m / np.linalg.norm(m)
    prod = ProjMap(m)
    return prod, prod.distance(ProjMap(np.eye(3)))
