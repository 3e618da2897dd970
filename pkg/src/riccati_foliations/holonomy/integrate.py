"""Numerical lifting of base loops along the leaves of a Riccati foliation.

The fiber is the projective plane, covered by three affine charts::

    chart 0: (y, z)  ~ [y : z : 1]
    chart 1: (u, v)  ~ [1 : v : u]      u = 1/y, v = z/y
    chart 2: (t, s)  ~ [t : 1 : s]      t = y/z, s = 1/z

Along a piece ``x = gamma(tau)``, ``tau`` in ``[0, 1]``, the fiber point obeys
``dY/dtau = gamma'(tau) F(x, Y) / p(x)`` in whichever chart it currently
sits, where ``F`` is the fiber part of the field in that chart.  All sample
points share one adaptive Dormand-Prince 5(4) step sequence; a point whose
coordinates exceed 2 in modulus moves to the chart where its largest
homogeneous coordinate is 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import IntegrationFailure, NotRiccati, PoleOnPath
from ..matrix_core import ProjMap, fit_projective, normalize_projective, projective_distance
from ..normal_form import check_riccati_cp2, invariant_fibers
from ..poly_vf import PolyVectorField, fiber_chart_cp2, fiber_chart_cp2_second
from .loops import LoopPath

log = logging.getLogger(__name__)

SWITCH_THRESHOLD = 2.0
MAX_FIBER_DEGREE = 3

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

# fiber monomials y1^i y2^j with i + j <= MAX_FIBER_DEGREE
_MONOS = [(i, d - i) for d in range(MAX_FIBER_DEGREE + 1) for i in range(d, -1, -1)]
_MONO_INDEX = {m: k for k, m in enumerate(_MONOS)}
_POW_I = np.array([m[0] for m in _MONOS])
_POW_J = np.array([m[1] for m in _MONOS])


def to_homogeneous(coords: np.ndarray, chart: np.ndarray) -> np.ndarray:
    """Homogeneous triples (rows) from chart coordinates."""
    coords = np.atleast_2d(coords)
    chart = np.atleast_1d(chart)
    one = np.ones(len(coords), dtype=complex)
    a, b = coords[:, 0], coords[:, 1]
    W = np.empty((len(coords), 3), dtype=complex)
    m0, m1, m2 = chart == 0, chart == 1, chart == 2
    W[m0] = np.stack([a[m0], b[m0], one[m0]], axis=1)
    W[m1] = np.stack([one[m1], b[m1], a[m1]], axis=1)
    W[m2] = np.stack([a[m2], one[m2], b[m2]], axis=1)
    return W


def from_homogeneous(W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Best chart (largest homogeneous coordinate) and coordinates there."""
    W = np.atleast_2d(W)
    k = np.argmax(np.abs(W), axis=1)
    chart = np.where(k == 2, 0, np.where(k == 0, 1, 2))
    coords = np.empty((len(W), 2), dtype=complex)
    for c, (i, j, piv) in enumerate([(0, 1, 2), (2, 1, 0), (0, 2, 1)]):
        m = chart == c
        coords[m, 0] = W[m, i] / W[m, piv]
        coords[m, 1] = W[m, j] / W[m, piv]
    return coords, chart


@dataclass
class CompiledField:
    """Coefficient tables of a Riccati field in the three fiber charts.

    ``tables[c, k, m, d]`` is the coefficient of ``x^d * monomial m`` in the
    fiber component ``k`` of chart ``c``; ``p`` holds the base polynomial
    (ascending powers of ``x``).
    """
    tables: np.ndarray
    p: np.ndarray
    roots: tuple[complex, ...]

    def coefficients_at(self, x: complex) -> np.ndarray:
        acc = np.zeros(self.tables.shape[:3], dtype=complex)
        for d in range(self.tables.shape[3] - 1, -1, -1):
            acc = acc * x + self.tables[..., d]
        return acc

    def p_at(self, x: complex) -> complex:
        acc = 0j
        for c in self.p[::-1]:
            acc = acc * x + c
        return acc

    def rhs(self, x: complex, dx: complex, Y: np.ndarray, chart: np.ndarray) -> np.ndarray:
        coef = self.coefficients_at(x)[chart]          # (S, 2, M)
        mono = Y[:, :1] ** _POW_I * Y[:, 1:] ** _POW_J  # (S, M)
        vals = np.einsum("skm,sm->sk", coef, mono)
        return vals * (dx / self.p_at(x))


def compile_field(X: PolyVectorField) -> CompiledField:
    """Tabulate an accepted projective-plane Riccati field for integration.

    Raises
    ------
    NotRiccati
        ``X`` is not in Riccati normal form over the projective plane.
    """
    if X.dim != 3:
        raise NotRiccati("numeric holonomy needs a field on C x CP(2)")
    check = check_riccati_cp2(X)
    if not check.accepted:
        rej = check.rejection
        raise NotRiccati(f"field is not in Riccati normal form: {rej.constraint}")
    form = check.form
    fibers = invariant_fibers(form, X)
    if fibers.all_invariant:
        raise NotRiccati("base component vanishes identically")
    charts = [X, fiber_chart_cp2(X), fiber_chart_cp2_second(X)]
    fields = [charts[0]]
    for r in charts[1:]:
        if r.clearing_exponent:
            raise NotRiccati("chart change needed pole clearing")
        fields.append(r.field)
    xdeg = max(max(c.deg_in(0) for c in f.components) for f in fields)
    xdeg = max(xdeg, 0)
    tables = np.zeros((3, 2, len(_MONOS), xdeg + 1), dtype=complex)
    for c, f in enumerate(fields):
        for k, comp in enumerate(f.components[1:]):
            for e, coef in comp.items():
                m = (e[1], e[2])
                if m not in _MONO_INDEX:
                    raise NotRiccati("fiber degree too high for a Riccati field")
                tables[c, k, _MONO_INDEX[m], e[0]] += coef
    p = form.p.univariate_coeffs(0)
    return CompiledField(tables, p, fibers.finite_fibers)


@dataclass
class IntegratorStats:
    steps: int = 0
    rejected: int = 0
    chart_switches: int = 0

    def as_dict(self) -> dict[str, int]:
        return {"steps": self.steps, "rejected": self.rejected,
                "chart_switches": self.chart_switches}


@dataclass
class _State:
    Y: np.ndarray
    chart: np.ndarray
    h: float = 0.05
    err_prev: float = 1e-4


@dataclass
class Trajectory:
    """Recorded lift: base points and homogeneous fiber points per step."""
    x: list = field(default_factory=list)
    W: list = field(default_factory=list)
    piece: list = field(default_factory=list)


def _switch_charts(state: _State, stats: IntegratorStats) -> bool:
    big = np.max(np.abs(state.Y), axis=1) > SWITCH_THRESHOLD
    if not np.any(big):
        return False
    W = to_homogeneous(state.Y[big], state.chart[big])
    coords, chart = from_homogeneous(W)
    state.Y[big] = coords
    state.chart[big] = chart
    stats.chart_switches += int(np.sum(big))
    return True


def _integrate_piece(cf: CompiledField, piece, state: _State, tol: float,
                     stats: IntegratorStats, max_steps: int,
                     traj: Trajectory | None, piece_index: int) -> None:
    safety, fac_min, fac_max = 0.9, 0.2, 5.0
    a_exp, b_exp = 0.7 / 5.0, 0.4 / 5.0
    t = 0.0
    h = min(max(state.h, 1e-6), 1.0)

    def f(tt, Y):
        return cf.rhs(complex(piece.point(tt)), complex(piece.velocity(tt)), Y, state.chart)

    k1 = f(t, state.Y)
    while t < 1.0:
        if stats.steps + stats.rejected >= max_steps:
            raise IntegrationFailure(f"step budget of {max_steps} exhausted")
        h = min(h, 1.0 - t)
        if h < 1e-13:
            raise IntegrationFailure("step size underflow")
        ks = [k1]
        for i in range(1, 7):
            Yi = state.Y + h * sum(a * k for a, k in zip(_A[i], ks))
            ks.append(f(t + _C[i] * h, Yi))
        Y5 = state.Y + h * sum(b * k for b, k in zip(_B5, ks) if b)
        errv = h * sum(e * k for e, k in zip(_E, ks))
        scale = tol + tol * np.maximum(np.abs(state.Y), np.abs(Y5))
        err = float(np.max(np.abs(errv) / scale))
        if not np.isfinite(err):
            err = math.inf
        if err <= 1.0:
            t = 1.0 if 1.0 - (t + h) < 1e-15 else t + h
            state.Y = Y5
            k1 = ks[6]
            stats.steps += 1
            fac = safety * max(err, 1e-10) ** (-a_exp) * state.err_prev ** b_exp
            state.err_prev = max(err, 1e-4)
            h *= min(fac_max, max(fac_min, fac))
            if _switch_charts(state, stats):
                k1 = f(t, state.Y)
            if traj is not None:
                traj.x.append(complex(piece.point(t)))
                traj.W.append(to_homogeneous(state.Y, state.chart))
                traj.piece.append(piece_index)
        else:
            stats.rejected += 1
            fac = safety * err ** (-a_exp) if np.isfinite(err) else fac_min
            h *= max(fac_min, min(1.0, fac))
    state.h = h


def check_clearance(cf: CompiledField, loop: LoopPath, margin: float | None = None) -> None:
    """Raise :class:`PoleOnPath` when the loop comes too close to a fiber."""
    for r in cf.roots:
        d = loop.distance_to(r)
        limit = 1e-8 * max(1.0, abs(r)) if margin is None else margin
        if d <= limit:
            raise PoleOnPath(f"loop passes within {d:.3e} of the invariant fiber x = {r}")


def lift(X: PolyVectorField | CompiledField, loop: LoopPath, points, tol: float = 1e-9,
         max_steps: int = 1_000_000, record: bool = False, margin: float | None = None):
    """Transport homogeneous fiber points along ``loop``.

    Returns
    -------
    (end_points, stats, trajectory)
        ``end_points`` are unit-normalized homogeneous rows; ``trajectory``
        is None unless ``record``.
    """
    cf = X if isinstance(X, CompiledField) else compile_field(X)
    check_clearance(cf, loop, margin)
    W0 = np.array([normalize_projective(p) for p in np.atleast_2d(points)])
    coords, chart = from_homogeneous(W0)
    state = _State(coords.astype(complex), chart.astype(int))
    stats = IntegratorStats()
    traj = Trajectory() if record else None
    if traj is not None:
        traj.x.append(complex(loop.base_point))
        traj.W.append(W0.copy())
        traj.piece.append(0)
    for i, piece in enumerate(loop.segments):
        _integrate_piece(cf, piece, state, tol, stats, max_steps, traj, i)
    W1 = to_homogeneous(state.Y, state.chart)
    W1 = np.array([normalize_projective(w) for w in W1])
    return W1, stats, traj


def sample_points(n_samples: int = 8, seed: int = 0) -> np.ndarray:
    """Six fixed points spread over the three charts plus seeded random ones."""
    fixed = np.array([
        [1.0, 0.2 + 0.1j, 0.3 - 0.2j],
        [0.1 - 0.3j, 1.0, -0.2 + 0.25j],
        [0.35 + 0.1j, -0.15 + 0.2j, 1.0],
        [1.0, -0.6 + 0.3j, 0.5 + 0.4j],
        [0.4 - 0.5j, 1.0, 0.7 + 0.2j],
        [-0.55 + 0.25j, 0.45 - 0.35j, 1.0],
    ], dtype=complex)
    if n_samples < 6:
        raise ValueError("at least six sample points are required")
    rng = np.random.default_rng(seed)
    extra = rng.normal(size=(n_samples - 6, 3)) + 1j * rng.normal(size=(n_samples - 6, 3))
    return np.vstack([fixed, extra]) if n_samples > 6 else fixed


@dataclass
class HolonomyResult:
    """Fitted holonomy of one loop.

    ``fiber`` labels the invariant fiber the loop encircles (``None`` for
    ad hoc loops, ``inf`` for the fiber at infinity).
    """
    map: ProjMap
    residual: float
    n_samples: int
    stats: IntegratorStats
    sources: np.ndarray = field(repr=False)
    targets: np.ndarray = field(repr=False)
    loop: LoopPath | None = field(repr=False, default=None)
    fiber: complex | None = None

    @property
    def integrator_stats(self) -> tuple[int, int, int]:
        return (self.stats.steps, self.stats.rejected, self.stats.chart_switches)

    def sup_distance(self, matrix) -> float:
        """Largest projective distance between ``matrix @ source`` and the lifted target."""
        m = matrix.matrix if isinstance(matrix, ProjMap) else np.asarray(matrix)
        return max(projective_distance(m @ s, t) for s, t in zip(self.sources, self.targets))


def numeric_holonomy(X: PolyVectorField, loop: LoopPath, n_samples: int = 8,
                     tol: float = 1e-9, seed: int = 0, max_steps: int = 1_000_000,
                     margin: float | None = None) -> HolonomyResult:
    """Holonomy of ``loop`` as a projective map fitted from lifted sample points.

    Raises
    ------
    NotRiccati
        ``X`` is not an accepted projective-plane Riccati field.
    PoleOnPath
        The loop touches an invariant fiber.
    IntegrationFailure
        Step-size underflow or exhausted step budget.
    """
    cf = compile_field(X)
    src = sample_points(n_samples, seed)
    src = np.array([normalize_projective(s) for s in src])
    dst, stats, _ = lift(cf, loop, src, tol, max_steps, margin=margin)
    fmap, residual = fit_projective(list(zip(src, dst)))
    log.debug("holonomy: steps=%d rejected=%d switches=%d residual=%.2e",
              stats.steps, stats.rejected, stats.chart_switches, residual)
    return HolonomyResult(fmap, residual, n_samples, stats, src, dst, loop)
