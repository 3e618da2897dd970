"""Small complex matrix algebra.

Characteristic polynomials, clustered eigenstructure, 3x3 Jordan forms with an
explicit conjugator, the matrix exponential, branch-controlled logarithms of
eigenvalues and projective maps fitted from point correspondences.

Conventions
-----------
A Jordan decomposition follows ``M = P^{-1} J P``: the columns of ``P^{-1}``
are (generalized) eigenvectors of ``M``.  Projective objects (points, lines,
maps) are compared after :func:`normalize_projective`, which rescales to unit
norm and rotates the phase so that the largest-modulus entry is real positive.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DegenerateMatrix,
    IllConditioned,
    ZeroArgument,
    ZeroVector,
)

TWO_PI_I = 2j * math.pi

#: Jordan case tags, in the order the classification proof treats them.
CASES = ("I", "II1", "II2", "III1", "III2", "III3")

# Entries within this relative distance of the largest modulus tie for the
# phase anchor; the first one (row-major) wins.
_PHASE_TIE = 1e-6


def as_matrix(m, n: int | None = None) -> np.ndarray:
    """Return ``m`` as a finite complex square array, optionally of size ``n``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise ValueError(f"expected a {n}x{n} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def normalize_projective(a) -> np.ndarray:
    """Unit Frobenius norm, largest-modulus entry real and positive."""
    a = np.asarray(a, dtype=complex)
    nrm = np.linalg.norm(a)
    if nrm == 0.0 or not np.isfinite(nrm):
        raise ZeroVector("cannot normalize a zero (or non-finite) array")
    a = a / nrm
    flat = a.ravel()
    mods = np.abs(flat)
    k = int(np.argmax(mods >= (1.0 - _PHASE_TIE) * mods.max()))
    out = a * (abs(flat[k]) / flat[k])
    out.ravel()[k] = abs(flat[k])
    return out


def projective_distance(a, b) -> float:
    """Sine of the angle between two nonzero arrays viewed as projective points.

    Works for vectors and (flattened) matrices alike; invariant under
    independent nonzero rescaling of either argument.
    """
    a = np.ravel(np.asarray(a, dtype=complex))
    b = np.ravel(np.asarray(b, dtype=complex))
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("projective distance of a zero array")
    a = a / na
    b = b / nb
    # residual of b after projecting on a; accurate for tiny angles
    return float(min(1.0, np.linalg.norm(b - a * np.vdot(a, b))))


# ---------------------------------------------------------------------------
# characteristic polynomial and its roots
# ---------------------------------------------------------------------------

def char_poly(m) -> tuple[complex, complex, complex]:
    """Coefficients ``(c0, c1, c2)`` of ``det(tI - M) = t^3 + c2 t^2 + c1 t + c0``."""
    a = as_matrix(m, 3)
    c2 = -np.trace(a)
    c1 = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
          + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
          + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    c0 = -np.linalg.det(a)
    return complex(c0), complex(c1), complex(c2)


def _eval_monic_cubic(coeffs, t):
    c0, c1, c2 = coeffs
    return ((t + c2) * t + c1) * t + c0


def cubic_roots(c0: complex, c1: complex, c2: complex) -> list[complex]:
    """Roots of ``t^3 + c2 t^2 + c1 t + c0`` by Cardano's formula.

    Each root is polished by one Newton step, kept only if it lowers the
    residual.
    """
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    w1, w2 = -q / 2.0 + disc, -q / 2.0 - disc
    w = w1 if abs(w1) >= abs(w2) else w2
    if w == 0:
        s = [0j, 0j, 0j]
    else:
        u = w ** (1.0 / 3.0)
        omega = cmath.exp(TWO_PI_I / 3.0)
        s = []
        for k in range(3):
            uk = u * omega ** k
            s.append(uk - p / (3.0 * uk))
    roots = [sk - shift for sk in s]

    coeffs = (c0, c1, c2)
    polished = []
    for r in roots:
        f = _eval_monic_cubic(coeffs, r)
        df = (3.0 * r + 2.0 * c2) * r + c1
        if df != 0:
            r_new = r - f / df
            if abs(_eval_monic_cubic(coeffs, r_new)) < abs(f):
                r = r_new
        polished.append(complex(r))
    return polished


# ---------------------------------------------------------------------------
# eigenstructure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenCluster:
    value: complex
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class EigenData:
    """Clustered eigenvalues of a 3x3 matrix.

    ``near_threshold`` is set when some merge/split decision fell within a
    factor 10 of its threshold, i.e. the multiplicity pattern is fragile.
    """
    clusters: tuple[EigenCluster, ...]
    clustering_tol: float
    near_threshold: bool = False

    @property
    def pattern(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.algebraic, c.geometric) for c in self.clusters)


def _cluster_key(value: complex, algebraic: int):
    return (-algebraic, -round(abs(value), 12), round(cmath.phase(value), 12))


def _null_basis(a: np.ndarray, dim: int) -> np.ndarray:
    """Columns spanning the ``dim`` smallest right singular directions of ``a``."""
    _, _, vh = np.linalg.svd(a)
    return vh[a.shape[1] - dim:].conj().T


def _numerical_rank(a: np.ndarray, threshold: float) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > threshold))


def _check_invertible(a: np.ndarray, tol: float) -> np.ndarray:
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol * s[0]:
        raise DegenerateMatrix(
            f"matrix is singular at tolerance {tol:g} "
            f"(sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0.0:.3e})")
    return s


def eigen_structure(m, tol: float = 1e-8) -> EigenData:
    """Eigenvalue clusters with algebraic and geometric multiplicities.

    Roots of the characteristic polynomial come from :func:`cubic_roots`.  A
    root of multiplicity ``k`` of a matrix perturbed by a relative amount
    ``tol`` spreads over a radius of order ``tol**(1/k)``.  With ``r`` the spectral
    radius, three roots are merged when they all lie within
    ``3 (tol ||M|| r^2)^(1/3)`` of their mean, and a pair when it lies within
    ``2 (tol ||M|| r)^(1/2)``.  A multiple
    root's value comes from the trace, which is far more accurate than any
    single member.  Geometric multiplicity is ``3 - rank(M - lambda I)`` with
    singular values below ``tol ||M||`` treated as zero.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a = as_matrix(m, 3)
    sv = _check_invertible(a, tol)
    scale = sv[0]
    roots = cubic_roots(*char_poly(a))

    rho = max(abs(r) for r in roots)
    r_triple = 3.0 * (tol * scale * rho * rho) ** (1.0 / 3.0)
    r_double = 2.0 * (tol * scale * rho) ** 0.5
    near = False

    mean = sum(roots) / 3.0
    spread = max(abs(r - mean) for r in roots)
    if spread <= r_triple:
        groups = [[0, 1, 2]]
        near = spread > r_triple / 10.0
    else:
        near = spread < 10.0 * r_triple
        pairs = sorted(((abs(roots[i] - roots[j]), i, j)
                        for i in range(3) for j in range(i + 1, 3)))
        d, i, j = pairs[0]
        if d <= r_double:
            k = 3 - i - j
            groups = [[i, j], [k]]
            near = near or d > r_double / 10.0
        else:
            groups = [[0], [1], [2]]
            near = near or d < 10.0 * r_double

    # The trace pins down the sum of all roots exactly; a multiple root is
    # recovered from it rather than from its (ill-conditioned) members.
    trace = complex(np.trace(a))
    simple_sum = sum(roots[g[0]] for g in groups if len(g) == 1)
    rank_thr = tol * scale
    clusters = []
    for g in groups:
        if len(g) == 1:
            value = complex(roots[g[0]])
        else:
            value = (trace - simple_sum) / len(g)
        alg = len(g)
        rank = _numerical_rank(a - value * np.eye(3), rank_thr)
        geo = min(alg, max(1, 3 - rank))
        clusters.append(EigenCluster(value, alg, geo))
    clusters.sort(key=lambda c: _cluster_key(c.value, c.algebraic))
    return EigenData(tuple(clusters), tol, near)


def case_from_eigendata(ed: EigenData) -> str:
    """Jordan case tag from the (characteristic, minimal) polynomial pattern."""
    pattern = ed.pattern
    if len(pattern) == 3:
        return "I"
    if len(pattern) == 2:
        return "II1" if pattern[0][1] == 2 else "II2"
    return {3: "III1", 2: "III2", 1: "III3"}[pattern[0][1]]


# ---------------------------------------------------------------------------
# Jordan form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanDecomposition:
    J: np.ndarray
    P: np.ndarray
    case_tag: str
    eigen: EigenData = field(repr=False, default=None)

    def reconstruct(self) -> np.ndarray:
        return np.linalg.solve(self.P, self.J @ self.P)

    def condition(self) -> float:
        return float(np.linalg.cond(self.P))


def _unit_phase(v: np.ndarray) -> np.ndarray:
    return normalize_projective(v)


def _chain(n_mat: np.ndarray, basis: np.ndarray, length: int) -> list[np.ndarray]:
    """Jordan chain ``[N^{L-1} v, ..., N v, v]`` with ``v`` in span(basis).

    ``v`` maximizes ``||N^{L-1} v||`` over unit vectors of the span (the top
    right singular vector), the analogue of partial pivoting.
    """
    power = np.linalg.matrix_power(n_mat, length - 1)
    _, _, vh = np.linalg.svd(power @ basis)
    top = _unit_phase(basis @ vh[0].conj())
    chain = [top]
    for _ in range(length - 1):
        chain.append(n_mat @ chain[-1])
    return chain[::-1]


def jordan_form(m, tol: float = 1e-8, max_condition: float = 1e12) -> JordanDecomposition:
    """Jordan form ``J`` and conjugator ``P`` with ``M = P^{-1} J P``.

    Blocks follow the standard normal-form order: a repeated
    eigenvalue comes first, then the remaining clusters by decreasing modulus
    and increasing argument.

    Raises
    ------
    DegenerateMatrix
        ``M`` is singular at ``tol``.
    IllConditioned
        ``cond(P) > max_condition``; the decomposition is attached.
    """
    a = as_matrix(m, 3)
    ed = eigen_structure(a, tol)
    case = case_from_eigendata(ed)
    eye = np.eye(3)
    cols: list[np.ndarray] = []
    J = np.zeros((3, 3), dtype=complex)

    if case == "III1":
        lam = ed.clusters[0].value
        cols = [eye[:, 0], eye[:, 1], eye[:, 2]]
        J = lam * eye
    elif case == "III3":
        lam = ed.clusters[0].value
        cols = _chain(a - lam * eye, eye.astype(complex), 3)
        J = np.array([[lam, 1, 0], [0, lam, 1], [0, 0, lam]], dtype=complex)
    elif case == "III2":
        lam = ed.clusters[0].value
        n_mat = a - lam * eye
        v1, v2 = _chain(n_mat, eye.astype(complex), 2)
        kernel = _null_basis(n_mat, 2)
        k1 = kernel.conj().T @ v1
        perp = np.array([-np.conj(k1[1]), np.conj(k1[0])])
        e = _unit_phase(kernel @ perp)
        cols = [v1, v2, e]
        J = np.array([[lam, 1, 0], [0, lam, 0], [0, 0, lam]], dtype=complex)
    else:
        diag = []
        sup = []
        for c in ed.clusters:
            n_mat = a - c.value * eye
            if c.algebraic == 1:
                cols.append(_unit_phase(_null_basis(n_mat, 1)[:, 0]))
                diag.append(c.value)
            elif c.geometric == 2:
                kernel = _null_basis(n_mat, 2)
                cols.extend(_unit_phase(kernel[:, i]) for i in range(2))
                diag.extend([c.value, c.value])
            else:
                gen = _null_basis(np.linalg.matrix_power(n_mat, 2), 2)
                cols.extend(_chain(n_mat, gen, 2))
                diag.extend([c.value, c.value])
                sup.append(len(diag) - 2)
        J = np.diag(np.array(diag, dtype=complex))
        for i in sup:
            J[i, i + 1] = 1.0

    S = np.column_stack(cols)
    P = np.linalg.inv(S)
    dec = JordanDecomposition(J, P, case, ed)
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > max_condition:
        raise IllConditioned(
            f"Jordan conjugator has condition number {cond:.3e}", dec, cond)
    return dec


# ---------------------------------------------------------------------------
# exponential and logarithm
# ---------------------------------------------------------------------------

def mat_exp(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    Triangular inputs keep their zero pattern exactly and get the exact
    exponentials of their diagonal.
    """
    a = as_matrix(m)
    n = a.shape[0]
    nrm = np.linalg.norm(a, 1)
    s = 0 if nrm <= 0.5 else int(math.ceil(math.log2(nrm / 0.5)))
    b = a / (2.0 ** s)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 30):
        term = term @ b / k
        result = result + term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(result, 1):
            break
    for _ in range(s):
        result = result @ result
    upper = not np.any(np.tril(a, -1))
    lower = not np.any(np.triu(a, 1))
    if upper or lower:
        idx = np.diag_indices(n)
        result[idx] = np.exp(np.diag(a))
        if upper:
            result = np.triu(result)
        if lower:
            result = np.tril(result)
    return result


def alpha_from_lambda(lam: complex, winding: int = 0) -> complex:
    """Return ``alpha`` with ``exp(2 pi i alpha) = lam``.

    Uses the principal logarithm (argument in ``(-pi, pi]``) shifted by
    ``winding`` sheets.
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroArgument("logarithm of zero")
    if lam.imag == 0.0:
        lam = complex(lam.real, 0.0)  # -0.0 would select the -pi branch
    return (cmath.log(lam) + TWO_PI_I * winding) / TWO_PI_I


# ---------------------------------------------------------------------------
# projective maps
# ---------------------------------------------------------------------------

class ProjMap:
    """An element of PGL(3, C) represented by a nonzero 3x3 matrix.

    Two maps are equal when their matrices are proportional.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        a = as_matrix(matrix, 3)
        if not np.any(a):
            raise ZeroVector("a projective map needs a nonzero matrix")
        a = a.copy()
        a.setflags(write=False)
        self._matrix = a

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def normalized(self) -> np.ndarray:
        return normalize_projective(self._matrix)

    def apply(self, p) -> np.ndarray:
        return apply(self, p)

    def inverse(self) -> "ProjMap":
        return ProjMap(np.linalg.inv(self._matrix))

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        return ProjMap(self._matrix @ other.matrix)

    def distance(self, other: "ProjMap") -> float:
        """Projective distance of the matrices (sine of their angle)."""
        return projective_distance(self._matrix, other.matrix)

    def isclose(self, other: "ProjMap", tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.isclose(other, 1e-12)

    __hash__ = None

    def __repr__(self):
        return f"ProjMap({np.array2string(self.normalized(), precision=6)})"


def apply(f: ProjMap, p) -> np.ndarray:
    """Image of the homogeneous point ``p``, normalized."""
    v = np.asarray(p, dtype=complex)
    if v.shape != (3,) or not np.any(v):
        raise ZeroVector("expected a nonzero homogeneous triple")
    return normalize_projective(f.matrix @ v)


@dataclass(frozen=True)
class Correspondence:
    source: np.ndarray
    target: np.ndarray

    def __post_init__(self):
        for name in ("source", "target"):
            v = np.asarray(getattr(self, name), dtype=complex)
            if v.shape != (3,) or not np.any(v):
                raise ZeroVector(f"{name} must be a nonzero homogeneous triple")
            object.__setattr__(self, name, v)


def _design_rows(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Two independent equations of ``dst x (M src) = 0`` for the unknown M.

    Both equations pivot on the largest component of ``dst``.
    """
    k = int(np.argmax(np.abs(dst)))
    rows = []
    for i in range(3):
        if i == k:
            continue
        # dst[k] * (M src)_i - dst[i] * (M src)_k = 0
        row = np.zeros(9, dtype=complex)
        row[3 * i:3 * i + 3] = dst[k] * src
        row[3 * k:3 * k + 3] = -dst[i] * src
        rows.append(row)
    return np.array(rows)


def fit_residual(f: ProjMap | np.ndarray, sources, targets) -> float:
    """Largest sine of the angle between ``f(source)`` and ``target``."""
    mat = f.matrix if isinstance(f, ProjMap) else np.asarray(f)
    return max(projective_distance(mat @ s, t) for s, t in zip(sources, targets))


def fit_projective(corrs: Sequence[Correspondence] | Sequence[tuple]) -> tuple[ProjMap, float]:
    """Projective map sending each source to its target, up to scale.

    The homogeneous system ``target ~ M source`` is solved through the right
    singular vector of the smallest singular value.  Points are normalized to
    unit length first.

    Returns
    -------
    (ProjMap, residual)
        ``residual`` is the largest sine of the angle between ``M source``
        and ``target`` over all correspondences.

    Raises
    ------
    DegenerateConfiguration
        Fewer than four correspondences, or the null space of the design
        matrix has dimension above one at relative tolerance 1e-10.
    """
    pairs = [c if isinstance(c, Correspondence) else Correspondence(*c) for c in corrs]
    if len(pairs) < 4:
        raise DegenerateConfiguration("need at least four correspondences")
    src = [c.source / np.linalg.norm(c.source) for c in pairs]
    dst = [c.target / np.linalg.norm(c.target) for c in pairs]
    design = np.vstack([_design_rows(s, t) for s, t in zip(src, dst)])
    _, sv, vh = np.linalg.svd(design)
    full = np.zeros(9)
    full[:len(sv)] = sv
    if full[7] <= 1e-10 * full[0]:
        raise DegenerateConfiguration(
            "point correspondences leave the projective map undetermined")
    mat = normalize_projective(vh[-1].conj().reshape(3, 3))
    fmap = ProjMap(mat)
    return fmap, fit_residual(fmap, src, dst)
