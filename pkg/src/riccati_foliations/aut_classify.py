"""Classification of projective automorphisms of the complex projective plane.

Every ``f`` in PGL(3, C) is conjugate to one of six normal forms, told apart
by the Jordan structure of a representing matrix.  The fixed set of ``f`` is
the union of the projectivized eigenspaces, so it is one of: three points,
two points, one point, a line, a line plus a point, or the whole plane.

Examples
--------
>>> import numpy as np
>>> c = classify(ProjMap(np.diag([2.0, 3.0, 5.0])))
>>> c.jordan_case, c.paper_type, len(c.fixed_locus.points)
('I', 'P3', 3)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroVector
from .matrix_core import (
    JordanDecomposition,
    ProjMap,
    apply,
    as_matrix,
    jordan_form,
    normalize_projective,
)

__all__ = [
    "AutClassification",
    "FixedLocus",
    "PAPER_TYPE",
    "ProjMap",
    "apply",
    "classify",
    "fixed_locus",
]

PAPER_TYPE = {
    "I": "P3",
    "II1": "P1R2",
    "II2": "P2",
    "III1": "Identity",
    "III2": "R2",
    "III3": "P1",
}


@dataclass(frozen=True)
class FixedLocus:
    """Fixed set of a projective map.

    ``points`` are isolated fixed points, ``lines`` hold coefficient triples
    ``l`` of pointwise fixed lines ``{p : l . p = 0}``.
    """
    points: tuple[np.ndarray, ...] = ()
    lines: tuple[np.ndarray, ...] = ()
    is_all: bool = False

    def line_points(self, line_index: int, n: int = 20, seed: int = 0) -> np.ndarray:
        """``n`` random points on a listed line, as rows."""
        ell = self.lines[line_index]
        # two independent vectors orthogonal (bilinearly) to ell
        _, _, vh = np.linalg.svd(ell.reshape(1, 3))
        basis = vh[1:].conj().T
        rng = np.random.default_rng(seed)
        coef = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
        return coef @ basis.T


@dataclass(frozen=True)
class AutClassification:
    jordan_case: str
    paper_type: str
    fixed_locus: FixedLocus
    normal_form: ProjMap
    conjugator: np.ndarray
    decomposition: JordanDecomposition = field(repr=False, default=None)
    near_threshold: bool = False


def _as_projmap(f) -> ProjMap:
    return f if isinstance(f, ProjMap) else ProjMap(as_matrix(f, 3))


def _point_key(v: np.ndarray):
    return tuple(x for c in np.round(v, 9) for x in (c.real + 0.0, c.imag + 0.0))


def _chop(v: np.ndarray, rel: float = 1e-14) -> np.ndarray:
    """Zero out roundoff-level components and renormalize."""
    v = np.array(v, dtype=complex)
    v.real[np.abs(v.real) <= rel * np.max(np.abs(v))] = 0.0
    v.imag[np.abs(v.imag) <= rel * np.max(np.abs(v))] = 0.0
    return normalize_projective(v)


def _locus_from_decomposition(dec: JordanDecomposition) -> FixedLocus:
    case = dec.case_tag
    if case == "III1":
        return FixedLocus(is_all=True)
    S = np.linalg.inv(dec.P)
    cols = [S[:, i] for i in range(3)]
    if case == "I":
        points, lines = cols, []
    elif case == "II1":
        points, lines = [cols[2]], [np.cross(cols[0], cols[1])]
    elif case == "II2":
        points, lines = [cols[0], cols[2]], []
    elif case == "III2":
        points, lines = [], [np.cross(cols[0], cols[2])]
    else:  # III3
        points, lines = [cols[0]], []
    points = sorted((_chop(p) for p in points), key=_point_key)
    lines = [_chop(ell) for ell in lines]
    return FixedLocus(tuple(points), tuple(lines), False)


def classify(f, tol: float = 1e-8) -> AutClassification:
    """Jordan case, type label, fixed set and normal form of ``f``.

    Parameters
    ----------
    f : ProjMap or array_like
        Invertible 3x3 representative.
    tol : float
        Relative tolerance for singularity and eigenvalue clustering.

    Returns
    -------
    AutClassification
        ``normal_form`` is the Jordan matrix ``J`` and ``conjugator`` the
        matrix ``P`` with ``f ~ P^{-1} J P``.

    Raises
    ------
    DegenerateMatrix
        The matrix is singular at ``tol``.
    """
    fmap = _as_projmap(f)
    dec = jordan_form(fmap.matrix, tol)
    return AutClassification(
        jordan_case=dec.case_tag,
        paper_type=PAPER_TYPE[dec.case_tag],
        fixed_locus=_locus_from_decomposition(dec),
        normal_form=ProjMap(dec.J),
        conjugator=dec.P,
        decomposition=dec,
        near_threshold=dec.eigen.near_threshold,
    )


def fixed_locus(f, tol: float = 1e-8) -> FixedLocus:
    """Fixed points and pointwise fixed lines of ``f`` (see :func:`classify`)."""
    return classify(f, tol).fixed_locus


def fixed_angle(f, p) -> float:
    """Sine of the angle between ``p`` and ``f(p)``; zero at fixed points."""
    from .matrix_core import projective_distance

    v = np.asarray(p, dtype=complex)
    if not np.any(v):
        raise ZeroVector("expected a nonzero homogeneous triple")
    return projective_distance(_as_projmap(f).matrix @ v, v)
