"""Realizing a list of projective maps as holonomy generators.

Given ``f_1, ..., f_k`` put ``f_0 = (f_1 ... f_k)^{-1}`` so that the product
of all of them is the identity.  Each ``f_j`` is conjugate to a Jordan
matrix ``J_j``; its affine normalization ``J_j / J_j[2, 2]`` is the holonomy
of one of the local models A-E.  The check confirms, for each generator, that
the model's closed-form holonomy equals that normalization, that numerical
lifting around the model's circle reproduces it, and that the realized maps
``P_j^{-1} H_j P_j`` multiply to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..aut_classify import classify
from ..errors import DegenerateMatrix, IllConditioned, UnclassifiableGenerator
from ..matrix_core import ProjMap, projective_distance
from .integrate import numeric_holonomy
from .local_models import (
    AffineFiberMap,
    LocalModel,
    affine_normal_form,
    analytic_holonomy,
    local_model_field,
    model_from_normal_form,
)
from .loops import LoopPath

ANALYTIC_TOL = 1e-10
NUMERIC_TOL = 1e-6
PRODUCT_TOL = 1e-8


@dataclass
class GeneratorCheck:
    index: int
    jordan_case: str
    paper_type: str
    model: LocalModel
    normal_form: np.ndarray
    conjugator: np.ndarray
    analytic: np.ndarray
    analytic_error: float
    numeric_error: float | None = None
    numeric_residual: float | None = None

    @property
    def passed(self) -> bool:
        ok = self.analytic_error <= ANALYTIC_TOL
        if self.numeric_error is not None:
            ok = ok and self.numeric_error <= NUMERIC_TOL
        return ok


@dataclass
class SynthesisReport:
    generators: list[GeneratorCheck]
    f0: ProjMap
    product_error: float
    realized: list[np.ndarray] = field(repr=False, default_factory=list)

    @property
    def product_ok(self) -> bool:
        return self.product_error <= PRODUCT_TOL

    @property
    def passed(self) -> bool:
        return self.product_ok and all(g.passed for g in self.generators)


def _as_matrix(g) -> np.ndarray:
    if isinstance(g, ProjMap):
        return g.matrix
    if isinstance(g, AffineFiberMap):
        return g.embed()
    m = np.asarray(g, dtype=complex)
    if m.shape != (3, 3):
        raise UnclassifiableGenerator(f"generator of shape {m.shape}")
    return m


def verify_synthesis(generators: Sequence, tol: float = 1e-8, numeric: bool = True,
                     int_tol: float = 1e-10, n_samples: int = 8, seed: int = 0,
                     spacing: float = 3.0, radius: float = 1.0) -> SynthesisReport:
    """Check the local-model realization of ``f_0, f_1, ..., f_k``.

    Parameters
    ----------
    generators : sequence of ProjMap, AffineFiberMap or 3x3 arrays
        ``f_1, ..., f_k``.
    tol : float
        Eigenvalue clustering tolerance used for classification.
    numeric : bool
        Also lift sample points around each model's circle.
    spacing, radius : float
        Model ``j`` is centered at ``spacing * j`` with circle radius ``radius``.

    Raises
    ------
    UnclassifiableGenerator
        A generator (or ``f_0``) is singular or has an ill-conditioned
        Jordan conjugator.
    """
    mats = [_as_matrix(g) for g in generators]
    prod = np.eye(3, dtype=complex)
    for m in mats:
        prod = prod @ m
    try:
        f0 = np.linalg.inv(prod)
    except np.linalg.LinAlgError as exc:
        raise UnclassifiableGenerator("product of the generators is singular") from exc
    all_maps = [f0] + mats

    checks: list[GeneratorCheck] = []
    realized = []
    for j, m in enumerate(all_maps):
        try:
            cls = classify(ProjMap(m), tol)
        except (DegenerateMatrix, IllConditioned) as exc:
            raise UnclassifiableGenerator(f"generator {j}: {exc}") from exc
        J = cls.normal_form.matrix
        model = model_from_normal_form(cls.jordan_case, J, center=spacing * j)
        H = analytic_holonomy(model).embed()
        N = affine_normal_form(J)
        check = GeneratorCheck(
            index=j, jordan_case=cls.jordan_case, paper_type=cls.paper_type,
            model=model, normal_form=N, conjugator=cls.conjugator, analytic=H,
            analytic_error=float(np.max(np.abs(H - N)) / max(1.0, np.max(np.abs(N)))))
        if numeric:
            loop = LoopPath.circle(model.center, radius)
            res = numeric_holonomy(local_model_field(model), loop,
                                   n_samples=n_samples, tol=int_tol, seed=seed)
            check.numeric_error = res.sup_distance(H)
            check.numeric_residual = res.residual
        checks.append(check)
        P = cls.conjugator
        realized.append(np.linalg.solve(P, H @ P))

    total = np.eye(3, dtype=complex)
    for r in realized:
        total = total @ (r / np.linalg.norm(r))
    err = projective_distance(total, np.eye(3))
    return SynthesisReport(checks, ProjMap(f0), err, realized)
