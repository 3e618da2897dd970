"""Local models around an invariant fiber and their closed-form holonomy.

Each model is a vector field ``(x - x_j) d/dx + (affine in u, v)`` on
``C x C^2``.  Along the circle ``x = x_j + r e^{i theta}`` the fiber
coordinates obey ``d(u, v, 1)/d theta = i K (u, v, 1)`` with ``K`` the
augmented 3x3 matrix of the fiber part, so the holonomy is ``exp(2 pi i K)``.

=====  ================================================  =================
case   fiber part                                        holonomy
=====  ================================================  =================
C      ``a1 u d/du + a2 v d/dv``                          ``diag(e^{2 pi i a1}, e^{2 pi i a2})``
D      ``a2 (u d/du + v d/dv)``                           ``e^{2 pi i a2} I``
E      ``nu/(2 pi i) v d/du``                             ``(u + nu v, v)``
B      ``(lam u + nu/(2 pi i mu) v) d/du + lam v d/dv``   ``(mu u + nu v, mu v)``
A      ``(mu/(2 pi i) v - mu^2/(4 pi i)) d/du``           ``(u + mu v, v + mu)``
       ``+ mu/(2 pi i) d/dv``
=====  ================================================  =================
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from ..errors import BranchCutHit, UnclassifiableGenerator
from ..matrix_core import (
    TWO_PI_I,
    ProjMap,
    alpha_from_lambda,
    mat_exp,
)
from ..poly_vf import MultiPoly, PolyVectorField

MODEL_VARS = ("x", "u", "v")

#: Jordan case of a generator -> local model case.
MODEL_FOR_CASE = {"I": "C", "II1": "D", "II2": "B", "III1": "C", "III2": "E", "III3": "A"}


@dataclass(frozen=True)
class AffineFiberMap:
    """``(u, v) -> linear @ (u, v) + translation``."""
    linear: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2, dtype=complex))

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=complex).reshape(2, 2)
        tr = np.asarray(self.translation, dtype=complex).reshape(2)
        if abs(np.linalg.det(lin)) <= 1e-12:
            raise ValueError("affine fiber map has a degenerate linear part")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def from_matrix(cls, m) -> "AffineFiberMap":
        """From a 3x3 matrix ``[[L, t], [0, 1]]`` (scaled so ``m[2,2] = 1``)."""
        m = np.asarray(m, dtype=complex)
        m = m / m[2, 2]
        if np.max(np.abs(m[2, :2])) > 1e-9:
            raise ValueError("matrix does not preserve the line at infinity")
        return cls(m[:2, :2], m[:2, 2])

    def embed(self) -> np.ndarray:
        out = np.eye(3, dtype=complex)
        out[:2, :2] = self.linear
        out[:2, 2] = self.translation
        return out

    def to_projmap(self) -> ProjMap:
        return ProjMap(self.embed())

    def __call__(self, u, v):
        w = self.linear @ np.array([u, v], dtype=complex) + self.translation
        return complex(w[0]), complex(w[1])

    def inverse(self) -> "AffineFiberMap":
        inv = np.linalg.inv(self.linear)
        return AffineFiberMap(inv, -inv @ self.translation)

    def __matmul__(self, other: "AffineFiberMap") -> "AffineFiberMap":
        return AffineFiberMap(self.linear @ other.linear,
                              self.linear @ other.translation + self.translation)


@dataclass(frozen=True)
class LocalModel:
    """Local model of case ``A``-``E`` centered at ``center``.

    Parameters by case: ``C`` uses ``alpha1, alpha2``; ``D`` uses ``alpha2``;
    ``E`` uses ``nu``; ``B`` uses ``lam, nu, mu`` with ``exp(2 pi i lam) = mu``;
    ``A`` uses ``mu``.
    """
    case_tag: str
    center: complex = 0j
    alpha1: complex = 0j
    alpha2: complex = 0j
    nu: complex = 0j
    lam: complex = 0j
    mu: complex = 1 + 0j

    def __post_init__(self):
        if self.case_tag not in "ABCDE" or len(self.case_tag) != 1:
            raise ValueError(f"unknown local model case {self.case_tag!r}")
        for name in ("center", "alpha1", "alpha2", "nu", "lam", "mu"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.case_tag == "B":
            if self.mu == 0 or abs(cmath.exp(TWO_PI_I * self.lam) - self.mu) > 1e-10 * abs(self.mu):
                raise ValueError("case B needs exp(2 pi i lam) = mu")
        if self.case_tag == "A" and self.mu == 0:
            raise ValueError("case A needs mu != 0")

    @classmethod
    def case_c(cls, alpha1, alpha2, center=0j):
        return cls("C", center, alpha1=alpha1, alpha2=alpha2)

    @classmethod
    def case_d(cls, alpha2, center=0j):
        return cls("D", center, alpha2=alpha2)

    @classmethod
    def case_e(cls, nu, center=0j):
        return cls("E", center, nu=nu)

    @classmethod
    def case_b(cls, mu, nu, center=0j, winding: int = 0):
        return cls("B", center, nu=nu, mu=mu, lam=alpha_from_lambda(mu, winding))

    @classmethod
    def case_a(cls, mu, center=0j):
        return cls("A", center, mu=mu)

    def params(self) -> dict[str, complex]:
        keys = {"C": ("alpha1", "alpha2"), "D": ("alpha2",), "E": ("nu",),
                "B": ("lam", "nu", "mu"), "A": ("mu",)}[self.case_tag]
        return {k: getattr(self, k) for k in keys}

    def fiber_matrix(self) -> np.ndarray:
        """Augmented matrix ``K`` of the fiber part acting on ``(u, v, 1)``."""
        K = np.zeros((3, 3), dtype=complex)
        t = self.case_tag
        if t == "C":
            K[0, 0], K[1, 1] = self.alpha1, self.alpha2
        elif t == "D":
            K[0, 0] = K[1, 1] = self.alpha2
        elif t == "E":
            K[0, 1] = self.nu / TWO_PI_I
        elif t == "B":
            K[0, 0] = K[1, 1] = self.lam
            K[0, 1] = self.nu / (TWO_PI_I * self.mu)
        else:
            K[0, 1] = self.mu / TWO_PI_I
            K[0, 2] = -self.mu ** 2 / (2 * TWO_PI_I)
            K[1, 2] = self.mu / TWO_PI_I
        return K


def local_model_field(m: LocalModel) -> PolyVectorField:
    """Polynomial field of the model in coordinates ``(x, u, v)``."""
    x, u, v = MultiPoly.variables(MODEL_VARS)
    one = MultiPoly.const(1.0, MODEL_VARS)
    K = m.fiber_matrix()
    basis = (u, v, one)
    comps = [x - m.center]
    for i in range(2):
        comps.append(sum((complex(K[i, j]) * basis[j] for j in range(3)), MultiPoly.zero(MODEL_VARS)))
    return PolyVectorField(f"model:{m.case_tag}", tuple(comps))


def analytic_holonomy(m: LocalModel) -> AffineFiberMap:
    """Holonomy of the model along a positive circle around its center."""
    return AffineFiberMap.from_matrix(mat_exp(TWO_PI_I * m.fiber_matrix()))


def _log_ratio(x: complex, center: complex, anchor: complex) -> complex:
    z = (complex(x) - center) / (anchor - center)
    if z == 0 or (z.imag == 0.0 and z.real <= 0.0):
        raise BranchCutHit(f"log argument {z} lies on the cut of the principal branch")
    return cmath.log(z)


def gluing_map(m: LocalModel, x: complex, r: float = 1.0, anchor: complex | None = None) -> AffineFiberMap:
    """Identification ``(U, V) -> (u, v)`` over the point ``x`` of the annulus.

    ``(U, V)`` are leaf-constant coordinates: the model's leaves are the sets
    where ``(U, V)`` is fixed, so ``gluing_map(m, x).inverse()`` applied to a
    point of a leaf gives the same value for every ``x`` along that leaf.
    With ``L = Log((x - x_j)/(x'_j - x_j))`` and anchor ``x'_j = x_j + r/2``
    (so ``L = 0`` there and the map is the identity)::

        C:  u = U e^{a1 L},                v = V e^{a2 L}
        D:  as C with a1 = a2
        E:  u = U + nu/(2 pi i) V L,       v = V
        B:  u = (U + k V L) e^{lam L},     v = V e^{lam L},   k = nu/(2 pi i mu)
        A:  u = U + (mu/(2 pi i) V + mu^2 L/(2 (2 pi i)^2) - mu^2/(4 pi i)) L,
            v = V + mu/(2 pi i) L

    Raises
    ------
    BranchCutHit
        ``(x - x_j)/(x'_j - x_j)`` is zero or a negative real.
    """
    if anchor is None:
        anchor = m.center + r / 2.0
    L = _log_ratio(x, m.center, anchor)
    t = m.case_tag
    if t in "CD":
        a1 = m.alpha2 if t == "D" else m.alpha1
        return AffineFiberMap(np.diag([cmath.exp(a1 * L), cmath.exp(m.alpha2 * L)]))
    if t == "E":
        return AffineFiberMap(np.array([[1, m.nu / TWO_PI_I * L], [0, 1]]))
    if t == "B":
        k = m.nu / (TWO_PI_I * m.mu)
        e = cmath.exp(m.lam * L)
        return AffineFiberMap(np.array([[e, e * k * L], [0, e]]))
    c = m.mu / TWO_PI_I
    return AffineFiberMap(
        np.array([[1, c * L], [0, 1]]),
        np.array([(m.mu ** 2 * L / (2 * TWO_PI_I ** 2) - m.mu ** 2 / (2 * TWO_PI_I)) * L, c * L]))


def model_from_normal_form(case: str, J, center: complex = 0j) -> LocalModel:
    """Local model whose holonomy equals the affine normalization ``J / J[2,2]``.

    ``J`` is a Jordan matrix in the block order produced by
    :func:`riccati_foliations.matrix_core.jordan_form`.
    """
    J = np.asarray(J, dtype=complex)
    if J[2, 2] == 0:
        raise UnclassifiableGenerator("normal form has a zero corner entry")
    N = J / J[2, 2]
    if case == "III1":
        return LocalModel.case_c(0, 0, center)
    if case == "I":
        return LocalModel.case_c(alpha_from_lambda(N[0, 0]), alpha_from_lambda(N[1, 1]), center)
    if case == "II1":
        return LocalModel.case_d(alpha_from_lambda(N[0, 0]), center)
    if case == "II2":
        return LocalModel.case_b(N[0, 0], N[0, 1], center)
    if case == "III2":
        return LocalModel.case_e(N[0, 1], center)
    if case == "III3":
        return LocalModel.case_a(N[0, 1], center)
    raise UnclassifiableGenerator(f"unknown Jordan case {case!r}")


def affine_normal_form(J) -> np.ndarray:
    """``J`` scaled so that its corner entry is 1."""
    J = np.asarray(J, dtype=complex)
    return J / J[2, 2]
