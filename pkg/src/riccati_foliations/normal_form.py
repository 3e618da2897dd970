"""Riccati normal forms, invariant fibers and transversality to fibers.

A polynomial field ``p(x) d/dx + ...`` on ``C x F`` (``F`` the product of
projective lines or the projective plane) defines a Riccati foliation when it
is transverse to every fiber over the nonzeros of ``p``.  The checkers here
decide the normal-form shape coefficient by coefficient and, on failure,
report the first violated constraint together with a witness monomial.

For the projective plane, with ``(y, z)`` affine fiber coordinates,
the accepted shape is::

    Q = A + B y + C z + D y z + E y^2
    R = a + b y + c z + E y z + D z^2

i.e. the quadratic parts are ``(y, z) * (E y + D z)``.  This is exactly the
shape of a linear system ``W' = M(x) W / p(x)`` read in the chart
``W = (y, z, 1)``; see :func:`linear_lift`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .errors import ArityMismatch
from .matrix_core import cubic_roots
from .poly_vf import (
    MultiPoly,
    PolyVectorField,
    apply_polydisk_charts,
    base_chart,
    fiber_chart_cp2,
    fiber_chart_cp2_second,
)

CP2_COEFFS = ("p", "a", "b", "c", "A", "B", "C", "D", "E")


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rejection:
    """First violated constraint of a normal-form check.

    ``witness_monomial`` is an exponent vector in the field's variables and
    ``component`` names the component it belongs to (``P``, ``Q``, ``R`` or
    ``Q{j}``).  ``possibility`` is the degree case ``(alpha, beta)`` mapped to
    4, 5 or 6 when the quadratic part is at fault.
    """
    constraint: str
    witness_monomial: tuple[int, ...]
    component: str
    coefficient: complex = 0j
    possibility: Optional[int] = None
    message: str = ""


@dataclass(frozen=True)
class RiccatiCnForm:
    """``p d/dx + sum_j (q_j2 y_j^2 + q_j1 y_j + q_j0) d/dy_j``."""
    p: MultiPoly
    q: tuple[tuple[MultiPoly, MultiPoly, MultiPoly], ...]
    vars: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.q)

    def reassemble(self) -> PolyVectorField:
        n = len(self.vars)
        ys = MultiPoly.variables(self.vars)
        lift = lambda c: c.embed(self.vars, [0])  # noqa: E731
        comps = [lift(self.p)]
        for j, (q2, q1, q0) in enumerate(self.q, start=1):
            y = ys[j]
            comps.append(lift(q2) * y * y + lift(q1) * y + lift(q0))
        assert len(comps) == n
        return PolyVectorField("cn", tuple(comps))


@dataclass(frozen=True)
class RiccatiCp2Form:
    """Coefficients ``p, a, b, c, A, B, C, D, E`` (polynomials in ``x``)."""
    p: MultiPoly
    a: MultiPoly
    b: MultiPoly
    c: MultiPoly
    A: MultiPoly
    B: MultiPoly
    C: MultiPoly
    D: MultiPoly
    E: MultiPoly
    vars: tuple[str, ...] = ("x", "y", "z")

    def coefficients(self) -> dict[str, MultiPoly]:
        return {k: getattr(self, k) for k in CP2_COEFFS}

    def reassemble(self) -> PolyVectorField:
        _, y, z = MultiPoly.variables(self.vars)
        L = {k: v.embed(self.vars, [0]) for k, v in self.coefficients().items()}
        Q = L["A"] + L["B"] * y + L["C"] * z + L["D"] * y * z + L["E"] * y * y
        R = L["a"] + L["b"] * y + L["c"] * z + L["E"] * y * z + L["D"] * z * z
        return PolyVectorField("cp2", (L["p"], Q, R))


@dataclass(frozen=True)
class CheckResult:
    form: RiccatiCnForm | RiccatiCp2Form | None
    rejection: Rejection | None

    @property
    def accepted(self) -> bool:
        return self.form is not None


@dataclass(frozen=True)
class FiberSet:
    """Invariant fibers: roots of ``p`` (with multiplicity) and possibly infinity.

    ``all_invariant`` is set when ``p`` is identically zero, in which case
    every fiber is invariant and ``finite_fibers`` is empty.
    """
    finite_fibers: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    infinity_invariant: bool
    all_invariant: bool = False

    @property
    def with_multiplicity(self) -> list[complex]:
        return [r for r, m in zip(self.finite_fibers, self.multiplicities) for _ in range(m)]


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`transversality_at`.

    ``kind`` is ``"Transverse"``, ``"Tangent"`` or ``"Singular"``; the latter
    two carry a witness point in chart coordinates and the chart label.
    """
    kind: str
    witness: Optional[tuple[complex, ...]] = None
    chart: Optional[str] = None
    clearing_exponent: int = 0

    @property
    def transverse(self) -> bool:
        return self.kind == "Transverse"


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def _x_coeff(poly: MultiPoly, fiber_exp: Sequence[int]) -> MultiPoly:
    """Coefficient (a polynomial in x) of one fiber monomial."""
    groups = poly.collect(list(range(1, poly.nvars)))
    return groups.get(tuple(fiber_exp), MultiPoly.zero(poly.vars[:1]))


def _first_term(poly: MultiPoly, predicate) -> tuple[tuple[int, ...], complex]:
    hits = sorted(e for e, _ in poly.items() if predicate(e))
    e = hits[0]
    return e, poly.coefficient(e)


def _check_base(P: MultiPoly) -> Rejection | None:
    if any(any(e[1:]) for e, _ in P.items()):
        e, c = _first_term(P, lambda e: any(e[1:]))
        return Rejection(
            "base component depends on fiber variables", e, "P", c,
            message="the x-component must be a polynomial in x alone")
    return None


def check_riccati_cn(X: PolyVectorField, n: int | None = None) -> CheckResult:
    """Decide the normal form on ``C x (CP^1)^n`` for ``X`` in ``(x, y_1..y_n)``.

    The ``j``-th fiber component must be quadratic in ``y_j`` and independent
    of the other ``y_i``.  Constraints are checked in the order: base, then
    for each ``j`` the degree in ``y_j`` and the cross dependence.

    Raises
    ------
    ArityMismatch
        ``X`` does not have ``n + 1`` coordinates.
    """
    if n is None:
        n = X.dim - 1
    if X.dim != n + 1:
        raise ArityMismatch(f"expected {n + 1} coordinates, got {X.dim}")
    P, *Qs = X.components
    rej = _check_base(P)
    if rej:
        return CheckResult(None, rej)
    for j, Q in enumerate(Qs, start=1):
        if Q.deg_in(j) > 2:
            e, c = _first_term(Q, lambda e, j=j: e[j] > 2)
            return CheckResult(None, Rejection(
                f"deg_y{j}(Q{j}) <= 2", e, f"Q{j}", c,
                message=f"Q{j} has degree {Q.deg_in(j)} in y{j}"))
        for i in range(1, n + 1):
            if i != j and Q.depends_on(i):
                e, c = _first_term(Q, lambda e, i=i: e[i] != 0)
                return CheckResult(None, Rejection(
                    f"deg_y{i}(Q{j}) = 0", e, f"Q{j}", c,
                    message=f"Q{j} depends on y{i}"))
    xvars = X.vars[:1]
    p = MultiPoly({(e[0],): c for e, c in P.items()}, xvars)
    q = []
    for j, Q in enumerate(Qs, start=1):
        parts = Q.collect([j])
        triple = []
        for k in (2, 1, 0):
            part = parts.get((k,))
            if part is None:
                triple.append(MultiPoly.zero(xvars))
            else:
                # only x survives after removing y_j (others are absent)
                triple.append(MultiPoly({(e[0],): c for e, c in part.items()}, xvars))
        q.append(tuple(triple))
    return CheckResult(RiccatiCnForm(p, tuple(q), X.vars), None)


def _fiber_degree(poly: MultiPoly) -> int:
    return poly.total_degree([1, 2])


def check_riccati_cp2(X: PolyVectorField) -> CheckResult:
    """Decide the normal form on ``C x CP(2)`` for ``X`` in ``(x, y, z)``.

    With ``alpha`` and ``beta`` the fiber degrees of ``Q`` and ``R`` the
    constraints are examined in this order::

        base x-only, alpha <= 2, beta <= alpha (when beta = 2 or more),
        F = 0, e = 0, d = E, f = D

    where ``Q = A + By + Cz + Dyz + Ey^2 + Fz^2`` and
    ``R = a + by + cz + dyz + ey^2 + fz^2``.  A field with ``beta = 1`` and
    constant ``Q`` is affine in the fiber and accepted.
    """
    if X.dim != 3:
        raise ArityMismatch(f"expected coordinates (x, y, z), got {X.vars}")
    P, Q, R = X.components
    rej = _check_base(P)
    if rej:
        return CheckResult(None, rej)
    alpha, beta = _fiber_degree(Q), _fiber_degree(R)
    if alpha > 2:
        e, c = _first_term(Q, lambda e: e[1] + e[2] > 2)
        return CheckResult(None, Rejection(
            "α>2", e, "Q", c, message=f"Q has fiber degree {alpha}"))
    if beta > max(alpha, 1):
        e, c = _first_term(R, lambda e: e[1] + e[2] == beta)
        return CheckResult(None, Rejection(
            "β>α", e, "R", c, message=f"R has fiber degree {beta} > {alpha}"))

    possibility = {0: 4, 1: 5, 2: 6}.get(beta) if alpha == 2 else None
    Qc = {k: _x_coeff(Q, k) for k in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]}
    Rc = {k: _x_coeff(R, k) for k in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]}

    def witness(poly_name, poly, fexp, diff):
        terms = sorted(diff.items())
        xexp, coef = terms[0] if terms else ((0,), 0j)
        return (xexp[0],) + tuple(fexp), coef

    checks = [
        ("F≠0", "Q", Q, (0, 2), Qc[(0, 2)]),
        ("e≠0", "R", R, (2, 0), Rc[(2, 0)]),
        ("d≠E", "R", R, (1, 1), Rc[(1, 1)] - Qc[(2, 0)]),
        ("f≠D", "R", R, (0, 2), Rc[(0, 2)] - Qc[(1, 1)]),
    ]
    for label, name, poly, fexp, diff in checks:
        if not diff.is_zero():
            e, c = witness(name, poly, fexp, diff)
            return CheckResult(None, Rejection(
                label, e, name, c, possibility,
                message=f"quadratic part violates {label.replace('≠', '=')}"))

    x1 = Q.vars[:1]
    def as_x(m: MultiPoly) -> MultiPoly:
        return MultiPoly(m.terms, x1)
    p = MultiPoly({(e[0],): c for e, c in P.items()}, x1)
    form = RiccatiCp2Form(
        p=p, a=as_x(Rc[(0, 0)]), b=as_x(Rc[(1, 0)]), c=as_x(Rc[(0, 1)]),
        A=as_x(Qc[(0, 0)]), B=as_x(Qc[(1, 0)]), C=as_x(Qc[(0, 1)]),
        D=as_x(Qc[(1, 1)]), E=as_x(Qc[(2, 0)]), vars=X.vars)
    return CheckResult(form, None)


def linear_lift(form: RiccatiCp2Form) -> list[list[MultiPoly]]:
    """Matrix ``M(x)`` with ``W' = M W / p`` for ``W = (y, z, 1)`` up to scale.

    Reading ``y = W1/W3`` and ``z = W2/W3`` recovers ``Q`` and ``R``.
    """
    zero = MultiPoly.zero(form.p.vars)
    return [
        [form.B, form.C, form.A],
        [form.b, form.c, form.a],
        [-form.E, -form.D, zero],
    ]


# ---------------------------------------------------------------------------
# invariant fibers
# ---------------------------------------------------------------------------

def _horner(coeffs: np.ndarray, x: complex) -> complex:
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def poly_roots(coeffs: Sequence[complex]) -> list[complex]:
    """Roots of ``sum coeffs[k] x^k``, closed form up to degree three.

    Higher degrees use companion-matrix eigenvalues.  Every root gets Newton
    steps while the residual decreases.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    deg = len(c) - 1
    if deg <= 0:
        return []
    if deg == 1:
        roots = [-c[0] / c[1]]
    elif deg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = cmath.sqrt(b * b - 4 * a * cc)
        q = -0.5 * (b + disc if (b.conjugate() * disc).real >= 0 else b - disc)
        roots = [q / a, cc / q] if q != 0 else [0j, 0j]
    elif deg == 3:
        roots = cubic_roots(c[0] / c[3], c[1] / c[3], c[2] / c[3])
    else:
        roots = list(np.roots(c[::-1]))
    dc = c[1:] * np.arange(1, deg + 1)
    out = []
    for r in roots:
        r = complex(r)
        f = _horner(c, r)
        for _ in range(3):
            df = _horner(dc, r)
            if df == 0:
                break
            r2 = r - f / df
            f2 = _horner(c, r2)
            if abs(f2) >= abs(f):
                break
            r, f = r2, f2
        out.append(r)
    return out


def cluster_roots(coeffs: Sequence[complex], roots: Sequence[complex],
                  rel_tol: float = 1e-7) -> list[tuple[complex, int]]:
    """Merge numerically repeated roots.

    Roots closer than ``rel_tol (1 + |r|)`` are merged outright.  Looser
    groups (up to ``rel_tol**(1/m)`` for ``m`` members, the spread of an
    ``m``-fold root) are merged when the first ``m - 1`` derivatives nearly
    vanish at their mean.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    roots = sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag))
    groups: list[list[complex]] = [[r] for r in roots]

    def close(g1, g2, radius_fn):
        m = len(g1) + len(g2)
        mean = sum(g1 + g2) / m
        return all(abs(r - mean) <= radius_fn(m) * (1 + abs(mean)) for r in g1 + g2)

    def derivs_vanish(g):
        m = len(g)
        mean = sum(g) / m
        scale = np.sum(np.abs(c)) * (1 + abs(mean)) ** len(c)
        d = c.copy()
        for _ in range(m - 1):
            d = d[1:] * np.arange(1, len(d))
            if abs(_horner(d, mean)) > 1e-6 * scale:
                return False
        return True

    merged = True
    while merged and len(groups) > 1:
        merged = False
        best = None
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                g = groups[i] + groups[j]
                if close(groups[i], groups[j], lambda m: rel_tol) or (
                        close(groups[i], groups[j], lambda m: 10 * rel_tol ** (1.0 / m))
                        and derivs_vanish(g)):
                    d = abs(sum(groups[i]) / len(groups[i]) - sum(groups[j]) / len(groups[j]))
                    if best is None or d < best[0]:
                        best = (d, i, j)
        if best is not None:
            _, i, j = best
            groups[i] = groups[i] + groups[j]
            del groups[j]
            merged = True
    out = [(complex(sum(g) / len(g)), len(g)) for g in groups]
    return sorted(out, key=lambda t: (round(t[0].real, 9), round(t[0].imag, 9)))


def _base_poly(form_or_field) -> MultiPoly:
    if isinstance(form_or_field, (RiccatiCnForm, RiccatiCp2Form)):
        return form_or_field.p
    P = form_or_field.components[0]
    return MultiPoly({(e[0],): c for e, c in P.items()}, P.vars[:1])


def _field_of(form, X):
    if X is not None:
        return X
    return form.reassemble()


def infinity_invariant(X: PolyVectorField) -> bool:
    """Whether the fiber over ``x = infinity`` is invariant.

    The base component of the field in the chart ``w = 1/x`` (after clearing)
    must vanish identically on ``w = 0``.
    """
    W = base_chart(X).field
    groups = W.components[0].collect([0])
    return (0,) not in groups or groups[(0,)].is_zero()


def invariant_fibers(form, X: PolyVectorField | None = None) -> FiberSet:
    """Invariant fibers of an accepted normal form.

    Finite fibers are the roots of ``p`` with multiplicities; the fiber at
    infinity is tested in the base chart ``w = 1/x``.
    """
    X = _field_of(form, X)
    p = _base_poly(form)
    coeffs = p.univariate_coeffs(0) if not p.is_zero() else np.zeros(1)
    inf = infinity_invariant(X)
    if p.is_zero():
        return FiberSet((), (), inf, all_invariant=True)
    roots = poly_roots(coeffs)
    clusters = cluster_roots(coeffs, roots)
    return FiberSet(tuple(r for r, _ in clusters), tuple(m for _, m in clusters), inf)


# ---------------------------------------------------------------------------
# transversality
# ---------------------------------------------------------------------------

_CANDIDATES = (0j, 1 + 0j, -1 + 0j, 0.5 + 0.5j, 2 + 0j, -0.3 + 1.7j, 3 - 2j)


def _specialize(poly: MultiPoly, x0: complex) -> MultiPoly:
    """Substitute ``x = x0``; result keeps only the fiber variables."""
    fvars = poly.vars[1:]
    terms = {}
    for e, c in poly.items():
        terms[e[1:]] = terms.get(e[1:], 0j) + c * (x0 ** e[0] if e[0] else 1.0)
    return MultiPoly(terms, fvars)


def _reference_scale(poly: MultiPoly, x0: complex) -> float:
    """Size of the terms of ``poly`` at ``x = x0``, for relative zero tests."""
    return max(1e-300, sum(abs(c) * abs(x0) ** e[0] for e, c in poly.items()))


def _is_nonzero_constant(poly: MultiPoly, ref: float, rel: float = 1e-12) -> bool:
    const = abs(poly.coefficient((0,) * poly.nvars))
    nonconst = max((abs(c) for e, c in poly.items() if any(e)), default=0.0)
    return const > rel * ref and nonconst <= rel * ref


def _find_zero(poly: MultiPoly) -> tuple[complex, ...]:
    """A zero of a non-(nonzero-constant) polynomial in the fiber variables."""
    n = poly.nvars
    if poly.is_zero() or not any(any(e) for e, _ in poly.items()):
        return (0j,) * n
    dep = [i for i in range(n) if poly.depends_on(i)]
    i = dep[0]
    others = [k for k in range(n) if k != i]
    for cand in _CANDIDATES:
        pt = [cand] * n
        coeffs = np.zeros(poly.deg_in(i) + 1, dtype=complex)
        for e, c in poly.items():
            mono = c
            for k in others:
                if e[k]:
                    mono *= cand ** e[k]
            coeffs[e[i]] += mono
        roots = poly_roots(coeffs)
        if roots:
            pt[i] = roots[0]
            return tuple(pt)
        if abs(coeffs[0]) == 0 and len(coeffs) == 1:
            return tuple(pt)
    raise RuntimeError("no zero found for a nonconstant polynomial")


def _fiber_witness(field: PolyVectorField, x0: complex):
    """Witness point ``(x0, ...)`` where the base component vanishes, or None."""
    base = _specialize(field.components[0], x0)
    ref = _reference_scale(field.components[0], x0)
    if _is_nonzero_constant(base, ref):
        return None
    fibers = [_specialize(c, x0) for c in field.components[1:]]
    n = base.nvars
    pts = []
    if base.is_zero() or not any(any(e) for e, _ in base.items()):
        pts = [tuple([c] * n) for c in _CANDIDATES]
    else:
        zero = _find_zero(base)
        pts.append(zero)
        # prefer a point of a whole zero component (u = 0 lines) with v varied
        for i in range(n):
            if all(e[i] > 0 for e, _ in base.items()):
                for cand in _CANDIDATES:
                    pt = [cand] * n
                    pt[i] = 0j
                    pts.append(tuple(pt))
                break
    best = None
    for pt in pts:
        vals = [f.eval(pt) for f in fibers]
        scale = max([1.0] + [abs(c) for f in fibers for _, c in f.items()])
        kind = "Tangent" if max((abs(v) for v in vals), default=0.0) > 1e-10 * scale else "Singular"
        cand = (kind, (complex(x0),) + tuple(complex(v) + 0j for v in pt))
        if kind == "Tangent":
            return cand
        if best is None:
            best = cand
    return best


def _charts(X: PolyVectorField, fiber: str, chart_order=None):
    if fiber == "cp2":
        if X.dim != 3:
            raise ArityMismatch("cp2 fibers need coordinates (x, y, z)")
        charts = [("cp2:yz", lambda: (X, 0)),
                  ("cp2:uv", lambda: _unpack(fiber_chart_cp2(X))),
                  ("cp2:ts", lambda: _unpack(fiber_chart_cp2_second(X)))]
    elif fiber == "cn":
        n = X.dim - 1
        charts = []
        for mask in range(2 ** n):
            ks = [k for k in range(1, n + 1) if mask >> (k - 1) & 1]
            label = "cn:" + ("".join(f"w{k}" for k in ks) or "y")
            charts.append((label, lambda ks=ks: (apply_polydisk_charts(X, ks), None)))
    else:
        raise ValueError("fiber must be 'cp2' or 'cn'")
    if chart_order is not None:
        charts = [charts[i] for i in chart_order]
    return charts


def _unpack(result):
    return result.field, result.clearing_exponent


def transversality_at(X: PolyVectorField, x0: complex, fiber: str = "cp2",
                      chart_order: Sequence[int] | None = None) -> Verdict:
    """Is the foliation of ``X`` transverse to the fiber over ``x0``?

    In each affine chart of the fiber, the (pole-cleared) base component
    restricted to the fiber is a polynomial in the fiber coordinates; the
    foliation is transverse there iff it is a nonzero constant.  Otherwise a
    zero of it is a witness: ``Singular`` when all components vanish there,
    ``Tangent`` when not.

    Parameters
    ----------
    fiber : {"cp2", "cn"}
        Projective plane (three charts) or product of projective lines
        (``2**n`` polydisk charts).
    chart_order : sequence of int, optional
        Permutation of the chart list; the verdict does not depend on it,
        though the reported witness may.
    """
    x0 = complex(x0)
    for label, make in _charts(X, fiber, chart_order):
        field, k = make()
        hit = _fiber_witness(field, x0)
        if hit is not None:
            kind, pt = hit
            if k is None:
                k = 0
            return Verdict(kind, pt, label, k)
    return Verdict("Transverse")


# ---------------------------------------------------------------------------
# corollary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryReport:
    """``status`` is one of ``IMPLICATION_VERIFIED``, ``NO_TRANSVERSE_FIBER``
    or ``COUNTEREXAMPLE``."""
    status: str
    transverse_at: Optional[complex]
    check: CheckResult
    samples: tuple[complex, ...] = field(repr=False, default=())

    @property
    def counterexample(self) -> bool:
        return self.status == "COUNTEREXAMPLE"


def _sample_radius(X: PolyVectorField) -> float:
    P = X.components[0]
    p0 = _specialize_fibers_zero(P)
    if p0.is_zero() or p0.deg_in(0) <= 0:
        return 1.0
    roots = poly_roots(p0.univariate_coeffs(0))
    return 1.0 + max((abs(r) for r in roots), default=0.0)


def _specialize_fibers_zero(P: MultiPoly) -> MultiPoly:
    return MultiPoly({(e[0],): c for e, c in P.items() if not any(e[1:])}, P.vars[:1])


def corollary_check(X: PolyVectorField, fiber: str = "cp2", seed: int = 0,
                    n_samples: int = 32) -> CorollaryReport:
    """Look for a transverse fiber and confirm the normal form if one exists.

    Samples ``n_samples`` points on a circle of radius ``1 + max|root|``
    (random phases from ``seed``).  A transverse fiber together with a failed
    normal-form check is reported as ``COUNTEREXAMPLE``.
    """
    rng = np.random.default_rng(seed)
    radius = _sample_radius(X)
    phases = np.sort(rng.uniform(0, 2 * np.pi, n_samples))
    samples = tuple(complex(radius * np.exp(1j * t)) for t in phases)
    check = check_riccati_cp2(X) if fiber == "cp2" else check_riccati_cn(X)
    for x0 in samples:
        if transversality_at(X, x0, fiber).transverse:
            status = "IMPLICATION_VERIFIED" if check.accepted else "COUNTEREXAMPLE"
            return CorollaryReport(status, x0, check, samples)
    return CorollaryReport("NO_TRANSVERSE_FIBER", None, check, samples)


def all_chart_orders(fiber: str, n: int = 1):
    """Every permutation of the chart list (for order-independence checks)."""
    count = 3 if fiber == "cp2" else 2 ** n
    return list(permutations(range(count)))
