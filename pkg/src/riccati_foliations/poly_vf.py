"""Sparse complex polynomials and polynomial vector fields in affine charts.

A :class:`MultiPoly` is a dictionary from exponent tuples to complex
coefficients together with an ordered tuple of variable names.  Negative
exponents are allowed while a chart change is in progress (Laurent
polynomials); the chart-change functions multiply by the minimal power of the
new coordinate that makes every component polynomial again.  Multiplying a
vector field by a nonzero function does not change the foliation it defines.

Examples
--------
>>> x, y, z = MultiPoly.variables(["x", "y", "z"])
>>> (z - y**2).deg_in("y")
2
>>> (z - y**2)(0.0, 2.0, 1.0)
(-3+0j)
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch

ZERO_DROP = 1e-14

Exponent = tuple[int, ...]


class MultiPoly:
    """Immutable sparse polynomial with complex coefficients.

    Parameters
    ----------
    terms : mapping
        Exponent tuple -> coefficient.  Coefficients with modulus at most
        ``1e-14`` are dropped.
    vars : sequence of str
        Variable names; positional, names are metadata.
    """

    __slots__ = ("_terms", "_vars")

    def __init__(self, terms: Mapping[Sequence[int], complex], vars: Sequence[str]):
        vars = tuple(vars)
        clean: dict[Exponent, complex] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise ArityMismatch(
                    f"exponent {exp} does not match variables {vars}")
            c = complex(c)
            if abs(c) > ZERO_DROP:
                clean[exp] = clean.get(exp, 0j) + c
        self._terms = {e: c for e, c in clean.items() if abs(c) > ZERO_DROP}
        self._vars = vars

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MultiPoly":
        return cls({}, vars)

    @classmethod
    def const(cls, c: complex, vars: Sequence[str]) -> "MultiPoly":
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def monomial(cls, exp: Sequence[int], vars: Sequence[str], coef: complex = 1.0) -> "MultiPoly":
        return cls({tuple(exp): coef}, vars)

    @classmethod
    def variables(cls, vars: Sequence[str]) -> tuple["MultiPoly", ...]:
        """One degree-one polynomial per variable."""
        n = len(vars)
        return tuple(cls.monomial([int(i == k) for i in range(n)], vars) for k in range(n))

    @classmethod
    def univariate(cls, coeffs: Sequence[complex], vars: Sequence[str], index: int = 0) -> "MultiPoly":
        """``sum coeffs[k] * vars[index]**k``."""
        n = len(vars)
        terms = {}
        for k, c in enumerate(coeffs):
            exp = [0] * n
            exp[index] = k
            terms[tuple(exp)] = c
        return cls(terms, vars)

    # -- accessors ----------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, complex]:
        return dict(self._terms)

    @property
    def vars(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for exp in self._terms for e in exp)

    def coefficient(self, exp: Sequence[int]) -> complex:
        return self._terms.get(tuple(exp), 0j)

    def _index(self, var) -> int:
        if isinstance(var, numbers.Integral):
            if not 0 <= var < self.nvars:
                raise ArityMismatch(f"variable index {var} out of range")
            return int(var)
        try:
            return self._vars.index(var)
        except ValueError:
            raise ArityMismatch(f"unknown variable {var!r} in {self._vars}") from None

    def deg_in(self, var) -> int:
        """Degree in one variable; ``-1`` for the zero polynomial."""
        i = self._index(var)
        if not self._terms:
            return -1
        return max(exp[i] for exp in self._terms)

    def min_exponent(self, var) -> int:
        """Lowest exponent of ``var`` (0 for the zero polynomial)."""
        i = self._index(var)
        if not self._terms:
            return 0
        return min(exp[i] for exp in self._terms)

    def total_degree(self, var_indices: Iterable[int] | None = None) -> int:
        if not self._terms:
            return -1
        idx = range(self.nvars) if var_indices is None else list(var_indices)
        return max(sum(exp[i] for i in idx) for exp in self._terms)

    def depends_on(self, var) -> bool:
        i = self._index(var)
        return any(exp[i] != 0 for exp in self._terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"variables {self._vars} vs {other._vars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, numbers.Number):
            return MultiPoly.const(other, self._vars)
        return NotImplemented

    def add(self, other: "MultiPoly") -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0j) + c
        return MultiPoly(terms, self._vars)

    def scale(self, c: complex) -> "MultiPoly":
        return MultiPoly({e: c * v for e, v in self._terms.items()}, self._vars)

    def mul(self, other: "MultiPoly") -> "MultiPoly":
        other = self._coerce(other)
        terms: dict[Exponent, complex] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0j) + c1 * c2
        return MultiPoly(terms, self._vars)

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.add(other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else other.add(-self)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, numbers.Integral) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = MultiPoly.const(1.0, self._vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, var, k: int) -> "MultiPoly":
        """Multiply by ``var**k`` (``k`` may be negative)."""
        i = self._index(var)
        terms = {}
        for e, c in self._terms.items():
            e2 = list(e)
            e2[i] += k
            terms[tuple(e2)] = c
        return MultiPoly(terms, self._vars)

    # -- evaluation -------------------------------------------------------
    def eval(self, point) -> complex:
        """Value at ``point`` (a sequence, or a mapping from names)."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self._vars]
        pt = [complex(v) for v in point]
        if len(pt) != self.nvars:
            raise ArityMismatch(f"point of length {len(pt)} for {self.nvars} variables")
        total = 0j
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def __call__(self, *point) -> complex:
        return self.eval(point)

    # -- structure --------------------------------------------------------
    def rename(self, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        if len(vars) != self.nvars:
            raise ArityMismatch("rename must keep the number of variables")
        return MultiPoly(self._terms, vars)

    def substitute_monomial(self, images: Sequence[Sequence[int]], vars: Sequence[str]) -> "MultiPoly":
        """Replace variable ``i`` by the Laurent monomial with exponent ``images[i]``.

        ``images[i]`` is an exponent vector over the new variables ``vars``.
        """
        if len(images) != self.nvars:
            raise ArityMismatch("one image per variable is required")
        imgs = np.asarray(images, dtype=int).reshape(self.nvars, len(vars))
        terms: dict[Exponent, complex] = {}
        for e, c in self._terms.items():
            new = tuple(int(v) for v in np.asarray(e, dtype=int) @ imgs)
            terms[new] = terms.get(new, 0j) + c
        return MultiPoly(terms, vars)

    def collect(self, var_indices: Sequence[int]) -> dict[Exponent, "MultiPoly"]:
        """Group terms by their exponents in ``var_indices``.

        Returns a mapping from those exponents to coefficient polynomials in
        the remaining variables.
        """
        var_indices = [self._index(v) for v in var_indices]
        rest = [i for i in range(self.nvars) if i not in var_indices]
        rest_vars = [self._vars[i] for i in rest]
        groups: dict[Exponent, dict[Exponent, complex]] = {}
        for e, c in self._terms.items():
            key = tuple(e[i] for i in var_indices)
            groups.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: MultiPoly(v, rest_vars) for k, v in groups.items()}

    def embed(self, vars: Sequence[str], positions: Sequence[int]) -> "MultiPoly":
        """Same polynomial viewed in a larger variable list.

        Variable ``i`` of ``self`` goes to position ``positions[i]``.
        """
        n = len(vars)
        terms = {}
        for e, c in self._terms.items():
            new = [0] * n
            for k, p in zip(e, positions):
                new[p] = k
            terms[tuple(new)] = c
        return MultiPoly(terms, vars)

    def univariate_coeffs(self, var=0) -> np.ndarray:
        """Ascending coefficient array of a polynomial in a single variable."""
        i = self._index(var)
        for e in self._terms:
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial depends on other variables")
        deg = max(self.deg_in(i), 0)
        out = np.zeros(deg + 1, dtype=complex)
        for e, c in self._terms.items():
            out[e[i]] += c
        return out

    def normalized(self) -> "MultiPoly":
        return MultiPoly(self._terms, self._vars)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    __hash__ = None

    def isclose(self, other: "MultiPoly", atol: float = 1e-12) -> bool:
        self._check(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= atol for k in keys)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self._vars, e) if k)
            cs = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)


@dataclass(frozen=True)
class PolyVectorField:
    """Vector field ``sum components[i] * d/d vars[i]`` in one affine chart.

    The first coordinate is the base variable (``x`` or ``w = 1/x``).
    """
    chart_id: str
    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ArityMismatch("a vector field needs at least one component")
        vars = comps[0].vars
        if len(vars) != len(comps):
            raise ArityMismatch(
                f"{len(comps)} components for variables {vars}")
        for c in comps:
            if c.vars != vars:
                raise ArityMismatch("components must share one variable list")
        object.__setattr__(self, "components", comps)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.components[0].vars

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, *point) -> np.ndarray:
        return np.array([c.eval(point) for c in self.components])

    def evaluate(self, point) -> np.ndarray:
        return np.array([c.eval(point) for c in self.components])

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.components)

    def scale(self, c: complex) -> "PolyVectorField":
        return PolyVectorField(self.chart_id, tuple(q.scale(c) for q in self.components))

    def isclose(self, other: "PolyVectorField", atol: float = 1e-12) -> bool:
        return (self.dim == other.dim
                and all(a.isclose(b, atol) for a, b in zip(self.components, other.components)))

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components

    __hash__ = None


@dataclass(frozen=True)
class ChartChangeResult:
    field: PolyVectorField
    clearing_exponent: int


def _clear(chart_id: str, comps: Sequence[MultiPoly], var: int) -> ChartChangeResult:
    """Multiply by the minimal power of ``var`` that removes every pole."""
    k = max(0, max(-c.min_exponent(var) for c in comps))
    comps = [c.shift(var, k) if k else c for c in comps]
    for c in comps:
        if not c.is_polynomial():
            raise ValueError("pole in a variable other than the clearing variable")
    return ChartChangeResult(PolyVectorField(chart_id, tuple(comps)), k)


def _require_dim(X: PolyVectorField, n: int, what: str):
    if X.dim != n:
        raise ArityMismatch(f"{what} needs {n} coordinates, got {X.dim}")


def fiber_chart_cp2(X: PolyVectorField) -> ChartChangeResult:
    """Rewrite a field on ``C x C^2`` in the fiber chart ``u = 1/y, v = z/y``.

    With ``X = P d/dx + Q d/dy + R d/dz`` the new components are
    ``P~``, ``-u^2 Q~`` and ``u R~ - u v Q~`` where ``~`` means substitution
    ``y = 1/u, z = v/u``; the result is then cleared of poles in ``u``.
    """
    _require_dim(X, 3, "fiber_chart_cp2")
    P, Q, R = X.components
    new_vars = ("x", "u", "v")
    # x -> x, y -> u^-1, z -> v u^-1
    imgs = [(1, 0, 0), (0, -1, 0), (0, -1, 1)]
    Pt, Qt, Rt = (c.substitute_monomial(imgs, new_vars) for c in (P, Q, R))
    x, u, v = MultiPoly.variables(new_vars)
    comps = [Pt, -(u * u * Qt), u * Rt - u * v * Qt]
    return _clear("cp2:u", comps, 1)


def fiber_chart_cp2_second(X: PolyVectorField) -> ChartChangeResult:
    """Rewrite a field on ``C x C^2`` in the fiber chart ``t = y/z, s = 1/z``.

    New components ``P~``, ``s Q~ - t s R~`` and ``-s^2 R~``, cleared of
    poles in ``s``.
    """
    _require_dim(X, 3, "fiber_chart_cp2_second")
    P, Q, R = X.components
    new_vars = ("x", "t", "s")
    # x -> x, y -> t s^-1, z -> s^-1
    imgs = [(1, 0, 0), (0, 1, -1), (0, 0, -1)]
    Pt, Qt, Rt = (c.substitute_monomial(imgs, new_vars) for c in (P, Q, R))
    x, t, s = MultiPoly.variables(new_vars)
    comps = [Pt, s * Qt - t * s * Rt, -(s * s * Rt)]
    return _clear("cp2:s", comps, 2)


def polydisk_chart_cn(X: PolyVectorField, k: int) -> ChartChangeResult:
    """Replace the fiber coordinate ``y_k`` (1-based) by ``w_k = 1/y_k``."""
    n = X.dim - 1
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    old = X.vars
    new_vars = tuple(f"w{k}" if i == k else name for i, name in enumerate(old))
    imgs = np.eye(n + 1, dtype=int)
    imgs[k, k] = -1
    comps = [c.substitute_monomial(imgs, new_vars) for c in X.components]
    w = MultiPoly.variables(new_vars)[k]
    comps[k] = -(w * w * comps[k])
    return _clear(f"cn:w{k}", comps, k)


def apply_polydisk_charts(X: PolyVectorField, ks: Iterable[int]) -> PolyVectorField:
    """Successive polydisk chart changes at the fiber indices ``ks``."""
    for k in ks:
        X = polydisk_chart_cn(X, k).field
    return X


def base_chart(X: PolyVectorField) -> ChartChangeResult:
    """Rewrite in the base chart ``w = 1/x`` near ``x = infinity``."""
    n = X.dim
    new_vars = ("w",) + X.vars[1:]
    imgs = np.eye(n, dtype=int)
    imgs[0, 0] = -1
    comps = [c.substitute_monomial(imgs, new_vars) for c in X.components]
    w = MultiPoly.variables(new_vars)[0]
    comps[0] = -(w * w * comps[0])
    return _clear(X.chart_id + ":w", comps, 0)


def cp2_field(P: MultiPoly, Q: MultiPoly, R: MultiPoly, chart_id: str = "cp2:0") -> PolyVectorField:
    """Field ``P d/dx + Q d/dy + R d/dz`` on ``C x C^2``."""
    return PolyVectorField(chart_id, (P, Q, R))
