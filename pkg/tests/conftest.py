import numpy as np
import pytest

from riccati_foliations.poly_vf import MultiPoly, cp2_field

VARS = ("x", "y", "z")


def xyz():
    return MultiPoly.variables(VARS)


def const(c):
    return MultiPoly.const(c, VARS)


def x_poly(coeffs):
    """Polynomial in x (ascending coefficients) embedded in (x, y, z)."""
    x, _, _ = xyz()
    out = MultiPoly.zero(VARS)
    for k, c in enumerate(coeffs):
        out = out + complex(c) * x ** k
    return out


def riccati_cp2(p, A, B, C, D, E, a, b, c):
    """Field p dx + Q dy + R dz with Q = A+By+Cz+Dyz+Ey^2, R = a+by+cz+Eyz+Dz^2."""
    _, y, z = xyz()
    Q = A + B * y + C * z + D * y * z + E * y * y
    R = a + b * y + c * z + E * y * z + D * z * z
    return cp2_field(p, Q, R)


def okamoto(a=1.0, b=1.0):
    """z - y^2 and -b - a y - y z fiber part over x' = 1."""
    one = const(1)
    zero = MultiPoly.zero(VARS)
    return riccati_cp2(one, zero, zero, one, zero, const(-1), const(-b), const(-a), zero)


def separated_roots(rng, n, min_sep=1.2, box=1.6):
    while True:
        r = rng.uniform(-box, box, n) + 1j * rng.uniform(-box, box, n)
        if n == 1 or min(abs(r[i] - r[j]) for i in range(n) for j in range(i)) >= min_sep:
            return r


def random_riccati_field(rng, deg, scale=0.2, coef_deg=None):
    """Random accepted field with p of degree ``deg`` and separated roots.

    Coefficients have x-degree below ``deg`` so that the fiber at infinity
    is a simple pole of the transport equation.
    """
    roots = separated_roots(rng, deg)
    p = x_poly(np.poly(roots)[::-1])
    coef_deg = deg - 1 if coef_deg is None else coef_deg

    def rand():
        c = scale * (rng.normal(size=coef_deg + 1) + 1j * rng.normal(size=coef_deg + 1)) / np.sqrt(2)
        return x_poly(c)

    return riccati_cp2(p, *(rand() for _ in range(8))), roots


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def jordan_matrix(case, lams):
    """Jordan normal form of ``case`` with eigenvalues taken from ``lams``."""
    l1, l2, l3 = (complex(v) for v in lams)
    J = {
        "I": np.diag([l1, l2, l3]),
        "II1": np.diag([l1, l1, l3]),
        "II2": np.array([[l1, 1, 0], [0, l1, 0], [0, 0, l3]]),
        "III1": np.diag([l1, l1, l1]),
        "III2": np.array([[l1, 1, 0], [0, l1, 0], [0, 0, l1]]),
        "III3": np.array([[l1, 1, 0], [0, l1, 1], [0, 0, l1]]),
    }[case]
    return np.asarray(J, dtype=complex)


def random_eigenvalues(rng, min_gap=0.3):
    """Three eigenvalues with moduli in [0.5, 2] and pairwise gap >= ``min_gap``."""
    while True:
        lams = rng.uniform(0.5, 2.0, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi, 3))
        if min(abs(lams[i] - lams[j]) for i in range(3) for j in range(i)) >= min_gap:
            return lams


def random_conjugator(rng, max_cond=50.0):
    while True:
        P = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        if np.linalg.cond(P) <= max_cond:
            return P


def random_case_matrix(rng, case):
    """``(M, P, J)`` with ``M = P^{-1} J P`` times a random nonzero scalar."""
    J = jordan_matrix(case, random_eigenvalues(rng))
    P = random_conjugator(rng)
    s = rng.uniform(0.2, 5.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    return s * np.linalg.solve(P, J @ P), P, J
