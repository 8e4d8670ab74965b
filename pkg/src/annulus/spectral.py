"""Dirichlet eigenbasis of the annulus A(1, R) viewed as the flat cylinder
0 < x < log R, y mod 2 pi, and the Dirichlet series

    G^s(z, w) = 2 pi sum_{m >= 1, n in Z} u_mn(z) u_mn(w) / lambda_mn^s,

whose value at s = 1 is the Green's function (the sum converges only
weakly there, so partial sums at s > 1 are diagnostics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .greens import AnnulusDomain, G as greens_G
from .policy import DomainError

PI = math.pi
MAX_TRUNCATION = 400
NORMALIZATIONS = ("corrected", "printed")


@dataclass(frozen=True)
class EigenMode:
    m: int
    n: int
    lam: float

    @classmethod
    def of(cls, m: int, n: int, L: float) -> "EigenMode":
        if not (isinstance(m, (int, np.integer)) and m >= 1):
            raise DomainError("m must be an integer >= 1")
        return cls(int(m), int(n), eigenvalue(m, n, L))


def eigenvalue(m, n, L: float):
    """lambda_mn = m^2 pi^2 / L^2 + n^2."""
    return (np.asarray(m) * PI / L) ** 2 + np.asarray(n) ** 2


def theta_greens(z, a, dom: AnnulusDomain):
    return greens_G(z, a, dom, formula="theta")


def _amplitude(n, L: float, normalization: str):
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}")
    c0 = 1.0 / math.sqrt(PI * L)
    # cos^2 ny and sin^2 ny average 1/2 over a period, so n != 0 needs sqrt 2
    cn = (math.sqrt(2.0) if normalization == "corrected" else 2.0) * c0
    return np.where(np.asarray(n) == 0, c0, cn)


def eigenfunction_xy(m: int, n: int, x, y, L: float, normalization: str = "corrected"):
    """u_mn in cylinder coordinates: sin(m pi x / L) times 1, cos ny or sin |n| y."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    s = np.sin(m * PI * x / L)
    if n > 0:
        ang = np.cos(n * y)
    elif n < 0:
        ang = np.sin(-n * y)
    else:
        ang = np.ones_like(y)
    return _amplitude(n, L, normalization) * s * ang


def eigenfunction(m: int, n: int, z, dom: AnnulusDomain, normalization: str = "corrected"):
    z = np.asarray(z, dtype=complex)
    return eigenfunction_xy(m, n, np.log(np.abs(z)), np.angle(z), dom.L, normalization)


def cylinder_inner(f, g, L: float, nx: int = 64, ny: int = 64) -> float:
    """int_0^L int_0^{2 pi} f g dy dx: Gauss-Legendre in x, trapezoid
    (periodic, so spectrally accurate) in y."""
    t, w = np.polynomial.legendre.leggauss(nx)
    x = 0.5 * L * (t + 1.0)
    wx = 0.5 * L * w
    y = 2.0 * PI * np.arange(ny) / ny
    X, Y = np.meshgrid(x, y, indexing="ij")
    vals = f(X, Y) * g(X, Y)
    return float(np.sum(wx[:, None] * vals) * 2.0 * PI / ny)


def mode_inner(p: tuple, q: tuple, L: float, normalization: str = "corrected") -> float:
    f = lambda x, y: eigenfunction_xy(p[0], p[1], x, y, L, normalization)
    g = lambda x, y: eigenfunction_xy(q[0], q[1], x, y, L, normalization)
    return cylinder_inner(f, g, L)


def laplace_residual(m: int, n: int, L: float, x: float, y: float, h: float = 1e-3) -> float:
    """|(-Delta u - lambda u)| / (lambda |u|) at (x, y), five-point Laplacian."""
    u = lambda a, b: float(eigenfunction_xy(m, n, a, b, L))
    lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u(x, y)) / (h * h)
    lam = float(eigenvalue(m, n, L))
    return abs(-lap - lam * u(x, y)) / (lam * abs(u(x, y)))


def eigen_partial_sum(z, a, dom: AnnulusDomain, s: float, M: int, N: int) -> float:
    """Truncated G^s: 1 <= m <= M, |n| <= N, in the exact sine/cosine basis.

    Pairing n and -n gives cos n(y - v), so the sum depends on the angles
    only through their difference; the summation order over (m, n) is fixed.
    """
    if not (1.0 < s <= 3.0):
        raise DomainError("s must lie in (1, 3]")
    if not (1 <= M <= MAX_TRUNCATION and 0 <= N <= MAX_TRUNCATION):
        raise DomainError(f"truncations must satisfy 1 <= M, N <= {MAX_TRUNCATION}")
    z, a = complex(z), complex(a)
    L = dom.L
    x, y = math.log(abs(z)), math.atan2(z.imag, z.real)
    u, v = math.log(abs(a)), math.atan2(a.imag, a.real)
    m = np.arange(1, M + 1)[:, None]
    n = np.arange(-N, N + 1)[None, :]
    amp = _amplitude(n, L, "corrected")
    ang_z = np.where(n > 0, np.cos(n * y), np.where(n < 0, np.sin(-n * y), 1.0))
    ang_a = np.where(n > 0, np.cos(n * v), np.where(n < 0, np.sin(-n * v), 1.0))
    sx = np.sin(m * PI * x / L) * np.sin(m * PI * u / L)
    terms = amp**2 * sx * ang_z * ang_a / eigenvalue(m, n, L) ** s
    return float(2.0 * PI * np.sum(terms))


def rotation_defect(z, a, dom: AnnulusDomain, s: float, M: int, N: int, theta: float) -> float:
    r = complex(math.cos(theta), math.sin(theta))
    return abs(eigen_partial_sum(z, a, dom, s, M, N) - eigen_partial_sum(r * z, r * a, dom, s, M, N))


def eigen_trend(z, a, dom: AnnulusDomain, s_values=(2.0, 1.5, 1.2, 1.1), M: int = 200, N: int = 200):
    """Rows (s, G^s partial sum, theta value, relative gap) for a report."""
    g = float(theta_greens(z, a, dom))
    rows = []
    for s in s_values:
        gs = eigen_partial_sum(z, a, dom, s, M, N)
        rows.append((float(s), gs, g, abs(gs - g) / abs(g)))
    return rows
