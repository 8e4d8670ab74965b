"""Closed-form kernels on the unit disk and quadrature checks of their
reproducing properties.

Boundary weight a = 1 and circulation gamma = (2 pi) throughout, so the
hydrodynamic Green's function is the ordinary one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .policy import DomainError, SingularityError

PI = math.pi
KINDS = ("neumann", "hydro_greens", "k_harmonic", "K_dirichlet", "L_adjoint")
_SINGULAR = ("neumann", "hydro_greens", "L_adjoint")
N_ANGLE = 128
N_RADIAL = 96


@dataclass(frozen=True)
class Disk:
    """Disk |z| < radius centred at the origin."""

    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0.0:
            raise DomainError("radius must be positive")

    def contains(self, z) -> bool:
        return bool(np.all(np.abs(z) < self.radius))

    def distance(self, z):
        return self.radius - np.abs(z)

    def G(self, z, a):
        z, a = np.asarray(z, dtype=complex), np.asarray(a, dtype=complex)
        r = self.radius
        if np.any(z == a):
            raise SingularityError("G(z, a) is singular at z = a")
        return -np.log(np.abs(r * (z - a) / (r * r - z * np.conj(a))))

    def G_z(self, z, a):
        """dG/dz = (1/2)(-1/(z - a) - conj a/(r^2 - z conj a))."""
        z, a = np.asarray(z, dtype=complex), np.asarray(a, dtype=complex)
        if np.any(z == a):
            raise SingularityError("dG/dz is singular at z = a")
        ab = np.conj(a)
        return 0.5 * (-1.0 / (z - a) - ab / (self.radius**2 - z * ab))

    def G_zz(self, z, a):
        z, a = np.asarray(z, dtype=complex), np.asarray(a, dtype=complex)
        ab = np.conj(a)
        return 0.5 * (1.0 / (z - a) ** 2 - ab * ab / (self.radius**2 - z * ab) ** 2)


UNIT_DISK = Disk()


def _check_open(*pts):
    for p in pts:
        if np.any(np.abs(p) >= 1.0):
            raise DomainError("points must lie in the open unit disk")


def eval_kernel(kind: str, z, zeta):
    """Closed forms for the unit disk; complex kinds use principal logs."""
    if kind not in KINDS:
        raise DomainError(f"unknown kernel kind {kind!r}")
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    _check_open(z, zeta)
    if kind in _SINGULAR and np.any(z == zeta):
        raise SingularityError(f"{kind} is singular on the diagonal")
    w = 1.0 - z * np.conj(zeta)
    if kind == "neumann":
        return -np.log(np.abs(z - zeta)) - np.log(np.abs(w))
    if kind == "hydro_greens":
        return -np.log(np.abs(z - zeta)) + np.log(np.abs(w))
    if kind == "k_harmonic":
        return -np.log(np.abs(w)) / PI
    if kind == "K_dirichlet":
        return -np.log(w) / PI
    return -np.log(z - zeta) / PI


def neumann_dz(z, zeta):
    """dN/dz for the disk Neumann function; 2 dN/dz is the connection Gamma_a."""
    z = np.asarray(z, dtype=complex)
    zb = np.conj(zeta)
    return 0.5 * (-1.0 / (z - zeta) + zb / (1.0 - z * zb))


def bergman_disk(z, zeta):
    return 1.0 / (PI * (1.0 - np.asarray(z) * np.conj(zeta)) ** 2)


# --------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=8)
def polar_grid(n_angle: int = N_ANGLE, n_radial: int = N_RADIAL):
    """Nodes and area weights of the tensor grid: trapezoid in theta,
    Gauss-Legendre in r on [0, 1] (the r dr Jacobian is in the weights)."""
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    r = 0.5 * (x + 1.0)
    wr = 0.5 * wx * r
    th = 2.0 * PI * np.arange(n_angle) / n_angle
    z = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    w = (wr[:, None] * np.full(n_angle, 2.0 * PI / n_angle)[None, :]).ravel()
    z.setflags(write=False)
    w.setflags(write=False)
    return z, w


@dataclass(frozen=True)
class HarmonicPoly:
    """u = Re f with f(z) = sum coeffs[k] z^k."""

    coeffs: tuple

    def f(self, z):
        return np.polynomial.polynomial.polyval(z, np.asarray(self.coeffs, dtype=complex))

    def u(self, z):
        return self.f(z).real

    def u_z(self, z):
        # u = (f + conj f)/2, so du/dz = f'/2
        c = np.asarray(self.coeffs, dtype=complex)
        return 0.5 * np.polynomial.polynomial.polyval(z, np.polynomial.polynomial.polyder(c))

    def boundary_mean(self, n: int = N_ANGLE) -> float:
        zb = np.exp(2j * PI * np.arange(n) / n)
        return float(np.mean(self.u(zb)))


def dirichlet_inner(u_z, v_z, grid=None) -> float:
    """D(u, v) = int grad u . grad v dxdy = 4 Re int u_z conj(v_z), real u, v.

    u_z, v_z are callables returning the z-derivatives on the grid.
    """
    z, w = grid if grid is not None else polar_grid()
    return float(4.0 * np.sum(w * (u_z(z) * np.conj(v_z(z))).real))


def _k_z(zeta):
    zb = np.conj(zeta)
    return lambda z: zb / (2.0 * PI * (1.0 - z * zb))


def reproduce_harmonic(u: HarmonicPoly, zeta: complex) -> tuple[float, float]:
    """(D(u, k(., zeta)), u(zeta) - boundary mean of u).

    k(., zeta) is smooth on the closed disk (its singularity sits at
    1/conj zeta), so the plain tensor grid needs no singular correction.
    Normalization: constants are removed by subtracting the boundary mean.
    """
    _check_open(zeta)
    lhs = dirichlet_inner(u.u_z, _k_z(zeta))
    return lhs, float(u.u(zeta)) - u.boundary_mean()


def bergman_reproduce(coeffs, zeta: complex, m: str = "full") -> tuple[complex, complex]:
    """(int f conj K(., zeta) dA, f(zeta)) for a polynomial f of degree <= 8.

    On the disk every Bergman function is a derivative, so the reduced
    kernel equals the full one and both values of m use the same K.
    """
    if m not in ("full", "reduced"):
        raise DomainError("m must be 'full' or 'reduced'")
    c = np.asarray(coeffs, dtype=complex)
    if c.size > 9:
        raise DomainError("polynomial degree must be <= 8")
    _check_open(zeta)
    z, w = polar_grid()
    f = np.polynomial.polynomial.polyval(z, c)
    lhs = complex(np.sum(w * f * np.conj(bergman_disk(z, zeta))))
    return lhs, complex(np.polynomial.polynomial.polyval(zeta, c))


def neumann_normal_derivative(zeta: complex, n: int = 64, h: float = 1e-5) -> np.ndarray:
    """Outward dN/dr on |z| = 1 by a central difference straddling the circle.

    N continues harmonically across the circle away from 1/conj zeta.
    """
    zb = np.exp(2j * PI * np.arange(n) / n)
    out = eval_kernel_raw_neumann(zb * (1.0 + h), zeta)
    inn = eval_kernel_raw_neumann(zb * (1.0 - h), zeta)
    return (out - inn) / (2.0 * h)


def eval_kernel_raw_neumann(z, zeta):
    """Neumann function without the open-disk check (for FD stencils)."""
    z = np.asarray(z, dtype=complex)
    return -np.log(np.abs(z - zeta)) - np.log(np.abs(1.0 - z * np.conj(zeta)))


def connection_boundary_residual(zeta: complex, n: int = 64) -> float:
    """max |Im(Gamma_a dz) + kappa ds| on |z| = 1 with a = kappa = 1."""
    th = 2.0 * PI * np.arange(n) / n
    zb = np.exp(1j * th)
    gamma = 2.0 * neumann_dz(zb, zeta)
    # dz = i z dtheta, ds = dtheta
    return float(np.max(np.abs((gamma * 1j * zb).imag + 1.0)))


# --------------------------------------------------------------------------
# exterior disk


@dataclass(frozen=True)
class ResidueReport:
    zeta: complex
    at_infinity: float | complex
    at_zeta: complex
    at_reflection: complex
    total: complex


def _exterior_connection_w(w, zeta):
    """-Gamma_a(1/w, zeta) d(1/w) - 2 dw/w, as a coefficient of dw.

    Gamma_a = 2 dN/dz for N = -log|z - zeta| - log|1 - z conj zeta| + 2 log|z|.
    """
    z = 1.0 / w
    zb = np.conj(zeta)
    gamma = -1.0 / (z - zeta) + zb / (1.0 - z * zb) + 2.0 / z
    return -gamma * (-1.0 / (w * w)) - 2.0 / w


def contour_residue(fn, center: complex, radius: float, n: int = 256) -> complex:
    """(1/2 pi i) times the trapezoid integral of fn(w) dw on a circle."""
    th = 2.0 * PI * np.arange(n) / n
    e = np.exp(1j * th)
    w = center + radius * e
    return complex(np.mean(fn(w) * radius * e))


def exterior_neumann_check(zeta: complex = 2.0 + 0.5j) -> ResidueReport:
    """Residues of the exterior-disk connection in the chart w = 1/z."""
    zeta = complex(zeta)
    if not abs(zeta) > 1.0:
        raise DomainError("zeta must lie in the exterior disk")
    fn = lambda w: _exterior_connection_w(w, zeta)
    wz = 1.0 / zeta
    wr = np.conj(zeta)
    sep = min(abs(wz), abs(wr - wz), abs(wr))
    r0 = 0.4 * min(abs(wz), 1.0)
    res0 = contour_residue(fn, 0.0, r0)
    res_z = contour_residue(fn, wz, 0.4 * sep)
    res_r = contour_residue(fn, wr, 0.4 * sep)
    big = contour_residue(fn, 0.0, 2.0 * abs(wr) + 1.0, n=1024)
    return ResidueReport(zeta, res0, res_z, res_r, big)


# --------------------------------------------------------------------------
# q-connection on the disk


def ell_fd(zeta: complex, h: float = 2e-3) -> complex:
    """(2/pi) d^2 H / dz dzeta at z = zeta by central differences at steps
    h and h/2, Richardson-combined.

    H(z, zeta) = G + log|z - zeta| = log|1 - z conj zeta|.
    """
    H = lambda z, s: np.log(np.abs(1.0 - z * np.conj(s)))

    def mixed(dz, ds, h):
        return (
            H(zeta + h * dz, zeta + h * ds)
            - H(zeta + h * dz, zeta - h * ds)
            - H(zeta - h * dz, zeta + h * ds)
            + H(zeta - h * dz, zeta - h * ds)
        ) / (4.0 * h * h)

    # d/dz = (d/dx - i d/dy)/2 in each variable
    def op(h):
        return 0.25 * (mixed(1, 1, h) - 1j * mixed(1, 1j, h) - 1j * mixed(1j, 1, h) - mixed(1j, 1j, h))

    return 2.0 / PI * (4.0 * op(0.5 * h) - op(h)) / 3.0
