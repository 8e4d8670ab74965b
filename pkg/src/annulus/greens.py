"""Green's function of the annulus A(1, R), its kernels and boundary data.

With t = log z and u = log a on the covering strip 0 < Re t < log R,

    G(z, a) = -Re[log sigma(t - u) - log sigma(t + conj u)] - 2 eta1 Re t Re u / log R.

Three further closed forms are provided as independent evaluations of the
same function: the method-of-images product, the theta-function formula with
modulus i pi / log R, and the prime-form quotient -log|E(z, a) / E(z, J(a))|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .elliptic import Lattice, log_abs_theta1, log_prime_form, log_sigma, make_lattice, w_zeta, wp_plus_eta
from .policy import (
    DEFAULT_POLICY,
    ConstraintError,
    DomainError,
    PoleError,
    SingularityError,
    TruncationPolicy,
)

PI = math.pi
FORMULAS = ("sigma", "product", "theta", "primeform")
EPS = np.finfo(float).eps
_BOUNDARY_TOL = 1e-12
_N_BOUNDARY = 64
_GATE_TOL = 1e-6
FD_H1 = 1e-5
FD_H2 = 1e-4


@dataclass(frozen=True)
class AnnulusDomain:
    """A(1, R) = {1 < |z| < R} together with its period lattice.

    ``closed_form_L`` records whether the closed-form Schiffer kernel passed
    the boundary identity L dz + conj(K dz) = 0 when the domain was built.
    """

    R: float
    lattice: Lattice = field(repr=False)
    closed_form_L: bool = False
    gate_residual: float = float("nan")
    inner_flux_u1: float = float("nan")

    @property
    def L(self) -> float:
        return self.lattice.omega1

    @property
    def policy(self) -> TruncationPolicy:
        return self.lattice.policy

    @classmethod
    def build(cls, R: float, policy: TruncationPolicy = DEFAULT_POLICY) -> "AnnulusDomain":
        lat = make_lattice(R, policy)
        tmp = cls(float(R), lat)
        res = _kl_gate_residual(tmp)
        flux = _inner_flux_u1(tmp)
        return cls(float(R), lat, bool(res <= _GATE_TOL), float(res), float(flux))


def annulus(R: float, policy: TruncationPolicy = DEFAULT_POLICY) -> AnnulusDomain:
    return AnnulusDomain.build(R, policy)


@dataclass(frozen=True)
class GreensEval:
    value: float | np.ndarray
    formula: str
    est_error: float | np.ndarray


# --------------------------------------------------------------------------
# input validation


def _arr(x):
    a = np.asarray(x, dtype=np.complex128)
    return a, a.ndim == 0


def _check_closed(z, dom: AnnulusDomain, what: str):
    r = np.abs(z)
    if np.any(r < 1.0 - _BOUNDARY_TOL) or np.any(r > dom.R * (1.0 + _BOUNDARY_TOL)) or np.any(~np.isfinite(r)):
        raise DomainError(f"{what} lies outside the closed annulus 1 <= |z| <= {dom.R}")


def _check_open(a, dom: AnnulusDomain, what: str):
    r = np.abs(a)
    if np.any(r <= 1.0) or np.any(r >= dom.R) or np.any(~np.isfinite(r)):
        raise DomainError(f"{what} must lie in the open annulus 1 < |a| < {dom.R}")


def _check_pair(z, a, dom):
    _check_closed(z, dom, "z")
    _check_open(a, dom, "a")
    if np.any(z == a):
        raise SingularityError("G(z, a) is singular on the diagonal z = a")


def _out(x, scalar):
    if scalar:
        return float(np.asarray(x).reshape(-1)[0]) if np.isrealobj(x) else complex(np.asarray(x).reshape(-1)[0])
    return x


# --------------------------------------------------------------------------
# the four closed forms


def _g_sigma(z, a, dom):
    lat = dom.lattice
    t = np.log(z)
    u = np.log(a)
    val = -(log_sigma(t - u, lat).real - log_sigma(t + np.conj(u), lat).real)
    val = val - 2.0 * lat.eta1.real * t.real * u.real / dom.L
    scale = np.abs(lat.eta1.real) * dom.L + 1.0 + np.abs(np.log(np.abs(z - a)))
    return val, 16.0 * EPS * scale


def _product_terms(dom: AnnulusDomain) -> int:
    # the n-th factor deviates from 1 by at most about R^(2 - 2n)
    need = 1 + math.ceil(40.0 / (2.0 * dom.L))
    return int(max(8, min(need, 20000)))


def _g_product(z, a, dom):
    zf = np.ascontiguousarray(z.reshape(-1))
    af = np.ascontiguousarray(np.broadcast_to(a, z.shape).reshape(-1))
    N = _product_terms(dom)
    tail = _accel.image_product(zf, af, float(dom.R), N).reshape(z.shape)
    lead = -np.log(np.abs((z - a) / (1.0 - z * np.conj(a))))
    val = lead - tail - np.log(np.abs(z)) * np.log(np.abs(a)) / dom.L
    return val, 4.0 * EPS * (N + np.abs(lead) + 1.0)


def _g_theta(z, a, dom):
    L = dom.L
    tau = 1j * PI / L
    t = np.log(z)
    u = np.log(a)
    v1 = log_abs_theta1((t - u) / (2.0 * L), tau)
    v2 = log_abs_theta1((t + np.conj(u)) / (2.0 * L), tau)
    val = -np.asarray(v1) + np.asarray(v2)
    scale = np.abs(v1) + np.abs(v2) + PI / L
    return val, 16.0 * EPS * scale


def _g_primeform(z, a, dom):
    ja = 1.0 / np.conj(a)
    l1 = log_prime_form(z, a, dom)
    l2 = log_prime_form(z, ja, dom)
    val = -(np.real(l1) - np.real(l2))
    scale = np.abs(np.real(l1)) + np.abs(np.real(l2)) + abs(dom.lattice.eta1.real) * dom.L + 1.0
    return val, 16.0 * EPS * scale


_IMPL = {"sigma": _g_sigma, "product": _g_product, "theta": _g_theta, "primeform": _g_primeform}


def greens(z, a, dom: AnnulusDomain, formula: str = "sigma") -> GreensEval:
    """Dirichlet Green's function G(z, a), normalized as G ~ -log|z - a|.

    ``z`` may sit on the boundary (where G = 0); ``a`` must be interior.
    Arrays broadcast.
    """
    if formula not in _IMPL:
        raise ValueError(f"formula must be one of {FORMULAS}, got {formula!r}")
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    _check_pair(z, a, dom)
    val, err = _IMPL[formula](np.array(z), np.array(a), dom)
    val = np.asarray(val, dtype=float)
    err = np.broadcast_to(np.asarray(err, dtype=float), val.shape)
    sc = sz and sa
    return GreensEval(_out(val, sc), formula, _out(np.array(err), sc))


def G(z, a, dom: AnnulusDomain, formula: str = "sigma"):
    """Shorthand returning only the value."""
    return greens(z, a, dom, formula).value


# --------------------------------------------------------------------------
# derivatives and kernels


def greens_dz(z, a, dom: AnnulusDomain):
    """dG/dz = -(1/(2z)) [zeta(t - u) - zeta(t + conj u) + 2 eta1 Re u / log R]."""
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    _check_pair(z, a, dom)
    lat = dom.lattice
    t = np.log(z)
    u = np.log(a)
    bracket = w_zeta(t - u, lat) - w_zeta(t + np.conj(u), lat) + 2.0 * lat.eta1.real * u.real / dom.L
    return _out(-bracket / (2.0 * z), sz and sa)


def bergman_K(z, a, dom: AnnulusDomain):
    """K(z, a) = (wp(log(z conj a)) + eta1 / log R) / (pi z conj a)."""
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    _check_closed(z, dom, "z")
    _check_closed(a, dom, "a")
    w = z * np.conj(a)
    try:
        val = wp_plus_eta(np.log(w), dom.lattice) / (PI * w)
    except PoleError as exc:
        raise SingularityError("K(z, a) evaluated at its singularity on the double") from exc
    return _out(val, sz and sa)


def schiffer_L_closed(z, a, dom: AnnulusDomain):
    """Closed-form candidate (wp(log(z / a)) + eta1 / log R) / (pi z a)."""
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    if np.any(z == a):
        raise SingularityError("L(z, a) has a double pole at z = a")
    try:
        val = wp_plus_eta(np.log(z / a), dom.lattice) / (PI * z * a)
    except PoleError as exc:
        raise SingularityError("L(z, a) has a double pole at z = a") from exc
    return _out(val, sz and sa)


def _mixed_fd(z, a, dom, conj_a: bool, h: float = FD_H2):
    # d/dz d/da (or d/d conj a) of G from the 4-point mixed stencil in each of
    # the four real coordinate pairs
    # the sigma form continues G harmonically across both circles, so the
    # stencil may straddle the boundary
    def g(zz, aa):
        return _g_sigma(zz, aa, dom)[0]

    d = {}
    for dz_name, ez in (("x", 1.0), ("y", 1j)):
        for da_name, ea in (("X", 1.0), ("Y", 1j)):
            hz = h * ez
            ha = h * ea
            d[dz_name + da_name] = (
                g(z + hz, a + ha) - g(z + hz, a - ha) - g(z - hz, a + ha) + g(z - hz, a - ha)
            ) / (4.0 * h * h)
    sa = 1.0 if conj_a else -1.0
    # d_z = (d_x - i d_y)/2, d_a = (d_X - i d_Y)/2, d_conj a = (d_X + i d_Y)/2
    return 0.25 * (d["xX"] + sa * 1j * d["xY"] - 1j * d["yX"] - sa * 1j * 1j * d["yY"])


def bergman_K_fd(z, a, dom: AnnulusDomain, h: float = FD_H2):
    """-(2/pi) d^2 G / dz d conj(a) by nested finite differences."""
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    return _out(-(2.0 / PI) * _mixed_fd(np.array(z), np.array(a), dom, True, h), sz and sa)


def schiffer_L(z, a, dom: AnnulusDomain, mode: str = "auto", h: float = FD_H2):
    """Schiffer kernel L(z, a) = -(2/pi) d^2 G / dz da.

    ``mode="fd"`` uses nested finite differences of G (the reference
    definition). ``mode="closed"`` uses the wp closed form, and ``"auto"``
    uses it only when the domain's boundary-identity gate passed.
    """
    if mode not in ("auto", "fd", "closed"):
        raise ValueError("mode must be 'auto', 'fd' or 'closed'")
    if mode == "closed" or (mode == "auto" and dom.closed_form_L):
        return schiffer_L_closed(z, a, dom)
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    if np.any(np.abs(z - a) < 4.0 * h):
        raise SingularityError("L(z, a) is singular at z = a")
    return _out(-(2.0 / PI) * _mixed_fd(np.array(z), np.array(a), dom, False, h), sz and sa)


def boundary_points(dom: AnnulusDomain, n: int = _N_BOUNDARY):
    """n equispaced points on each circle: (inner, outer)."""
    theta = 2.0 * PI * np.arange(n) / n
    e = np.exp(1j * theta)
    return e, dom.R * e


def kl_residual(dom: AnnulusDomain, a: complex, n: int = _N_BOUNDARY, mode: str = "closed") -> float:
    """max over boundary samples of |L T + conj(K T)| / max|K|, T the unit tangent."""
    inner, outer = boundary_points(dom, n)
    zb = np.concatenate([inner, outer])
    T = 1j * zb / np.abs(zb)
    K = np.asarray(bergman_K(zb, np.full(zb.shape, a), dom))
    if mode == "closed":
        Lk = np.asarray(schiffer_L_closed(zb, np.full(zb.shape, a), dom))
    else:
        Lk = np.asarray(schiffer_L(zb, np.full(zb.shape, a), dom, mode="fd"))
    res = np.abs(Lk * T + np.conj(K * T))
    return float(res.max() / np.abs(K).max())


def _kl_gate_residual(dom: AnnulusDomain) -> float:
    a = math.sqrt(dom.R) * complex(math.cos(0.3), math.sin(0.3))
    return kl_residual(dom, a)


# --------------------------------------------------------------------------
# boundary data


def outward_normal(zb, dom: AnnulusDomain):
    zb = np.asarray(zb, dtype=np.complex128)
    r = np.abs(zb)
    unit = zb / r
    inner = np.abs(r - 1.0) <= np.abs(r - dom.R)
    return np.where(inner, -unit, unit)


def normal_derivative(zb, a, dom: AnnulusDomain):
    """dG/dn at boundary points, outward normal."""
    zb, sz = _arr(zb)
    a, sa = _arr(a)
    zb, a = np.broadcast_arrays(zb, a)
    n = outward_normal(zb, dom)
    dz = np.asarray(greens_dz(zb, a, dom))
    return _out(2.0 * np.real(n * dz), sz and sa)


def poisson(z_boundary, a, dom: AnnulusDomain):
    """Poisson kernel P(z, a) = -(1/(2 pi)) dG/dn_z for z on either circle."""
    zb, sz = _arr(z_boundary)
    a, sa = _arr(a)
    r = np.abs(zb)
    on = (np.abs(r - 1.0) <= 1e-10) | (np.abs(r - dom.R) <= 1e-10 * dom.R)
    if not np.all(on):
        raise DomainError("poisson expects points on |z| = 1 or |z| = R")
    ra = np.abs(a)
    if np.any(ra <= 1.0) or np.any(ra >= dom.R):
        raise DomainError("the pole a must be interior")
    return _out(-np.asarray(normal_derivative(zb, a, dom)) / (2.0 * PI), sz and sa)


def boundary_integral(values_inner, values_outer, dom: AnnulusDomain):
    """Arc-length trapezoid sums over both circles of equispaced samples."""
    vi = np.asarray(values_inner)
    vo = np.asarray(values_outer)
    return (2.0 * PI / vi.size) * vi.sum() + (2.0 * PI * dom.R / vo.size) * vo.sum()


def harmonic_measure(z, dom: AnnulusDomain):
    """u1 = (log R - log|z|) / log R: 1 on |z| = 1, 0 on |z| = R."""
    z, sz = _arr(z)
    if np.any(z == 0):
        raise DomainError("harmonic measure is undefined at z = 0")
    val = (dom.L - np.log(np.abs(z))) / dom.L
    return _out(val, sz)


def involution_J(z, dom: AnnulusDomain | None = None):
    """Anticonformal involution z -> 1/conj(z) of the double, fixing |z| = 1."""
    z, sz = _arr(z)
    if np.any(z == 0):
        raise DomainError("J is undefined at z = 0")
    return _out(1.0 / np.conj(z), sz)


def flux_inner(a, dom: AnnulusDomain, n: int | None = None, field: str = "greens", gamma=None) -> float:
    """-(closed integral over |z| = 1 of dG/dn ds), outward normal, by trapezoid."""
    n = n or dom.policy.quad_nodes
    zb, _ = boundary_points(dom, n)
    if field == "greens":
        dn = np.asarray(normal_derivative(zb, np.full(zb.shape, a), dom))
    elif field == "hydro":
        dn = _hydro_normal_derivative(zb, a, dom, gamma)
    else:
        raise ValueError(field)
    return float(-(2.0 * PI / n) * dn.sum())


def _inner_flux_u1(dom: AnnulusDomain, n: int = _N_BOUNDARY) -> float:
    # -(integral over |z| = 1 of du1/dn ds); du1/dn with n = -z/|z| is 1/log R
    zb, _ = boundary_points(dom, n)
    h = FD_H1
    n_out = -zb
    du = (np.asarray(harmonic_measure(zb + h * n_out, dom)) - np.asarray(harmonic_measure(zb - h * n_out, dom))) / (2 * h)
    return float(-(2.0 * PI / n) * du.sum())


# --------------------------------------------------------------------------
# hydrodynamic Green's function


def _check_gamma(gamma):
    g0, g1 = (float(gamma[0]), float(gamma[1]))
    if abs(g0 + g1 - 2.0 * PI) > 1e-12:
        raise ConstraintError(f"circulations must satisfy gamma0 + gamma1 = 2 pi, got {g0 + g1}")
    return g0, g1


def hydrodynamic_coefficient(dom: AnnulusDomain) -> float:
    """c in G_gamma = G + c (u1(z) - k)(u1(a) - k), k = gamma1 / (2 pi).

    The flux of G through |z| = 1 is 2 pi u1(a); asking for flux gamma1
    for every a forces c = -2 pi / P11 with P11 the u1 flux.
    """
    return -2.0 * PI / dom.inner_flux_u1


def hydrodynamic_matrix(dom: AnnulusDomain, gamma) -> np.ndarray:
    """c_kj for G_gamma = G + sum c_kj u_k(z) u_j(a) in the basis (u0, u1)."""
    _, g1 = _check_gamma(gamma)
    k = g1 / (2.0 * PI)
    c = hydrodynamic_coefficient(dom)
    v = np.array([-k, 1.0 - k])
    return c * np.outer(v, v)


def hydrodynamic_greens(z, a, dom: AnnulusDomain, gamma):
    """Green's function with floating boundary constants and prescribed fluxes.

    G_gamma is constant on each circle, symmetric, and has flux gamma_j out
    through the boundary circle j (gamma0 on |z| = R, gamma1 on |z| = 1).
    """
    _, g1 = _check_gamma(gamma)
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    k = g1 / (2.0 * PI)
    g = np.asarray(greens(z, a, dom).value)
    val = g + hydrodynamic_coefficient(dom) * (np.asarray(harmonic_measure(z, dom)) - k) * (
        np.asarray(harmonic_measure(a, dom)) - k
    )
    return _out(val, sz and sa)


def hydrodynamic_dz(z, a, dom: AnnulusDomain, gamma):
    _, g1 = _check_gamma(gamma)
    z, sz = _arr(z)
    a, sa = _arr(a)
    z, a = np.broadcast_arrays(z, a)
    k = g1 / (2.0 * PI)
    # d u1 / dz = -1 / (2 z log R)
    du = -1.0 / (2.0 * z * dom.L)
    val = np.asarray(greens_dz(z, a, dom)) + hydrodynamic_coefficient(dom) * du * (np.asarray(harmonic_measure(a, dom)) - k)
    return _out(val, sz and sa)


def _hydro_normal_derivative(zb, a, dom, gamma):
    n = outward_normal(zb, dom)
    dz = np.asarray(hydrodynamic_dz(zb, np.full(zb.shape, a), dom, gamma))
    return 2.0 * np.real(n * dz)
