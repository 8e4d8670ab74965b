"""Potential theory built on G: Taylor coefficients of the regular part,
the Poincare density, distance estimates, level lines as trajectories and
geodesics, their curvature, the Kubo average and Levy's bracket.

Harmonic fields are passed around as ``UField`` objects carrying u and
du/dz. The gradient as a complex number is 2 conj(du/dz).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp, trapezoid
from scipy.special import gammaln, logsumexp

from . import greens as gr
from .disk import UNIT_DISK, Disk
from .greens import AnnulusDomain
from .policy import DomainError, PrecisionError, SingularityError

PI = math.pi
N_CONTOUR = 256
RTOL, ATOL = 1e-10, 1e-12
NEWTON_H = 1e-4
CRIT_GUARD = 1e-4


# --------------------------------------------------------------------------
# domains and fields


def _distance(z, dom):
    if isinstance(dom, Disk):
        return float(dom.distance(z))
    r = abs(z)
    return float(min(r - 1.0, dom.R - r))


def _tag(dom) -> str:
    return "disk" if isinstance(dom, Disk) else "annulus"


def _green_pair(dom, a):
    if isinstance(dom, Disk):
        return (lambda z: dom.G(z, a)), (lambda z: dom.G_z(z, a))
    return (lambda z: gr._g_sigma(np.asarray(z, dtype=complex), np.asarray(a, dtype=complex), dom)[0]), (
        lambda z: gr.greens_dz(z, a, dom)
    )


@dataclass(frozen=True)
class UField:
    """A harmonic function by its value and complex derivative du/dz."""

    value: Callable
    dz: Callable
    contains: Callable
    name: str = "u"
    pole: complex | None = None
    critical: tuple = ()
    dzz: Callable | None = None

    def grad(self, z):
        return 2.0 * np.conj(self.dz(z))

    def second(self, z, h: float = NEWTON_H):
        if self.dzz is not None:
            return self.dzz(z)
        # du/dz is holomorphic, so a real-direction difference is the derivative
        return (self.dz(z + h) - self.dz(z - h)) / (2.0 * h)


def greens_field(dom, a: complex) -> UField:
    a = complex(a)
    if _distance(a, dom) <= 0.0:
        raise DomainError("pole must be interior")
    val, dz = _green_pair(dom, a)
    crit = ()
    dzz = None
    if isinstance(dom, Disk):
        dzz = lambda z: dom.G_zz(z, a)
    else:
        from .critical import critical_point

        crit = (critical_point(a, dom),)
    return UField(val, dz, lambda z: _distance(z, dom) > 0.0, f"G(.,{a})", a, crit, dzz)


def hydrodynamic_field(dom: AnnulusDomain, a: complex, gamma) -> UField:
    a = complex(a)
    val = lambda z: gr.hydrodynamic_greens(z, a, dom, gamma)
    dz = lambda z: gr.hydrodynamic_dz(z, a, dom, gamma)
    return UField(val, dz, lambda z: _distance(z, dom) > 0.0, f"G_gamma(.,{a})", a)


def map_field(eps: float = 0.1) -> UField:
    """u = -log|w(z)| for the inverse of f(w) = w + eps w^2; the level line
    u = 0 is the image of the unit circle."""

    def winv(z):
        return (-1.0 + np.sqrt(1.0 + 4.0 * eps * np.asarray(z, dtype=complex))) / (2.0 * eps)

    def dz(z):
        w = winv(z)
        return -0.5 / (w * (1.0 + 2.0 * eps * w))

    return UField(lambda z: -np.log(np.abs(winv(z))), dz, lambda z: abs(1.0 + 4.0 * eps * z) > 0.05, "map", 0.0)


def study_curvature(w, eps: float = 0.1):
    """Curvature of f(|w| = 1) at f(w) for f(w) = w + eps w^2."""
    fp = 1.0 + 2.0 * eps * w
    fpp = 2.0 * eps
    return (np.real(w * fpp / fp) + 1.0) / np.abs(fp)


# --------------------------------------------------------------------------
# Taylor coefficients


@dataclass(frozen=True)
class TaylorCoeffs:
    c: np.ndarray
    center: complex
    domain: str
    radius: float

    def bound(self, d: float) -> np.ndarray:
        n = np.arange(1, len(self.c))
        return 1.0 / (n * d**n)


def taylor_coeffs(zeta: complex, dom=UNIT_DISK, N: int = 8, n_nodes: int = N_CONTOUR) -> TaylorCoeffs:
    """c_0..c_N with G = -log|z - zeta| + Re sum c_n (z - zeta)^n.

    n c_n is the contour integral of (2 dG/dz + 1/(z - zeta)) (z - zeta)^(-n)
    on a circle of radius min(d/2, 0.1); c_0 is the circle mean of the
    harmonic part G + log|z - zeta|, which is its centre value.
    """
    zeta = complex(zeta)
    if N > 12 or N < 0:
        raise DomainError("N must lie in 0..12")
    d = _distance(zeta, dom)
    if d <= 0.0:
        raise DomainError("zeta must be interior")
    rad = min(0.5 * d, 0.1)
    val, dz = _green_pair(dom, zeta)
    e = np.exp(2j * PI * np.arange(n_nodes) / n_nodes)
    zc = zeta + rad * e
    h = 2.0 * dz(zc) + 1.0 / (zc - zeta)
    c = np.empty(N + 1, dtype=complex)
    c[0] = np.mean(val(zc) + np.log(rad))
    for n in range(1, N + 1):
        c[n] = np.mean(h * (rad * e) ** (1 - n)) / n
    return TaylorCoeffs(c, zeta, _tag(dom), rad)


def poincare_density(z: complex, a: complex, disk: Disk = UNIT_DISK) -> float:
    """|dG/dz| / sinh G, the density of the curvature -4 metric."""
    z, a = complex(z), complex(a)
    if z == a:
        raise SingularityError("poincare_density needs z != a")
    return float(abs(disk.G_z(z, a)) / math.sinh(disk.G(z, a)))


@dataclass(frozen=True)
class DistanceBracket:
    lower: float
    upper: float
    c0_lower: float
    c0_upper: float

    def contains(self, d: float) -> bool:
        return self.lower <= d <= self.upper and self.c0_lower <= d <= self.c0_upper


def distance_bounds(z: complex, disk: Disk = UNIT_DISK) -> DistanceBracket:
    """sinh G/(4|G_z|) <= d <= sinh G/|G_z| and e^{c_0}/4 <= d <= e^{c_0}."""
    z = complex(z)
    a = 0.0 if z != 0 else 0.5 * disk.radius
    x = math.sinh(disk.G(z, a)) / abs(disk.G_z(z, a))
    c0 = taylor_coeffs(z, disk, 0).c[0].real
    return DistanceBracket(0.25 * x, x, 0.25 * math.exp(c0), math.exp(c0))


def _log_kernel_diag(x: float, n: int) -> float:
    # log of pi K^{(n,n)}(z,z) = log sum_j (j+n+1) ((j+n)!/j!)^2 x^j
    if x == 0.0:
        return math.log(n + 1.0) + 2.0 * gammaln(n + 1.0)
    jmax = 64
    while True:
        j = np.arange(jmax, dtype=float)
        lt = np.log(j + n + 1.0) + 2.0 * (gammaln(j + n + 1.0) - gammaln(j + 1.0)) + j * math.log(x)
        if lt[-1] < lt.max() - 45.0 and np.argmax(lt) < jmax - 1:
            return float(logsumexp(lt))
        jmax *= 2
        if jmax > 1 << 22:
            raise PrecisionError("diagonal derivative series does not settle")


def davis_sequence(z: complex, n_max: int, disk: Disk = UNIT_DISK) -> np.ndarray:
    """(e/n) K^{(n,n)}(z,z)^{1/2n} for n = 1..n_max with the disk Bergman kernel."""
    if disk.radius != 1.0:
        raise DomainError("closed-form derivatives are for the unit disk")
    if not 1 <= n_max <= 30:
        raise DomainError("n_max must lie in 1..30 (the derivatives overflow beyond)")
    x = abs(z) ** 2
    if x >= 1.0:
        raise DomainError("z must be interior")
    out = np.empty(n_max)
    for n in range(1, n_max + 1):
        lk = _log_kernel_diag(x, n) - math.log(PI)
        out[n - 1] = math.e / n * math.exp(lk / (2.0 * n))
    return out


def davis_distance(z: complex, disk: Disk = UNIT_DISK, n_max: int = 25) -> float:
    """n_max-term approximant of 1/d(z)."""
    return float(davis_sequence(z, n_max, disk)[-1])


# --------------------------------------------------------------------------
# level lines


@dataclass
class TraceRecord:
    t: np.ndarray
    z: np.ndarray
    u_drift: float
    newton_residual: float
    closed: bool = False
    period: float | None = None
    closure_error: float | None = None
    truncated: bool = False
    path_length: float = 0.0
    sol: object = field(default=None, repr=False)
    field: UField | None = field(default=None, repr=False)

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.z.tolist()))

    def at(self, t):
        y = self.sol.sol(t)
        return y[0] + 1j * y[1]


def _velocity(ufield: UField, z: complex) -> complex:
    # dz/dt = -2i du/dconj(z) = -2i conj(du/dz)
    return -2j * np.conj(ufield.dz(z))


def _winding_events(z0, centres):
    evs = []
    for k in range(len(centres)):
        for sgn in (1.0, -1.0):
            def ev(t, y, k=k, sgn=sgn):
                return y[2 + k] - sgn * 2.0 * PI

            ev.terminal = True
            ev.direction = sgn
            evs.append(ev)
    return evs


def level_line_trace(
    ufield: UField,
    z0: complex,
    t_end: float = 50.0,
    tol: float = 1e-8,
    close_loop: bool = True,
    n_samples: int = 512,
    newton_samples: int = 64,
) -> TraceRecord:
    """Integrate dz/dt = -2i du/dconj(z) from z0 (RK45, rtol 1e-10, atol 1e-12).

    The winding angle about the pole and about the origin is carried in
    the state; a full turn of either ends the trace as a closed loop.
    Coming within 1e-4 of a known critical point truncates the trace.
    """
    z0 = complex(z0)
    if not ufield.contains(z0):
        raise DomainError("z0 must be interior")
    g0 = abs(ufield.grad(z0))
    if g0 <= 1e-8:
        raise SingularityError("gradient vanishes at z0")
    centres = [c for c in (ufield.pole, 0.0) if c is not None and c != z0]
    if not close_loop:
        centres = []

    def rhs(t, y):
        z = y[0] + 1j * y[1]
        v = _velocity(ufield, z)
        out = [v.real, v.imag]
        for c in centres:
            out.append((v / (z - c)).imag)
        return out

    events = _winding_events(z0, centres) if close_loop else []
    for c in ufield.critical:
        def near(t, y, c=c):
            return abs(y[0] + 1j * y[1] - c) - CRIT_GUARD

        near.terminal = True
        events.append(near)

    y0 = [z0.real, z0.imag] + [0.0] * len(centres)
    sol = solve_ivp(rhs, (0.0, t_end), y0, method="RK45", rtol=RTOL, atol=ATOL, dense_output=True, events=events)
    T = float(sol.t[-1])
    closed = False
    truncated = False
    n_wind = 2 * len(centres)
    for k, te in enumerate(sol.t_events):
        if len(te):
            if k < n_wind:
                closed = True
            else:
                truncated = True
    t = np.linspace(0.0, T, n_samples)
    t = np.union1d(t, sol.t)
    y = sol.sol(t)
    z = y[0] + 1j * y[1]
    u = np.asarray(ufield.value(z), dtype=float)
    u0 = float(ufield.value(z0))
    drift = float(np.max(np.abs(u - u0)))
    speed = np.abs(ufield.grad(z))
    length = float(trapezoid(speed, t))
    rec = TraceRecord(t, z, drift, 0.0, closed, T if closed else None, None, truncated, length, sol, ufield)
    if closed:
        rec.closure_error = float(abs(z[-1] - z0))
    rec.newton_residual = newton_residual(rec, newton_samples)
    return rec


def newton_residual(rec: TraceRecord, n: int = 64, h: float = NEWTON_H) -> float:
    """max |z'' + 2 dV/dconj(z)| along the trace, V = -|grad u|^2 / 2.

    z'' is a central difference of the velocity along the dense output and
    dV/dconj(z) = (V_x + i V_y)/2 a central difference of V; both with
    euclidean step h.
    """
    f = rec.field
    T = rec.t[-1]
    if n <= 0 or T <= 4.0 * h:
        return 0.0
    ts = np.linspace(2.0 * h, T - 2.0 * h, n)
    V = lambda z: -0.5 * np.abs(f.grad(z)) ** 2
    worst = 0.0
    for t in ts:
        zc = rec.at(t)
        # time step chosen so the points move a euclidean distance h
        ht = min(h / abs(_velocity(f, zc)), t, T - t)
        zp, zm = rec.at(t + ht), rec.at(t - ht)
        acc = (_velocity(f, zp) - _velocity(f, zm)) / (2.0 * ht)
        dV = 0.5 * ((V(zc + h) - V(zc - h)) / (2.0 * h) + 1j * (V(zc + 1j * h) - V(zc - 1j * h)) / (2.0 * h))
        worst = max(worst, abs(acc + 2.0 * dV))
    return float(worst)


def level_point(ufield: UField, level: float, a: complex, direction: complex, r_max: float) -> complex:
    """Point a + s direction (0 < s < r_max) with u = level, by bracketing."""
    from scipy.optimize import brentq

    d = direction / abs(direction)
    fn = lambda s: float(ufield.value(a + s * d)) - level
    lo, hi = 1e-9 * r_max, r_max
    s = brentq(fn, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)
    return a + s * d


# --------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class GeodesicCheck:
    level_length: float
    perturbed_length: float
    expected: float
    delta_ustar: float

    @property
    def equality_error(self) -> float:
        return abs(self.level_length - self.expected)

    @property
    def margin(self) -> float:
        return self.perturbed_length - self.level_length


def _gl(a, b, n=32, panels=16):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = np.linspace(a, b, panels + 1)
    t = (0.5 * (edges[1:, None] - edges[:-1, None]) * x + 0.5 * (edges[1:, None] + edges[:-1, None])).ravel()
    wt = (0.5 * (edges[1:, None] - edges[:-1, None]) * w).ravel()
    return t, wt


def _phi(kind: str):
    if kind == "one":
        return (lambda s: np.ones_like(s)), (lambda s: s)
    if kind == "inv_ustar":
        return (lambda s: 1.0 / s), (lambda s: np.log(s))
    raise DomainError("phi must be 'one' or 'inv_ustar'")


def geodesic_length_check(
    trace: TraceRecord,
    ufield: UField | None = None,
    phi: str = "one",
    arc: tuple = (0.0, 0.25),
    eps: float = 0.05,
    s0: float = 1.0,
    n_path: int = 4001,
) -> GeodesicCheck:
    """Weighted length of a trace arc versus a bumped path with the same ends.

    With s = -u* + const (the conjugate of -u, increasing along the flow,
    s = s0 at the start of the arc) the metric is phi(s)|grad u||dz|. Along the
    level line |dz| = |grad u| dt, so the level length is int phi(s)|grad u|^2 dt,
    which must equal Phi(s1) - Phi(s0). The change of u* is measured
    independently as Im int 2 du/dz dz on the chord between the endpoints.
    The bumped path moves the arc by eps sin^2(pi sigma) along the unit normal.
    """
    f = ufield if ufield is not None else trace.field
    T = trace.period if trace.period is not None else trace.t[-1]
    ta, tb = arc[0] * T, arc[1] * T
    wfun, Phi = _phi(phi)

    t, wt = _gl(ta, tb)
    za, zb = trace.at(ta), trace.at(tb)
    # chord quadrature for the conjugate: d(u + i u*) = 2 u_z dz
    x, wx = np.polynomial.legendre.leggauss(64)
    zc = za + 0.5 * (x + 1.0) * (zb - za)
    du_star = float(np.sum(0.5 * wx * (2.0 * f.dz(zc) * (zb - za))).imag)
    # s increases along the flow
    ds_total = -du_star
    if not ds_total > 0.0:
        raise DomainError("endpoints must have distinct conjugate values")
    # s along the level arc by cumulative GL on a fine grid
    tt = np.linspace(ta, tb, n_path)
    g2 = np.abs(f.grad(trace.at(tt))) ** 2
    s_cum = s0 + np.concatenate(([0.0], np.cumsum(0.5 * (g2[1:] + g2[:-1]) * np.diff(tt))))
    # level length: GL in t with s from the ODE ds/dt = |grad u|^2
    if phi == "one":
        level = float(np.sum(wt * np.abs(f.grad(trace.at(t))) ** 2))
    else:
        sfun = lambda tq: np.interp(tq, tt, s_cum)
        level = float(np.sum(wt * wfun(sfun(t)) * np.abs(f.grad(trace.at(t))) ** 2))
    expected = float(Phi(s0 + ds_total) - Phi(s0))

    sig = np.linspace(0.0, 1.0, n_path)
    zl = trace.at(ta + sig * (tb - ta))
    g = f.grad(zl)
    nrm = g / np.abs(g)
    zp = zl + eps * np.sin(PI * sig) ** 2 * nrm
    if not all(f.contains(p) for p in zp):
        raise DomainError("comparison path leaves the domain")
    dzp = np.gradient(zp, sig, edge_order=2)
    uz = f.dz(zp)
    ds = -(2.0 * uz * dzp).imag
    s_p = s0 + np.concatenate(([0.0], np.cumsum(0.5 * (ds[1:] + ds[:-1]) * np.diff(sig))))
    integrand = wfun(s_p) * np.abs(f.grad(zp)) * np.abs(dzp)
    pert = float(np.sum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(sig)))
    return GeodesicCheck(level, pert, expected, du_star)


# --------------------------------------------------------------------------
# curvature


def level_line_curvature(z: complex, ufield: UField, h: float = 1e-5) -> float:
    """kappa = -d/dn log|grad u| with n the outward normal of {u >= u(z)},
    i.e. n = -grad u/|grad u|; circles about the pole of G get +1/r."""
    z = complex(z)
    g = ufield.grad(z)
    if abs(g) <= 1e-8:
        raise SingularityError("level line is singular at a critical point")
    n = -g / abs(g)
    lg = lambda p: math.log(abs(ufield.grad(p)))
    return -(lg(z + h * n) - lg(z - h * n)) / (2.0 * h)


def curvature_circumcircle(z: complex, ufield: UField, ds: float = 1e-3) -> float:
    """Signed curvature of the traced level line from three points at
    euclidean spacing about ds, positive when the superlevel set is convex."""
    z = complex(z)
    speed = abs(ufield.grad(z))
    dt = ds / speed

    def flow(t1):
        sol = solve_ivp(lambda t, y: [(_velocity(ufield, y[0] + 1j * y[1])).real, (_velocity(ufield, y[0] + 1j * y[1])).imag],
                        (0.0, t1), [z.real, z.imag], rtol=1e-12, atol=1e-14)
        return sol.y[0, -1] + 1j * sol.y[1, -1]

    p, q = flow(dt), flow(-dt)
    a, b, c = q, z, p
    d = 2.0 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    ux = (abs(a) ** 2 * (b.imag - c.imag) + abs(b) ** 2 * (c.imag - a.imag) + abs(c) ** 2 * (a.imag - b.imag)) / d
    uy = (abs(a) ** 2 * (c.real - b.real) + abs(b) ** 2 * (a.real - c.real) + abs(c) ** 2 * (b.real - a.real)) / d
    centre = ux + 1j * uy
    k = 1.0 / abs(centre - z)
    g = ufield.grad(z)
    return k if (np.conj(centre - z) * g).real > 0.0 else -k


def poincare_connection(z: complex, disk: Disk = UNIT_DISK) -> complex:
    """r = -2 c_1, the affine connection of the metric e^{-c_0}|dz|."""
    return complex(-2.0 * taylor_coeffs(z, disk, 1).c[1])


def geodesic_curvature(z: complex, direction: complex, disk: Disk = UNIT_DISK) -> float:
    """Curvature -Im(r dz/ds) of the Poincare geodesic through z in the
    given direction (positive when turning left)."""
    e = complex(direction) / abs(direction)
    return float(-(poincare_connection(z, disk) * e).imag)


# --------------------------------------------------------------------------
# Kubo average and Levy bracket


def _kubo_param(a, c, weights, points, disk, n):
    # level line {|(z - a)/(1 - conj(a) z)| = e^{-c}} as a Moebius image of a circle
    th = 2.0 * PI * np.arange(n) / n
    w = math.exp(-c) * np.exp(1j * th)
    z = (w + a) / (1.0 + np.conj(a) * w)
    dzdth = 1j * w * (1.0 - abs(a) ** 2) / (1.0 + np.conj(a) * w) ** 2
    pot = sum(m * disk.G(z, p) for p, m in zip(points, weights))
    dens = 1.0 / (1.0 - np.abs(z) ** 2)
    return float(np.sum(pot * dens * np.abs(dzdth)) * 2.0 * PI / n)


def _kubo_trace(a, c, weights, points, disk):
    f = greens_field(disk, a)
    d = 1.0 if a == 0 else a / abs(a)
    z0 = level_point(f, c, a, d, disk.radius - abs(a) - 1e-12)
    rec = level_line_trace(f, z0, t_end=200.0, newton_samples=0)
    if not rec.closed:
        raise PrecisionError("level line did not close")
    t, wt = _gl(0.0, rec.period, 16, 64)
    z = rec.at(t)
    pot = sum(m * disk.G(z, p) for p, m in zip(points, weights))
    dens = 1.0 / (1.0 - np.abs(z) ** 2)
    # |dz| = |grad u| dt along the flow
    return float(np.sum(wt * pot * dens * np.abs(f.grad(z))))


def kubo_average(a: complex, c: float, mu, disk: Disk = UNIT_DISK, method: str = "trace", n: int = 512) -> float:
    """Poincare-length integral of G^mu over the level line {G(., a) = c}.

    mu is a list of (point, mass). The theorem value is (pi c/sinh c) mu(K).
    """
    a = complex(a)
    if disk.radius != 1.0:
        raise DomainError("Kubo average is implemented on the unit disk")
    if not c > 0.0:
        raise DomainError("c must be positive")
    points = [complex(p) for p, _ in mu]
    weights = [float(m) for _, m in mu]
    if any(m <= 0.0 for m in weights):
        raise DomainError("masses must be positive")
    for p in points:
        if p != a and not disk.G(p, a) > c:
            raise DomainError(f"mass point {p} lies outside K")
    if method == "param":
        return _kubo_param(a, c, weights, points, disk, n)
    if method == "trace":
        return _kubo_trace(a, c, weights, points, disk)
    raise DomainError("method must be 'trace' or 'param'")


def kubo_expected(c: float, total_mass: float) -> float:
    return PI * c / math.sinh(c) * total_mass


@dataclass(frozen=True)
class LevyReport:
    z: complex
    z_reflected: complex
    d: float
    lower: float
    upper: float
    witness_min: float
    witness_max: float
    boundary_min: float
    boundary_max: float

    @property
    def strict_ok(self) -> bool:
        return self.lower - 1e-12 <= self.witness_min and self.witness_max < self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


def levy_bounds(z: complex, disk: Disk = UNIT_DISK, n: int = 128, offset: float = 1e-2) -> LevyReport:
    """Levy's bracket for log|(z' - zeta)/(z - zeta)| - G(z, zeta) on the disk.

    The largest interior tangent disk at the nearest boundary point is the
    disk itself (R = 1) and the exterior one has R' = infinity, whose limit
    lower bound is 0. Witness values are taken at n samples zeta on
    |zeta| = 1 - offset d (where the inequalities are strict) and also on
    |zeta| = 1 itself (G = 0 there; the bounds can be attained).
    """
    z = complex(z)
    if disk.radius != 1.0:
        raise DomainError("Levy bracket is implemented on the unit disk")
    d = 1.0 - abs(z)
    if not 0.0 < d < 0.5:
        raise DomainError("need 0 < d(z) < 1/2")
    zr = z + 2.0 * d * z / abs(z)
    lower = 0.0
    upper = math.log1p(2.0 * d / (2.0 - d))
    e = np.exp(2j * PI * np.arange(n) / n)
    zi = (1.0 - offset * d) * e
    wi = np.log(np.abs((zr - zi) / (z - zi))) - disk.G(z, zi)
    wb = np.log(np.abs((zr - e) / (z - e)))
    return LevyReport(z, zr, d, lower, upper, float(wi.min()), float(wi.max()), float(wb.min()), float(wb.max()))
