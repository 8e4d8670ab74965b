"""Weierstrass and Jacobi functions for the period lattice of an annulus.

The annulus A(1, R) is covered by the strip 0 < Re t < log R through
z = exp(t). Its Schottky double is the torus C / (2 log R Z + 2 pi i Z), so
every elliptic object here lives on the rectangular lattice with half-periods

    omega1 = log R,   omega2 = i pi,   tau = omega2 / omega1.

Everything is evaluated from trigonometric q-series of the theta functions.
Arguments are first reduced into the centred period cell and the exact
quasi-periodicity factors are reapplied afterwards. When log R > pi the roles
of the two half-periods are swapped internally, because the nome of the other
basis is then the smaller one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .policy import DEFAULT_POLICY, DomainError, PoleError, PrecisionError, TruncationPolicy

PI = math.pi
_POLE_TOL = 1e-10
_SERIES_TOL = 1e-18


def _as_array(x):
    arr = np.asarray(x, dtype=np.complex128)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    if scalar:
        return complex(arr.reshape(-1)[0])
    return arr


def _lambert(lq, k, nmax):
    # sum n^k q^n / (1 - q^n), q = exp(lq) real in (0, 1)
    n = np.arange(1, nmax + 1, dtype=float)
    qn = np.exp(n * lq)
    return float(np.sum(n**k * qn / (1.0 - qn)))


def _terms_needed(log_ratio: float, cap: int, power: int = 2) -> int:
    # smallest n with n^power * exp(n * log_ratio) below the series tolerance
    if log_ratio >= 0.0:
        raise PrecisionError("q-series does not converge for this lattice")
    n = 1
    while n < cap and power * math.log(n) + n * log_ratio > math.log(_SERIES_TOL):
        n += 1
    return max(n, 2)


@dataclass(frozen=True)
class Lattice:
    """Period lattice of the doubled annulus A(1, R).

    Attributes follow the usual Weierstrass conventions: ``eta_j = zeta(omega_j)``
    and ``wp'^2 = 4 wp^3 - g2 wp - g3``.
    """

    R: float
    omega1: float
    omega2: complex
    tau: complex
    q: complex
    eta1: complex
    eta2: complex
    g2: complex
    g3: complex
    policy: TruncationPolicy = field(default=DEFAULT_POLICY, repr=False, compare=False)
    # working frame: half-period w1 used by the trigonometric series, log of
    # the squared Jacobi nome of that frame, and zeta(w1)
    _w1: complex = field(default=0j, repr=False)
    _lq2: float = field(default=0.0, repr=False)
    _eta_f: complex = field(default=0j, repr=False)
    _swapped: bool = field(default=False, repr=False)
    _nterms: int = field(default=8, repr=False)

    @property
    def legendre_residual(self) -> float:
        return abs(self.eta1 * self.omega2 - self.eta2 * self.omega1 - 0.5j * PI)

    @property
    def e_roots(self) -> tuple[float, float, float]:
        """e1 = wp(omega1), e2 = wp(omega2), e3 = wp(omega1 + omega2)."""
        vals = wp(np.array([self.omega1, self.omega2, self.omega1 + self.omega2]), self)
        return tuple(float(v.real) for v in vals)


def make_lattice(R: float, policy: TruncationPolicy = DEFAULT_POLICY) -> Lattice:
    """Build the lattice of A(1, R).

    >>> lat = make_lattice(math.e)
    >>> lat.omega1, lat.tau
    (1.0, 3.141592653589793j)
    """
    R = float(R)
    if not R > 1.0 or not math.isfinite(R):
        raise DomainError(f"annulus needs R > 1, got {R!r}")
    L = math.log(R)
    if L == 0.0:
        raise PrecisionError("R is indistinguishable from 1 in binary64")
    omega1 = L
    omega2 = 1j * PI
    tau = omega2 / omega1
    # log of the nome q = exp(2 pi i tau) = exp(-2 pi^2 / L); may underflow
    log_q = -2.0 * PI * PI / L
    q = complex(math.exp(log_q)) if log_q > -745.0 else 0j

    swapped = L > PI
    if swapped:
        w1 = omega2
        lq2 = -2.0 * L
        max_im_v = L / 2.0
    else:
        w1 = complex(omega1)
        lq2 = log_q
        max_im_v = PI * PI / (2.0 * L)
    if L < 1e-4:
        # q underflows and the quadratic sigma factor eta1 t^2 / (2 omega1)
        # grows like 1/L^2, which leaves too few significant digits
        raise PrecisionError(f"R = {R!r} is too close to 1 for binary64 evaluation")

    cap = policy.series_terms
    nterms = _terms_needed(lq2 + 2.0 * max_im_v, cap)
    nl = _terms_needed(lq2, cap, power=6)

    e2 = 1.0 - 24.0 * _lambert(lq2, 1, nl)
    e4 = 1.0 + 240.0 * _lambert(lq2, 3, nl)
    e6 = 1.0 - 504.0 * _lambert(lq2, 5, nl)
    # eta from the logarithmic derivative of theta1: -theta1'''(0)/theta1'(0) = E2
    eta_f = PI * PI * e2 / (12.0 * w1)
    if swapped:
        eta2 = complex(eta_f)
        eta1 = (eta2 * omega1 + 0.5j * PI) / omega2
    else:
        eta1 = complex(eta_f)
        eta2 = (eta1 * omega2 - 0.5j * PI) / omega1
    g2 = PI**4 * e4 / (12.0 * w1**4)
    g3 = PI**6 * e6 / (216.0 * w1**6)

    # the lattice is real-rectangular: eta1, g2, g3 real, eta2 imaginary
    return Lattice(
        R=R,
        omega1=omega1,
        omega2=omega2,
        tau=tau,
        q=q,
        eta1=complex(eta1.real, 0.0),
        eta2=complex(0.0, eta2.imag),
        g2=complex(g2.real, 0.0),
        g3=complex(g3.real, 0.0),
        policy=policy,
        _w1=w1,
        _lq2=lq2,
        _eta_f=complex(eta_f),
        _swapped=swapped,
        _nterms=nterms,
    )


# --------------------------------------------------------------------------
# Weierstrass functions


def _reduce(t, lat: Lattice):
    m = np.round(t.real / (2.0 * lat.omega1))
    n = np.round(t.imag / (2.0 * PI))
    z0 = t - 2.0 * m * lat.omega1 - 2j * PI * n
    return z0, m, n


def _trig(v):
    # E = exp(2iv) or exp(-2iv), whichever has modulus <= 1
    up = v.imag >= 0.0
    sgn = np.where(up, 1.0, -1.0)
    E = np.exp(2j * sgn * v)
    # v = 0 only reaches here for sigma, whose log is -inf there
    with np.errstate(divide="ignore", invalid="ignore"):
        cot = sgn * 1j * (E + 1.0) / (E - 1.0)
        csc2 = -4.0 * E / (E - 1.0) ** 2
        logsin = np.where(up, -1j * v, 1j * v) + np.log(1.0 - E) + np.where(up, math.log(0.5) + 0.5j * PI, math.log(0.5) - 0.5j * PI)
    return cot, csc2, logsin


def _core(t, lat: Lattice, pole_check: bool):
    z0, m, n = _reduce(t, lat)
    if pole_check:
        bad = np.abs(z0) < _POLE_TOL
        if np.any(bad):
            pt = complex(t.reshape(-1)[np.argmax(bad.reshape(-1))])
            lp = pt - complex(z0.reshape(-1)[np.argmax(bad.reshape(-1))])
            raise PoleError(f"argument {pt} is at the lattice point {lp}", point=lp)
    k = PI / (2.0 * lat._w1)
    v = k * z0
    flat = np.ascontiguousarray(v.reshape(-1))
    s_wp, s_zeta, s_dwp, s_log = _accel.weierstrass_sums(flat, complex(lat._lq2), lat._nterms)
    shape = v.shape
    return z0, m, n, k, v, s_wp.reshape(shape), s_zeta.reshape(shape), s_dwp.reshape(shape), s_log.reshape(shape)


def wp(t, lat: Lattice):
    """Weierstrass wp on the annulus lattice."""
    t, sc = _as_array(t)
    z0, m, n, k, v, s_wp, _, _, _ = _core(t, lat, True)
    cot, csc2, _ = _trig(v)
    val = -lat._eta_f / lat._w1 + k * k * (csc2 - 8.0 * s_wp)
    return _ret(val, sc)


def wp_plus_eta(t, lat: Lattice):
    """wp(t) + eta1 / omega1 without forming the two large cancelling terms."""
    t, sc = _as_array(t)
    z0, m, n, k, v, s_wp, _, _, _ = _core(t, lat, True)
    _, csc2, _ = _trig(v)
    # eta1/omega1 - eta_f/w1 is 0 in the normal frame and, by Legendre,
    # 1/(2 omega1) in the swapped one
    shift = 0.5 / lat.omega1 if lat._swapped else 0.0
    val = k * k * (csc2 - 8.0 * s_wp) + shift
    return _ret(val, sc)


def wp_prime(t, lat: Lattice):
    t, sc = _as_array(t)
    z0, m, n, k, v, _, _, s_dwp, _ = _core(t, lat, True)
    cot, csc2, _ = _trig(v)
    val = k**3 * (-2.0 * csc2 * cot + 16.0 * s_dwp)
    return _ret(val, sc)


def w_zeta(t, lat: Lattice):
    """Weierstrass zeta, with zeta(t + 2 omega_j) = zeta(t) + 2 eta_j applied exactly."""
    t, sc = _as_array(t)
    z0, m, n, k, v, _, s_zeta, _, _ = _core(t, lat, True)
    cot, _, _ = _trig(v)
    val = lat._eta_f * z0 / lat._w1 + k * (cot + 4.0 * s_zeta)
    val = val + 2.0 * m * lat.eta1 + 2.0 * n * lat.eta2
    return _ret(val, sc)


def log_sigma(t, lat: Lattice):
    """A logarithm of sigma(t); only exp() and the real part are meaningful."""
    t, sc = _as_array(t)
    z0, m, n, k, v, _, _, _, s_log = _core(t, lat, False)
    _, _, logsin = _trig(v)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.log(2.0 * lat._w1 / PI) + lat._eta_f * z0 * z0 / (2.0 * lat._w1) + logsin + s_log
    shift = (2.0 * m * lat.eta1 + 2.0 * n * lat.eta2) * (z0 + m * lat.omega1 + n * lat.omega2)
    val = val + shift + 1j * PI * ((m + n + m * n) % 2)
    val = np.where(np.abs(z0) == 0.0, -np.inf + 0j, val)
    return _ret(val, sc)


def w_sigma(t, lat: Lattice):
    """Weierstrass sigma. May over/underflow for extreme lattices; use log_sigma then."""
    ls = log_sigma(t, lat)
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(ls) if not isinstance(ls, complex) else complex(np.exp(ls))


# --------------------------------------------------------------------------
# theta functions


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0.0:
        raise DomainError(f"tau must lie in the upper half-plane, got {tau}")
    return tau


def _theta_terms(T: float, cap: int = 400) -> int:
    # after reduction |Im z| <= T/2, so the n-th term is about exp(-pi T (n^2 - 1/4))
    return int(min(cap, max(4, math.ceil(math.sqrt(45.0 / (PI * T))) + 2)))


def _reduce_theta(z, tau):
    k = np.round(z.imag / tau.imag)
    z1 = z - k * tau
    j = np.round(z1.real)
    z0 = z1 - j
    # theta1(z0 + j + k tau) = (-1)^(j+k) exp(-i pi k^2 tau - 2 pi i k z0) theta1(z0)
    log_fac = -1j * PI * k * k * tau - 2j * PI * k * z0 + 1j * PI * ((j + k) % 2)
    return z0, log_fac


def _modular_swap(z, tau):
    # theta1(z | tau) = -i (-i tau)^(-1/2) exp(i pi tau' z^2) theta1(z tau' | tau'),  tau' = -1/tau
    taup = -1.0 / tau
    pref = -1j * (-1j * tau) ** -0.5 * np.exp(1j * PI * taup * z * z)
    return z * taup, taup, pref


def theta1(z, tau: complex, method: str = "sum", nterms: int | None = None):
    """Odd Jacobi theta function with the nome q = exp(2 pi i tau).

    ``method`` is "sum" (the Fourier series) or "product" (Jacobi triple
    product). theta1(z + 1) = -theta1(z) and theta1'(0) = -2 pi eta(tau)^3.
    """
    tau = _check_tau(tau)
    z, sc = _as_array(z)
    pref = 1.0
    if abs(np.exp(2j * PI * tau)) > 0.5:
        z, tau, pref = _modular_swap(z, tau)
    z0, log_fac = _reduce_theta(z, tau)
    N = nterms or _theta_terms(tau.imag)
    flat = np.ascontiguousarray(z0.reshape(-1))
    if method == "sum":
        core = _accel.theta1_sum(flat, tau, N)
    elif method == "product":
        core = _accel.theta1_prod(flat, tau, max(N * N, 8))
    else:
        raise ValueError(f"unknown method {method!r}")
    val = pref * np.exp(log_fac) * core.reshape(z0.shape)
    return _ret(val, sc)


def log_abs_theta1(z, tau: complex):
    """log |theta1(z; tau)| without overflow, for Green's function work."""
    tau = _check_tau(tau)
    z, sc = _as_array(z)
    extra = np.zeros(z.shape)
    if abs(np.exp(2j * PI * tau)) > 0.5:
        z, tau, pref = _modular_swap(z, tau)
        extra = np.log(np.abs(pref))
    z0, log_fac = _reduce_theta(z, tau)
    flat = np.ascontiguousarray(z0.reshape(-1))
    core = _accel.theta1_sum(flat, tau, _theta_terms(tau.imag)).reshape(z0.shape)
    with np.errstate(divide="ignore"):
        val = np.log(np.abs(core)) + log_fac.real + extra
    return float(val) if sc else val


def theta_char(delta: float, epsilon: float, w, tau: complex, nterms: int | None = None):
    """Genus-one theta function with characteristic [delta; epsilon].

    sum over m of exp(i pi (m + delta)^2 tau + 2 pi i (m + delta)(w + epsilon)).
    """
    tau = _check_tau(tau)
    w, sc = _as_array(w)
    N = nterms or (_theta_terms(tau.imag) + int(abs(w).max() / tau.imag if w.size else 0) + 2)
    m = np.arange(-N, N + 1) + float(delta)
    expo = 1j * PI * m * m * tau + 2j * PI * np.multiply.outer(w + float(epsilon), m)
    val = np.exp(expo).sum(axis=-1)
    return _ret(val, sc)


def dedekind_eta(tau: complex, nterms: int | None = None) -> complex:
    tau = _check_tau(tau)
    q = np.exp(2j * PI * tau)
    if abs(q) >= 1.0 - 1e-6:
        raise PrecisionError("nome too close to the unit circle")
    N = nterms or max(8, int(math.ceil(45.0 / (2.0 * PI * tau.imag))) + 2)
    n = np.arange(1, N + 1)
    return complex(np.exp(2j * PI * tau / 24.0) * np.prod(1.0 - q**n))


# --------------------------------------------------------------------------
# prime form


def log_prime_form(z, a, dom):
    """log E(z, a) with E(z, a) = sigma(log(z/a)) exp(-eta1 log(z/a)^2 / (2 log R)).

    Principal logarithms fix the scalar representative. Points of the
    reflected copy A(1/R, 1) of the double are accepted, so that a can be
    replaced by its mirror image 1/conj(a).
    """
    lat = dom.lattice
    z, sz = _as_array(z)
    a, sa = _as_array(a)
    if np.any(z == 0) or np.any(a == 0):
        raise DomainError("the prime form needs z != 0 and a != 0")
    R = lat.R
    for w in (z, a):
        r = np.abs(w)
        if np.any(r < 1.0 / R * (1 - 1e-12)) or np.any(r > R * (1 + 1e-12)):
            raise DomainError("point outside the doubled annulus 1/R <= |z| <= R")
    w = np.log(z / a)
    val = log_sigma(w, lat) - lat.eta1 * w * w / (2.0 * lat.omega1)
    return _ret(np.asarray(val), sz and sa)


def prime_form(z, a, dom):
    lv = log_prime_form(z, a, dom)
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(lv)
    return complex(out) if isinstance(lv, complex) else out
