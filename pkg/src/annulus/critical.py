"""Critical points of G, zeros of the Bergman kernel and the radius rho(R).

On the covering, z = exp(t) with t = f + i pi is on the negative real ray
through the pole. With u = log|a|, the critical point of G(., |a|) is
z = -exp(f), where f solves

    F(f) = zeta(f + i pi - u) - zeta(f + i pi + u) + 2 eta1 u / log R = 0,    0 < f < log R.

The Bergman kernel K(., a) vanishes where wp(log(z conj a)) = -eta1 / log R.
On the segment x + i pi, 0 < x < log R, wp runs monotonically from e2 down to
e3, so that equation has a single root s there and rho(R) = exp(Re s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

from .elliptic import w_zeta, wp, wp_plus_eta, wp_prime
from .greens import AnnulusDomain, annulus, bergman_K, greens_dz
from .policy import DomainError, PrecisionError, SolverError

PI = math.pi
_BAND = 1e-12
MAX_ITER = 80


@dataclass(frozen=True)
class RhoResult:
    rho: float
    s: complex
    residual: float
    method: str
    agrees_with_wp_root: bool | None = None


@dataclass(frozen=True)
class GridPoint:
    a: complex
    z_G: complex
    z_K: complex | None
    class_G: str
    class_K: str | None
    residual_G: float
    residual_K: float | None


@dataclass(frozen=True)
class DichotomyReport:
    R: float
    rho: float
    grid: list = field(repr=False)
    violations: list
    radial_gaps: list
    endpoint_inner: float
    endpoint_outer: float

    @property
    def ok(self) -> bool:
        return not self.violations


# --------------------------------------------------------------------------
# safeguarded scalar root finding


def safeguarded_root(F, dF, lo: float, hi: float, width: float = 1e-3, ftol: float = 0.0, max_iter: int = MAX_ITER):
    """Bisect [lo, hi] to ``width``, then Newton; steps leaving the bracket bisect.

    Returns (root, trace). Raises SolverError when there is no sign change or
    when ``max_iter`` is exceeded.
    """
    trace = []
    flo, fhi = F(lo), F(hi)
    trace.append((lo, flo))
    trace.append((hi, fhi))
    if flo == 0.0:
        return lo, trace
    if fhi == 0.0:
        return hi, trace
    if np.sign(flo) == np.sign(fhi):
        raise SolverError(f"no sign change on [{lo}, {hi}]", trace)
    it = 0
    while hi - lo > width:
        it += 1
        mid = 0.5 * (lo + hi)
        fm = F(mid)
        trace.append((mid, fm))
        if fm == 0.0:
            return mid, trace
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        if it > max_iter:
            raise SolverError("bisection did not reach the Newton width", trace)
    x = 0.5 * (lo + hi)
    fx = F(x)
    trace.append((x, fx))
    if fx == 0.0:
        return x, trace
    if np.sign(fx) == np.sign(flo):
        lo, flo = x, fx
    else:
        hi, fhi = x, fx
    eps = 4.0 * np.finfo(float).eps
    while it < max_iter:
        it += 1
        d = dF(x)
        xn = x - fx / d if d != 0.0 else np.nan
        newton = bool(np.isfinite(xn) and lo < xn < hi)
        if not newton:
            xn = 0.5 * (lo + hi)
        fn = F(xn)
        trace.append((xn, fn))
        if fn == 0.0:
            return xn, trace
        if np.sign(fn) == np.sign(flo):
            lo, flo = xn, fn
        else:
            hi, fhi = xn, fn
        small_step = newton and abs(xn - x) <= eps * max(1.0, abs(xn))
        x, fx = xn, fn
        if small_step or abs(fn) <= ftol or hi - lo <= eps * max(1.0, abs(x)):
            return x, trace
    raise SolverError("Newton iteration did not converge", trace)


# --------------------------------------------------------------------------
# rho(R)


def _nome_terms(lat, p: float) -> int:
    if p == 0.0:
        return 1
    return max(2, lat._nterms)


def _rho_theta_function(dom: AnnulusDomain):
    """theta -> (wp(x + i pi) + eta1 / log R) / (k^2 p), theta = pi x / log R.

    Normal frame only. p = exp(-pi^2 / log R); the series is summed as is so
    nothing underflows or cancels for thin annuli. Returns (G, dG/dtheta).
    """
    lat = dom.lattice
    L = dom.L
    lp = -PI * PI / L
    p = math.exp(lp) if lp > -745.0 else 0.0
    N = _nome_terms(lat, p)
    n = np.arange(1, N + 1, dtype=float)
    with np.errstate(under="ignore"):
        pa = np.exp((n - 1.0) * lp)
        pb = np.exp((3.0 * n - 1.0) * lp)
        den = 1.0 - np.exp(2.0 * n * lp)

    def G(th):
        w = complex(math.cos(th), math.sin(th))
        lead = -4.0 * w / (1.0 - p * w) ** 2
        e = np.exp(1j * n * th)
        tail = -4.0 * np.sum(n * (pa * np.conj(e) + pb * e) / den)
        return float((lead + tail).real)

    def dG(th):
        w = complex(math.cos(th), math.sin(th))
        lead = -4.0j * w * (1.0 + p * w) / (1.0 - p * w) ** 3
        e = np.exp(1j * n * th)
        tail = -4.0 * np.sum(n * n * 1j * (-pa * np.conj(e) + pb * e) / den)
        return float((lead + tail).real)

    return G, dG, p


def _rho_function(dom: AnnulusDomain):
    """x -> wp(x + i pi) + eta1 / log R up to a positive factor, and its derivative."""
    lat = dom.lattice
    L = dom.L
    if lat._swapped:

        def F(x):
            return float(np.real(wp_plus_eta(complex(x, PI), lat)))

        def dF(x):
            return float(np.real(wp_prime(complex(x, PI), lat)))

        return F, dF

    G, dG, _ = _rho_theta_function(dom)

    def F(x):
        return G(PI * x / L)

    def dF(x):
        return dG(PI * x / L) * PI / L

    return F, dF


def log_rho_gap(dom: AnnulusDomain) -> float:
    """log(log sqrt(R) - log rho(R)), accurate even when the gap underflows.

    With theta = pi/2 - eps at the root, log eps = log 2p + O(p^2); the gap is
    eps log R / pi.
    """
    L = dom.L
    if dom.lattice._swapped:
        return math.log(0.5 * L - math.log(solve_rho(dom).rho))
    G, dG, p = _rho_theta_function(dom)
    lp = -PI * PI / L
    if lp < math.log(1e-7):
        # log eps = log 2p + O(p^2): below double precision here, while the
        # root of G near pi/2 loses digits to cancellation
        return math.log(2.0 * L / PI) + lp
    eps, _ = safeguarded_root(lambda e: -G(0.5 * PI - e), lambda e: dG(0.5 * PI - e), 0.0, 0.5 * PI)
    return math.log(eps * L / PI)


def _rho_residual(x: float, dom: AnnulusDomain) -> float:
    return float(abs(wp_plus_eta(complex(x, PI), dom.lattice)))


def solve_rho(dom: AnnulusDomain) -> RhoResult:
    """Root s = x + i pi of wp(s) = -eta1 / log R with 0 < x < log R."""
    F, dF = _rho_function(dom)
    x, _ = safeguarded_root(F, dF, 0.0, dom.L)
    s = complex(x, PI)
    return RhoResult(math.exp(x), s, _rho_residual(x, dom), "wp_root")


@lru_cache(maxsize=8)
def _tau_coeffs(N: int) -> np.ndarray:
    # Ramanujan tau(1..N) from q prod (1 - q^n)^24, exact integer arithmetic
    poly = [0] * N
    poly[0] = 1
    for n in range(1, N):
        for _ in range(24):
            for k in range(N - 1, n - 1, -1):
                poly[k] -= poly[k - n]
    out = np.zeros(N + 1)
    for k in range(N):
        out[k + 1] = float(poly[k])
    return out


@lru_cache(maxsize=8)
def _rho_series(N: int):
    n = np.arange(N + 1, dtype=float)
    phi56 = np.zeros(N + 1)
    phi23 = np.zeros(N + 1)
    for m in range(1, N + 1):
        k = np.arange(1, N // m + 1)
        phi56[m * k] += m**5 * k.astype(float) ** 6
        phi23[m * k] += m**2 * k.astype(float) ** 3
    # the q^1 terms of Phi56 and Delta cancel exactly; do it on the integers
    diff = phi56 - _tau_coeffs(N)
    diff[1] = 0.0
    return diff, phi23, n


def rho_integrand(y, dom: AnnulusDomain):
    """(Phi56 - Delta) / Phi23^(3/2) at t = i y, a real function of y."""
    y = np.asarray(y, dtype=float)
    lq = -2.0 * PI * y
    # pick N so that q^N N^12 is negligible at the smallest y
    ymin = float(np.min(y))
    N = 8
    while -2.0 * PI * ymin * N + 12.0 * math.log(N) > math.log(1e-18) and N < 400:
        N += 1
    diff, phi23, n = _rho_series(N)
    # factor out q^2 from the numerator and q from Phi23 to avoid underflow
    k = n[2:]
    num = np.exp(np.multiply.outer(lq, k - 2.0)) @ diff[2:]
    k1 = n[1:]
    den = np.exp(np.multiply.outer(lq, k1 - 1.0)) @ phi23[1:]
    val = num / den**1.5 * np.exp(0.5 * lq)
    return float(val) if val.ndim == 0 else val


PRINTED_CONSTANT = 3456.0 * math.sqrt(3.0) * PI / 5.0
# the value that makes the integral reproduce the wp root; it differs from
# the printed one by the factor -1728^(3/2)
CORRECTED_CONSTANT = -PI / 60.0


def rho_integral(dom: AnnulusDomain, constant: str = "corrected", check: bool = True) -> RhoResult:
    """s(R) from the Eichler integral along t = i y, y >= T = pi / log R.

    s = i pi + 3 log R / 2 + c log R int_tau^{i inf} (Phi56 - Delta) / Phi23^(3/2) (t - tau) dt
      = i pi + 3 log R / 2 - c log R int_T^inf I(y) (y - T) dy.

    ``constant="printed"`` uses c = 3456 sqrt(3) pi / 5; the default
    c = -pi / 60 is the normalization for which s solves wp(s) = -eta1/log R
    (checked against the second tau-derivative of the wp root). The real
    part is reduced to [0, log R) using evenness and 2 log R periodicity.
    """
    if constant == "printed":
        c = PRINTED_CONSTANT
    elif constant == "corrected":
        c = CORRECTED_CONSTANT
    else:
        raise ValueError("constant must be 'printed' or 'corrected'")
    L = dom.L
    T = PI / L
    # the integrand is O(exp(-pi y)); stop where it is below 1e-16 of its start
    i0 = abs(rho_integrand(T, dom))
    if i0 == 0.0 or not np.isfinite(i0):
        raise SolverError("integrand vanishes or overflows at the lower limit")
    Y = T + math.log(1e16) / PI + 2.0
    val, err = integrate.quad(lambda y: rho_integrand(y, dom) * (y - T), T, Y, epsabs=0.0, epsrel=1e-13, limit=200)
    if not np.isfinite(val) or err > 1e-10 * abs(val) + 1e-300:
        raise SolverError(f"quadrature did not converge (estimate {err:.3e})")
    x_raw = 1.5 * L - c * L * val
    x = math.fmod(x_raw, 2.0 * L)
    if x < 0.0:
        x += 2.0 * L
    if x >= L:
        x = 2.0 * L - x
    s = complex(x, PI)
    agrees = None
    if check:
        agrees = abs(math.exp(x) - solve_rho(dom).rho) <= 1e-6
    return RhoResult(math.exp(x), s, _rho_residual(x, dom), "integral", agrees)


@dataclass(frozen=True)
class NestedRho:
    """rho_n of the nested annuli and log(log sqrt(R) - log rho_n).

    The gaps shrink like exp(-pi^2 / gap) from one step to the next, so from
    the second step on rho_n equals sqrt(R) in binary64; the strict increase
    of rho_n is carried by the strictly decreasing ``log_gaps``.
    """

    rhos: list
    log_gaps: list


def nested_rho(dom: AnnulusDomain, iterations: int = 5) -> NestedRho:
    """rho_n for A(rho_n, R / rho_n), each rescaled to A(1, R / rho_n^2).

    rho_{n+1} = rho_n rho(R / rho_n^2) increases to sqrt(R). Writing
    gap_n = log sqrt(R) - log rho_n, the rescaled annulus has log-modulus
    2 gap_n and gap_{n+1} is that annulus' own gap.
    """
    gaps = [log_rho_gap(dom)]
    for _ in range(iterations - 1):
        lg = gaps[-1]
        if lg == -math.inf:
            gaps.append(-math.inf)
            continue
        log_Ln = math.log(2.0) + lg
        if log_Ln > math.log(1e-4):
            gaps.append(log_rho_gap(annulus(math.exp(2.0 * math.exp(lg)), dom.policy)))
            continue
        # too thin for a lattice: gap' = (2 Ln / pi) exp(-pi^2 / Ln) to O(p),
        # kept in logs; -inf once even the logarithm leaves binary64
        try:
            gaps.append(math.log(4.0 / PI) + lg - PI * PI * math.exp(-log_Ln))
        except OverflowError:
            gaps.append(-math.inf)
    root = math.sqrt(dom.R)
    rhos = [root * math.exp(-math.exp(g)) for g in gaps]
    return NestedRho(rhos, gaps)


# --------------------------------------------------------------------------
# critical point of G and zero of K


def _check_a(a, dom):
    a = complex(a)
    r = abs(a)
    if not (1.0 < r < dom.R):
        raise DomainError(f"a must satisfy 1 < |a| < {dom.R}")
    return a, r


def _crit_function(u: float, dom: AnnulusDomain):
    """f -> zeta(f + i pi - u) - zeta(f + i pi + u) + 2 eta1 u / log R, rescaled.

    In the normal frame the linear parts cancel identically and the rest is
    k p times a trigonometric series in phi = pi (f -+ u) / log R; that
    series is summed directly.
    """
    lat = dom.lattice
    L = dom.L
    if lat._swapped:
        c = 2.0 * lat.eta1.real * u / L

        def F(f):
            return float(np.real(w_zeta(complex(f - u, PI), lat) - w_zeta(complex(f + u, PI), lat))) + c

        def dF(f):
            return float(np.real(-wp(complex(f - u, PI), lat) + wp(complex(f + u, PI), lat)))

        return F, dF

    lp = -PI * PI / L
    p = math.exp(lp) if lp > -745.0 else 0.0
    N = _nome_terms(lat, p)
    n = np.arange(1, N + 1, dtype=float)
    with np.errstate(under="ignore"):
        pa = np.exp((n - 1.0) * lp)
        pb = np.exp((3.0 * n - 1.0) * lp)
        den = 1.0 - np.exp(2.0 * n * lp)

    def part(phi):
        w = complex(math.cos(phi), math.sin(phi))
        e = np.exp(1j * n * phi)
        val = -2j * w / (1.0 - p * w) - 2j * np.sum((pb * e - pa * np.conj(e)) / den)
        der = 2.0 * w / (1.0 - p * w) ** 2 + 2.0 * np.sum(n * (pb * e + pa * np.conj(e)) / den)
        return val, der

    def F(f):
        v1, _ = part(PI * (f - u) / L)
        v2, _ = part(PI * (f + u) / L)
        return float((v1 - v2).real)

    def dF(f):
        _, d1 = part(PI * (f - u) / L)
        _, d2 = part(PI * (f + u) / L)
        return float((d1 - d2).real) * PI / L

    return F, dF


def radial_g(x: float, dom: AnnulusDomain, return_trace: bool = False):
    """g(x) with z_G(x) = -g(x) for real 1 < x < R."""
    if not (1.0 < x < dom.R):
        raise DomainError("g is defined on 1 < x < R")
    F, dF = _crit_function(math.log(x), dom)
    f, trace = safeguarded_root(F, dF, 0.0, dom.L)
    g = math.exp(f)
    return (g, trace) if return_trace else g


def critical_point(a, dom: AnnulusDomain) -> complex:
    """The unique critical point z_G(a) = -g(|a|) a / |a| of G(., a)."""
    a, r = _check_a(a, dom)
    g, trace = radial_g(r, dom, return_trace=True)
    z = -g * a / r
    res = abs(greens_dz(z, a, dom))
    scale = 1.0 / abs(z)
    if not res <= 1e-9 * max(1.0, scale * dom.L):
        raise SolverError(f"critical point residual {res:.3e} too large", trace)
    return z


def critical_residual(z, a, dom: AnnulusDomain) -> float:
    """|zeta(log(z/a)) - zeta(log(z conj a)) + 2 eta1 log|a| / log R|."""
    lat = dom.lattice
    z = complex(z)
    a = complex(a)
    # one lift for both: z conj(a) = (z / a) |a|^2, and separate principal
    # logs can land on opposite sides of the cut when z is opposite a
    t1 = np.log(z / a)
    t2 = t1 + 2.0 * math.log(abs(a))
    return float(abs(w_zeta(t1, lat) - w_zeta(t2, lat) + 2.0 * lat.eta1.real * math.log(abs(a)) / dom.L))


def bergman_zero(a, dom: AnnulusDomain, rho: float | None = None):
    """Zero of K(., a), or None when rho <= |a| <= R / rho."""
    a, r = _check_a(a, dom)
    rho = solve_rho(dom).rho if rho is None else rho
    if rho * (1.0 - _BAND) <= r <= dom.R / rho * (1.0 + _BAND):
        return None
    if r < rho:
        return -rho / np.conj(a)
    return -(dom.R**2) / (rho * np.conj(a))


def bergman_zero_residual(z, a, dom: AnnulusDomain) -> float:
    ref = abs(bergman_K(math.sqrt(dom.R) * a / abs(a), a, dom))
    return float(abs(bergman_K(z, a, dom)) / ref)


def classify(z, dom: AnnulusDomain, rho: float) -> str:
    r = abs(z)
    lo, hi = rho, dom.R / rho
    if abs(r - lo) <= _BAND * lo or abs(r - hi) <= _BAND * hi:
        return "boundary_circle"
    if lo < r < hi:
        return "green_critical_range"
    return "bergman_zero_range"


def dichotomy_scan(dom: AnnulusDomain, n_radii: int, n_angles: int) -> DichotomyReport:
    """Evaluate z_G and z_K on a polar grid of poles and check the partition.

    Radii are equispaced in log|a| strictly inside (0, log R); angles are
    equispaced from 0. ``radial_gaps`` holds |z_G(a) - z_K(a)| at
    a = 1 + 10^-k, k = 1..4, and the endpoint values are g near 1 and near R.
    """
    if n_radii < 4 or n_angles < 4:
        raise DomainError("grid parameters must be >= 4")
    rho = solve_rho(dom).rho
    grid = []
    violations = []
    logs = dom.L * (np.arange(n_radii) + 0.5) / n_radii
    angles = 2.0 * PI * np.arange(n_angles) / n_angles
    for lr in logs:
        r = math.exp(lr)
        g = radial_g(r, dom)
        for th in angles:
            e = complex(math.cos(th), math.sin(th))
            a = r * e
            zg = -g * e
            zk = bergman_zero(a, dom, rho)
            cg = classify(zg, dom, rho)
            ck = None if zk is None else classify(zk, dom, rho)
            resg = critical_residual(zg, a, dom)
            resk = None if zk is None else bergman_zero_residual(zk, a, dom)
            pt = GridPoint(a, zg, zk, cg, ck, resg, resk)
            grid.append(pt)
            if cg != "green_critical_range" or (ck is not None and ck != "bergman_zero_range"):
                violations.append(pt)
    gaps = []
    for k in range(1, 5):
        a = 1.0 + 10.0**-k
        gaps.append(abs(critical_point(a, dom) - bergman_zero(a, dom, rho)))
    return DichotomyReport(
        dom.R,
        rho,
        grid,
        violations,
        gaps,
        radial_g(1.0 + 1e-4, dom),
        radial_g(dom.R * (1.0 - 1e-4), dom),
    )
