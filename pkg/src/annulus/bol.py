"""Bol operators on the unit disk, weighted Bergman inner products, the
Stokes-type boundary formulas and the kernels K_m, L_m.

On the disk the projective connection is q = 0 and Lambda_m is the plain
m-th derivative. Everything acting on polynomials is exact coefficient
arithmetic; quadrature appears only where an integral is intrinsic.

Boundary half-order factors on |z| = 1 use dz = i e^{it} dt with the
principal branch of i^p and (-i)^p, which gives
    (dz)^{(1-m)/2} (d conj z)^{(1+m)/2} = (-i)^m e^{-imt} dt.
With this choice the m = 1 case is the classical Stokes formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import betaln, gammaln, roots_sh_jacobi

from .policy import DomainError, SingularityError

PI = math.pi
MAX_DEGREE = 32
MAX_M = 8
N_BOUNDARY = 256


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PolySeries:
    """Polynomial sum c[k] z^k of degree <= 32."""

    c: tuple

    def __post_init__(self):
        if len(self.c) > MAX_DEGREE + 1:
            raise DomainError("degree must be <= 32")

    @classmethod
    def of(cls, coeffs) -> "PolySeries":
        arr = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
        if arr.size == 0:
            arr = np.zeros(1, dtype=complex)
        return cls(tuple(complex(v) for v in arr))

    @classmethod
    def monomial(cls, k: int, coef: complex = 1.0) -> "PolySeries":
        return cls.of([0.0] * k + [coef])

    @property
    def coeffs(self) -> np.ndarray:
        return np.asarray(self.c, dtype=complex)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def deriv(self, m: int = 1) -> "PolySeries":
        if m == 0:
            return self
        if m > self.degree:
            return PolySeries.of([0.0])
        return PolySeries.of(np.polynomial.polynomial.polyder(self.coeffs, m))

    def __add__(self, other: "PolySeries") -> "PolySeries":
        return PolySeries.of(np.polynomial.polynomial.polyadd(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, PolySeries):
            return PolySeries.of(np.polynomial.polynomial.polymul(self.coeffs, other.coeffs))
        return PolySeries.of(self.coeffs * other)

    __rmul__ = __mul__

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= tol))


def bol(m: int, F: PolySeries, q: complex = 0.0, table: str = "corrected") -> PolySeries:
    """Lambda_m F for a constant projective connection q.

    q = 0 (the disk) gives F^{(m)}. For constant q != 0 the operators are
        Lambda_2 = D^2 + q/2,  Lambda_3 = D^3 + 2q D,
        Lambda_4 = D^4 + 5q D^2 + (9/4) q^2      ("corrected"),
        Lambda_4 = D^4 + 10q D^2 + 9 q^2         ("printed", kept for comparison).
    """
    if not 0 <= m <= MAX_M:
        raise DomainError("m must lie in 0..8")
    if q == 0:
        return F.deriv(m)
    if m <= 1:
        return F.deriv(m)
    if m == 2:
        return F.deriv(2) + F * (0.5 * q)
    if m == 3:
        return F.deriv(3) + F.deriv(1) * (2.0 * q)
    if m == 4:
        if table == "printed":
            return F.deriv(4) + F.deriv(2) * (10.0 * q) + F * (9.0 * q * q)
        return F.deriv(4) + F.deriv(2) * (5.0 * q) + F * (2.25 * q * q)
    raise DomainError("nonzero q is supported for m <= 4")


def _series_trunc(c, order):
    c = np.asarray(c, dtype=complex)[: order + 1]
    return np.pad(c, (0, order + 1 - c.size))


def _series_mul(a, b, order):
    return np.convolve(a, b)[: order + 1]


def series_pow(a, p: float, order: int) -> np.ndarray:
    """(a_0 + a_1 s + ...)^p truncated at s^order, a_0 != 0, principal a_0^p."""
    a = _series_trunc(a, order)
    if a[0] == 0:
        raise SingularityError("series power needs a nonzero constant term")
    out = np.zeros(order + 1, dtype=complex)
    out[0] = a[0] ** p
    for n in range(1, order + 1):
        k = np.arange(1, n + 1)
        out[n] = np.sum((p * k - (n - k)) * a[k] * out[n - k]) / (n * a[0])
    return out


def _compose(F: PolySeries, inner, order):
    # F evaluated on the series inner (truncated), by Horner
    out = np.zeros(order + 1, dtype=complex)
    for coef in F.coeffs[::-1]:
        out = _series_mul(out, inner, order)
        out[0] += coef
    return out


# --------------------------------------------------------------------------
# Moebius maps and Bol's lemma


@dataclass(frozen=True)
class MobiusMap:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c - 1.0) > 1e-14:
            raise DomainError("Moebius map must satisfy ad - bc = 1")

    @classmethod
    def normalized(cls, a, b, c, d) -> "MobiusMap":
        s = np.sqrt(complex(a * d - b * c))
        if s == 0:
            raise DomainError("degenerate Moebius map")
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def disk_automorphism(cls, theta: float, alpha: complex) -> "MobiusMap":
        """t -> e^{i theta}(t - alpha)/(1 - conj(alpha) t)."""
        if not abs(alpha) < 1.0:
            raise DomainError("|alpha| must be < 1")
        e = np.exp(0.5j * theta)
        s = math.sqrt(1.0 - abs(alpha) ** 2)
        return cls(e / s, -e * alpha / s, -np.conj(alpha) / (e * s), 1.0 / (e * s))

    @property
    def preserves_disk(self) -> bool:
        return abs(abs(self.a) ** 2 - abs(self.c) ** 2 - 1.0) < 1e-12 and abs(self.d - np.conj(self.a)) < 1e-12

    def __call__(self, t):
        return (self.a * t + self.b) / (self.c * t + self.d)

    def lam(self, t):
        return 1.0 / (self.c * t + self.d)

    def series(self, t0: complex, order: int):
        """Taylor coefficients of f and lambda at t0 (exact)."""
        D = self.c * t0 + self.d
        if D == 0:
            raise SingularityError("sample point is the pole of the map")
        j = np.arange(order + 1)
        lam = (1.0 / D) * (-self.c / D) ** j
        # f = a/c - 1/(c (c t + d)) when c != 0; f' = lambda^2
        fp = _series_mul(lam, lam, order)
        f = np.zeros(order + 1, dtype=complex)
        f[0] = self(t0)
        f[1:] = fp[:-1] / np.arange(1, order + 1)
        return f, lam


def _bol_lhs(m, F, fser, lam_pow, order):
    # d^m/dt^m of F(f(t)) lambda^{1-m} at t0
    comp = _compose(F, fser, order)
    return math.factorial(m) * _series_mul(comp, lam_pow, order)[m]


def bol_covariance(m: int, f, F: PolySeries, sample_points) -> float:
    """max over samples of |d^m/dt^m (F(f) lam^{1-m}) - F^{(m)}(f) lam^{1+m}|.

    f is a MobiusMap (lam = 1/(ct + d)) or a PolySeries map, for which
    lam = sqrt(f') with the principal branch at each sample.
    """
    worst = 0.0
    Fm = F.deriv(m)
    for t0 in np.atleast_1d(sample_points):
        t0 = complex(t0)
        if isinstance(f, MobiusMap):
            fser, lam = f.series(t0, m)
            lam_pow = series_pow(lam, 1 - m, m)
            lam0 = lam[0]
        else:
            shifted = _taylor_shift(f, t0, m)
            fser = shifted
            fp = np.arange(1, m + 2) * _taylor_shift(f, t0, m + 1)[1:]
            lam_pow = series_pow(fp[: m + 1], 0.5 * (1 - m), m)
            lam0 = np.sqrt(fp[0])
        lhs = _bol_lhs(m, F, fser, lam_pow, m)
        rhs = Fm(fser[0]) * lam0 ** (1 + m)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)


def _taylor_shift(P: PolySeries, t0: complex, order: int) -> np.ndarray:
    # coefficients of P(t0 + s) in s up to s^order
    out = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        out[k] = P.deriv(k)(t0) / math.factorial(k)
    return out


# --------------------------------------------------------------------------
# weighted inner products


def monomial_inner(j: int, alpha: float) -> float:
    """(z^j, z^j)_alpha = pi B(j + 1, alpha)."""
    return PI * math.exp(betaln(j + 1.0, alpha))


def weighted_inner(f: PolySeries, g: PolySeries, alpha: float, method: str = "closed") -> complex:
    """(f, g)_alpha = int_D f conj(g) (1 - |z|^2)^(alpha - 1) dxdy."""
    if not alpha > 0.0:
        raise DomainError("alpha must be positive")
    fc, gc = f.coeffs, g.coeffs
    n = min(fc.size, gc.size)
    if method == "closed":
        w = np.array([monomial_inner(j, alpha) for j in range(n)])
        return complex(np.sum(fc[:n] * np.conj(gc[:n]) * w))
    if method == "quad":
        # x = r^2: pi int_0^1 x^j (1-x)^(alpha-1) dx by shifted Gauss-Jacobi,
        # angles by the trapezoid rule (exact for these trigonometric degrees)
        x, wx = roots_sh_jacobi(48, alpha, 1.0)
        nth = 2 * (fc.size + gc.size) + 2
        th = 2.0 * PI * np.arange(nth) / nth
        r = np.sqrt(x)[:, None]
        z = r * np.exp(1j * th)[None, :]
        vals = f(z) * np.conj(g(z))
        ang = vals.mean(axis=1) * 2.0 * PI
        return complex(0.5 * np.sum(wx * ang))
    raise DomainError("method must be 'closed' or 'quad'")


def szego_inner(f: PolySeries, g: PolySeries, n: int = N_BOUNDARY) -> complex:
    """int_{|z|=1} f conj(g) |dz|."""
    z = np.exp(2j * PI * np.arange(n) / n)
    return complex(np.mean(f(z) * np.conj(g(z))) * 2.0 * PI)


def szego_extrapolate(f: PolySeries, g: PolySeries, alphas=(1e-3, 1e-4)) -> complex:
    """Linear extrapolation of alpha (f, g)_alpha to alpha = 0."""
    a1, a2 = alphas
    v1 = a1 * weighted_inner(f, g, a1)
    v2 = a2 * weighted_inner(f, g, a2)
    return (a1 * v2 - a2 * v1) / (a1 - a2)


def neg_inner_residue(F: PolySeries, G: PolySeries, m: int) -> complex:
    """(F, G)_{-m} as the residue at alpha = -m of (F, G)_alpha.

    (z^j, z^j)_alpha = pi j! Gamma(alpha)/Gamma(j + 1 + alpha) has residue
    pi j! (-1)^m / (m! (j - m)!) for j >= m and 0 for j < m.
    """
    fc, gc = F.coeffs, G.coeffs
    out = 0.0j
    for j in range(m, min(fc.size, gc.size)):
        w = PI * (-1) ** m * math.exp(gammaln(j + 1.0) - gammaln(m + 1.0) - gammaln(j - m + 1.0))
        out += fc[j] * np.conj(gc[j]) * w
    return complex(out)


def _half_order_factor(m: int, th):
    # (dz)^{(1-m)/2} (d conj z)^{(1+m)/2} per dt, dz = i e^{it} dt, principal powers
    p, r = 0.5 * (1 - m), 0.5 * (1 + m)
    return np.exp(1j * th * p) * np.exp(1j * PI / 2 * p) * np.exp(-1j * th * r) * np.exp(-1j * PI / 2 * r)


def boundary_pairing(F: PolySeries, g: PolySeries, m: int, n: int = N_BOUNDARY) -> complex:
    """int_{|z|=1} F conj(g) (dz)^{(1-m)/2} (d conj z)^{(1+m)/2}."""
    th = 2.0 * PI * np.arange(n) / n
    z = np.exp(1j * th)
    return complex(np.mean(F(z) * np.conj(g(z)) * _half_order_factor(m, th)) * 2.0 * PI)


def stokes_constant(m: int, variant: str = "printed") -> complex:
    """Constant in (Lambda_m F, g)_m = C int F conj g (dz)^{(1-m)/2}(d conj z)^{(1+m)/2}.

    The printed constant is i^m m!/2. Integrating by parts from the
    dz d(conj z) form (dz d conj z = -2i dxdy) gives i^m (m-1)!/2.
    """
    if variant == "printed":
        return 1j**m * math.factorial(m) / 2.0
    if variant == "corrected":
        return 1j**m * math.factorial(m - 1) / 2.0
    raise DomainError("variant must be 'printed' or 'corrected'")


def stokes_check(m: int, F: PolySeries, g: PolySeries, variant: str = "printed"):
    """(lhs, rhs) of the area/boundary identity for Lambda_m on the disk."""
    if m not in (1, 2, 3):
        raise DomainError("m must be 1, 2 or 3")
    lhs = weighted_inner(bol(m, F), g, float(m))
    rhs = stokes_constant(m, variant) * boundary_pairing(F, g, m)
    return lhs, complex(rhs)


def neg_inner_boundary(F: PolySeries, G: PolySeries, m: int) -> complex:
    """(F, G)_{-m} = ((-i)^m / (2 m!)) int F conj(Lambda_m G) (dz)^{(1-m)/2}(d conj z)^{(1+m)/2}."""
    return complex((-1j) ** m / (2.0 * math.factorial(m)) * boundary_pairing(F, bol(m, G), m))


def isometry_constant(m: int, variant: str = "printed") -> float:
    """c with (F, G)_{-m} = c (Lambda_m F, Lambda_m G)_m; printed c = 1.

    From the Beta-function closed forms, c = (-1)^m / (m! (m-1)!) for m >= 1.
    """
    if variant == "printed" or m == 0:
        return 1.0
    if variant == "corrected":
        return (-1.0) ** m / (math.factorial(m) * math.factorial(m - 1))
    raise DomainError("variant must be 'printed' or 'corrected'")


def isometry_check(m: int, F: PolySeries, G: PolySeries, variant: str = "printed"):
    """(neg_inner, c * pos_inner) with the boundary form for (F, G)_{-m}."""
    if m not in (0, 1, 2, 3):
        raise DomainError("m must lie in 0..3")
    neg = neg_inner_boundary(F, G, m)
    if m == 0:
        pos = neg_inner_residue(F, G, 0)
    else:
        pos = weighted_inner(bol(m, F), bol(m, G), float(m))
    return neg, complex(isometry_constant(m, variant) * pos)


# --------------------------------------------------------------------------
# bivariate polynomials in (z, conj z)


def omega_power(k: int) -> np.ndarray:
    """Coefficients P[j, l] of z^j conj(z)^l in (1 - z conj z)^k."""
    P = np.zeros((k + 1, k + 1))
    for j in range(k + 1):
        P[j, j] = (-1) ** j * math.comb(k, j)
    return P


def bol_z(m: int, P: np.ndarray) -> np.ndarray:
    """Lambda_m (q = 0) in the z variable of a bivariate coefficient array."""
    out = np.array(P, dtype=float)
    for _ in range(m):
        j = np.arange(1, out.shape[0])
        out = out[1:, :] * j[:, None] if out.shape[0] > 1 else np.zeros((1, out.shape[1]))
    return out


def bol_zbar(m: int, P: np.ndarray) -> np.ndarray:
    return bol_z(m, np.asarray(P).T).T


# --------------------------------------------------------------------------
# kernels K_m and L_m


def kernel_constant(m: int) -> complex:
    return -(1j ** (m - 1)) / (PI * math.factorial(m) * math.factorial(m - 1))


def kernel_Km(m: int, z, zeta):
    """-(i^{m-1}/(pi m!(m-1)!)) (1 - z conj zeta)^{m-1} log(1 - z conj zeta)."""
    if m not in (1, 2, 3):
        raise DomainError("m must be 1, 2 or 3")
    z, zeta = np.asarray(z, dtype=complex), np.asarray(zeta, dtype=complex)
    if np.any(np.abs(z) >= 1.0) or np.any(np.abs(zeta) >= 1.0):
        raise SingularityError("K_m needs both points in the open disk")
    w = 1.0 - z * np.conj(zeta)
    return kernel_constant(m) * w ** (m - 1) * np.log(w)


def kernel_Lm(m: int, z, zeta):
    """-(i^{m-1}/(pi m!(m-1)!)) (z - zeta)^{m-1} log(z - zeta), principal log."""
    if m not in (1, 2, 3):
        raise DomainError("m must be 1, 2 or 3")
    z, zeta = np.asarray(z, dtype=complex), np.asarray(zeta, dtype=complex)
    x = z - zeta
    if np.any(x == 0):
        raise SingularityError("L_m is singular on the diagonal")
    return kernel_constant(m) * x ** (m - 1) * np.log(x)


def km_series(m: int, N: int) -> list:
    """Exact coefficients b_n of w^n in (1 - w)^{m-1} log(1 - w), n = 0..N."""
    log_c = [Fraction(0)] + [Fraction(-1, n) for n in range(1, N + 1)]
    poly = [Fraction(0)] * (N + 1)
    for k in range(min(m - 1, N) + 1):
        poly[k] = Fraction((-1) ** k * math.comb(m - 1, k))
    out = [Fraction(0)] * (N + 1)
    for i, a in enumerate(poly):
        if a == 0:
            continue
        for j in range(N + 1 - i):
            out[i + j] += a * log_c[j]
    return out


def lambda_lambda_bar_Km(m: int, N: int) -> list:
    """Exact coefficients of w^k (k = 0..N-m) in Lambda_m conj(Lambda_m) applied
    to the diagonal series, without the constant kernel_constant(m):
    each z^n conj(zeta)^n picks up (n!/(n-m)!)^2."""
    b = km_series(m, N)
    out = []
    for n in range(m, N + 1):
        f = Fraction(math.factorial(n), math.factorial(n - m))
        out.append(b[n] * f * f)
    return out


def bergman_m_series(m: int, K: int) -> list:
    """pi times the coefficients of w^k in the B_m reproducing kernel
    m/(pi (1 - w)^{m+1}), i.e. m C(k + m, m)."""
    return [Fraction(m * math.comb(k + m, m)) for k in range(K + 1)]


def _diff_xlog(terms: dict) -> dict:
    # terms {(p, has_log): coef} for coef x^p (log x)^has_log
    out: dict = {}
    for (p, lg), c in terms.items():
        if c == 0:
            continue
        if lg:
            if p != 0:
                out[(p - 1, 1)] = out.get((p - 1, 1), 0) + c * p
            out[(p - 1, 0)] = out.get((p - 1, 0), 0) + c
        elif p != 0:
            out[(p - 1, 0)] = out.get((p - 1, 0), 0) + c * p
    return {k: v for k, v in out.items() if v != 0}


def lambda_lambda_L_leading(m: int) -> complex:
    """Coefficient of (z - zeta)^{-(m+1)} in Lambda_m Lambda_m L_m, exactly.

    With x = z - zeta one has d/dz = d/dx and d/dzeta = -d/dx.
    """
    terms = {(m - 1, 1): Fraction(1)}
    for _ in range(2 * m):
        terms = _diff_xlog(terms)
    lead = terms.get((-(m + 1), 0), Fraction(0))
    if any(k[1] for k in terms):
        raise AssertionError("log terms survive differentiation")
    return complex(kernel_constant(m) * (-1) ** m * float(lead))


def adjoint_leading_expected(m: int) -> complex:
    """(-i)^{m-1}/pi, the leading coefficient of L_m."""
    return (-1j) ** (m - 1) / PI


def resolvent_disk(F: PolySeries, zeta: complex, n: int = N_BOUNDARY) -> complex:
    """(1/2 pi i) int_{|z|=1} F''(z)(1 - conj(z) zeta) log(1 - conj(z) zeta) z dz.

    Reproduces F(zeta) for F with F(0) = F'(0) = 0.
    """
    if not abs(zeta) < 1.0:
        raise DomainError("zeta must lie in the open disk")
    z = np.exp(2j * PI * np.arange(n) / n)
    w = 1.0 - np.conj(z) * zeta
    # dz = i z dt, so (1/2 pi i) ... z dz = (1/2 pi) ... z^2 dt
    return complex(np.mean(F.deriv(2)(z) * w * np.log(w) * z * z))
