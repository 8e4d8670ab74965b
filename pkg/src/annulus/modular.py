"""Eisenstein series, the discriminant, Ramanujan's Phi_rs and the modulus invariant.

Derivatives are taken term by term in the q-expansion, with
' = q d/dq = (1/(2 pi i)) d/dtau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _accel
from .policy import BranchError, DEFAULT_POLICY, DomainError, PrecisionError, TruncationPolicy

PI = math.pi


@dataclass(frozen=True)
class ModularPoint:
    tau: complex
    q: complex

    @classmethod
    def from_tau(cls, tau: complex) -> "ModularPoint":
        tau = complex(tau)
        if not tau.imag > 0.0:
            raise DomainError(f"tau must lie in the upper half-plane, got {tau}")
        return cls(tau, complex(np.exp(2j * PI * tau)))

    @classmethod
    def from_annulus(cls, R: float) -> "ModularPoint":
        """Modulus tau = i pi / log R of A(1, R)."""
        if not R > 1.0:
            raise DomainError("R must exceed 1")
        return cls.from_tau(1j * PI / math.log(R))


@dataclass(frozen=True)
class EisensteinTriple:
    e2: complex
    e4: complex
    e6: complex


def _truncation(absq: float, k: int, rel_tol: float) -> int:
    # smallest N with sum_{n > N} n^(k+1) |q|^n < rel_tol |q|, i.e. the tail
    # relative to the leading O(q) term (the series are used without their
    # constant terms, so a bound relative to 1 is not enough):
    # sum_{n > N} n^(k+1) |q|^n <= (N+1)^(k+1) |q|^(N+1) / (1 - |q|)^(k+2)
    if absq >= 1.0 - 1e-6:
        raise PrecisionError("|q| too close to 1 for q-series evaluation")
    if absq == 0.0:
        return 1
    N = 1
    lq = math.log(absq)
    bound = math.log(rel_tol) + (k + 2) * math.log1p(-absq)
    while N * lq + (k + 1) * math.log(N + 1) >= bound:
        N += 1
    return N


@lru_cache(maxsize=64)
def _coeffs(N: int, r: int, s: int) -> np.ndarray:
    c = np.asarray(_accel.divisor_table(N, r, s))
    c.setflags(write=False)
    return c


def _qseries(p: ModularPoint, r: int, s: int, weight: int, deriv: int, policy: TruncationPolicy):
    # sum_{N>=1} N^deriv c_N q^N with c_N = sum_{d|N} d^r (N/d)^s
    N = _truncation(abs(p.q), weight + deriv, policy.rel_tol * 1e-4)
    c = _coeffs(N, r, s)
    n = np.arange(N + 1, dtype=float)
    powers = p.q ** np.arange(N + 1)
    return complex(np.sum(c[1:] * n[1:] ** deriv * powers[1:]))


def eisenstein_tails(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY):
    """(E2 - 1, E4 - 1, E6 - 1), summed without the leading 1."""
    return (
        -24.0 * _qseries(p, 1, 0, 2, 0, policy),
        240.0 * _qseries(p, 3, 0, 4, 0, policy),
        -504.0 * _qseries(p, 5, 0, 6, 0, policy),
    )


def eisenstein(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> EisensteinTriple:
    x2, x4, x6 = eisenstein_tails(p, policy)
    return EisensteinTriple(1.0 + x2, 1.0 + x4, 1.0 + x6)


def eisenstein_derivs(p: ModularPoint, k: int, order: int, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """order-th q d/dq derivative of E_k, k in (2, 4, 6)."""
    const = {2: -24.0, 4: 240.0, 6: -504.0}[k]
    val = const * _qseries(p, k - 1, 0, k, order, policy)
    return val + 1.0 if order == 0 else val


def e2_star(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Non-holomorphic weight-2 Eisenstein series E2 - 3 / (pi Im tau)."""
    return eisenstein(p, policy).e2 - 3.0 / (PI * p.tau.imag)


def discriminant(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Delta = q prod (1 - q^n)^24 from the product."""
    N = _truncation(abs(p.q), 0, policy.rel_tol * 1e-4)
    n = np.arange(1, N + 1)
    return complex(p.q * np.prod((1.0 - p.q**n) ** 24))


def discriminant_from_eisenstein(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(E4^3 - E6^2) / 1728 with the constant terms cancelled before rounding."""
    _, x4, x6 = eisenstein_tails(p, policy)
    return (3.0 * x4 + 3.0 * x4 * x4 + x4**3 - 2.0 * x6 - x6 * x6) / 1728.0


def phi_rs(p: ModularPoint, r: int, s: int, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Ramanujan's double series sum_m sum_n m^r n^s q^(mn)."""
    if r < 0 or s < 0 or r + s > 12:
        raise DomainError("phi_rs supports nonnegative r, s with r + s <= 12")
    return _qseries(p, r, s, r + s, 0, policy)


def ramanujan_residuals(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY):
    E = eisenstein(p, policy)
    d2 = eisenstein_derivs(p, 2, 1, policy)
    d4 = eisenstein_derivs(p, 4, 1, policy)
    d6 = eisenstein_derivs(p, 6, 1, policy)
    return (
        d2 - (E.e2 * E.e2 - E.e4) / 12.0,
        d4 - (E.e2 * E.e4 - E.e6) / 3.0,
        d6 - (E.e2 * E.e6 - E.e4 * E.e4) / 2.0,
    )


def chazy_residual(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    e2 = eisenstein_derivs(p, 2, 0, policy)
    d1 = eisenstein_derivs(p, 2, 1, policy)
    d2 = eisenstein_derivs(p, 2, 2, policy)
    d3 = eisenstein_derivs(p, 2, 3, policy)
    return d3 - e2 * d2 + 1.5 * d1 * d1


def s2_residuals(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY):
    """E4 - (E2^2 - 12 E2') and E6 - (E2^3 - 18 E2 E2' + 36 E2'')."""
    E = eisenstein(p, policy)
    d1 = eisenstein_derivs(p, 2, 1, policy)
    d2 = eisenstein_derivs(p, 2, 2, policy)
    return (
        E.e4 - (E.e2**2 - 12.0 * d1),
        E.e6 - (E.e2**3 - 18.0 * E.e2 * d1 + 36.0 * d2),
    )


# --------------------------------------------------------------------------
# modulus invariant


def _e2_jet(p: ModularPoint, policy: TruncationPolicy):
    e2 = eisenstein_derivs(p, 2, 0, policy)
    d1 = eisenstein_derivs(p, 2, 1, policy)
    d2 = eisenstein_derivs(p, 2, 2, policy)
    if d1 == 0 or abs(d1) < 1e-10 * 24.0 * abs(p.q):
        raise BranchError(f"E2' vanishes at tau = {p.tau}; the 3/2 power has no branch")
    return e2, d1, d2


def modulus1_rhs(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(6 g3 - 14 alpha g2 + 120 alpha^3) / (g2 - 12 alpha^2)^(3/2),
    alpha = -E2/12, g2 = E4/12, g3 = -E6/216, principal branch."""
    # written in the tails x_k = E_k - 1 so the O(1) parts cancel exactly;
    # near q = 0 both numerator and denominator are O(q)
    x2, x4, x6 = eisenstein_tails(p, policy)
    num = (-2.0 * x6 + 7.0 * (x2 + x4 + x2 * x4) - 5.0 * (3.0 * x2 + 3.0 * x2 * x2 + x2**3)) / 72.0
    den = (x4 - 2.0 * x2 - x2 * x2) / 12.0
    if den == 0:
        raise BranchError("g2 - 12 alpha^2 vanishes")
    return num / den**1.5


def modulus_invariant(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY):
    """f(tau) and f'(tau) = (1/(2 pi i)) df/dtau in terms of the E2 jet.

    Substituting E4 = E2^2 - 12 E2' and E6 = E2^3 - 18 E2 E2' + 36 E2'' into
    the invariant gives
        f  = -(3 E2'' + 2 E2 E2') / (3 (-E2')^(3/2)),
        f' = (-9 E2''^2 + 4 E2 E2' E2'' - 5 E2'^3) / (6 (-E2')^(5/2)),
    the second line using the Chazy equation for E2'''. Principal branch.
    """
    e2, d1, d2 = _e2_jet(p, policy)
    m = -d1
    f = -(3.0 * d2 + 2.0 * e2 * d1) / (3.0 * m**1.5)
    fp = (-9.0 * d2 * d2 + 4.0 * e2 * d1 * d2 - 5.0 * d1**3) / (6.0 * m**2.5)
    return complex(f), complex(fp)


def modulus2_printed(p: ModularPoint, policy: TruncationPolicy = DEFAULT_POLICY):
    """The pair f = (3E2'' + 2E2E2')/E2'^(3/2), f' = (...)/(2 E2'^(5/2)).

    Kept for comparison only. With principal branches it is the invariant
    multiplied by a constant of modulus 3; on the imaginary tau axis the
    constant is -3i.
    """
    e2, d1, d2 = _e2_jet(p, policy)
    f = (3.0 * d2 + 2.0 * e2 * d1) / d1**1.5
    fp = (-9.0 * d2 * d2 + 4.0 * e2 * d1 * d2 - 5.0 * d1**3) / (2.0 * d1**2.5)
    return complex(f), complex(fp)
