"""Prepotential of u'' + Q u / 2 = 0.

Given a first solution u1 and a Wronskian W, a second solution is

    u2(z) = u1(z) (int_0^z W / u1^2 + C),

and the prepotential F(u) with F'(u1(z)) = u2(z) is half the Legendre
transform L = s t - W z, s = u1^2, t = u2 / u1, written in the variable
u = u1(z).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .policy import BranchError, DomainError, SolverError

N_GAUSS = 64
FD_STEP = 1e-3
BRANCH_GUARD = 0.05
SINGULAR_DERIV = 1e-12
PATH_MIN_U1 = 1e-8
PARTIAL_CLEARANCE = 0.05

_X, _WX = np.polynomial.legendre.leggauss(N_GAUSS)
_S = 0.5 * (_X + 1.0)
_WS = 0.5 * _WX


@dataclass(frozen=True)
class ODEContext:
    """First solution u1 of u'' + Q u / 2 = 0 with two exact derivatives.

    u1inv is a local inverse with u1inv(u1(0)) = 0; it is needed only for F.
    """

    name: str
    Q: Callable
    u1: Callable
    du1: Callable
    d2u1: Callable
    W: complex = 1.0
    C: complex = 0.0
    u1inv: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.W == 0:
            raise DomainError("the Wronskian W must be nonzero")
        if abs(self.u1(0.0)) == 0.0:
            raise DomainError("u1(0) must be nonzero")

    def with_constants(self, W=None, C=None) -> "ODEContext":
        return ODEContext(
            self.name, self.Q, self.u1, self.du1, self.d2u1,
            self.W if W is None else W, self.C if C is None else C, self.u1inv,
        )

    @property
    def u0(self) -> complex:
        return complex(self.u1(0.0))

    @property
    def branched(self) -> bool:
        """u1'(0) = 0: the inverse of u1 has a square-root branch at u1(0)."""
        return abs(self.du1(0.0)) < SINGULAR_DERIV

    def ode_residual(self, z):
        return self.d2u1(z) + 0.5 * self.Q(z) * self.u1(z)


def _const(c):
    return lambda z: c + 0.0 * np.asarray(z)


CATALOG = {
    # u'' + u = 0
    "cos": dict(Q=_const(2.0), u1=np.cos, du1=lambda z: -np.sin(z), d2u1=lambda z: -np.cos(z),
                u1inv=np.arccos),
    # u'' - u = 0
    "cosh": dict(Q=_const(-2.0), u1=np.cosh, du1=np.sinh, d2u1=np.cosh, u1inv=np.arccosh),
    "exp": dict(Q=_const(-2.0), u1=np.exp, du1=np.exp, d2u1=np.exp, u1inv=np.log),
    # u'' = 0
    "linear": dict(Q=_const(0.0), u1=lambda z: 1.0 + z, du1=_const(1.0), d2u1=_const(0.0),
                   u1inv=lambda u: u - 1.0),
}


def catalog_context(name: str, W: complex = 1.0, C: complex = 0.0) -> ODEContext:
    if name not in CATALOG:
        raise DomainError(f"unknown example {name!r}; choose from {sorted(CATALOG)}")
    return ODEContext(name=name, W=W, C=C, **CATALOG[name])


def cos_closed_form(u, W: complex = 1.0, C: complex = 0.0):
    """F(u) = (W/2)(u sqrt(1 - u^2) - arccos u) + (C/2) u^2, principal branches."""
    u = np.asarray(u, dtype=complex) if np.iscomplexobj(u) else np.asarray(u, dtype=float)
    return 0.5 * W * (u * np.sqrt(1.0 - u * u) - np.arccos(u)) + 0.5 * C * u * u


# --------------------------------------------------------------------------
# path quadrature


def _quad_complex(f, a: complex, b: complex) -> tuple[complex, float]:
    """int_a^b f along the segment by adaptive quadrature on Re and Im."""
    d = b - a
    g = lambda t: f(a + t * d) * d
    opts = dict(epsabs=1e-15, epsrel=1e-13, limit=200)
    # the estimate is returned; quad's own warnings would only repeat it
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, e1 = integrate.quad(lambda t: g(t).real, 0.0, 1.0, **opts)
        im, e2 = integrate.quad(lambda t: g(t).imag, 0.0, 1.0, **opts)
    return complex(re, im), e1 + e2


def _gauss_segment(f, a: complex, b: complex) -> complex:
    d = b - a
    return complex(np.sum(_WS * f(a + _S * d)) * d)


def _path(z: complex) -> list[tuple[complex, complex]]:
    return [(0.0, z)]


def _detour(z: complex) -> list[tuple[complex, complex]]:
    mid = 0.5 * z + 0.5j * (z if z != 0 else 1.0)
    return [(0.0, mid), (mid, z)]


def _path_clear(ctx: ODEContext, legs, n: int = 1025) -> bool:
    """No zero of u1 within reach of the samples: |u1| must exceed the
    first-order change |u1'| times the sample spacing, and PATH_MIN_U1."""
    t = np.linspace(0.0, 1.0, n)
    for a, b in legs:
        x = a + t * (b - a)
        reach = np.abs(ctx.du1(x)) * abs(b - a) / (n - 1)
        if np.any(np.abs(ctx.u1(x)) <= np.maximum(reach, PATH_MIN_U1)):
            return False
    return True


def u1_integral(ctx: ODEContext, z: complex, method: str = "adaptive") -> complex:
    """I(z) = int_0^z W dzeta / u1^2.

    u1 has only simple zeros, where u1'' = 0, so W / u1^2 has zero residue
    and I is independent of the path; one detour is tried if the straight
    segment passes too close to a zero.
    """
    z = complex(z)
    f = lambda x: ctx.W / ctx.u1(x) ** 2
    for legs in (_path(z), _detour(z)):
        if not _path_clear(ctx, legs):
            continue
        if method == "gauss":
            return sum(_gauss_segment(f, a, b) for a, b in legs)
        if method != "adaptive":
            raise DomainError("method must be 'adaptive' or 'gauss'")
        total = 0.0 + 0.0j
        for a, b in legs:
            val, _ = _quad_complex(f, a, b)
            total += val
        return total
    raise SolverError(f"u1 vanishes on every tried path from 0 to {z}")


def second_solution_jet(ctx: ODEContext, z: complex, method: str = "adaptive"):
    """(u2, u2', u2'') from the quadrature representation, differentiated exactly:
    u2' = u1'(I + C) + W / u1 and u2'' = u1''(I + C)."""
    z = complex(z)
    k = u1_integral(ctx, z, method) + ctx.C
    u1, du1 = complex(ctx.u1(z)), complex(ctx.du1(z))
    return u1 * k, du1 * k + ctx.W / u1, complex(ctx.d2u1(z)) * k


def second_solution(ctx: ODEContext, z: complex, method: str = "adaptive") -> complex:
    return second_solution_jet(ctx, z, method)[0]


def wronskian(ctx: ODEContext, z: complex) -> complex:
    u2, du2, _ = second_solution_jet(ctx, z)
    return complex(ctx.u1(z)) * du2 - complex(ctx.du1(z)) * u2


def second_solution_residual(ctx: ODEContext, z: complex) -> complex:
    u2, _, d2u2 = second_solution_jet(ctx, z)
    return d2u2 + 0.5 * complex(ctx.Q(z)) * u2


# --------------------------------------------------------------------------
# prepotential


FORMS = ("legendre", "partial")


def _check_branch(ctx: ODEContext, u: complex, guard: float):
    if ctx.branched and abs(u - ctx.u0) <= guard:
        raise BranchError(
            f"u = {u} is within {guard:g} of the branch point u1(0) = {ctx.u0}"
        )


def _inverse(ctx: ODEContext, u: complex) -> complex:
    if ctx.u1inv is None:
        raise DomainError(f"context {ctx.name!r} has no inverse of u1")
    z = complex(ctx.u1inv(complex(u)))
    if abs(ctx.u1(z) - u) > 1e-12 * max(1.0, abs(u)):
        raise BranchError(f"u1inv({u}) does not invert u1")
    return z


def _partial_integral(ctx: ODEContext, u: complex) -> complex:
    """int_{u1(0)}^u W u1inv(eta) / eta^3 d eta on the segment.

    In the branched case eta = u0 + (u - u0) s^2 turns the square-root
    endpoint behaviour of u1inv into a smooth integrand.
    """
    u0 = ctx.u0
    d = u - u0
    # distance from 0 to the segment [u0, u]; the integrand has a pole there
    s0 = min(max(-(np.conj(d) * u0).real / max(abs(d) ** 2, 1e-300), 0.0), 1.0)
    if abs(u0 + s0 * d) < PARTIAL_CLEARANCE * abs(u0):
        raise DomainError("the segment from u1(0) to u passes near 0; the partial form is undefined")
    if ctx.branched:
        eta = u0 + d * _S * _S
        g = np.array([complex(ctx.u1inv(e)) for e in eta]) / eta**3 * 2.0 * d * _S
    else:
        eta = u0 + d * _S
        g = np.array([complex(ctx.u1inv(e)) for e in eta]) / eta**3 * d
    return complex(ctx.W * np.sum(_WS * g))


def prepotential_F(ctx: ODEContext, u: complex, form: str = "legendre",
                   branch_guard: float = 1e-14) -> complex:
    """F(u) with F'(u1(z)) = u2(z).

    legendre: (1/2)(u^2 (I(z) + C) - W z), z = u1inv(u).
    partial:  u^2 (int_{u1(0)}^u W u1inv(eta) / eta^3 d eta + C/2).
    Both use fixed Gauss-Legendre rules, so F is smooth in u and safe to
    difference.
    """
    u = complex(u)
    _check_branch(ctx, u, branch_guard)
    if form == "legendre":
        z = _inverse(ctx, u)
        k = u1_integral(ctx, z, "gauss") + ctx.C
        return 0.5 * (u * u * k - ctx.W * z)
    if form == "partial":
        if ctx.u1inv is None:
            raise DomainError(f"context {ctx.name!r} has no inverse of u1")
        return u * u * (_partial_integral(ctx, u) + 0.5 * ctx.C)
    raise DomainError(f"form must be one of {FORMS}")


def prepotential_forms(ctx: ODEContext, u: complex) -> dict:
    """Both forms and their difference."""
    a = prepotential_F(ctx, u, "legendre")
    b = prepotential_F(ctx, u, "partial")
    return {"legendre": a, "partial": b, "difference": abs(a - b)}


def recovery_error(ctx: ODEContext, z: complex, h: float = 1e-6, form: str = "legendre") -> float:
    """|F'(u1(z)) - u2(z)| with F' by a central difference of step h."""
    u = complex(ctx.u1(z))
    dF = (prepotential_F(ctx, u + h, form) - prepotential_F(ctx, u - h, form)) / (2.0 * h)
    return abs(dF - second_solution(ctx, z))


def _fd_derivs(F, u: complex, h: float):
    f = {k: F(u + k * h) for k in (-2, -1, 0, 1, 2)}
    d1 = (f[1] - f[-1]) / (2.0 * h)
    d2 = (f[1] - 2.0 * f[0] + f[-1]) / (h * h)
    d3 = (f[2] - 2.0 * f[1] + 2.0 * f[-1] - f[-2]) / (2.0 * h**3)
    return np.array([d1, d2, d3])


def fd_derivatives(F, u: complex, h: float = FD_STEP):
    """(F', F'', F''') by central differences at h and h/2, Richardson-combined."""
    return (4.0 * _fd_derivs(F, u, 0.5 * h) - _fd_derivs(F, u, h)) / 3.0


def third_order_residual(ctx: ODEContext, u: complex, h: float = FD_STEP,
                         form: str = "legendre") -> complex:
    """F''' - (Q / 2 W^2)(u F'' - F')^3 with Q evaluated at z = u1inv(u)."""
    u = complex(u)
    _check_branch(ctx, u, BRANCH_GUARD)
    d1, d2, d3 = fd_derivatives(lambda x: prepotential_F(ctx, x, form), u, h)
    q = complex(ctx.Q(_inverse(ctx, u)))
    return complex(d3 - q / (2.0 * ctx.W**2) * (u * d2 - d1) ** 3)


# --------------------------------------------------------------------------
# projective coordinate t = u2 / u1


def t_jet(ctx: ODEContext, z: complex):
    """(t, t', t'', t''') with t' from the u2 jet and the higher ones exact."""
    u2, du2, _ = second_solution_jet(ctx, z)
    u1, du1, d2u1 = (complex(f(z)) for f in (ctx.u1, ctx.du1, ctx.d2u1))
    t = u2 / u1
    t1 = (du2 * u1 - u2 * du1) / u1**2
    W = ctx.W
    t2 = -2.0 * W * du1 / u1**3
    t3 = -2.0 * W * (d2u1 / u1**3 - 3.0 * du1**2 / u1**4)
    return t, t1, t2, t3


def schwarzian(t1: complex, t2: complex, t3: complex) -> complex:
    return t3 / t1 - 1.5 * (t2 / t1) ** 2


def schwarzian_residual(ctx: ODEContext, z: complex) -> complex:
    """{t, z} - Q(z)."""
    _, t1, t2, t3 = t_jet(ctx, z)
    return schwarzian(t1, t2, t3) - complex(ctx.Q(z))


def contact_residual(ctx: ODEContext, z: complex) -> complex:
    """s dt/dz - W with s = u1^2."""
    _, t1, _, _ = t_jet(ctx, z)
    return complex(ctx.u1(z)) ** 2 * t1 - ctx.W


def legendre_L(ctx: ODEContext, z: complex) -> complex:
    """L = s t - W z = u1 u2 - W z."""
    return complex(ctx.u1(z)) * second_solution(ctx, z) - ctx.W * complex(z)


def legendre_slope_residual(ctx: ODEContext, z: complex, h: float = 1e-5) -> complex:
    """dL/ds - t along the solution path, both derivatives by central
    differences in z."""
    z = complex(z)
    dL = (legendre_L(ctx, z + h) - legendre_L(ctx, z - h)) / (2.0 * h)
    s = lambda x: complex(ctx.u1(x)) ** 2
    ds = (s(z + h) - s(z - h)) / (2.0 * h)
    if abs(ds) < 1e-8:
        raise DomainError("ds/dz vanishes; L is not a function of s here")
    return dL / ds - second_solution(ctx, z) / complex(ctx.u1(z))


def legendre_example_check(W: complex = 1.0, C: complex = 0.0, u: float = 0.3) -> float:
    """|F(u) - closed form| for the cos example."""
    ctx = catalog_context("cos", W, C)
    return abs(prepotential_F(ctx, u) - complex(cos_closed_form(u, W, C)))
