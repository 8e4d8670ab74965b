"""Hot q-series kernels.

Every kernel exists twice: an explicit-loop version that numba compiles, and a
vectorized numpy version. ``ANNULUS_NUMBA=0`` in the environment (read once at
import) selects the numpy versions; so does a missing numba install.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("ANNULUS_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# loop kernels (numba targets)


def _weierstrass_sums_loop(v, lq2, nterms):
    # a_n = q2^n / (1 - q2^n) with q2 = exp(lq2); sums needed by wp, wp',
    # zeta and log sigma. Powers are formed as exp(n*lq2 +- 2inv) so that
    # large |Im v| never overflows on its own.
    m = v.shape[0]
    s_wp = np.zeros(m, dtype=np.complex128)
    s_zeta = np.zeros(m, dtype=np.complex128)
    s_dwp = np.zeros(m, dtype=np.complex128)
    s_log = np.zeros(m, dtype=np.complex128)
    for i in range(m):
        acc_wp = 0j
        acc_z = 0j
        acc_d = 0j
        acc_l = 0j
        for n in range(1, nterms + 1):
            qn = np.exp(n * lq2)
            xn = np.exp(n * (lq2 + 2j * v[i]))
            yn = np.exp(n * (lq2 - 2j * v[i]))
            d = 1.0 - qn
            acc_wp += n * 0.5 * (xn + yn) / d
            acc_z += -0.5j * (xn - yn) / d
            acc_d += n * n * (-0.5j) * (xn - yn) / d
            # the sigma product has factors (1 - q2^n e^{2iv})(1 - q2^n e^{-2iv})
            un = np.exp(n * lq2 + 2j * v[i])
            wn = np.exp(n * lq2 - 2j * v[i])
            acc_l += np.log(1.0 - un) + np.log(1.0 - wn) - 2.0 * np.log(d)
        s_wp[i] = acc_wp
        s_zeta[i] = acc_z
        s_dwp[i] = acc_d
        s_log[i] = acc_l
    return s_wp, s_zeta, s_dwp, s_log


def _theta1_sum_loop(z, tau, nterms):
    m = z.shape[0]
    out = np.zeros(m, dtype=np.complex128)
    for i in range(m):
        acc = 0j
        sgn = 1.0
        for n in range(nterms):
            h = n + 0.5
            acc += sgn * np.exp(1j * np.pi * tau * h * h) * np.sin((2 * n + 1) * np.pi * z[i])
            sgn = -sgn
        out[i] = -2.0 * acc
    return out


def _theta1_prod_loop(z, tau, nterms):
    m = z.shape[0]
    out = np.zeros(m, dtype=np.complex128)
    q = np.exp(2j * np.pi * tau)
    for i in range(m):
        c2 = np.cos(2.0 * np.pi * z[i])
        acc = 1.0 + 0j
        qn = 1.0 + 0j
        for n in range(1, nterms + 1):
            qn = qn * q
            acc *= (1.0 - qn) * (1.0 - 2.0 * qn * c2 + qn * qn)
        out[i] = -2.0 * np.exp(0.25j * np.pi * tau) * np.sin(np.pi * z[i]) * acc
    return out


def _image_product_loop(z, a, R, nterms):
    # log|prod (R^2n - z/a)(R^2n - a/z) / ((R^2n - z abar)(R^2n - 1/(z abar)))|
    m = z.shape[0]
    out = np.zeros(m)
    for i in range(m):
        w1 = z[i] / a[i]
        w2 = z[i] * np.conj(a[i])
        acc = 0.0
        rn = 1.0
        for n in range(1, nterms + 1):
            rn = rn * R * R
            acc += np.log(np.abs((1.0 - w1 / rn) * (1.0 - 1.0 / (w1 * rn))))
            acc -= np.log(np.abs((1.0 - w2 / rn) * (1.0 - 1.0 / (w2 * rn))))
        out[i] = acc
    return out


def _divisor_table_loop(nmax, r, s):
    # c[N] = sum over d | N of d^r (N/d)^s, as float64
    c = np.zeros(nmax + 1)
    for d in range(1, nmax + 1):
        dr = float(d) ** r
        k = 1
        while d * k <= nmax:
            c[d * k] += dr * float(k) ** s
            k += 1
    return c


# --------------------------------------------------------------------------
# numpy kernels (fallback)


def _weierstrass_sums_np(v, lq2, nterms):
    n = np.arange(1, nterms + 1)
    qn = np.exp(n * lq2)
    d = 1.0 - qn
    xn = np.exp(np.outer(2j * v, n) + n * lq2)
    yn = np.exp(np.outer(-2j * v, n) + n * lq2)
    s_wp = (0.5 * (xn + yn) * (n / d)).sum(axis=1)
    s_zeta = (-0.5j * (xn - yn) / d).sum(axis=1)
    s_dwp = (-0.5j * (xn - yn) * (n * n / d)).sum(axis=1)
    un = np.exp(np.add.outer(2j * v, n * lq2))
    wn = np.exp(np.add.outer(-2j * v, n * lq2))
    s_log = (np.log(1.0 - un) + np.log(1.0 - wn) - 2.0 * np.log(d)).sum(axis=1)
    return s_wp, s_zeta, s_dwp, s_log


def _theta1_sum_np(z, tau, nterms):
    n = np.arange(nterms)
    h = n + 0.5
    sgn = np.where(n % 2 == 0, 1.0, -1.0)
    w = sgn * np.exp(1j * np.pi * tau * h * h)
    return -2.0 * (np.sin(np.outer(z, 2 * n + 1) * np.pi) * w).sum(axis=1)


def _theta1_prod_np(z, tau, nterms):
    q = np.exp(2j * np.pi * tau)
    qn = q ** np.arange(1, nterms + 1)
    c2 = np.cos(2.0 * np.pi * z)[:, None]
    fac = (1.0 - qn) * (1.0 - 2.0 * qn * c2 + qn * qn)
    return -2.0 * np.exp(0.25j * np.pi * tau) * np.sin(np.pi * z) * fac.prod(axis=1)


def _image_product_np(z, a, R, nterms):
    rn = (R * R) ** np.arange(1, nterms + 1)
    w1 = (z / a)[:, None]
    w2 = (z * np.conj(a))[:, None]
    num = np.log(np.abs((1.0 - w1 / rn) * (1.0 - 1.0 / (w1 * rn))))
    den = np.log(np.abs((1.0 - w2 / rn) * (1.0 - 1.0 / (w2 * rn))))
    return (num - den).sum(axis=1)


def _divisor_table_np(nmax, r, s):
    c = np.zeros(nmax + 1)
    for d in range(1, nmax + 1):
        k = np.arange(1, nmax // d + 1, dtype=float)
        c[d::d] += float(d) ** r * k ** s
    return c


if USE_NUMBA:
    weierstrass_sums = njit(cache=True)(_weierstrass_sums_loop)
    theta1_sum = njit(cache=True)(_theta1_sum_loop)
    theta1_prod = njit(cache=True)(_theta1_prod_loop)
    image_product = njit(cache=True)(_image_product_loop)
    divisor_table = njit(cache=True)(_divisor_table_loop)
else:
    weierstrass_sums = _weierstrass_sums_np
    theta1_sum = _theta1_sum_np
    theta1_prod = _theta1_prod_np
    image_product = _image_product_np
    divisor_table = _divisor_table_np

# both variants stay importable for the benchmark and parity tests
LOOP_KERNELS = {
    "weierstrass_sums": _weierstrass_sums_loop,
    "theta1_sum": _theta1_sum_loop,
    "theta1_prod": _theta1_prod_loop,
    "image_product": _image_product_loop,
    "divisor_table": _divisor_table_loop,
}
NUMPY_KERNELS = {
    "weierstrass_sums": _weierstrass_sums_np,
    "theta1_sum": _theta1_sum_np,
    "theta1_prod": _theta1_prod_np,
    "image_product": _image_product_np,
    "divisor_table": _divisor_table_np,
}
