import math

import mpmath as mp
import numpy as np
import pytest

from annulus import elliptic as el
from annulus.policy import DomainError, PoleError, PrecisionError

PI = math.pi
RADII = (1.05, 1.5, 2.0, 4.0, 30.0, 500.0)


def lattice_eta1_oracle(L, N=60):
    """zeta(omega1) from the Weierstrass double series, Eisenstein summation
    over rectangles with Richardson extrapolation in the cutoff."""
    w1, w2 = mp.mpf(L), mp.mpc(0, mp.pi)

    def zeta_sum(z, M):
        s = 1 / z
        for m in range(-M, M + 1):
            # sum over n in closed form: the row m is a cot-type sum
            w = 2 * m * w1
            for n in range(-M, M + 1):
                if m == 0 and n == 0:
                    continue
                om = w + 2 * n * w2
                s += 1 / (z - om) + 1 / om + z / om**2
        return s

    # zeta(omega1) - omega1 * G1 is sensitive to summation order, so use
    # 2 eta1 = zeta(z + 2 w1) - zeta(z) at a small z and sum with M, 2M
    z = mp.mpf("0.01")
    v1 = zeta_sum(z + 2 * w1, N) - zeta_sum(z, N)
    v2 = zeta_sum(z + 2 * w1, 2 * N) - zeta_sum(z, 2 * N)
    return complex((2 * v2 - v1) / 2)


def test_make_lattice_R_e():
    lat = el.make_lattice(math.e)
    assert lat.omega1 == pytest.approx(1.0, abs=1e-15)
    assert lat.omega2 == pytest.approx(1j * PI, abs=1e-15)
    assert lat.tau == pytest.approx(1j * PI, abs=1e-15)


@pytest.mark.parametrize("R", RADII)
def test_legendre_and_signs(R):
    lat = el.make_lattice(R)
    assert lat.legendre_residual <= 1e-12
    assert abs(lat.eta1.imag) <= 1e-14 * abs(lat.eta1)
    # eta1 = pi^2 E2(tau) / (12 omega1) and E2(iy) changes sign near y = 0.523,
    # so eta1 > 0 only for log R below about 6
    assert (lat.eta1.real > 0) == (R < 400.0)
    assert abs(lat.eta2.real) <= 1e-12 * abs(lat.eta2)
    assert abs(lat.q) < 1


def test_eta1_against_mpmath_lattice_parameters():
    # eta1 = -(pi^2 / (12 omega1)) theta1'''(0)/theta1'(0) with nome exp(i pi tau)
    for R in (1.5, 2.0, 4.0, 500.0):
        L = math.log(R)
        nome = mp.exp(-mp.pi**2 / mp.mpf(L))
        ratio = mp.jtheta(1, 0, nome, 3) / mp.jtheta(1, 0, nome, 1)
        want = float(-(mp.pi**2) / (12 * L) * ratio)
        assert el.make_lattice(R).eta1.real == pytest.approx(want, rel=1e-12)


@pytest.mark.slow
def test_eta1_double_lattice_sum_R2():
    got = el.make_lattice(2.0).eta1
    want = lattice_eta1_oracle(math.log(2.0), N=40)
    assert abs(got - want) <= 2e-4 * abs(want)


def test_make_lattice_errors():
    with pytest.raises(DomainError):
        el.make_lattice(1.0)
    with pytest.raises(DomainError):
        el.make_lattice(0.5)
    with pytest.raises(PrecisionError):
        el.make_lattice(1.0 + 1e-7)


def test_theta1_against_mpmath(rng):
    for R in (1.5, 2.0, 4.0):
        tau = 1j * PI / math.log(R)
        z = rng.uniform(-0.5, 0.5, 20) + 1j * rng.uniform(-0.3, 0.3, 20)
        nome = mp.exp(1j * mp.pi * tau)
        want = np.array([complex(-mp.jtheta(1, mp.pi * zz, nome)) for zz in z])
        got = el.theta1(z, tau)
        assert np.max(np.abs(got - want) / np.abs(want)) <= 1e-12


def test_theta1_sum_vs_product(rng):
    tau = 1j * PI / math.log(2.0)
    z = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-0.5, 0.5, 50)
    s, p = el.theta1(z, tau, "sum"), el.theta1(z, tau, "product")
    assert np.max(np.abs(s - p) / np.abs(s)) <= 1e-12


def test_theta1_zero_and_antiperiod(rng):
    tau = 1j * PI / math.log(2.0)
    assert el.theta1(0.0, tau) == 0
    z = rng.uniform(-0.5, 0.5, 10) + 0.1j
    assert np.max(np.abs(el.theta1(z + 1, tau) + el.theta1(z, tau))) <= 1e-13 * np.max(np.abs(el.theta1(z, tau)))


def test_theta1_derivative_at_zero_eta_cubed():
    tau = 1j * PI / math.log(3.0)
    h = 1e-6
    d = (el.theta1(h, tau) - el.theta1(-h, tau)) / (2 * h)
    assert d == pytest.approx(-2 * PI * el.dedekind_eta(tau) ** 3, rel=1e-9)


def test_theta1_upper_half_plane_required():
    with pytest.raises(DomainError):
        el.theta1(0.1, -1j)
    with pytest.raises(DomainError):
        el.theta_char(0.5, 0.5, 0.1, 0.3)


def test_theta1_large_nome_uses_modular_swap():
    # Im tau small: |q| > 0.5, evaluated through tau -> -1/tau
    tau = 0.05j
    z = 0.01 + 0.003j
    want = complex(-mp.jtheta(1, mp.pi * z, mp.exp(1j * mp.pi * tau)))
    assert el.theta1(z, tau) == pytest.approx(want, rel=1e-10)


def test_theta_char(rng):
    tau = 1j * PI / math.log(2.0)
    assert abs(el.theta_char(0.5, 0.5, 0.0, tau)) <= 1e-15
    N = 30
    want = sum(np.exp(1j * PI * m * m * tau) for m in range(-N, N + 1))
    assert el.theta_char(0.0, 0.0, 0.0, tau) == pytest.approx(want, rel=1e-15)
    w = rng.uniform(-0.5, 0.5, 50) + 1j * rng.uniform(-0.2, 0.2, 50)
    assert np.max(np.abs(el.theta_char(0.5, 0.5, w, tau) - el.theta1(w, tau))) <= 1e-13


def test_dedekind_eta_against_mpmath():
    for tau in (1j, 0.3 + 0.8j, 1j * PI / math.log(2.0)):
        q = mp.exp(2j * mp.pi * tau)
        want = complex(mp.exp(2j * mp.pi * tau / 24) * mp.qp(q))
        assert el.dedekind_eta(tau) == pytest.approx(want, rel=1e-13)


def _samples(lat, n=12):
    u = np.linspace(0.13, 0.87, n)
    s = (u[:, None] * lat.omega1 + (u[None, :] - 0.5) * lat.omega2).ravel()
    halves = np.array([0, lat.omega1, lat.omega2, lat.omega1 + lat.omega2, lat.omega1 - lat.omega2])
    far = np.min(np.abs(s[:, None] - halves[None, :]), axis=1) > 0.1 * min(lat.omega1, abs(lat.omega2))
    return s[far]


@pytest.mark.parametrize("R", (1.5, 2.0, 4.0, 50.0))
def test_parity_and_normalization(R):
    lat = el.make_lattice(R)
    t = _samples(lat)
    assert np.max(np.abs(el.wp(-t, lat) - el.wp(t, lat))) <= 1e-11 * np.max(np.abs(el.wp(t, lat)))
    assert np.max(np.abs(el.w_zeta(-t, lat) + el.w_zeta(t, lat))) <= 1e-11 * np.max(np.abs(el.w_zeta(t, lat)))
    for h in (1e-3, 1e-5):
        assert el.w_sigma(h, lat) / h == pytest.approx(1.0, abs=10 * h * h * abs(lat.g2))


@pytest.mark.parametrize("R", (1.5, 2.0, 4.0, 50.0))
def test_wp_differential_equation(R):
    lat = el.make_lattice(R)
    t = _samples(lat)
    p, dp = el.wp(t, lat), el.wp_prime(t, lat)
    rhs = 4 * p**3 - lat.g2 * p - lat.g3
    assert np.max(np.abs(dp**2 - rhs) / np.abs(dp) ** 2) <= 1e-9


def test_wp_against_mpmath_theta():
    # independent oracle: wp = -(log sigma)'' with sigma built on mpmath's theta1
    R = 2.0
    lat = el.make_lattice(R)
    L = math.log(R)
    nome = mp.exp(-mp.pi**2 / mp.mpf(L))
    eta1 = -(mp.pi**2) / (12 * L) * mp.jtheta(1, 0, nome, 3) / mp.jtheta(1, 0, nome, 1)
    for t in (0.3 + 0.4j, 0.5 - 1.1j, 0.2 + 2.0j):
        v = mp.pi * mp.mpc(t) / (2 * L)
        th1 = mp.jtheta(1, v, nome)
        d1 = mp.jtheta(1, v, nome, 1)
        d2 = mp.jtheta(1, v, nome, 2)
        # wp = -(d/dt)^2 log theta1(v) - eta1/omega1
        lg2 = (d2 * th1 - d1**2) / th1**2 * (mp.pi / (2 * L)) ** 2
        want = complex(-lg2 - eta1 / L)
        assert el.wp(t, lat) == pytest.approx(want, rel=1e-11)


@pytest.mark.parametrize("R", (2.0, 50.0))
def test_quasi_periodicity(R):
    lat = el.make_lattice(R)
    t = _samples(lat)
    for w, eta in ((lat.omega1, lat.eta1), (lat.omega2, lat.eta2)):
        assert np.max(np.abs(el.w_zeta(t + 2 * w, lat) - el.w_zeta(t, lat) - 2 * eta)) <= 1e-10
        ratio = el.w_sigma(t + 2 * w, lat) / (-el.w_sigma(t, lat) * np.exp(2 * eta * (t + w)))
        assert np.max(np.abs(ratio - 1)) <= 1e-10


def test_fd_relations(rng):
    lat = el.make_lattice(2.0)
    t = _samples(lat)[:20]
    h = 1e-5
    dz = (el.w_zeta(t + h, lat) - el.w_zeta(t - h, lat)) / (2 * h)
    assert np.max(np.abs(dz + el.wp(t, lat)) / np.abs(el.wp(t, lat))) <= 1e-6
    ds = (el.w_sigma(t + h, lat) - el.w_sigma(t - h, lat)) / (2 * h) / el.w_sigma(t, lat)
    assert np.max(np.abs(ds - el.w_zeta(t, lat)) / np.abs(el.w_zeta(t, lat))) <= 1e-6
    dp = (el.wp(t + h, lat) - el.wp(t - h, lat)) / (2 * h)
    assert np.max(np.abs(dp - el.wp_prime(t, lat)) / np.abs(el.wp_prime(t, lat))) <= 1e-6


def test_conjugation_symmetry():
    lat = el.make_lattice(2.0)
    t = _samples(lat)
    assert np.max(np.abs(el.wp(np.conj(t), lat) - np.conj(el.wp(t, lat)))) <= 1e-11 * np.max(np.abs(el.wp(t, lat)))
    assert lat.g2.imag == 0 and lat.g3.imag == 0


def test_pole_error():
    lat = el.make_lattice(2.0)
    for t in (0.0, 2 * lat.omega1, 2 * lat.omega2 + 1e-12):
        with pytest.raises(PoleError):
            el.wp(t, lat)
        with pytest.raises(PoleError):
            el.w_zeta(t, lat)
    assert el.w_sigma(0.0, lat) == 0


def test_frame_swap_continuity():
    # the working frame changes at log R = pi; values must be continuous
    for f in (el.wp, el.w_zeta):
        t = 0.37 + 0.61j
        a = f(t, el.make_lattice(math.exp(PI) * (1 - 1e-9)))
        b = f(t, el.make_lattice(math.exp(PI) * (1 + 1e-9)))
        assert abs(a - b) <= 1e-7 * abs(a)


def test_determinism():
    lat = el.make_lattice(2.0)
    t = _samples(lat)
    assert np.array_equal(el.wp(t, lat), el.wp(t, lat))


def test_prime_form(dom2):
    a = 1.3 + 0.4j
    assert abs(el.prime_form(a, a, dom2)) <= 1e-15
    for h in (1e-4, 1e-6):
        z = a * np.exp(h)
        assert el.prime_form(z, a, dom2) / (np.log(z) - np.log(a)) == pytest.approx(1.0, abs=h)
    with pytest.raises(DomainError):
        el.prime_form(0.0, a, dom2)
    with pytest.raises(DomainError):
        el.prime_form(3.0, a, dom2)


def test_prime_form_antisymmetry(dom2, rng):
    # sigma is odd and the exponential factor even in log(z/a)
    z = 1.1 + 0.3j
    for a in (1.5 - 0.2j, -1.2 + 0.6j, 0.3 + 1.6j):
        assert el.prime_form(z, a, dom2) == pytest.approx(-el.prime_form(a, z, dom2), rel=1e-12)
