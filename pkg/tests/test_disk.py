import math

import numpy as np
import pytest

from annulus import disk as dk
from annulus.policy import DomainError, SingularityError
from annulus.sampling import disk_points

ZETAS = [0.0, 0.3 + 0.1j, -0.5j, 0.7 * np.exp(2.0j)]


def test_disk_class():
    d = dk.Disk(2.0)
    assert d.contains(1.5) and not d.contains(2.0)
    assert d.distance(0.5) == pytest.approx(1.5)
    # boundary value and symmetry of G
    assert abs(d.G(2.0 * np.exp(0.3j), 0.4)) < 1e-14
    assert d.G(0.3, 1.1j) == pytest.approx(d.G(1.1j, 0.3), rel=1e-13)
    with pytest.raises(DomainError):
        dk.Disk(0.0)
    with pytest.raises(SingularityError):
        d.G(0.2, 0.2)


def test_disk_G_derivatives():
    d = dk.UNIT_DISK
    a, z, h = 0.2 - 0.3j, 0.5 + 0.1j, 1e-6
    gx = (d.G(z + h, a) - d.G(z - h, a)) / (2 * h)
    gy = (d.G(z + 1j * h, a) - d.G(z - 1j * h, a)) / (2 * h)
    assert abs(d.G_z(z, a) - 0.5 * (gx - 1j * gy)) < 1e-8
    assert abs(d.G_zz(z, a) - (d.G_z(z + h, a) - d.G_z(z - h, a)) / (2 * h)) < 1e-7


@pytest.mark.parametrize("kind", ["neumann", "hydro_greens", "k_harmonic"])
def test_real_kernels_symmetric(kind):
    z, s = 0.4 + 0.2j, -0.1 + 0.6j
    assert dk.eval_kernel(kind, z, s) == pytest.approx(dk.eval_kernel(kind, s, z), rel=1e-13)


def test_k_harmonic_closed_form():
    z, s = 0.4 + 0.2j, -0.1 + 0.6j
    assert dk.eval_kernel("k_harmonic", z, s) == pytest.approx(-math.log(abs(1 - z * np.conj(s))) / math.pi)
    # K is holomorphic in z with real part pi k
    assert dk.eval_kernel("K_dirichlet", z, s).real == pytest.approx(dk.eval_kernel("k_harmonic", z, s), rel=1e-13)


def test_hydro_greens_is_dirichlet_green():
    z, s = 0.4 + 0.2j, -0.1 + 0.6j
    assert dk.eval_kernel("hydro_greens", z, s) == pytest.approx(dk.UNIT_DISK.G(z, s), rel=1e-13)


def test_L_adjoint_symmetry():
    # exp(-pi L) = z - zeta is antisymmetric, so its modulus is symmetric
    z, s = 0.4 + 0.2j, -0.1 + 0.6j
    e1 = np.exp(-math.pi * dk.eval_kernel("L_adjoint", z, s))
    e2 = np.exp(-math.pi * dk.eval_kernel("L_adjoint", s, z))
    assert abs(e1 + e2) < 1e-14
    assert abs(abs(e1) - abs(e2)) < 1e-14


def test_kernel_errors():
    with pytest.raises(DomainError):
        dk.eval_kernel("poisson", 0.1, 0.2)
    with pytest.raises(DomainError):
        dk.eval_kernel("neumann", 1.0, 0.2)
    with pytest.raises(SingularityError):
        dk.eval_kernel("neumann", 0.3, 0.3)
    # the smooth kernels are finite on the diagonal
    assert np.isfinite(dk.eval_kernel("k_harmonic", 0.3, 0.3))


@pytest.mark.parametrize("zeta", ZETAS)
def test_neumann_normal_derivative(zeta):
    assert np.max(np.abs(dk.neumann_normal_derivative(zeta) + 1.0)) < 1e-5


def test_neumann_dz_fd():
    z, s, h = 0.3 - 0.2j, 0.1 + 0.5j, 1e-6
    N = lambda p: dk.eval_kernel("neumann", p, s)
    fd = 0.5 * ((N(z + h) - N(z - h)) - 1j * (N(z + 1j * h) - N(z - 1j * h))) / (2 * h)
    assert abs(dk.neumann_dz(z, s) - fd) < 1e-8


@pytest.mark.parametrize("zeta", ZETAS)
def test_connection_boundary(zeta):
    assert dk.connection_boundary_residual(zeta) < 1e-12


def test_polar_grid_area():
    z, w = dk.polar_grid()
    assert np.sum(w) == pytest.approx(math.pi, rel=1e-13)
    assert np.sum(w * np.abs(z) ** 2) == pytest.approx(math.pi / 2, rel=1e-13)
    with pytest.raises(ValueError):
        w[0] = 1.0


@pytest.mark.parametrize("coeffs", [(0, 1), (0, 0, 1), (0, 0, 0, -1j), (3.0,)])
def test_reproduce_harmonic(coeffs):
    u = dk.HarmonicPoly(coeffs)
    for zt in disk_points(6, 0.8, seed=3):
        lhs, rhs = dk.reproduce_harmonic(u, zt)
        assert abs(lhs - rhs) < 1e-5
    if len(coeffs) == 1:
        assert abs(dk.reproduce_harmonic(u, 0.2)[0]) < 1e-14


def test_dirichlet_inner_energy():
    # D(Re z^k) = k pi
    for k in (1, 2, 4):
        c = [0] * k + [1]
        u = dk.HarmonicPoly(tuple(c))
        assert dk.dirichlet_inner(u.u_z, u.u_z) == pytest.approx(k * math.pi, rel=1e-12)


@pytest.mark.parametrize("deg", range(9))
def test_bergman_reproduce_monomials(deg):
    c = np.zeros(deg + 1)
    c[deg] = 1.0
    for zt in disk_points(6, 0.8, seed=4):
        lhs, rhs = dk.bergman_reproduce(c, zt)
        assert abs(lhs - rhs) < 1e-6
    red = dk.bergman_reproduce(c, 0.3j, m="reduced")
    assert red == dk.bergman_reproduce(c, 0.3j)


def test_bergman_disk_hermitian():
    z, s = 0.3 + 0.2j, -0.4j
    assert abs(dk.bergman_disk(z, s) - np.conj(dk.bergman_disk(s, z))) < 1e-15
    assert dk.bergman_disk(0.0, 0.0) == pytest.approx(1.0 / math.pi)


def test_bergman_reproduce_errors():
    with pytest.raises(DomainError):
        dk.bergman_reproduce(np.ones(10), 0.1)
    with pytest.raises(DomainError):
        dk.bergman_reproduce([1.0], 0.1, m="half")
    with pytest.raises(DomainError):
        dk.bergman_reproduce([1.0], 1.2)


@pytest.mark.parametrize("zeta", [2.0 + 0.5j, -1.5j, 3.0])
def test_exterior_residues(zeta):
    rep = dk.exterior_neumann_check(zeta)
    assert abs(rep.at_zeta - 1.0) < 1e-8
    assert abs(rep.at_reflection - 1.0) < 1e-8
    assert abs(rep.at_infinity + 2.0) < 1e-8
    assert abs(rep.total) < 1e-8


def test_exterior_needs_exterior_point():
    with pytest.raises(DomainError):
        dk.exterior_neumann_check(0.5)


def test_contour_residue_simple_pole():
    assert abs(dk.contour_residue(lambda w: 3.0 / (w - 0.2), 0.2, 0.1) - 3.0) < 1e-14
    assert abs(dk.contour_residue(lambda w: w**2, 0.0, 0.5)) < 1e-14


@pytest.mark.parametrize("zeta", [0.0, 0.3 + 0.2j, -0.6])
def test_q_connection_vanishes_on_disk(zeta):
    # log|1 - z conj zeta| splits into functions of (z, conj zeta) and (conj z, zeta)
    assert abs(dk.ell_fd(zeta)) < 1e-8
