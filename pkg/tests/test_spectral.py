import math

import numpy as np
import pytest

from annulus import greens as gr
from annulus import spectral as S
from annulus.policy import DomainError
from annulus.sampling import pairs_annulus


def test_eigenvalue_closed_form(dom2):
    L = dom2.L
    mode = S.EigenMode.of(2, -3, L)
    assert mode.lam == 4 * math.pi**2 / L**2 + 9
    assert S.EigenMode.of(1, 0, L).lam > 0
    with pytest.raises(DomainError):
        S.EigenMode.of(0, 1, L)


@pytest.mark.parametrize("p,q", [((1, 1), (1, 2)), ((1, 0), (2, 0)), ((1, 2), (1, -2)), ((2, 3), (1, 3))])
def test_orthogonality(dom2, p, q):
    assert abs(S.mode_inner(p, q, dom2.L)) <= 1e-8


@pytest.mark.parametrize("p", [(1, 0), (1, 1), (2, -3), (3, 2)])
def test_normalization(dom2, p):
    assert S.mode_inner(p, p, dom2.L) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.xfail(strict=True, reason="printed amplitude 2/sqrt(pi L) for n != 0 gives norm 2")
def test_printed_normalization(dom2):
    assert S.mode_inner((1, 1), (1, 1), dom2.L, "printed") == pytest.approx(1.0, abs=1e-8)


def test_normalization_errors(dom2):
    with pytest.raises(DomainError):
        S.eigenfunction_xy(1, 1, 0.1, 0.2, dom2.L, "other")


def test_eigenfunction_dirichlet(dom2):
    th = np.linspace(0.0, 6.0, 5)
    assert np.max(np.abs(S.eigenfunction(2, 1, np.exp(1j * th), dom2))) < 1e-15
    assert np.max(np.abs(S.eigenfunction(2, 1, 2.0 * np.exp(1j * th), dom2))) < 1e-14


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (1, 2), (2, -1)])
def test_laplace_residual(dom2, m, n):
    assert S.laplace_residual(m, n, dom2.L, 0.3, 0.4) <= 1e-5


def test_laplace_residual_high_mode(dom2):
    # the five-point error grows like h^2 lambda; a finer stencil for (3, 3)
    assert S.laplace_residual(3, 3, dom2.L, 0.3, 0.4, h=3e-4) <= 1e-5


@pytest.mark.parametrize("theta", [0.3, 1.7, math.pi])
def test_rotation_invariance(dom2, theta):
    assert S.rotation_defect(1.3 + 0.2j, 1.6 - 0.5j, dom2, 1.5, 60, 60, theta) <= 1e-10


def test_partial_sum_symmetric(dom2):
    z, a = 1.3 + 0.2j, 1.6 - 0.5j
    assert S.eigen_partial_sum(z, a, dom2, 2.0, 80, 80) == pytest.approx(S.eigen_partial_sum(a, z, dom2, 2.0, 80, 80), rel=1e-13)


def test_partial_sum_vanishes_on_boundary(dom2):
    assert abs(S.eigen_partial_sum(np.exp(0.4j), 1.5, dom2, 2.0, 50, 50)) < 1e-14


def test_trend_toward_green(dom2):
    rows = S.eigen_trend(1.2, 1.7, dom2)
    gaps = [r[3] for r in rows]
    assert [r[0] for r in rows] == [2.0, 1.5, 1.2, 1.1]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))


@pytest.mark.xfail(strict=True, reason="G^s at s = 1.1 is 23% from G at this pair; the 5% band does not hold")
def test_five_percent_band(dom2):
    gs = S.eigen_partial_sum(1.2, 1.7, dom2, 1.1, 200, 200)
    g = float(S.theta_greens(1.2, 1.7, dom2))
    assert abs(gs - g) / abs(g) <= 0.05


def test_theta_greens_agreement(dom2):
    z, a = pairs_annulus(100, 2.0, seed=8)
    th = np.asarray(S.theta_greens(z, a, dom2))
    pr = np.asarray(gr.G(z, a, dom2, formula="product"))
    assert np.max(np.abs(th - pr)) <= 1e-9


def test_theta_greens_boundary_and_symmetry(dom2):
    a = 1.4 + 0.3j
    b = np.exp(1j * np.linspace(0.0, 6.0, 9))
    assert np.max(np.abs(S.theta_greens(b, a, dom2))) <= 1e-8
    assert np.max(np.abs(S.theta_greens(2.0 * b, a, dom2))) <= 1e-8
    z = 1.7 - 0.6j
    assert abs(S.theta_greens(z, a, dom2) - S.theta_greens(a, z, dom2)) <= 1e-10


def test_partial_sum_errors(dom2):
    with pytest.raises(DomainError):
        S.eigen_partial_sum(1.2, 1.7, dom2, 1.0, 10, 10)
    with pytest.raises(DomainError):
        S.eigen_partial_sum(1.2, 1.7, dom2, 3.5, 10, 10)
    with pytest.raises(DomainError):
        S.eigen_partial_sum(1.2, 1.7, dom2, 2.0, 401, 10)
    with pytest.raises(DomainError):
        S.eigen_partial_sum(1.2, 1.7, dom2, 2.0, 0, 10)
