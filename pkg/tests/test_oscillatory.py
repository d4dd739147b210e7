"""Airy reduction and the stationary-phase eigenfunction asymptote."""

import math

import numpy as np
import pytest

from starkscatter import (
    BumpProfile,
    DomainError,
    airy_ai,
    airy_reduction,
    asymptotic_convergence,
    eigenfunction_sample,
    free_eigenfunction,
    stationary_phase_eigenfunction,
)
from starkscatter.oscillatory import airy_reduction_quadrature

_CBRT2 = 2.0 ** (1.0 / 3.0)


class _ZeroProfile:
    support = (np.array([-1.0]), np.array([1.0]))

    def __call__(self, z):
        return 0.0


class _SumProfile:
    def __init__(self, a, b):
        self.a, self.b = a, b
        lo = np.minimum(a.support[0], b.support[0])
        hi = np.maximum(a.support[1], b.support[1])
        self.support = (lo, hi)

    def __call__(self, z):
        return self.a(z) + self.b(z)


class _FlippedProfile:
    def __init__(self, xi):
        self.xi = xi
        lo, hi = xi.support
        self.support = (-hi, -lo)

    def __call__(self, z):
        return self.xi(-np.atleast_1d(np.asarray(z, dtype=float)))


# ---------------------------------------------------------------------------
# airy reduction

def test_airy_reduction_at_origin():
    val = airy_reduction(0.0, [0.0])
    assert val == pytest.approx(_CBRT2 * 2.0 * math.pi * airy_ai(0.0),
                                rel=1e-13)


@pytest.mark.parametrize("w", [-4.0, 4.0])
def test_airy_reduction_against_contour_quadrature(w):
    series = airy_reduction(w, [0.0])
    quadr = airy_reduction_quadrature(w, [0.0])
    assert abs(series - quadr) < 1e-8


def test_airy_reduction_over_argument_range():
    for w in np.linspace(-10.0, 10.0, 21):
        series = airy_reduction(float(w), [0.0])
        quadr = airy_reduction_quadrature(float(w), [0.0])
        assert abs(series - quadr) < 1e-8


def test_airy_reduction_depends_on_zeta_through_modulus():
    a = airy_reduction(3.0, [1.0, 0.5])
    b = airy_reduction(3.0, [-0.5, 1.0])
    assert a == pytest.approx(b, rel=1e-14)
    assert a == pytest.approx(airy_reduction(3.0 - 0.625, [0.0, 0.0]),
                              rel=1e-13)


# ---------------------------------------------------------------------------
# eigenfunction

def test_eigenfunction_vanishes_for_zero_profile():
    assert free_eigenfunction(5.0, [0.0], _ZeroProfile()) == 0.0


def test_eigenfunction_linear_in_profile():
    x, y = 20.0, [1.5]
    xi1 = BumpProfile(0.5, 0.8)
    xi2 = BumpProfile(-0.3, 0.5)
    u1 = free_eigenfunction(x, y, xi1, tol=1e-11)
    u2 = free_eigenfunction(x, y, xi2, tol=1e-11)
    u12 = free_eigenfunction(x, y, _SumProfile(xi1, xi2), tol=1e-11)
    assert u12 == pytest.approx(u1 + u2, rel=1e-8)


def test_eigenfunction_conjugate_symmetry():
    # conj(u[xi]) = u[xi(-.)] for real profiles: reality of the Airy factor
    x, y = 15.0, [0.8]
    xi = BumpProfile(0.7, 0.6)
    u = free_eigenfunction(x, y, xi, tol=1e-11)
    u_flip = free_eigenfunction(x, y, _FlippedProfile(xi), tol=1e-11)
    assert u.conjugate() == pytest.approx(u_flip, rel=1e-9)


def test_eigenfunction_annihilated_by_stark_operator():
    # (-Laplacian/2 - x) u = lam u on a 5-point stencil, O(h^2) residual
    xi = BumpProfile(0.5, 0.8)
    lam = 0.25
    x0, y0 = 30.0, 1.5

    def u(x, y):
        return free_eigenfunction(x, [y], xi, lam=lam, tol=1e-12)

    uc = u(x0, y0)
    residuals = []
    for h in (0.02, 0.01):
        uxx = (u(x0 + h, y0) - 2.0 * uc + u(x0 - h, y0)) / h ** 2
        uyy = (u(x0, y0 + h) - 2.0 * uc + u(x0, y0 - h)) / h ** 2
        residuals.append(abs(-0.5 * (uxx + uyy) - x0 * uc - lam * uc))
    # residual small on the operator scale x0 |u| and second order in h
    assert residuals[1] < 2e-3 * x0 * abs(uc)
    assert residuals[1] / residuals[0] == pytest.approx(0.25, abs=0.1)


# ---------------------------------------------------------------------------
# stationary phase

def test_stationary_phase_single_branch_selection():
    # profile supported on the positive side only: the + branch term alone
    x = 200.0
    xi = BumpProfile(1.5, 1.0)
    y = 0.05 * x
    omega = y / math.sqrt(2.0 * x)
    val = stationary_phase_eigenfunction(x, [y], xi)
    amp = (2.0 * x) ** -0.5 / math.sqrt(2.0 * math.pi)
    assert abs(val) == pytest.approx(amp * xi([omega]), rel=1e-12)


def test_stationary_phase_parity_swap():
    # flipping y is the same as flipping the profile: the critical points swap
    x = 150.0
    xi = BumpProfile(1.2, 0.9)
    v_minus = stationary_phase_eigenfunction(x, [-6.0], xi)
    flipped = stationary_phase_eigenfunction(x, [6.0], _FlippedProfile(xi))
    assert v_minus == pytest.approx(flipped, rel=1e-12)


def test_stationary_phase_accuracy_off_axis():
    xi = BumpProfile(1.5, 2.0)
    s = eigenfunction_sample(400.0, [20.0], xi, tol=1e-11)
    assert s.rel_error < 0.05


def test_stationary_phase_error_decays_with_x():
    xi = BumpProfile(1.5, 2.0)
    exponent, samples = asymptotic_convergence(
        0.05, [50.0, 100.0, 200.0, 400.0], xi, tol=1e-10)
    assert exponent <= -0.5
    errs = [s.rel_error for s in samples]
    # monotone decay up to 10% jitter at any single step
    assert all(b <= 1.1 * a for a, b in zip(errs, errs[1:]))


def test_caustic_domain_error():
    xi = BumpProfile(1.5, 2.0)
    with pytest.raises(DomainError):
        stationary_phase_eigenfunction(10.0, [20.0], xi)
    with pytest.raises(DomainError):
        stationary_phase_eigenfunction(-5.0, [0.0], xi)


def test_dimension_consistency_checks():
    xi = BumpProfile(1.5, 2.0)
    with pytest.raises(DomainError):
        stationary_phase_eigenfunction(100.0, [1.0, 2.0], xi, d=2)
    with pytest.raises(DomainError):
        free_eigenfunction(100.0, [1.0], xi, d=3)


def test_bump_profile_support_and_smoothness():
    xi = BumpProfile(1.5, 2.0)
    lo, hi = xi.support
    assert lo[0] == pytest.approx(-0.5)
    assert hi[0] == pytest.approx(3.5)
    assert xi([3.6]) == 0.0
    assert xi([1.5]) == pytest.approx(math.exp(-1.0))
    with pytest.raises(DomainError):
        BumpProfile(0.0, -1.0)
