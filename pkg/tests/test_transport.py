"""Transport symbol hierarchy along the free flow."""

import numpy as np
import pytest
from scipy.integrate import quad

from starkscatter import (
    DomainError,
    PhasePoint,
    coulomb,
    eval_potential,
    homogeneous,
    symbol_b,
    symbol_b_result,
    symbol_q,
    transport_residual,
    zero_potential,
)
from starkscatter.transport import decay_fit_symbols, symbol_q_parts

POINT = PhasePoint(100.0, [5.0], 15.0, [0.3])


def _flow_quad_b1(spec, p, sign=+1):
    """Oracle: i * integral of q along the free flow by direct quadrature."""
    sgn = 1.0 if sign >= 0 else -1.0

    def integrand(t):
        x = p.x + sgn * t * p.eta + 0.5 * t * t
        y = p.y + sgn * t * p.zeta
        return eval_potential(spec.unsoftened(), x, y)

    head, _ = quad(integrand, 0.0, 1e3, limit=800, epsabs=1e-13, epsrel=1e-13)
    tail, _ = quad(lambda u: integrand(1e3 / u) * 1e3 / u ** 2, 0.0, 1.0,
                   limit=800, epsabs=1e-13, epsrel=1e-13)
    return sgn * 1j * (head + tail)


def test_b1_against_direct_flow_quadrature():
    spec = coulomb(1.0, softening=0.0)
    for p in (POINT, PhasePoint(80.0, [-3.0], 13.0, [-0.2])):
        oracle = _flow_quad_b1(spec, p)
        val = symbol_b(1, p, spec, tol=1e-12)
        assert val == pytest.approx(oracle, rel=1e-9)


def test_b1_incoming_branch_against_quadrature():
    spec = coulomb(1.0, softening=0.0)
    p = PhasePoint(100.0, [5.0], -15.0, [-0.3])
    oracle = _flow_quad_b1(spec, p, sign=-1)
    val = symbol_b(1, p, spec, sign=-1, tol=1e-12)
    assert val == pytest.approx(oracle, rel=1e-9)


def test_branch_flip_symmetry():
    # b1^-(x, y, -eta, -zeta) = -b1^+(x, y, eta, zeta) by time reflection
    spec = coulomb(1.0, softening=0.0)
    plus = symbol_b(1, POINT, spec, sign=+1, tol=1e-11)
    flipped = PhasePoint(POINT.x, POINT.y, -POINT.eta, -POINT.zeta)
    minus = symbol_b(1, flipped, spec, sign=-1, tol=1e-11)
    assert minus == pytest.approx(-plus, rel=1e-9)


def test_b1_linear_in_coupling():
    a = symbol_b(1, POINT, coulomb(1.0), tol=1e-11)
    b = symbol_b(1, POINT, coulomb(2.5), tol=1e-11)
    assert b == pytest.approx(2.5 * a, rel=1e-10)


def test_zero_potential_symbols_vanish():
    spec = zero_potential()
    assert symbol_b(1, POINT, spec) == 0.0
    assert symbol_b(2, POINT, spec) == 0.0
    assert abs(symbol_q(1, POINT, spec)) < 1e-15


def test_symbol_phase_structure():
    # b1 is purely imaginary and q1 = q b1 - lap/2 keeps that phase; b2 is
    # then purely real, alternating with k
    spec = coulomb(1.0)
    b1 = symbol_b(1, POINT, spec, tol=1e-11)
    assert abs(b1.real) < 1e-12 * abs(b1)
    b2 = symbol_b(2, POINT, spec, tol=1e-10)
    assert abs(b2.imag) < 1e-9 * abs(b2)


def test_tail_estimate_bounds_t_max_change():
    spec = coulomb(1.0)
    res = symbol_b_result(1, POINT, spec, t_max=1e4, tol=1e-11)
    res_far = symbol_b_result(1, POINT, spec, t_max=1e5, tol=1e-11)
    assert abs(res.value - res_far.value) <= 2.0 * res.tail_estimate
    assert res_far.tail_estimate < res.tail_estimate


def test_q1_splits_into_potential_and_laplacian_parts():
    spec = coulomb(1.0)
    qb, lap_half = symbol_q_parts(1, POINT, spec, tol=1e-10)
    total = symbol_q(1, POINT, spec, tol=1e-10)
    assert qb + lap_half == pytest.approx(total, rel=1e-8)
    # the Laplacian correction is subleading at this distance
    assert abs(lap_half) < abs(qb)


def test_transport_pde_residual_small():
    spec = coulomb(1.0)
    for k in (1, 2):
        res = transport_residual(k, POINT, spec, h_eta=0.2, tol=1e-9)
        assert res < 1e-4


def test_transport_residual_second_order_in_step():
    spec = coulomb(1.0)
    hs = np.array([0.4, 0.2, 0.1])
    res = np.array([transport_residual(1, POINT, spec, h_eta=h, tol=1e-10)
                    for h in hs])
    slope = np.polyfit(np.log(hs), np.log(res), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.3)


def test_decay_rates_along_outgoing_ray():
    spec = coulomb(1.0)
    x_values = np.geomspace(1e2, 1e4, 7)
    assert decay_fit_symbols(1, spec, which="b", x_values=x_values) == \
        pytest.approx(-0.5, abs=0.05)
    assert decay_fit_symbols(1, spec, which="q", x_values=x_values,
                             tol=1e-8) == pytest.approx(-1.5, abs=0.05)


def test_decay_rate_faster_for_shorter_range():
    spec = homogeneous(1.0, 1.5, softening=0.0)
    x_values = np.geomspace(1e2, 1e4, 5)
    slope = decay_fit_symbols(1, spec, which="b", x_values=x_values)
    # b1 ~ integral of r^{-3/2} along the flow decays faster than coulomb b1
    assert slope < -0.7


def test_symbol_domain_checks():
    spec = coulomb(1.0)
    inside_wrong_branch = PhasePoint(100.0, [5.0], -15.0, [0.3])
    with pytest.raises(DomainError):
        symbol_b(1, inside_wrong_branch, spec, sign=+1)
    with pytest.raises(DomainError):
        symbol_b(0, POINT, spec)
    with pytest.raises(DomainError):
        symbol_b(3, POINT, spec)
    with pytest.raises(DomainError):
        symbol_q(0, POINT, spec)
    with pytest.raises(DomainError):
        transport_residual(0, POINT, spec)
