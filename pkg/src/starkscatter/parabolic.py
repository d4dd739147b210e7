"""Parabolic coordinates, the phase f^3/3 and the exact eikonal phase.

Coordinates are (f, g) with f = sqrt(mollify(r + x)) and g = y / f.  In the
identity regime r + x > 2 they satisfy f^2 + g^2 = 2r, f^2 - g^2 = 2x and
f |g| = |y|.  The exact phase solves the eikonal equation
|grad|^2 / 2 = x and is defined for x > 0, x^2 > y^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Relative margin below which x^2 - y^2 counts as caustic.
_CAUSTIC_MARGIN = 1e-12


@dataclass(frozen=True)
class ParabolicPoint:
    f: float
    g: np.ndarray

    @property
    def d(self) -> int:
        return 1 + self.g.size


@dataclass(frozen=True)
class PhaseData:
    """Value, gradient, Hessian and Laplacian of a phase function."""

    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    laplacian: float


def mollifier(t: float) -> float:
    """Smooth convex interpolation: 1 below 1/2, identity above 3/2.

    The blend is the integral of a quintic smoothstep, which makes the
    function C^2 and convex; its values inside the blend interval are an
    implementation detail no identity depends on.
    """
    if t <= 0.5:
        return 1.0
    if t >= 1.5:
        return float(t)
    v = t - 0.5
    return 1.0 + v ** 4 * (2.5 - 3.0 * v + v * v)


def mollifier_deriv(t: float) -> float:
    if t <= 0.5:
        return 0.0
    if t >= 1.5:
        return 1.0
    v = t - 0.5
    # quintic smoothstep
    return v ** 3 * (10.0 - 15.0 * v + 6.0 * v * v)


def to_parabolic(x: float, y) -> ParabolicPoint:
    """Map (x, y) to the mollified parabolic coordinates (f, g)."""
    y = np.asarray(y, dtype=float)
    r = float(np.hypot(x, np.linalg.norm(y)))
    f = float(np.sqrt(mollifier(r + x)))
    return ParabolicPoint(f=f, g=y / f)


def _require_identity_regime(x: float, y: np.ndarray) -> float:
    r = float(np.hypot(x, np.linalg.norm(y)))
    if r + x <= 2.0:
        raise DomainError("r + x <= 2: outside the parabolic identity regime")
    return r


def grad_f(x: float, y) -> np.ndarray:
    """Gradient of f = sqrt(mollify(r + x)) in (x, y)."""
    y = np.asarray(y, dtype=float)
    r = float(np.hypot(x, np.linalg.norm(y)))
    f2 = mollifier(r + x)
    fp = mollifier_deriv(r + x)
    f = np.sqrt(f2)
    out = np.empty(1 + y.size)
    out[0] = fp * (x / r + 1.0) / (2.0 * f)
    out[1:] = fp * (y / r) / (2.0 * f)
    return out


def grad_g(x: float, y) -> np.ndarray:
    """Jacobian of g = y / f: rows are components g_i, columns (x, y)."""
    y = np.asarray(y, dtype=float)
    f = to_parabolic(x, y).f
    gf = grad_f(x, y)
    n = y.size
    out = np.zeros((n, 1 + n))
    for i in range(n):
        out[i, :] = -y[i] / f ** 2 * gf
        out[i, 1 + i] += 1.0 / f
    return out


def jacobian_det(x: float, y, d: int | None = None) -> float:
    """|det| of the coordinate change (x, y) -> (f, g): f^{2-d}/(f^2+g^2)."""
    y = np.asarray(y, dtype=float)
    if d is None:
        d = 1 + y.size
    elif d != 1 + y.size:
        raise DomainError("dimension inconsistent with the y block")
    _require_identity_regime(x, y)
    p = to_parabolic(x, y)
    return p.f ** (2 - d) / (p.f ** 2 + float(np.dot(p.g, p.g)))


def theta_calculus(x: float, y, d: int | None = None) -> PhaseData:
    """Value, gradient, Hessian and Laplacian of f^3/3 (identity regime)."""
    y = np.asarray(y, dtype=float)
    if d is None:
        d = 1 + y.size
    elif d != 1 + y.size:
        raise DomainError("dimension inconsistent with the y block")
    r = _require_identity_regime(x, y)
    f = np.sqrt(r + x)

    value = f ** 3 / 3.0
    grad = np.empty(d)
    grad[0] = f ** 3 / (2.0 * r)
    grad[1:] = f * y / (2.0 * r)

    hess = np.empty((d, d))
    hess[0, 0] = -0.5 * x * f ** 3 / r ** 3 + 0.75 * f ** 3 / r ** 2
    mixed = -0.5 * y * f ** 3 / r ** 3 + 0.75 * y * f / r ** 2
    hess[0, 1:] = mixed
    hess[1:, 0] = mixed
    yy = np.outer(y, y)
    hess[1:, 1:] = (-0.5 * yy * f / r ** 3 + 0.25 * yy / (r ** 2 * f)
                    + 0.5 * f / r * np.eye(d - 1))
    return PhaseData(value=value, gradient=grad, hessian=hess,
                     laplacian=0.5 * d * f / r)


def _eikonal_domain(x: float, y: np.ndarray) -> float:
    y_sq = float(np.dot(y, y))
    disc = x * x - y_sq
    if x <= 0.0 or disc <= _CAUSTIC_MARGIN * x * x:
        raise DomainError("caustic region: requires x > 0 and x^2 > y^2")
    return np.sqrt(disc)


def theta1_calculus(x: float, y) -> PhaseData:
    """The exact eikonal phase with gradient and Hessian in closed form."""
    y = np.asarray(y, dtype=float)
    d = 1 + y.size
    w = _eikonal_domain(x, y)          # (x^2 - y^2)^{1/2}
    sp = np.sqrt(x + w)                # sqrt(x + w)
    sm = np.sqrt(max(x - w, 0.0))      # sqrt(x - w)

    value = (4.0 / 3.0) * sp * (x - 0.5 * w)
    grad = np.empty(d)
    grad[0] = sp
    grad[1:] = sp * y / (x + w)

    hess = np.empty((d, d))
    hess[0, 0] = 0.5 * sp / w
    ynorm = float(np.linalg.norm(y))
    if ynorm == 0.0:
        # axial limit: Hessian is sqrt(2x)/(2x) times the identity
        hess[:, :] = np.eye(d) * (0.5 * sp / w)
    else:
        yhat = y / ynorm
        mixed = -0.5 * yhat * sm / w
        hess[0, 1:] = mixed
        hess[1:, 0] = mixed
        proj = np.outer(yhat, yhat)
        hess[1:, 1:] = (0.5 * proj * sp / w
                        + sm / ynorm * (np.eye(d - 1) - proj))
    return PhaseData(value=value, gradient=grad, hessian=hess,
                     laplacian=float(np.trace(hess)))


def theta1_value(x: float, y) -> float:
    y = np.asarray(y, dtype=float)
    w = _eikonal_domain(x, y)
    return (4.0 / 3.0) * np.sqrt(x + w) * (x - 0.5 * w)


def theta1_minus_theta(x: float, y) -> float:
    """Difference between the exact phase and f^3/3; of order f^3 |y/x|^4."""
    y = np.asarray(y, dtype=float)
    return theta1_value(x, y) - theta_calculus(x, y).value


def eikonal_residual(x: float, y) -> float:
    """|grad|^2 / 2 - x for the exact phase; zero up to rounding.

    Evaluated in extended precision so the cancellation between |grad|^2 / 2
    and x does not swamp the residual at large x.
    """
    y = np.asarray(y, dtype=float)
    _eikonal_domain(x, y)
    xl = np.longdouble(x)
    yl = y.astype(np.longdouble)
    y_sq = np.dot(yl, yl)
    w = np.sqrt(xl * xl - y_sq)
    # |grad|^2 = (x + w) + y^2 / (x + w) for the closed-form gradient
    grad_sq = (xl + w) + y_sq / (xl + w)
    return float(0.5 * grad_sq - xl)
