"""Short-range Stark potentials and their gradients.

Admissible potentials decay like r^{-(1+2*delta)/2} with delta in (0, 1/2];
the Coulomb potential (delta = 1/2) is the canonical slowly decaying member
of the class.  Evaluation is split into the field direction x and the
orthogonal block y, matching the phase-space splitting used everywhere else
in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

# Finite-difference step scale for table-defined gradients.
_FD_STEP = 1e-6


@dataclass(frozen=True)
class PotentialSpec:
    """Descriptor of the short-range potential q.

    kind       one of "zero", "homogeneous", "coulomb", "table"
    kappa      coupling constant
    alpha      homogeneity exponent (homogeneous kind; coulomb fixes 1)
    delta      decay parameter in (0, 1/2]
    softening  regularization length near the origin (dynamics only)
    func       callable q(x, y) for the table kind
    exclusion_radius  points with r below this and softening == 0 are rejected
    """

    kind: str = "zero"
    kappa: float = 0.0
    alpha: float = 1.0
    delta: float = 0.5
    softening: float = 1e-3
    func: Optional[Callable[[float, np.ndarray], float]] = None
    exclusion_radius: float = 1e-8

    def __post_init__(self):
        if self.kind not in ("zero", "homogeneous", "coulomb", "table"):
            raise DomainError(f"unknown potential kind {self.kind!r}")
        if self.kind == "coulomb":
            object.__setattr__(self, "alpha", 1.0)
            object.__setattr__(self, "delta", 0.5)
        if self.kind == "homogeneous":
            if self.alpha <= 0.5:
                raise DomainError("homogeneous exponent must exceed 1/2")
        if not (0.0 < self.delta <= 0.5):
            raise DomainError("delta must lie in (0, 1/2]")
        if self.softening < 0.0:
            raise DomainError("softening must be nonnegative")
        if self.kind == "table" and self.func is None:
            raise DomainError("table kind requires a callable")

    def unsoftened(self) -> "PotentialSpec":
        """Copy with softening removed (exact power law, kernel formulas)."""
        return PotentialSpec(
            kind=self.kind, kappa=self.kappa, alpha=self.alpha,
            delta=self.delta, softening=0.0, func=self.func,
            exclusion_radius=self.exclusion_radius,
        )


def zero_potential() -> PotentialSpec:
    return PotentialSpec(kind="zero", kappa=0.0)


def coulomb(kappa: float, softening: float = 1e-3) -> PotentialSpec:
    return PotentialSpec(kind="coulomb", kappa=kappa, softening=softening)


def homogeneous(kappa: float, alpha: float, delta: Optional[float] = None,
                softening: float = 1e-3) -> PotentialSpec:
    """Homogeneous potential kappa * r^(-alpha).

    The decay parameter defaults to min(alpha - 1/2, 1/2), the largest value
    consistent with both the decay condition and the admissible range.
    """
    if delta is None:
        delta = min(alpha - 0.5, 0.5)
    return PotentialSpec(kind="homogeneous", kappa=kappa, alpha=alpha,
                         delta=delta, softening=softening)


def _radius_sq(x, y):
    y = np.asarray(y, dtype=float)
    return float(x) * float(x) + float(np.dot(y, y))


def _check_point(spec: PotentialSpec, x, y):
    r2 = _radius_sq(x, y)
    if not np.isfinite(r2):
        raise DomainError("potential evaluated at a non-finite point")
    if spec.softening == 0.0 and r2 <= spec.exclusion_radius ** 2:
        raise DomainError(
            "evaluation inside the origin exclusion ball with zero softening")
    return r2


def eval_potential(spec: PotentialSpec, x: float, y) -> float:
    """Potential energy q(x, y)."""
    if spec.kind == "zero":
        return 0.0
    r2 = _check_point(spec, x, y)
    if spec.kind in ("homogeneous", "coulomb"):
        return spec.kappa * (r2 + spec.softening ** 2) ** (-spec.alpha / 2.0)
    return float(spec.func(float(x), np.asarray(y, dtype=float)))


def grad_potential(spec: PotentialSpec, x: float, y) -> np.ndarray:
    """Gradient (d_x q, grad_y q) as a vector of length d."""
    y = np.asarray(y, dtype=float)
    d = 1 + y.size
    if spec.kind == "zero":
        return np.zeros(d)
    r2 = _check_point(spec, x, y)
    if spec.kind in ("homogeneous", "coulomb"):
        s = r2 + spec.softening ** 2
        pref = -spec.alpha * spec.kappa * s ** (-spec.alpha / 2.0 - 1.0)
        out = np.empty(d)
        out[0] = pref * x
        out[1:] = pref * y
        return out
    # table kind: central differences, step scaled with distance
    h = _FD_STEP * max(1.0, np.sqrt(r2))
    out = np.empty(d)
    out[0] = (eval_potential(spec, x + h, y)
              - eval_potential(spec, x - h, y)) / (2 * h)
    for i in range(y.size):
        e = np.zeros_like(y)
        e[i] = h
        out[1 + i] = (eval_potential(spec, x, y + e)
                      - eval_potential(spec, x, y - e)) / (2 * h)
    return out


def eval_potential_array(spec: PotentialSpec, x, y_sq):
    """Vectorized evaluation on arrays of x and |y|^2 (built-in kinds only).

    Used by quadrature-heavy code paths; the table kind falls back to a loop.
    """
    x = np.asarray(x, dtype=float)
    y_sq = np.asarray(y_sq, dtype=float)
    if spec.kind == "zero":
        return np.zeros(np.broadcast(x, y_sq).shape)
    if spec.kind in ("homogeneous", "coulomb"):
        r2 = x * x + y_sq + spec.softening ** 2
        if spec.softening == 0.0 and np.any(r2 <= spec.exclusion_radius ** 2):
            raise DomainError(
                "evaluation inside the origin exclusion ball with zero softening")
        return spec.kappa * r2 ** (-spec.alpha / 2.0)
    raise DomainError("vectorized evaluation requires a built-in kind")
