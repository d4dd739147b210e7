"""Transport-equation symbol hierarchy computed along the free flow.

The symbols start from b_0 = 1, q_0 = q and are built recursively:
b_{k+1} integrates i * q_k along the free flow from the phase point to
infinity (outgoing or incoming branch), and q_{k+1} = q b_{k+1} minus half
the configuration-space Laplacian of b_{k+1}.  The construction lives on the
flow-invariant cones X^{+-}; all quadrature is vectorized over batches of
phase points, with the improper time integral mapped to (0, 1) by
t = tau s / (1 - s) so the decay of q_k makes the integrand smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import PhasePoint, in_region_X
from .errors import BudgetError, DomainError
from .potentials import PotentialSpec, eval_potential_array

K_MAX_DEFAULT = 2

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class SymbolValue:
    k: int
    value: complex
    point: PhasePoint
    sign: int


@dataclass(frozen=True)
class SymbolResult:
    value: complex
    tail_estimate: float
    quad_error: float


def _panel_rule(n_panels: int):
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    s = (mid[:, None] + half * _GL_NODES[None, :]).ravel()
    w = np.broadcast_to(half * _GL_WEIGHTS, (n_panels, _GL_WEIGHTS.size)).ravel()
    return s, w


def _flow_scale(X, Y_sq, ETA, ZETA_sq, m):
    y_m = np.sqrt(m * m + Y_sq)
    return np.sqrt(np.maximum(2.0 * X + 2.0 * y_m, 1.0)) + np.abs(ETA) \
        + np.sqrt(ZETA_sq) + 1.0


def _q_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m):
    """q_k on a batch of phase points; X (n,), Y (n, d-1)."""
    if k == 0:
        return eval_potential_array(spec, X, np.sum(Y * Y, axis=-1)).astype(complex)
    b_center = _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m)
    lap = _laplacian_b(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m, b_center)
    q0 = eval_potential_array(spec, X, np.sum(Y * Y, axis=-1))
    return q0 * b_center - 0.5 * lap


def _laplacian_b(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m, b_center):
    """Central second differences with one Richardson refinement."""
    n = X.size
    dm1 = Y.shape[-1]
    d = 1 + dm1
    h = h_scale * np.sqrt(1.0 + np.abs(X))

    def lap_at(step):
        xs, ys = [], []
        for j in range(d):
            for sgn in (+1.0, -1.0):
                dx = np.zeros(n)
                dy = np.zeros((n, dm1))
                if j == 0:
                    dx = sgn * step
                else:
                    dy[:, j - 1] = sgn * step
                xs.append(X + dx)
                ys.append(Y + dy)
        Xs = np.concatenate(xs)
        Ys = np.concatenate(ys)
        Es = np.tile(ETA, 2 * d)
        Zs = np.tile(ZETA, (2 * d, 1))
        vals = _b_batch(k, Xs, Ys, Es, Zs, spec, sign, tol, h_scale, m)
        vals = vals.reshape(2 * d, n)
        acc = np.zeros(n, dtype=complex)
        for j in range(d):
            acc += (vals[2 * j] + vals[2 * j + 1] - 2.0 * b_center) / step ** 2
        return acc

    lap_h = lap_at(h)
    lap_h2 = lap_at(0.5 * h)
    return (4.0 * lap_h2 - lap_h) / 3.0


def _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m,
             s_split=None, max_panels=64):
    """b_k = i * integral of q_{k-1} along the free flow, batched.

    Returns the full improper integral; with s_split set, only the piece on
    [0, s_split] resp. [s_split, 1) is integrated (used for tail reporting).
    """
    if k < 1:
        return np.ones(X.size, dtype=complex)
    Y_sq = np.sum(Y * Y, axis=-1)
    ZETA_sq = np.sum(ZETA * ZETA, axis=-1)
    tau = _flow_scale(X, Y_sq, ETA, ZETA_sq, m)
    sgn = 1.0 if sign >= 0 else -1.0

    def eval_sum(n_panels, lo, hi):
        s, w = _panel_rule(n_panels)
        s = lo + (hi - lo) * s
        w = (hi - lo) * w
        t = tau[:, None] * s[None, :] / (1.0 - s[None, :])
        jac = tau[:, None] / (1.0 - s[None, :]) ** 2
        Xt = X[:, None] + sgn * t * ETA[:, None] + 0.5 * t * t
        Yt = Y[:, None, :] + sgn * t[:, :, None] * ZETA[:, None, :]
        Et = ETA[:, None] + sgn * t
        nm = X.size * s.size
        qv = _q_batch(k - 1, Xt.reshape(nm), Yt.reshape(nm, -1),
                      Et.reshape(nm), np.repeat(ZETA, s.size, axis=0),
                      spec, sign, tol, h_scale, m).reshape(X.size, s.size)
        return (qv * jac * w[None, :]).sum(axis=1)

    lo, hi = 0.0, 1.0
    if s_split is not None:
        lo, hi = s_split
    n_panels = 8
    prev = eval_sum(n_panels, lo, hi)
    while n_panels < max_panels:
        n_panels *= 2
        cur = eval_sum(n_panels, lo, hi)
        err = float(np.max(np.abs(cur - prev)))
        prev = cur
        if err <= tol * max(1.0, float(np.max(np.abs(cur)))):
            break
    else:
        raise BudgetError("flow quadrature failed to converge",
                          module="transport", operation="symbol_b", budget=tol)
    return sgn * 1j * prev


def _check_point(p: PhasePoint, m, eps, sign):
    if not in_region_X(p, m=m, eps=eps, sign=sign):
        raise DomainError("phase point outside the invariant cone X")


def _as_batch(p: PhasePoint):
    return (np.array([p.x]), p.y[None, :], np.array([p.eta]), p.zeta[None, :])


def symbol_b(k: int, p: PhasePoint, spec: PotentialSpec, sign: int = +1,
             t_max: float = 1e5, tol: float = 1e-10,
             m: float = 1.0, eps: float = 0.3) -> complex:
    return symbol_b_result(k, p, spec, sign, t_max, tol, m, eps).value


def symbol_b_result(k: int, p: PhasePoint, spec: PotentialSpec, sign: int = +1,
                    t_max: float = 1e5, tol: float = 1e-10,
                    m: float = 1.0, eps: float = 0.3,
                    k_max: int = K_MAX_DEFAULT) -> SymbolResult:
    """b_k with the tail beyond t_max integrated via the decay substitution.

    The reported tail estimate is the modulus of the contribution from times
    beyond t_max; by the decay bounds of the hierarchy it also bounds the
    change under any further increase of t_max.
    """
    if not (1 <= k <= k_max):
        raise DomainError(f"symbol order must lie in [1, {k_max}]")
    _check_point(p, m, eps, sign)
    X, Y, ETA, ZETA = _as_batch(p)
    h_scale = 1e-3
    tau = float(_flow_scale(X, np.sum(Y * Y, axis=-1), ETA,
                            np.sum(ZETA * ZETA, axis=-1), m)[0])
    s_max = t_max / (tau + t_max)
    head = _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m,
                    s_split=(0.0, s_max))
    tail = _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m,
                    s_split=(s_max, 1.0))
    value = complex(head[0] + tail[0])
    return SymbolResult(value=value, tail_estimate=float(abs(tail[0])),
                        quad_error=tol * max(1.0, abs(value)))


def symbol_q(k: int, p: PhasePoint, spec: PotentialSpec, sign: int = +1,
             t_max: float = 1e5, tol: float = 1e-10, h: float | None = None,
             m: float = 1.0, eps: float = 0.3) -> complex:
    """q_k = q * b_k - (1/2) Laplacian b_k, Laplacian by refined differences."""
    if k < 1:
        raise DomainError("use eval_potential for q_0")
    _check_point(p, m, eps, sign)
    h_scale = 1e-3 if h is None else h / np.sqrt(1.0 + abs(p.x))
    X, Y, ETA, ZETA = _as_batch(p)
    return complex(_q_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m)[0])


def symbol_q_parts(k, p, spec, sign=+1, tol=1e-10, h=None, m=1.0, eps=0.3):
    """(q * b_k, -Laplacian b_k / 2) separately, for magnitude comparisons."""
    _check_point(p, m, eps, sign)
    h_scale = 1e-3 if h is None else h / np.sqrt(1.0 + abs(p.x))
    X, Y, ETA, ZETA = _as_batch(p)
    b = _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m)
    lap = _laplacian_b(k, X, Y, ETA, ZETA, spec, sign, tol, h_scale, m, b)
    q0 = eval_potential_array(spec, X, np.sum(Y * Y, axis=-1))
    return complex((q0 * b)[0]), complex(-0.5 * lap[0])


def transport_residual(k: int, p: PhasePoint, spec: PotentialSpec,
                       sign: int = +1, h_eta: float = 1e-3,
                       tol: float = 1e-10, m: float = 1.0,
                       eps: float = 0.3) -> float:
    """|i (d_eta + (eta, zeta) . grad_xy) b_k - q_{k-1}| by central differences.

    The directional configuration-space derivative uses a step of the same
    size as h_eta along the unit momentum direction.
    """
    if k < 1:
        raise DomainError("transport residual is defined for k >= 1")
    _check_point(p, m, eps, sign)
    mom = np.concatenate([[p.eta], p.zeta])
    mom_norm = float(np.linalg.norm(mom))
    if mom_norm == 0.0:
        raise DomainError("vanishing momentum: no transport direction")
    u = mom / mom_norm
    h_xy = h_eta

    X = np.array([p.x, p.x, p.x + h_xy * u[0], p.x - h_xy * u[0]])
    Y = np.stack([p.y, p.y, p.y + h_xy * u[1:], p.y - h_xy * u[1:]])
    ETA = np.array([p.eta + h_eta, p.eta - h_eta, p.eta, p.eta])
    ZETA = np.tile(p.zeta, (4, 1))
    for i in range(4):
        _check_point(PhasePoint(X[i], Y[i], ETA[i], ZETA[i]), m, eps, sign)

    b = _b_batch(k, X, Y, ETA, ZETA, spec, sign, tol, 1e-3, m)
    d_eta = (b[0] - b[1]) / (2.0 * h_eta)
    d_dir = mom_norm * (b[2] - b[3]) / (2.0 * h_xy)
    Xc, Yc, Ec, Zc = _as_batch(p)
    q_prev = _q_batch(k - 1, Xc, Yc, Ec, Zc, spec, sign, tol, 1e-3, m)[0]
    return float(abs(1j * (d_eta + d_dir) - q_prev))


def decay_fit_symbols(k: int, spec: PotentialSpec, sign: int = +1,
                      x_values=None, y_over_x: float = 0.0,
                      zeta: float = 0.0, which: str = "b",
                      tol: float = 1e-9, m: float = 1.0,
                      eps: float = 0.3, d: int = 2) -> float:
    """Log-log decay exponent of |b_k| or |q_k| along an outgoing ray.

    Points are (x, y = c x, eta = sqrt(2x), zeta fixed); the fitted slope is
    against x, which is comparable to <x + <y>_m> on the ray.
    """
    if x_values is None:
        x_values = np.geomspace(1e2, 1e4, 9)
    x_values = np.asarray(x_values, dtype=float)
    if x_values.size < 3:
        raise DomainError("need at least 3 ray samples for a decay fit")
    vals = []
    for x in x_values:
        y = np.full(d - 1, y_over_x * x / np.sqrt(d - 1))
        z = np.full(d - 1, zeta / np.sqrt(d - 1))
        p = PhasePoint(x=x, y=y, eta=np.sqrt(2.0 * x), zeta=z)
        if which == "b":
            v = symbol_b(k, p, spec, sign=sign, tol=tol, m=m, eps=eps)
        else:
            v = symbol_q(k, p, spec, sign=sign, tol=tol, m=m, eps=eps)
        vals.append(abs(v))
    vals = np.asarray(vals)
    if np.any(vals == 0.0):
        raise DomainError("symbol vanishes on the ray; no decay fit")
    slope = np.polyfit(np.log(x_values), np.log(vals), 1)[0]
    return float(slope)
