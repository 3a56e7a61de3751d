"""Local models of an isotropy-surface neighborhood and their 2-forms.

Coordinates are (x1, y1, x2, y2): (x1, y1) on the base disc/torus, (x2, y2)
on the fiber, r^2 = x2^2 + y2^2.  The connection 1-form is
eta = dtheta + pi*nu with nu = nu1 dx1 + (nu2 + kappa*x1) dy1, so
d(eta) = kappa dx1^dy1.  Forms are returned as antisymmetric 4x4 coefficient
matrices, vectorized over arrays of points of shape (..., 4).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import RadialProfile, f_smoothing, f_resolved, identity_profile


class OutOfDomainError(ValueError):
    pass


class SingularEvaluationError(ValueError):
    pass


@dataclass
class LocalModel:
    m: int = 1
    a: float = 0.0
    delta0: float = 1.0   # model radius
    delta2: float = 0.25  # smoothing radius; delta0 > 3*delta2
    eps_p: float = 0.05
    eps0: float = 0.5
    base: str = "disc"    # "disc" or "torus"
    nu: tuple[float, float] = (0.0, 0.0)
    kappa: float = 0.0

    def __post_init__(self):
        if self.m < 1 or self.a < 0:
            raise ValueError("need m >= 1 and a >= 0")
        if not self.delta0 > 3 * self.delta2:
            raise ValueError("need delta0 > 3*delta2")
        if self.base not in ("disc", "torus"):
            raise ValueError("base must be 'disc' or 'torus'")


def _split(points):
    p = np.asarray(points, dtype=float)
    if p.shape[-1] != 4:
        raise ValueError("points must have 4 coordinates")
    return p, p[..., 2] ** 2 + p[..., 3] ** 2


def _nu_at(model: LocalModel, p, scale: float = 1.0):
    n1 = np.full(p.shape[:-1], scale * model.nu[0])
    n2 = scale * (model.nu[1] + model.kappa * p[..., 0])
    return n1, n2


def _assemble(base_coeff, vert_coeff, p, n1, n2):
    """base*dx1^dy1 + vert*(dx2^dy2 + (x2 dx2 + y2 dy2)^nu) as a matrix."""
    x2, y2 = p[..., 2], p[..., 3]
    out = np.zeros(p.shape[:-1] + (4, 4))
    out[..., 0, 1] = base_coeff
    out[..., 2, 3] = vert_coeff
    out[..., 0, 2] = -vert_coeff * x2 * n1
    out[..., 1, 2] = -vert_coeff * x2 * n2
    out[..., 0, 3] = -vert_coeff * y2 * n1
    out[..., 1, 3] = -vert_coeff * y2 * n2
    out -= np.swapaxes(out, -1, -2)
    return out


def _check_domain(model: LocalModel, x):
    if np.any(np.sqrt(x) > model.delta0 + 1e-12):
        raise OutOfDomainError("fiber radius exceeds the model radius delta0")


def eval_omega0(model: LocalModel, points):
    """The reference form: base area + r dr^eta + (r^2/2) d(eta)."""
    p, x = _split(points)
    _check_domain(model, x)
    n1, n2 = _nu_at(model, p)
    return _assemble(1.0 + 0.5 * x * model.kappa, np.ones(p.shape[:-1]), p, n1, n2)


def eval_omega_a(model: LocalModel, points, resolved: bool = False,
                 profile: RadialProfile | None = None):
    """The smoothed form built from f(x) = (x^m + a^2)^(1/m) at x = r^2:

        base area + (1/2) x f'(x) * kappa dx1^dy1 + (x f''(x) + f'(x)) r dr^eta.

    With resolved=True the evaluation is in the coordinates (z, w^m) of the
    smooth model: profile fhat(x) = (x + a^2)^(1/m) and connection scaled by m.
    """
    p, x = _split(points)
    _check_domain(model, x)
    if profile is None:
        if model.a == 0.0:
            if model.m > 1 and np.any(x == 0.0):
                raise SingularEvaluationError("r = 0 with a = 0 and m > 1")
            profile = identity_profile() if model.m == 1 else f_smoothing(model.m, 0.0)
        else:
            profile = f_resolved(model.m, model.a) if resolved else f_smoothing(model.m, model.a)
    scale = float(model.m) if resolved else 1.0
    n1, n2 = _nu_at(model, p, scale=scale)
    d1 = profile.d1(x)
    vert = x * profile.d2(x) + d1
    base = 1.0 + 0.5 * x * d1 * (scale * model.kappa)
    return _assemble(base, vert, p, n1, n2)
