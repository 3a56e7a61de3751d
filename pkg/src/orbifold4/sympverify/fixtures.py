"""Ready-made gluing problems on the smoothed local model.

The pipeline fixture glues omega1 = (i/2) ddbar (h o F_a) — which vanishes on
the inner ball because the ramp h is flat below the potential's maximum
there — to a small multiple of the flat form near the origin.  The ramp
window is derived from the radii: its foot sits above max F_a on the
eps1-ball and its shoulder below eps2^2, so omega1 is strictly positive
where the cutoff decays.
"""

from __future__ import annotations

import numpy as np

from ..unitary import OMEGA0
from .forms import GluingProblem, radial_potential_form
from .profiles import H_cutoff, RadialProfile, f_resolved, h_ramp, rho_bump


def standard_primitive(points):
    """beta = (1/2)(x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2); d(beta) is the flat form."""
    p = np.asarray(points, dtype=float)
    return 0.5 * np.stack([-p[..., 1], p[..., 0], -p[..., 3], p[..., 2]], axis=-1)


def flat_form(points):
    p = np.asarray(points, dtype=float)
    return np.broadcast_to(OMEGA0, p.shape[:-1] + (4, 4)).copy()


def smoothing_excess_max(m: int, a: float, x_max: float) -> float:
    """max over [0, x_max] of fhat(x) - x, the height of the smoothing bump."""
    f = f_resolved(m, a)
    x = np.linspace(0.0, x_max, 4001)
    return float(np.max(f.value(x) - x))


def pipeline_problem(m: int = 2, a: float = 0.1,
                     eps1: float = 0.5, eps2: float = 0.8, eps3: float = 1.0,
                     margin: float = 0.01) -> GluingProblem:
    """Gluing fixture: smoothed-potential form against the flat form."""
    t0 = eps1 ** 2 + smoothing_excess_max(m, a, eps1 ** 2) + margin
    t1 = eps2 ** 2 - margin
    if not t0 < t1:
        raise ValueError(f"radii leave no ramp window: t0={t0:.4f} >= t1={t1:.4f}")
    # cutoff of the smoothing correction beyond the certified ball
    H = H_cutoff(m, a, lo=1.5 * eps3 ** 2, hi=3.0 * eps3 ** 2, resolved=True)
    g = RadialProfile(
        "g_smoothed", {"m": m, "a": a},
        lambda x: np.asarray(x, float) + H.value(x),
        lambda x: 1.0 + H.d1(x),
        lambda x: H.d2(x),
    )
    omega1 = radial_potential_form(g, h_ramp(t0, t1))
    return GluingProblem(
        eps1, eps2, eps3,
        omega1, flat_form, standard_primitive,
        rho_bump(eps2, eps3),
        description=f"pipeline m={m} a={a} ramp=({t0:.4f},{t1:.4f})",
    )
