"""Finite-difference Kähler calculus and tameness certification.

Potentials F are scalar fields on R^4 = C^2, vectorized over point arrays of
shape (..., 4).  2-forms are antisymmetric 4x4 coefficient matrices in the
real coordinates (x1, y1, x2, y2), with complex coordinates z = x1 + i y1,
w = x2 + i y2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..unitary import J0, OMEGA0
from .profiles import RadialProfile

# rows: the complex differentials dz, dw expressed in real components
_DZ = np.array([[1.0, 1.0j, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0j]])


class InstabilityError(ValueError):
    pass


class NotAlmostComplexError(ValueError):
    pass


class PreconditionFailure(ValueError):
    def __init__(self, message: str, worst_sample=None, value=None):
        self.worst_sample = worst_sample
        self.value = value
        super().__init__(message)


def _shift(points, i, h):
    p = np.array(points, dtype=float)
    p[..., i] += h
    return p


def complex_hessian_fd(F, points, h: float = 1e-3):
    """The 2x2 matrix of d^2 F / dz_i dzbar_j by central differences."""
    p = np.asarray(points, dtype=float)
    f0 = np.asarray(F(p), dtype=float)
    d2 = np.zeros(p.shape[:-1] + (4, 4))
    for i in range(4):
        d2[..., i, i] = (F(_shift(p, i, h)) - 2.0 * f0 + F(_shift(p, i, -h))) / (h * h)
        for j in range(i + 1, 4):
            val = (
                F(_shift(_shift(p, i, h), j, h))
                - F(_shift(_shift(p, i, h), j, -h))
                - F(_shift(_shift(p, i, -h), j, h))
                + F(_shift(_shift(p, i, -h), j, -h))
            ) / (4.0 * h * h)
            d2[..., i, j] = d2[..., j, i] = val
    hess = np.zeros(p.shape[:-1] + (2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            xi, yi, xj, yj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            hess[..., i, j] = 0.25 * (
                d2[..., xi, xj] + d2[..., yi, yj]
                + 1.0j * (d2[..., xi, yj] - d2[..., yi, xj])
            )
    return hess


def complex_gradient_fd(F, points, h: float = 1e-3):
    """(dF/dz, dF/dw) by central differences."""
    p = np.asarray(points, dtype=float)
    grad = np.zeros(p.shape[:-1] + (2,), dtype=complex)
    for i in range(2):
        dx = (F(_shift(p, 2 * i, h)) - F(_shift(p, 2 * i, -h))) / (2.0 * h)
        dy = (F(_shift(p, 2 * i + 1, h)) - F(_shift(p, 2 * i + 1, -h))) / (2.0 * h)
        grad[..., i] = 0.5 * (dx - 1.0j * dy)
    return grad


def form_from_hermitian(coeff):
    """Real matrix of (i/2) sum coeff_ij dz_i ^ dzbar_j."""
    coeff = np.asarray(coeff, dtype=complex)
    dz = _DZ
    dzb = np.conj(_DZ)
    # (i/2) * sum_ij coeff_ij (dz_i[k] dzb_j[l] - dz_i[l] dzb_j[k])
    mat = 0.5j * (
        np.einsum("...ij,ik,jl->...kl", coeff, dz, dzb)
        - np.einsum("...ij,il,jk->...kl", coeff, dz, dzb)
    )
    return np.real(mat)


def ddbar_fd(F, points, h: float = 1e-3, check_stability: bool = False,
             stability_factor: float = 10.0):
    """(i/2) ddbar F assembled from mixed complex second differences."""
    out = form_from_hermitian(complex_hessian_fd(F, points, h))
    if check_stability:
        fine = form_from_hermitian(complex_hessian_fd(F, points, h / 2.0))
        scale = max(1.0, float(np.max(np.abs(out))))
        if float(np.max(np.abs(out - fine))) > stability_factor * h * h * scale:
            raise InstabilityError("second differences unstable under step halving")
        out = fine
    return out


def exterior_derivative_fd(form_eval, points, h: float = 1e-3) -> float:
    """Max component of the finite-difference exterior derivative d(omega)."""
    p = np.asarray(points, dtype=float)
    grad = np.zeros(p.shape[:-1] + (4, 4, 4))  # d/dx_i of M[k,l]
    for i in range(4):
        grad[..., i, :, :] = (form_eval(_shift(p, i, h)) - form_eval(_shift(p, i, -h))) / (2.0 * h)
    worst = 0.0
    for k in range(4):
        for l in range(k + 1, 4):
            for n in range(l + 1, 4):
                res = grad[..., k, l, n] - grad[..., l, k, n] + grad[..., n, k, l]
                worst = max(worst, float(np.max(np.abs(res))))
    return worst


def standard_acs(points):
    """The constant standard almost-complex structure at each point."""
    p = np.asarray(points, dtype=float)
    return np.broadcast_to(J0, p.shape[:-1] + (4, 4))


@dataclass
class TamenessCertificate:
    region: str
    grid: str
    min_quotient: float
    tame: bool
    worst_sample: tuple

    def to_json(self) -> dict:
        return {
            "region": self.region,
            "grid": self.grid,
            "min_quotient": self.min_quotient,
            "tame": self.tame,
            "worst_sample": list(self.worst_sample),
        }


def taming_quotients(forms, acs):
    """Smallest eigenvalue of (1/2)(Omega J + (Omega J)^T) per sample."""
    oj = np.einsum("...ij,...jk->...ik", np.asarray(forms, float), np.asarray(acs, float))
    sym = 0.5 * (oj + np.swapaxes(oj, -1, -2))
    return np.linalg.eigvalsh(sym)[..., 0]


def tameness_min(form_eval, acs_eval, points, region: str = "", grid: str = "",
                 tol: float = 1e-9) -> TamenessCertificate:
    """Certify min over samples of the taming quotient omega(u, Ju)/|u|^2."""
    p = np.asarray(points, dtype=float).reshape(-1, 4)
    acs = np.asarray(acs_eval(p), dtype=float)
    j2 = np.einsum("...ij,...jk->...ik", acs, acs)
    if float(np.max(np.abs(j2 + np.eye(4)))) > 1e-8:
        raise NotAlmostComplexError("J^2 != -I at a sample")
    quot = taming_quotients(form_eval(p), acs)
    idx = int(np.argmin(quot))
    mq = float(quot[idx])
    return TamenessCertificate(region, grid, mq, mq > tol, tuple(p[idx]))


def semipositive_compose(F, h_profile: RadialProfile, points, step: float = 1e-3,
                         tol: float = 1e-8):
    """(i/2) ddbar (h o F) = (i/2) h''(F) dF ^ dbarF + h'(F) (i/2) ddbar F.

    Returns (forms, psd_flag, min_eigenvalue).  Requires h' >= 0, h'' >= 0
    on the sampled range of F.
    """
    p = np.asarray(points, dtype=float)
    fv = np.asarray(F(p), dtype=float)
    h1, h2 = h_profile.d1(fv), h_profile.d2(fv)
    if np.any(h1 < 0) or np.any(h2 < 0):
        raise PreconditionFailure("profile has negative h' or h'' on the sampled range")
    grad = complex_gradient_fd(F, p, step)
    outer = grad[..., :, None] * np.conj(grad[..., None, :])
    hess = complex_hessian_fd(F, p, step)
    coeff = h2[..., None, None] * outer + h1[..., None, None] * hess
    forms = form_from_hermitian(coeff)
    quot = taming_quotients(forms, standard_acs(p))
    min_eig = float(np.min(quot))
    return forms, bool(min_eig >= -tol), min_eig


def radial_potential_form(g: RadialProfile, h: RadialProfile | None = None):
    """Exact (i/2) ddbar of h(|z|^2 + g(|w|^2)) from closed-form derivatives.

    With h omitted the outer profile is the identity.  Returns an evaluator
    over (..., 4) point arrays; use ddbar_fd on the same potential as an
    independent cross-check.
    """

    def F(points):
        p = np.asarray(points, dtype=float)
        return p[..., 0] ** 2 + p[..., 1] ** 2 + g.value(p[..., 2] ** 2 + p[..., 3] ** 2)

    def omega(points):
        p = np.asarray(points, dtype=float)
        x = p[..., 2] ** 2 + p[..., 3] ** 2
        g1 = g.d1(x)
        hess = np.zeros(p.shape[:-1] + (2, 2), dtype=complex)
        hess[..., 0, 0] = 1.0
        hess[..., 1, 1] = g1 + x * g.d2(x)
        if h is None:
            return form_from_hermitian(hess)
        fv = F(p)
        grad = np.stack(
            [p[..., 0] - 1j * p[..., 1], g1 * (p[..., 2] - 1j * p[..., 3])], axis=-1
        )
        outer = grad[..., :, None] * np.conj(grad[..., None, :])
        coeff = h.d2(fv)[..., None, None] * outer + h.d1(fv)[..., None, None] * hess
        return form_from_hermitian(coeff)

    def potential(points):
        fv = F(points)
        return fv if h is None else h.value(fv)

    omega.potential = potential
    return omega


# -- gluing -----------------------------------------------------------------


def ball_grid(radius: float, n: int, inner: float = 0.0):
    """Deterministic grid on the radius-ball of R^4 (annulus if inner > 0)."""
    axis = np.linspace(-radius, radius, n)
    pts = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 4)
    r = np.linalg.norm(pts, axis=-1)
    return pts[(r <= radius) & (r >= inner)]


@dataclass
class GluingProblem:
    eps1: float
    eps2: float
    eps3: float
    omega1: Callable      # form evaluator
    omega2: Callable      # form evaluator
    beta: Callable        # 1-form (covector) evaluator with d(beta) = omega2
    rho: RadialProfile    # cutoff in r: 1 below eps2, 0 above eps3
    description: str = ""

    def __post_init__(self):
        if not 0 < self.eps1 < self.eps2 < self.eps3:
            raise ValueError("need 0 < eps1 < eps2 < eps3")


def _d_rho_beta(problem: GluingProblem, points):
    """Matrix of d(rho(r) beta) = rho'(r) dr ^ beta + rho(r) d(beta)."""
    p = np.asarray(points, dtype=float)
    r = np.linalg.norm(p, axis=-1)
    n = p / np.maximum(r, 1e-300)[..., None]
    b = np.asarray(problem.beta(p), dtype=float)
    dr_beta = n[..., :, None] * b[..., None, :] - b[..., :, None] * n[..., None, :]
    rho, drho = problem.rho.value(r), problem.rho.d1(r)
    return drho[..., None, None] * dr_beta, rho[..., None, None] * np.asarray(problem.omega2(p), float), dr_beta


def glue_forms(problem: GluingProblem, grid_n: int = 15, tol: float = 1e-7,
               fd_tol: float = 1e-5):
    """Glue omega1 (vanishing near 0) to a multiple of omega2 near 0:
    omega_delta = omega1 + delta * d(rho beta), with delta chosen from the
    sampled positivity constant C of omega1 on the outer annulus and the
    sampled sup-norm of d(rho) ^ beta.

    Returns (delta, glued evaluator, certificate over the eps3-ball).
    """
    e1, e2, e3 = problem.eps1, problem.eps2, problem.eps3

    # d(beta) = omega2 by finite differences
    probe = ball_grid(e3, 7, inner=1e-3)[::7]
    dbeta_err = _dbeta_residual(problem, probe)
    if dbeta_err > fd_tol:
        raise PreconditionFailure(f"d(beta) != omega2: residual {dbeta_err:.3e}")

    inner_pts = ball_grid(e1 * 0.999, grid_n)
    w1_inner = np.asarray(problem.omega1(inner_pts), float)
    if w1_inner.size and float(np.max(np.abs(w1_inner))) > tol:
        idx = np.unravel_index(np.argmax(np.abs(w1_inner)), w1_inner.shape)
        raise PreconditionFailure(
            "omega1 does not vanish on the inner ball",
            worst_sample=tuple(inner_pts[idx[0]]),
            value=float(np.max(np.abs(w1_inner))),
        )
    mid_pts = ball_grid(e2, grid_n, inner=e1)
    q_mid = taming_quotients(problem.omega1(mid_pts), standard_acs(mid_pts))
    if float(np.min(q_mid)) < -tol:
        idx = int(np.argmin(q_mid))
        raise PreconditionFailure(
            "omega1 not semipositive on the middle annulus",
            worst_sample=tuple(mid_pts[idx]), value=float(np.min(q_mid)),
        )
    outer_pts = ball_grid(e3, grid_n, inner=e2 * (1 + 1e-9))
    q_outer = taming_quotients(problem.omega1(outer_pts), standard_acs(outer_pts))
    C = float(np.min(q_outer))
    if C <= 0:
        idx = int(np.argmin(q_outer))
        raise PreconditionFailure(
            "omega1 not positive outside eps2",
            worst_sample=tuple(outer_pts[idx]), value=C,
        )

    drb_pts = ball_grid(e3, grid_n, inner=1e-6)
    drb, _, _ = _d_rho_beta(problem, drb_pts)
    norm = float(np.max(np.linalg.norm(drb, ord=2, axis=(-2, -1))))
    delta = C / (2.0 * (norm + 1.0))

    def glued(points):
        p = np.asarray(points, dtype=float)
        term1, term2, _ = _d_rho_beta(problem, p)
        return np.asarray(problem.omega1(p), float) + delta * (term1 + term2)

    all_pts = ball_grid(e3, grid_n, inner=1e-6)
    cert = tameness_min(
        glued, standard_acs, all_pts,
        region=f"ball radius {e3}", grid=f"{grid_n}^4 cubic grid",
    )
    return delta, glued, cert


def _dbeta_residual(problem: GluingProblem, points, h: float = 1e-4) -> float:
    p = np.asarray(points, dtype=float)
    grad = np.zeros(p.shape[:-1] + (4, 4))
    for i in range(4):
        grad[..., i, :] = (
            np.asarray(problem.beta(_shift(p, i, h)), float)
            - np.asarray(problem.beta(_shift(p, i, -h)), float)
        ) / (2.0 * h)
    dbeta = grad - np.swapaxes(grad, -1, -2)
    return float(np.max(np.abs(dbeta - np.asarray(problem.omega2(p), float))))
