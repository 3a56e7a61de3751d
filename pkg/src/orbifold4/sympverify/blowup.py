"""Two-chart model of the resolved cyclic singularity C^2/<zeta_m * Id>.

The resolution is the total space of the degree -m line bundle over the
projective line, covered by charts with coordinates (u, v), transition
u2 = 1/u1, v2 = u1^m v1.  The candidate symplectic form is

    omega_lambda = (i/2) ddbar [ |v|^(2/m) (1+|u|^2) + lambda log(1+|u|^2) ]

whose first term is the pullback of the flat quotient form (via the
invariant radius) and whose second is the pulled-back Fubini-Study-type
form, scaled by lambda.  The potential's complex Hessian is closed-form;
finite differences serve only as a cross-check.  Grids avoid v = 0, where
the pulled-back quotient form is continuous but not smooth for m >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import (TamenessCertificate, ddbar_fd, exterior_derivative_fd,
                    form_from_hermitian, standard_acs, tameness_min)


def chart_potential(m: int, lam: float):
    def F(points):
        p = np.asarray(points, dtype=float)
        s = p[..., 0] ** 2 + p[..., 1] ** 2
        t = p[..., 2] ** 2 + p[..., 3] ** 2
        return t ** (1.0 / m) * (1.0 + s) + lam * np.log1p(s)
    return F


def chart_form(m: int, lam: float):
    """Analytic (i/2) ddbar of the chart potential; valid for v != 0."""
    def omega(points):
        p = np.asarray(points, dtype=float)
        u = p[..., 0] + 1j * p[..., 1]
        v = p[..., 2] + 1j * p[..., 3]
        s = np.abs(u) ** 2
        t = np.abs(v) ** 2
        c = np.zeros(p.shape[:-1] + (2, 2), dtype=complex)
        c[..., 0, 0] = t ** (1.0 / m) + lam / (1.0 + s) ** 2
        c[..., 0, 1] = np.conj(u) * (1.0 / m) * t ** (1.0 / m - 1.0) * v
        c[..., 1, 0] = np.conj(c[..., 0, 1])
        c[..., 1, 1] = (1.0 + s) * (1.0 / (m * m)) * t ** (1.0 / m - 1.0)
        return form_from_hermitian(c)
    return omega


def transition(points, m: int):
    """Chart-1 -> chart-2 coordinates and the real Jacobian of the map."""
    p = np.asarray(points, dtype=float)
    u = p[..., 0] + 1j * p[..., 1]
    v = p[..., 2] + 1j * p[..., 3]
    u2 = 1.0 / u
    v2 = u ** m * v
    out = np.stack([u2.real, u2.imag, v2.real, v2.imag], axis=-1)
    du2_du = -1.0 / (u * u)
    dv2_du = m * u ** (m - 1) * v
    dv2_dv = u ** m
    jac = np.zeros(p.shape[:-1] + (4, 4))
    _put_block(jac, 0, 0, du2_du)
    _put_block(jac, 1, 0, dv2_du)
    _put_block(jac, 1, 1, dv2_dv)
    return out, jac


def _put_block(jac, i, j, dc):
    jac[..., 2 * i, 2 * j] = dc.real
    jac[..., 2 * i, 2 * j + 1] = -dc.imag
    jac[..., 2 * i + 1, 2 * j] = dc.imag
    jac[..., 2 * i + 1, 2 * j + 1] = dc.real


def chart_grid(n: int, u_max: float = 1.2, v_min: float = 0.05, v_max: float = 0.8):
    ax_u = np.linspace(-u_max, u_max, n)
    ax_v = np.linspace(-v_max, v_max, n)
    pts = np.stack(np.meshgrid(ax_u, ax_u, ax_v, ax_v, indexing="ij"), axis=-1).reshape(-1, 4)
    t = pts[:, 2] ** 2 + pts[:, 3] ** 2
    return pts[t >= v_min ** 2]


def exceptional_area(m: int, lam: float, n: int = 20000) -> float:
    """Area of the form restricted to the zero section, by radial quadrature.

    On v = 0 the only surviving coefficient is lam/(1+|u|^2)^2; the radial
    integral is compactified by rho = tan(theta)."""
    theta = np.linspace(0.0, np.pi / 2.0, n)
    rho = np.tan(theta[:-1])
    integrand = 2.0 * np.pi * lam * rho / (1.0 + rho ** 2) ** 2 * (1.0 + rho ** 2)
    integrand = np.append(integrand, 0.0)  # rho -> inf limit
    return float(np.trapezoid(integrand, theta))


@dataclass
class BlowupReport:
    certificate: TamenessCertificate
    closedness_residual: float
    overlap_max_diff: float
    fd_cross_check: float
    area: float
    area_expected: float

    @property
    def ok(self) -> bool:
        return (
            self.certificate.tame
            and self.closedness_residual <= 1e-5
            and self.overlap_max_diff <= 1e-8
            and abs(self.area - self.area_expected) <= 1e-6 * max(1.0, self.area_expected)
        )


class ChartOverlapError(ValueError):
    pass


def blowup_model_check(m: int, lam: float, grid_n: int = 12) -> BlowupReport:
    if m < 2 or lam <= 0:
        raise ValueError("need m >= 2 and lambda > 0")
    omega = chart_form(m, lam)

    pts = chart_grid(grid_n)
    cert = tameness_min(
        omega, standard_acs, pts,
        region=f"two charts, |u|<=1.2, 0.05<=|v|<=0.8 (m={m}, lambda={lam})",
        grid=f"{grid_n}^4 per chart, v=0 excluded",
    )

    probe = pts[:: max(1, len(pts) // 200)]
    closed = exterior_derivative_fd(omega, probe, h=1e-4)

    # finite-difference cross-check of the analytic Hessian
    fd_probe = probe[:: max(1, len(probe) // 20)]
    fd = ddbar_fd(chart_potential(m, lam), fd_probe, h=1e-4)
    fd_err = float(np.max(np.abs(fd - omega(fd_probe))))

    # chart compatibility on the overlap |u| in [0.5, 2]
    rng = np.random.default_rng(7)
    ov = np.zeros((200, 4))
    ru = rng.uniform(0.5, 2.0, 200)
    au = rng.uniform(0, 2 * np.pi, 200)
    ov[:, 0], ov[:, 1] = ru * np.cos(au), ru * np.sin(au)
    rv = rng.uniform(0.05, 0.5, 200)
    av = rng.uniform(0, 2 * np.pi, 200)
    ov[:, 2], ov[:, 3] = rv * np.cos(av), rv * np.sin(av)
    image, jac = transition(ov, m)
    pulled = np.einsum("...ki,...kl,...lj->...ij", jac, omega(image), jac)
    overlap = float(np.max(np.abs(pulled - omega(ov))))
    if overlap > 1e-8:
        raise ChartOverlapError(f"chart transition inconsistency {overlap:.3e}")

    area = exceptional_area(m, lam)
    return BlowupReport(cert, closed, overlap, fd_err, area, lam * np.pi)
