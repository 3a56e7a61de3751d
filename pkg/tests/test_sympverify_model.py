"""Local models: reference and smoothed forms, domains, fiber-power maps."""

import numpy as np
import pytest

from orbifold4 import OMEGA0
from orbifold4.sympverify import (LocalModel, OutOfDomainError,
                                  SingularEvaluationError, eval_omega0,
                                  eval_omega_a, exterior_derivative_fd,
                                  pushforward_check, sample_points,
                                  standard_acs, tameness_min)
from orbifold4.sympverify.profiles import H_cutoff, f_resolved, f_smoothing


def test_model_parameter_validation():
    with pytest.raises(ValueError):
        LocalModel(m=0)
    with pytest.raises(ValueError):
        LocalModel(delta0=0.5, delta2=0.2)  # needs delta0 > 3*delta2
    with pytest.raises(ValueError):
        LocalModel(base="sphere")


def test_trivial_model_is_flat():
    model = LocalModel()  # m=1, a=0, no connection
    pts = np.random.default_rng(0).uniform(-0.3, 0.3, (40, 4))
    assert np.allclose(eval_omega0(model, pts), OMEGA0)
    assert np.allclose(eval_omega_a(model, pts), OMEGA0)


def test_omega0_with_curvature():
    model = LocalModel(kappa=2.0, nu=(0.3, -0.1))
    pts = np.random.default_rng(1).uniform(-0.2, 0.2, (30, 4))
    forms = eval_omega0(model, pts)
    assert np.allclose(forms, -np.swapaxes(forms, -1, -2))
    x = pts[:, 2] ** 2 + pts[:, 3] ** 2
    assert np.allclose(forms[:, 0, 1], 1.0 + 0.5 * x * model.kappa)
    assert np.allclose(forms[:, 2, 3], 1.0)
    # the reference form is closed
    assert exterior_derivative_fd(lambda p: eval_omega0(model, p), pts[:10], h=1e-4) < 1e-8


def test_omega_a_is_closed_and_tame():
    model = LocalModel(m=2, a=0.1, kappa=0.5, nu=(0.1, 0.0))
    pts = np.random.default_rng(2).uniform(-0.2, 0.2, (30, 4))
    assert exterior_derivative_fd(lambda p: eval_omega_a(model, p), pts[:10], h=1e-4) < 1e-6
    cert = tameness_min(lambda p: eval_omega_a(model, p), standard_acs, pts)
    assert cert.tame


def test_omega_a_reduces_to_omega0_for_trivial_smoothing():
    model = LocalModel(m=1, a=0.0, kappa=1.0, nu=(0.2, 0.1))
    pts = np.random.default_rng(3).uniform(-0.2, 0.2, (25, 4))
    assert np.allclose(eval_omega_a(model, pts), eval_omega0(model, pts))


def test_domain_and_singularity_guards():
    model = LocalModel(m=2, a=0.0)
    far = np.array([[0.0, 0.0, 2.0, 0.0]])
    with pytest.raises(OutOfDomainError):
        eval_omega_a(model, far)
    origin = np.array([[0.1, 0.0, 0.0, 0.0]])
    with pytest.raises(SingularEvaluationError):
        eval_omega_a(model, origin)


def test_resolved_profile_is_positive_at_fiber_origin():
    # the resolved-side profile keeps the vertical coefficient positive at r=0
    model = LocalModel(m=2, a=0.1)
    origin = np.array([[0.1, -0.05, 0.0, 0.0]])
    forms = eval_omega_a(model, origin, resolved=True)
    assert forms[0, 2, 3] > 0


def test_cutoff_profile_reverts_to_identity_far_out():
    H = H_cutoff(2, 0.1, lo=0.5, hi=0.9, resolved=True)
    f = f_resolved(2, 0.1)
    x = np.array([0.0, 0.2, 0.4])
    assert np.allclose(H.value(x), f.value(x) - x)
    assert np.allclose(H.value([1.0, 2.0]), 0.0)
    assert np.allclose(H.d1([1.0, 2.0]), 0.0)


def test_sample_points_deterministic_and_in_annulus():
    model = LocalModel(m=2, a=0.1)
    a = sample_points(model, 100, seed=4)
    b = sample_points(model, 100, seed=4)
    assert np.array_equal(a, b)
    r = np.hypot(a[:, 2], a[:, 3])
    assert np.all((r >= 0.05) & (r <= model.delta2 + 1e-12))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pushforward_exactness(m):
    model = LocalModel(m=m, a=0.1, kappa=0.3, nu=(0.1, -0.2))
    report = pushforward_check(m, model, samples=300, seed=0)
    assert report.radial_exact
    assert report.max_discrepancy < 1e-12  # the relation is exact, not just close
    assert report.ok


def test_pushforward_rejects_mismatched_m():
    with pytest.raises(ValueError):
        pushforward_check(3, LocalModel(m=2, a=0.1))


def test_smoothing_profiles_asymptotics():
    f = f_smoothing(2, 0.1)
    assert abs(f.value(0.0) - 0.1) < 1e-15  # f(0) = a^(2/m)
    x = np.array([5.0, 10.0])
    assert np.max(np.abs(f.value(x) - x)) < 1e-3  # f(x) -> x far out
    fr = f_resolved(2, 0.1)
    assert np.allclose(fr.value(x ** 2), f.value(x))  # fhat(x^m) = f(x)
