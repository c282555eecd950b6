"""Benchmark systems: frozen fields and invariants, references vs oracles."""

import math

import numpy as np
import numpy.testing as npt
import pytest
import scipy.special

from cspoisson.systems import (
    DomainError,
    PoissonSystem,
    canonical_oscillator,
    check_system,
    euler_rigid_body,
    jacobi_elliptic,
    lotka_volterra_2d,
    lotka_volterra_3d,
    reference_solution_euler,
    reference_solution_oscillator,
    rk4_path,
    rk4_reference,
)

RNG = np.random.default_rng(7)


def ball_samples(dim, n=10):
    vecs = RNG.normal(size=(n, dim))
    radii = RNG.uniform(0.3, 1.5, n)
    return [v / np.linalg.norm(v) * r for v, r in zip(vecs, radii)]


def positive_samples(dim, n=10):
    return [RNG.uniform(0.5, 2.0, dim) for _ in range(n)]


# ---------------------------------------------------------------- rigid body


def test_euler_frozen_values():
    sys_ = euler_rigid_body()
    y0 = sys_.initial_state
    npt.assert_array_equal(y0, [0.0, 1.0, 1.0])
    assert sys_.hamiltonian(y0) == pytest.approx(1.0, abs=0)
    field = sys_.vector_field(y0)
    npt.assert_allclose(field, [math.sqrt(1.51), 0.0, 0.0], atol=1e-15)
    assert field[0] == pytest.approx(1.2288206, abs=1e-7)
    casimir = dict(sys_.casimirs)["quadratic"]
    assert casimir(y0) == pytest.approx(1.0 + 0.49 / (2.0 * math.sqrt(1.51)), abs=1e-15)
    assert casimir(y0) == pytest.approx(1.1993782, abs=1e-7)


def test_euler_diagnostics():
    diag = check_system(euler_rigid_body(), ball_samples(3))
    assert diag.skew_residual <= 1e-14
    assert diag.gradient_residual <= 1e-6
    assert diag.casimir_residual <= 1e-10


def test_diagnostics_catch_wrong_gradient():
    base = euler_rigid_body()
    wrong = PoissonSystem(
        name="euler-broken",
        dim=3,
        structure=base.structure,
        hamiltonian=base.hamiltonian,
        gradient=lambda y: 1.001 * np.asarray(y, dtype=float),
        initial_state=base.initial_state,
    )
    diag = check_system(wrong, ball_samples(3))
    assert diag.gradient_residual > 1e-4


# ------------------------------------------------------------ lotka-volterra


def test_lv2_frozen_values():
    sys_ = lotka_volterra_2d()
    npt.assert_array_equal(sys_.initial_state, [1.0, 1.0])
    assert sys_.hamiltonian(sys_.initial_state) == pytest.approx(-2.0, abs=0)
    npt.assert_allclose(sys_.vector_field(sys_.initial_state), [-1.0, 0.0], atol=0)
    npt.assert_allclose(
        sys_.structure(np.array([2.0, 3.0])), [[0.0, -6.0], [6.0, 0.0]], atol=0
    )


def test_lv3_frozen_values():
    sys_ = lotka_volterra_3d()
    y0 = sys_.initial_state
    npt.assert_array_equal(y0, [1.0, 1.9, 0.5])
    assert sys_.hamiltonian(y0) == pytest.approx(6.9281482, abs=1e-7)
    casimir = dict(sys_.casimirs)["log"]
    assert casimir(y0) == pytest.approx(-0.0512933, abs=1e-7)
    # worked by hand: grad H = (2, 29/19, -2) and the structure rows give
    npt.assert_allclose(sys_.vector_field(y0), [-1.95, 3.8, 0.95], atol=1e-13)


@pytest.mark.parametrize("factory,dim", [(lotka_volterra_2d, 2), (lotka_volterra_3d, 3)])
def test_lv_diagnostics(factory, dim):
    diag = check_system(factory(), positive_samples(dim))
    assert diag.skew_residual <= 1e-14
    assert diag.gradient_residual <= 1e-6
    assert diag.casimir_residual <= 1e-10


@pytest.mark.parametrize("factory", [lotka_volterra_2d, lotka_volterra_3d])
def test_lv_domain_errors(factory):
    sys_ = factory()
    bad = np.full(sys_.dim, -1.0)
    with pytest.raises(DomainError):
        sys_.hamiltonian(bad)
    with pytest.raises(DomainError):
        sys_.gradient(bad)
    with pytest.raises(DomainError):
        sys_.guard(np.zeros(sys_.dim))
    sys_.guard(np.full(sys_.dim, 0.5))  # valid states pass silently


def test_euler_has_no_domain_guard():
    sys_ = euler_rigid_body()
    sys_.guard(np.array([-5.0, 0.0, 5.0]))  # whole space is valid


# ----------------------------------------------------------------- oscillator


def test_oscillator_constant_structure():
    sys_ = canonical_oscillator()
    y = np.array([0.3, -0.8])
    npt.assert_array_equal(sys_.structure(y), [[0.0, 1.0], [-1.0, 0.0]])
    assert sys_.hamiltonian(y) == pytest.approx(0.5 * (0.09 + 0.64), abs=1e-16)
    diag = check_system(sys_, ball_samples(2))
    assert diag.skew_residual == 0.0
    assert diag.gradient_residual <= 1e-6
    ref = reference_solution_oscillator()
    for t in (0.0, 0.5, 2.0):
        npt.assert_allclose(ref.evaluator(t), [math.cos(t), -math.sin(t)], atol=0)


# ---------------------------------------------------------- elliptic reference


def test_jacobi_elliptic_against_scipy():
    rng = np.random.default_rng(0)
    for u in rng.uniform(-30.0, 30.0, 100):
        sn, cn, dn = jacobi_elliptic(float(u), 0.51)
        sn_o, cn_o, dn_o, _ = scipy.special.ellipj(u, 0.51)
        assert sn == pytest.approx(sn_o, abs=1e-12)
        assert cn == pytest.approx(cn_o, abs=1e-12)
        assert dn == pytest.approx(dn_o, abs=1e-12)


def test_jacobi_elliptic_degenerate_and_errors():
    sn, cn, dn = jacobi_elliptic(0.7, 0.0)
    assert (sn, cn, dn) == (math.sin(0.7), math.cos(0.7), 1.0)
    with pytest.raises(ValueError):
        jacobi_elliptic(0.1, 1.0)
    with pytest.raises(ValueError):
        jacobi_elliptic(0.1, -0.2)


def test_euler_reference_exact_at_zero():
    ref = reference_solution_euler()
    npt.assert_array_equal(ref.evaluator(0.0), [0.0, 1.0, 1.0])


def test_euler_reference_preserves_invariants():
    sys_ = euler_rigid_body()
    ref = reference_solution_euler()
    casimir = dict(sys_.casimirs)["quadratic"]
    c0 = casimir(sys_.initial_state)
    for t in np.linspace(0.0, 25.0, 41):
        y = ref.evaluator(float(t))
        assert sys_.hamiltonian(y) == pytest.approx(1.0, abs=1e-12)
        assert casimir(y) == pytest.approx(c0, abs=1e-12)


def test_euler_reference_periodicity():
    ref = reference_solution_euler()
    period = 4.0 * scipy.special.ellipk(0.51)
    for t in (0.3, 1.7):
        npt.assert_allclose(ref.evaluator(t + period), ref.evaluator(t), atol=1e-11)


# -------------------------------------------------------------- rk4 oracle


def test_rk4_path_agrees_with_analytic_reference():
    # independent confirmation of both routes out to t = 10
    sys_ = euler_rigid_body()
    ref = reference_solution_euler()
    h = 1e-4
    path = rk4_path(sys_, sys_.initial_state, h, 100_000)
    for k in range(0, 100_001, 10_000):
        npt.assert_allclose(path[k], ref.evaluator(k * h), atol=1e-9)


def test_rk4_reference_step_halving():
    sys_ = euler_rigid_body()
    oracle = rk4_reference(sys_)
    ref = reference_solution_euler()
    npt.assert_array_equal(oracle.evaluator(0.0), sys_.initial_state)
    npt.assert_allclose(oracle.evaluator(1.0), ref.evaluator(1.0), atol=1e-10)
    with pytest.raises(ValueError):
        oracle.evaluator(-1.0)
