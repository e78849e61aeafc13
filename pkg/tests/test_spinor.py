import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracbox.box1d import solve_1d_mode
from diracbox.box3d import solve_mode
from diracbox.errors import NotConverged
from diracbox.spinor import (
    ALPHA,
    BETA,
    FACES,
    GAMMA,
    SIGMA,
    anticommutator,
    build_field,
    build_field_1d,
    coefficient_ratio,
    dirac_current,
    face_grid,
    mit_residual,
    mit_residual_1d,
    outward_current,
    phase_from_walls,
    plane_wave_superposition,
    projected_mit_residual,
    random_unit_spinor,
)
from diracbox.units import BoxGeometry, QuantumNumbers


def _field(lam, qn, chi=None):
    geom = BoxGeometry.cube(lam) if np.isscalar(lam) else BoxGeometry(lam)
    return build_field(solve_mode(geom, QuantumNumbers(qn)), chi)


def _scale(field):
    # |psi| is of order 8 on the box interior with B = 1
    return max(np.linalg.norm(field(p)) for p in face_grid(field.lam, (0, 0), 5))


def test_dirac_algebra():
    I4 = np.eye(4)
    for i in range(3):
        assert np.allclose(anticommutator(ALPHA[i], BETA), 0)
        for j in range(3):
            assert np.allclose(anticommutator(ALPHA[i], ALPHA[j]), 2 * (i == j) * I4)
    for mu in range(4):
        for nu in range(4):
            eta = np.diag([1, -1, -1, -1])[mu, nu]
            assert np.allclose(anticommutator(GAMMA[mu], GAMMA[nu]), 2 * eta * I4)


def test_coefficient_ratio_examples():
    assert coefficient_ratio(0.0, 0.7) == -1
    assert coefficient_ratio(1.0, 1.0) == pytest.approx(1j)
    for r, k in [(0.3, 0.2), (0.99, 0.5), (0.5, 1.0)]:
        assert abs(coefficient_ratio(r, k)) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("lam, qn", [(1.0, (1, 1, 1)), (0.1, (1, 2, 3)), ((1.0, 2.0, 3.0), (2, 1, 1))])
def test_wall_phase_matches_coefficient_ratio(lam, qn):
    # the far wall needs e^{2ix} = (C/B)^2, i.e. e^{ix} = +- C/B
    field = _field(lam, qn)
    for l in range(3):
        c = field.coefficients.C[l]
        e = np.exp(1j * field.solution.x[l])
        assert min(abs(e - c), abs(e + c)) < 1e-9


@pytest.mark.parametrize("lam, qn", [(1.0, (1, 1, 1)), (0.1, (1, 2, 3)), (10.0, (2, 2, 1))])
def test_standing_wave_is_plane_wave_sum(lam, qn):
    field = _field(lam, qn, chi=(0.6, 0.8j))
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = rng.random(3) * np.asarray(field.lam)
        np.testing.assert_allclose(field(p), plane_wave_superposition(field, p), atol=1e-12)


@pytest.mark.parametrize("lam, qn", [(1.0, (1, 1, 1)), (0.1, (1, 2, 3)), (10.0, (1, 1, 2))])
def test_free_dirac_equation(lam, qn):
    # -i alpha.grad psi + beta psi = eps psi, central differences
    field = _field(lam, qn, chi=(1.0, 1.0))
    h = 1e-5 * min(field.lam)
    rng = np.random.default_rng(2)
    for _ in range(5):
        p = (0.1 + 0.8 * rng.random(3)) * np.asarray(field.lam)
        hpsi = BETA @ field(p)
        for i in range(3):
            d = np.zeros(3)
            d[i] = h
            grad = (field(p + d) - field(p - d)) / (2 * h)
            hpsi = hpsi - 1j * ALPHA[i] @ grad
        eps = field.solution.epsilon
        np.testing.assert_allclose(hpsi, eps * field(p), atol=1e-5 * eps * np.linalg.norm(field(p)))


@pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("qn", [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 2, 2)])
def test_identity_part_of_wall_condition_holds(lam, qn):
    rng = np.random.default_rng(3)
    for chi in (None, random_unit_spinor(rng)):
        field = _field(lam, qn, chi)
        scale = _scale(field)
        for face in FACES:
            for p in face_grid(field.lam, face, 5):
                assert projected_mit_residual(field, face, p) < 1e-9 * scale


def test_wrong_coefficient_breaks_wall_condition():
    field = _field(1.0, (1, 1, 1))
    bad = field.with_coefficients(field.coefficients.B, -field.coefficients.C)
    worst = max(projected_mit_residual(bad, (0, 0), p) for p in face_grid(bad.lam, (0, 0), 3))
    assert worst > 0.1 * _scale(field)


def test_full_residual_is_commutator_terms_only():
    # with the transverse lower-block weights removed only the identity part
    # is left, and the full condition then holds on that axis' walls
    field = _field(1.0, (1, 2, 3), chi=(0.3, 0.4 + 0.5j))
    for axis in range(3):
        a = np.where(np.arange(3) == axis, field.a, 0.0)
        reduced = dataclasses.replace(field, a=a)
        for side in (0, 1):
            for p in face_grid(field.lam, (axis, side), 4):
                assert mit_residual(reduced, (axis, side), p) < 1e-9 * _scale(field)


def test_full_residual_identity():
    # |(s i beta alpha_l - 1) psi|^2 = 2 |phi - s i sigma_l eta|^2
    field = _field(0.5, (1, 2, 2), chi=(1.0, 2.0j))
    for axis, side in FACES:
        s = 1.0 if side == 0 else -1.0
        for p in face_grid(field.lam, (axis, side), 3):
            psi = field(p)
            phi, eta = psi[:2], psi[2:]
            rhs = 2 * np.linalg.norm(phi - s * 1j * SIGMA[axis] @ eta) ** 2
            assert mit_residual(field, (axis, side), p) ** 2 == pytest.approx(rhs, rel=1e-10)


def test_symmetric_ground_state_face_centres():
    field = _field(1.0, (1, 1, 1))
    for face in FACES:
        (centre,) = face_grid(field.lam, face, 1)
        assert mit_residual(field, face, centre) < 1e-9 * _scale(field)
        jn, j0 = outward_current(field, face, centre)
        assert abs(jn) < 1e-9 * j0


def test_large_box_lower_components_suppressed():
    field = _field(1e6, (1, 2, 1))
    rng = np.random.default_rng(4)
    psis = [field(rng.random(3) * np.asarray(field.lam)) for _ in range(50)]
    # compared by peak size: pointwise ratios blow up at nodes of the upper block
    lower = max(np.linalg.norm(p[2:]) for p in psis)
    upper = max(np.linalg.norm(p[:2]) for p in psis)
    assert lower < 1e-5 * upper


@pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_one_dimensional_field_is_confined(lam, n):
    field = build_field_1d(solve_1d_mode(lam, n), chi=(0.6, 0.8))
    scale = np.linalg.norm(field(0.5 * lam))
    for side, z in ((0, 0.0), (1, lam)):
        assert mit_residual_1d(field, side) < 1e-9 * max(scale, 1.0)
        J = dirac_current(field(z))
        assert abs(J[3]) < 1e-9 * J[0]


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 20.0), st.floats(0.0, 1.0), st.floats(-3, 3), st.floats(-3, 3))
def test_current_two_ways(lam, frac, re, im):
    field = build_field_1d(solve_1d_mode(lam, 2), chi=(1.0, re + 1j * im))
    psi = field(frac * lam)
    J = dirac_current(psi)
    assert J[0] >= 0
    for i in range(3):
        direct = (psi.conj() @ ALPHA[i] @ psi).real
        assert J[1 + i] == pytest.approx(direct, abs=1e-12 * J[0])


@pytest.mark.parametrize("lam, qn", [(1.0, (1, 1, 1)), (0.1, (1, 2, 3)), ((1.0, 2.0, 3.0), (3, 1, 2))])
def test_phase_recovered_from_walls(lam, qn):
    field = _field(lam, qn)
    for l in range(3):
        assert phase_from_walls(field, l) == pytest.approx(field.solution.x[l], abs=1e-9)


@pytest.mark.parametrize("qn", [(1, 1, 1), (2, 2, 2), (1, 2, 3)])
def test_field_nonzero_on_every_face(qn):
    # individual points can be nodes (the (2,2,2) face centres are), but no
    # face is a node as a whole
    field = _field(1.0, qn)
    for face in FACES:
        peak = max(np.linalg.norm(field(p)) for p in face_grid(field.lam, face, 7))
        assert peak > 0.1


def test_unconverged_mode_rejected():
    sol = solve_mode(BoxGeometry.cube(1.0), QuantumNumbers((1, 1, 2)))
    bad = dataclasses.replace(sol, phase_residuals=(1e-3, 0.0, 0.0))
    with pytest.raises(NotConverged):
        build_field(bad)


def test_zero_spinor_rejected():
    with pytest.raises(ValueError):
        _field(1.0, (1, 1, 1), chi=(0.0, 0.0))
