import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diracbox.box1d import mirror_spectrum, solve_1d_mode, spectrum_1d
from diracbox.box3d import reduced_dominant_equation

from oracles import grid_scan_roots_1d

LAMBDAS = (0.1, 1.0, 10.0)


def test_ground_state_unit_box():
    m = solve_1d_mode(1.0, 1)
    assert m.x == pytest.approx(2.0288, abs=1e-4)
    assert m.epsilon == pytest.approx(2.2619, abs=1e-3)
    assert m.epsilon == pytest.approx(math.sqrt(1 + m.x**2), rel=1e-12)


def test_large_box_recovers_schroedinger_phase():
    assert solve_1d_mode(1e8, 3).x == pytest.approx(3 * math.pi, abs=1e-6)


def test_small_box_recovers_half_integer_phase():
    assert solve_1d_mode(1e-8, 3).x == pytest.approx(2.5 * math.pi, abs=1e-6)


def test_two_modes_lambda_ten():
    # second root lies in (3pi/2, 2pi); frozen from the grid-scan oracle
    x1, x2 = (m.x for m in spectrum_1d(10.0, 2))
    assert x1 == pytest.approx(2.8627726, abs=1e-6)
    assert x2 == pytest.approx(5.7605579, abs=1e-6)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_oracle_equivalence(lam):
    expected = grid_scan_roots_1d(lam, 10)
    got = [m.x for m in spectrum_1d(lam, 10)]
    np.testing.assert_allclose(got, expected, atol=1e-8, rtol=0)


@pytest.mark.parametrize("lam", [1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e6])
def test_mode_invariants(lam):
    for m in spectrum_1d(lam, 12):
        assert (m.n - 0.5) * math.pi < m.x < m.n * math.pi
        assert m.u == pytest.approx(m.x / lam, rel=1e-12)
        assert m.epsilon == pytest.approx(math.sqrt(1 + m.u**2), rel=1e-12)
        assert m.phase_residual <= 1e-10


def test_energies_strictly_increase():
    for lam in (1e-3, 1.0, 1e3):
        e = [m.epsilon for m in spectrum_1d(lam, 15)]
        assert all(b > a for a, b in zip(e, e[1:]))


def test_single_mode_spectrum():
    (m,) = spectrum_1d(1.0, 1)
    assert m.x == solve_1d_mode(1.0, 1).x


@pytest.mark.parametrize("n", [1, 2, 5])
def test_phase_monotone_in_box_size(n):
    lams = np.logspace(-6, 6, 49)
    xs = [solve_1d_mode(lam, n).x for lam in lams]
    assert all(b > a for a, b in zip(xs, xs[1:]))
    # end gaps are ~ lam / x and x / lam respectively
    assert xs[0] - (n - 0.5) * math.pi < 1e-4
    assert n * math.pi - xs[-1] < 1e-4


@given(st.floats(min_value=1e-4, max_value=1e4), st.integers(1, 40))
def test_spacing_below_pi(lam, n):
    dx = solve_1d_mode(lam, n + 1).x - solve_1d_mode(lam, n).x
    assert 0 < dx < math.pi


def test_spacing_tends_to_pi():
    for lam in (0.1, 1.0, 10.0):
        dx = [b.x - a.x for a, b in zip(spectrum_1d(lam, 60), spectrum_1d(lam, 60)[1:])]
        assert math.pi - dx[-1] < math.pi - dx[len(dx) // 2]
        assert math.pi - dx[-1] < 1e-2


def test_same_roots_as_reduced_dominant_equation():
    for ratio in (10.0, 1.0, 0.1):
        m = solve_1d_mode(1.0 / ratio, 1)
        assert abs(reduced_dominant_equation(m.x, ratio)) < 1e-9


@pytest.mark.parametrize("lam, n", [(0.0, 1), (-1.0, 1), (math.inf, 1), (1.0, 0), (1.0, 1.5)])
def test_rejects_bad_input(lam, n):
    with pytest.raises(ValueError):
        solve_1d_mode(lam, n)


def test_mirror_single():
    m = solve_1d_mode(1.0, 1)
    assert mirror_spectrum([m]) == [-m.epsilon, m.epsilon]


def test_mirror_empty():
    assert mirror_spectrum([]) == []


def test_mirror_is_exact_sign_symmetry():
    signed = mirror_spectrum(spectrum_1d(1.0, 3))
    assert len(signed) == 6
    assert sorted(-e for e in signed) == signed
    assert signed == sorted(signed)
