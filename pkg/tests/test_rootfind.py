import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from diracbox.errors import MaxIterationsExceeded, NoSignChange
from diracbox.rootfind import Bracket, bisect

from oracles import grid_scan_roots_1d


def test_linear_midpoint_hit():
    rep = bisect(lambda x: x - 1.0, Bracket(0.0, 2.0))
    assert rep.root == 1.0
    assert rep.converged
    assert rep.iterations == 1


@pytest.mark.parametrize("lam, tol", [(1.0, 1e-6), (10.0, 1e-3)])
def test_tan_branch_roots_match_grid_scan(lam, tol):
    br = Bracket(math.pi / 2, math.pi, open_lo=True, open_hi=True)
    rep = bisect(lambda x: math.tan(x) + x / lam, br)
    (expected,) = grid_scan_roots_1d(lam, 1)
    assert rep.root == pytest.approx(expected, abs=1e-10)
    # frozen from the grid-scan oracle
    assert rep.root == pytest.approx({1.0: 2.0287578, 10.0: 2.8627726}[lam], abs=tol)
    assert br.contains(rep.root)


def test_open_endpoint_sign_hint_skips_evaluation():
    calls = []

    def f(x):
        calls.append(x)
        return math.tan(x) + x

    br = Bracket(math.pi / 2, math.pi, open_lo=True, lo_sign=-1)
    bisect(f, br)
    assert min(calls) > math.pi / 2 + 0.1


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        bisect(lambda x: x * x + 1.0, Bracket(-1.0, 1.0))


def test_max_iterations():
    with pytest.raises(MaxIterationsExceeded) as info:
        bisect(lambda x: x - 0.3, Bracket(0.0, 1.0), tol_x=0.0, tol_f=0.0, max_iter=5)
    assert not info.value.report.converged


@pytest.mark.parametrize("lo, hi", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_bad_bracket(lo, hi):
    with pytest.raises(ValueError):
        Bracket(lo, hi)


def test_nan_objective():
    with pytest.raises(ValueError):
        bisect(lambda x: math.nan, Bracket(0.0, 1.0))


def test_width_floor_terminates():
    # tolerance below float resolution still terminates cleanly
    rep = bisect(lambda x: x - 1e8 - 0.1, Bracket(1e8, 1e8 + 1), tol_x=0.0, tol_f=0.0)
    assert rep.converged
    assert abs(rep.root - (1e8 + 0.1)) < 1e-7


roots = st.floats(min_value=-50, max_value=50, allow_nan=False)
slopes = st.floats(min_value=0.01, max_value=100, allow_nan=False)


@given(roots, slopes, st.floats(0.1, 10), st.floats(0.1, 10))
def test_root_strictly_inside_and_accurate(c, k, left, right):
    f = lambda x: k * (x - c) + 0.1 * (x - c) ** 3
    br = Bracket(c - left, c + right)
    rep = bisect(f, br, tol_f=0.0)
    assert br.lo < rep.root < br.hi
    assert abs(rep.root - c) <= 1e-12 + 4 * np.finfo(float).eps * abs(c)


@given(roots, slopes)
def test_halving_tolerance_moves_root_less_than_tolerance(c, k):
    f = lambda x: math.atan(k * (x - c))
    br = Bracket(c - 3.3, c + 1.7)
    for tol in (1e-2, 1e-4, 1e-6, 1e-8):
        r1 = bisect(f, br, tol_x=tol, tol_f=0.0).root
        r2 = bisect(f, br, tol_x=tol / 2, tol_f=0.0).root
        assert abs(r1 - r2) <= tol


@given(st.floats(min_value=0.05, max_value=100.0))
def test_monotone_agrees_with_scan(lam):
    # grid-scan reference on the same monotone branch objective
    br = Bracket(math.pi / 2, math.pi, open_lo=True, open_hi=True, lo_sign=-1)
    got = bisect(lambda x: math.tan(x) + x / lam, br, tol_x=1e-12, tol_f=0.0).root
    xs = np.linspace(math.pi / 2 + 1e-9, math.pi, 20001)
    f = np.tan(xs) + xs / lam
    i = np.nonzero((f[:-1] < 0) & (f[1:] >= 0))[0]
    assume(len(i) == 1)
    assert xs[i[0]] - 1e-12 <= got <= xs[i[0] + 1] + 1e-12
