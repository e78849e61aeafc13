"""Dirac particle in a rectangular MIT bag.

Each axis ``l`` carries its own condition
``tan(u_l lam_l) = 2 u_l (eps+1) / (u_l^2 - (eps+1)^2)``, and the three are
coupled through the energy ``eps = sqrt(1 + u^2)``.  The system is solved by
Gauss-Seidel sweeps: every axis in turn is re-solved exactly by bisection on
its branch bracket while the other two components are frozen.

Because the right side is always negative, branch ``n_l`` of axis ``l`` lives
in ``x_l = u_l lam_l`` inside ``((n_l - 1/2) pi, n_l pi)``; the brackets never
move, which is what makes the cyclic scheme safe.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import rootfind
from .errors import ConvergenceFailure, InvalidBracket, MaxIterationsExceeded, NoSignChange
from .units import BoxGeometry, QuantumNumbers, dispersion, kinetic_energy, rhs_coupled

log = logging.getLogger(__name__)

TOL = 1e-10
TOL_F = 1e-9
MAX_SWEEPS = 500
GROUP_RTOL = 1e-8
# sweeps of non-decreasing update size before damping kicks in
STALL_WINDOW = 10
DAMPING = 0.5


@dataclass(frozen=True)
class ModeSolution:
    qn: QuantumNumbers
    geometry: BoxGeometry
    u: tuple[float, float, float]
    epsilon: float
    kinetic: float
    residuals: tuple[float, float, float]
    phase_residuals: tuple[float, float, float]
    sweeps: int
    damped: bool = False

    @property
    def x(self) -> tuple[float, float, float]:
        """Phases ``k_l L_l``."""
        return tuple(u * lam for u, lam in zip(self.u, self.geometry.lam))

    @property
    def x_over_pi(self) -> tuple[float, float, float]:
        return tuple(v / math.pi for v in self.x)


def reduced_dominant_equation(x: float, ratio: float) -> float:
    """``tan(x) + x * ratio``; ``ratio = L_C / L_l``.

    The single-axis condition that remains when one wavenumber component
    dominates the others; its first root lies in ``(pi/2, pi)``.
    """
    return math.tan(x) + x * ratio


def solve_reduced_dominant(ratio: float, n: int = 1) -> float:
    if not ratio > 0:
        raise ValueError(f"ratio must be positive, got {ratio!r}")
    br = rootfind.Bracket((n - 0.5) * math.pi, n * math.pi, open_lo=True, open_hi=True,
                          lo_sign=-1, hi_sign=1)
    return rootfind.bisect(lambda x: reduced_dominant_equation(x, ratio), br, tol_f=0.0).root


def _residuals(u, lam, qn):
    tan_res, phase_res = [], []
    for l in range(3):
        rhs = rhs_coupled(u, l)
        x = u[l] * lam[l]
        tan_res.append(abs(math.tan(x) - rhs))
        # same condition, written as a phase: x - n pi = atan(rhs) on this branch
        phase_res.append(abs(x - qn[l] * math.pi - math.atan(rhs)))
    return tuple(tan_res), tuple(phase_res)


def _axis_bracket(n: int) -> rootfind.Bracket:
    return rootfind.Bracket((n - 0.5) * math.pi, n * math.pi, open_lo=True, open_hi=True,
                            lo_sign=-1, hi_sign=1)


def solve_mode(
    geometry: BoxGeometry,
    qn: QuantumNumbers,
    tol: float = TOL,
    tol_f: float = TOL_F,
    max_sweeps: int = MAX_SWEEPS,
    tol_x: float = rootfind.TOL_X,
) -> ModeSolution:
    """Solve the coupled conditions for one quantum-number triple.

    ``tol`` bounds the largest phase update ``|delta(u_l lam_l)|`` of the last
    sweep and ``tol_f`` the phase-form residual of every axis.
    """
    if not isinstance(qn, QuantumNumbers):
        qn = QuantumNumbers(tuple(qn))
    lam = geometry.lam
    x = [(n - 0.25) * math.pi for n in qn]
    u = [x[l] / lam[l] for l in range(3)]

    damped = False
    history: list[float] = []
    for sweep in range(1, max_sweeps + 1):
        step = 0.0
        for l in range(3):
            def objective(t, l=l):
                trial = list(u)
                trial[l] = t / lam[l]
                return math.tan(t) - rhs_coupled(trial, l)

            try:
                rep = rootfind.bisect(objective, _axis_bracket(qn[l]), tol_x=tol_x, tol_f=0.0)
            except NoSignChange as exc:
                raise InvalidBracket(f"axis {l} of {qn.n}: {exc}") from exc
            except MaxIterationsExceeded as exc:
                raise ConvergenceFailure(f"axis {l} of {qn.n}: {exc}", qn=qn.n, u=tuple(u)) from exc
            new = rep.root
            if damped:
                new = x[l] + DAMPING * (new - x[l])
            step = max(step, abs(new - x[l]))
            x[l] = new
            u[l] = new / lam[l]

        history.append(step)
        if not damped and len(history) > STALL_WINDOW:
            window = history[-STALL_WINDOW - 1:]
            if all(b >= a for a, b in zip(window, window[1:])):
                log.debug("sweeps stalled for %s at %r; switching to damped updates", qn.n, lam)
                damped = True

        if step <= tol:
            tan_res, phase_res = _residuals(u, lam, qn)
            if max(phase_res) <= tol_f:
                return ModeSolution(
                    qn=qn, geometry=geometry, u=tuple(u), epsilon=dispersion(u),
                    kinetic=kinetic_energy(u), residuals=tan_res,
                    phase_residuals=phase_res, sweeps=sweep, damped=damped,
                )

    tan_res, phase_res = _residuals(u, lam, qn)
    raise ConvergenceFailure(
        f"{qn.n} in box {lam} did not converge in {max_sweeps} sweeps",
        qn=qn.n, u=tuple(u), residuals=tan_res, phase_residuals=phase_res,
    )


def permute_solution(sol: ModeSolution, perm: Sequence[int], tol_f: float = TOL_F) -> ModeSolution:
    """Relabel a cubic-box solution by an axis permutation.

    The permuted vector is checked against the eigenvalue conditions on its
    own; a cubic box is required for the relabelling to be a solution.
    """
    if not sol.geometry.is_cubic:
        raise ValueError("axis permutation is only a symmetry of a cubic box")
    qn = QuantumNumbers(tuple(sol.qn[p] for p in perm))
    u = tuple(sol.u[p] for p in perm)
    tan_res, phase_res = _residuals(u, sol.geometry.lam, qn)
    if max(phase_res) > tol_f:
        raise ConvergenceFailure(f"permuted solution {qn.n} fails the residual check",
                                 qn=qn.n, phase_residuals=phase_res)
    return ModeSolution(qn=qn, geometry=sol.geometry, u=u, epsilon=dispersion(u),
                        kinetic=kinetic_energy(u), residuals=tan_res,
                        phase_residuals=phase_res, sweeps=sol.sweeps, damped=sol.damped)


@dataclass(frozen=True)
class Level:
    epsilon: float
    kinetic: float
    members: tuple[ModeSolution, ...]

    @property
    def degeneracy(self) -> int:
        """Spatial degeneracy; spin is not included."""
        return len(self.members)

    @property
    def multisets(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(sorted({m.qn.multiset for m in self.members}))

    @property
    def representative(self) -> tuple[int, int, int]:
        return self.multisets[0]


@dataclass(frozen=True)
class LevelTable:
    geometry: BoxGeometry
    n_max: int
    levels: tuple[Level, ...]
    # kinetic energy of the lowest state outside the enumerated n-range
    coverage_kinetic: float = field(default=math.inf)

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    @property
    def solutions(self) -> list[ModeSolution]:
        return [m for lev in self.levels for m in lev.members]

    @property
    def coverage_epsilon(self) -> float:
        return 1.0 + self.coverage_kinetic


def group_levels(solutions: Sequence[ModeSolution], rtol: float = GROUP_RTOL) -> list[Level]:
    """Merge solutions whose kinetic energies agree to ``rtol`` (relative).

    Grouping is done on ``eps - 1`` rather than ``eps``: in a very large box
    every level has ``eps`` equal to 1 within rounding while the kinetic
    energies are still cleanly separated.
    """
    ordered = sorted(solutions, key=lambda s: (s.kinetic, s.qn.multiset, s.qn.n))
    groups: list[list[ModeSolution]] = []
    for s in ordered:
        if groups:
            head = groups[-1][0]
            if abs(s.kinetic - head.kinetic) <= rtol * max(s.kinetic, head.kinetic):
                groups[-1].append(s)
                continue
        groups.append([s])
    levels = []
    for g in groups:
        g.sort(key=lambda s: (s.qn.multiset, s.qn.n))
        levels.append(Level(epsilon=g[0].epsilon, kinetic=g[0].kinetic, members=tuple(g)))
    levels.sort(key=lambda lev: (lev.kinetic, lev.representative))
    return levels


def _solve_tagged(geometry, qn, kwargs):
    try:
        return solve_mode(geometry, QuantumNumbers(qn), **kwargs)
    except ConvergenceFailure as exc:
        exc.context.setdefault("qn", qn)
        raise


def enumerate_spectrum(
    geometry: BoxGeometry,
    n_max: int,
    workers: Optional[int] = None,
    rtol: float = GROUP_RTOL,
    **solve_kwargs,
) -> LevelTable:
    """Solve every triple with ``1 <= n_l <= n_max`` and group into levels.

    In a cubic box only sorted multisets are solved; their permutations are
    generated by relabelling and re-checked.  ``workers`` > 1 fans the
    solves out over a thread pool; results do not depend on it.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max!r}")
    if geometry.is_cubic:
        jobs = list(itertools.combinations_with_replacement(range(1, n_max + 1), 3))
    else:
        jobs = list(itertools.product(range(1, n_max + 1), repeat=3))

    # lowest state just outside the enumerated range: n_max + 1 on one axis
    edge_jobs = []
    for l in range(3):
        t = [1, 1, 1]
        t[l] = n_max + 1
        edge_jobs.append(tuple(t))
        if geometry.is_cubic:
            break

    all_jobs = jobs + edge_jobs
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(lambda q: _solve_tagged(geometry, q, solve_kwargs), all_jobs))
    else:
        solved = [_solve_tagged(geometry, q, solve_kwargs) for q in all_jobs]
    base, edge = solved[: len(jobs)], solved[len(jobs):]

    if geometry.is_cubic:
        tol_f = solve_kwargs.get("tol_f", TOL_F)
        solutions = []
        for sol in base:
            relabel = {}
            for p in itertools.permutations(range(3)):
                relabel.setdefault(tuple(sol.qn[i] for i in p), p)
            for key in sorted(relabel):
                p = relabel[key]
                solutions.append(sol if key == sol.qn.n else permute_solution(sol, p, tol_f))
    else:
        solutions = base

    return LevelTable(
        geometry=geometry,
        n_max=n_max,
        levels=tuple(group_levels(solutions, rtol)),
        coverage_kinetic=min(s.kinetic for s in edge),
    )
