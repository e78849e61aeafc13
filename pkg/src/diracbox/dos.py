"""Level counting and density-of-states comparisons.

Two pictures of "density" are used.  For a single axis, the gap between
successive allowed phases ``x_{n+1} - x_n`` is compared with the
Schroedinger gap ``pi``.  For the 3-D box, cumulative state counts of the
relativistic spectrum are compared with those of the non-relativistic
quantization ``x_l = n_l pi`` pushed through the same dispersion relation,
so only the quantization condition differs between the two.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .box1d import spectrum_1d
from .box3d import GROUP_RTOL, LevelTable, ModeSolution, enumerate_spectrum, group_levels
from .errors import InsufficientSpectrum
from .units import BoxGeometry, QuantumNumbers, dispersion, kinetic_energy

SPIN = 2


def nr_solution(geometry: BoxGeometry, qn: QuantumNumbers) -> ModeSolution:
    u = tuple(n * math.pi / lam for n, lam in zip(qn, geometry.lam))
    zeros = (0.0, 0.0, 0.0)
    return ModeSolution(qn=qn, geometry=geometry, u=u, epsilon=dispersion(u),
                        kinetic=kinetic_energy(u), residuals=zeros,
                        phase_residuals=zeros, sweeps=0)


def nr_level_table(geometry: BoxGeometry, n_max: int, rtol: float = GROUP_RTOL) -> LevelTable:
    """Level table of the quantization ``x_l = n_l pi`` for the same box."""
    sols = [nr_solution(geometry, QuantumNumbers(t))
            for t in itertools.product(range(1, n_max + 1), repeat=3)]
    edge = []
    for l in range(3):
        t = [1, 1, 1]
        t[l] = n_max + 1
        edge.append(nr_solution(geometry, QuantumNumbers(tuple(t))).kinetic)
    return LevelTable(geometry=geometry, n_max=n_max, levels=tuple(group_levels(sols, rtol)),
                      coverage_kinetic=min(edge))


def _count(levels: LevelTable, value: float, kinetic: bool) -> int:
    total = 0
    for lev in levels:
        e = lev.kinetic if kinetic else lev.epsilon
        if e <= value:
            total += lev.degeneracy
    return SPIN * total


@dataclass(frozen=True)
class CountingReport:
    grid: tuple[float, ...]
    counts: tuple[int, ...]
    nr_counts: tuple[int, ...]
    kinetic: bool


def cumulative_count(levels: LevelTable, eps_grid: Sequence[float], kinetic: bool = False,
                     nr_levels: LevelTable | None = None) -> CountingReport:
    """Spin-counted number of states ``N(eps)`` at or below each grid value.

    With ``kinetic=True`` the grid is in ``eps - 1`` instead of ``eps``, which
    is the only usable scale in very large boxes.  The table must cover the
    grid: the lowest state outside its quantum-number range has to lie above
    the top grid value, or :class:`InsufficientSpectrum` is raised.
    """
    grid = tuple(float(e) for e in eps_grid)
    if not grid:
        return CountingReport((), (), (), kinetic)
    top = max(grid)
    cover = levels.coverage_kinetic if kinetic else levels.coverage_epsilon
    if top >= cover:
        raise InsufficientSpectrum(
            f"grid reaches {top!r} but the table (n_max={levels.n_max}) is complete "
            f"only below {cover!r}"
        )
    if nr_levels is None:
        nr_levels = nr_level_table(levels.geometry, levels.n_max)
    nr_cover = nr_levels.coverage_kinetic if kinetic else nr_levels.coverage_epsilon
    if top >= nr_cover:
        raise InsufficientSpectrum(f"grid reaches {top!r}; reference table stops at {nr_cover!r}")
    return CountingReport(
        grid=grid,
        counts=tuple(_count(levels, e, kinetic) for e in grid),
        nr_counts=tuple(_count(nr_levels, e, kinetic) for e in grid),
        kinetic=kinetic,
    )


def spacing_series(lam: float, n_max: int) -> list[float]:
    """Phase gaps ``x_{n+1} - x_n`` for ``n = 1..n_max-1``; each is below pi."""
    if n_max < 2:
        raise ValueError(f"spacing needs n_max >= 2, got {n_max!r}")
    xs = [m.x for m in spectrum_1d(lam, n_max)]
    return [b - a for a, b in zip(xs, xs[1:])]


@dataclass(frozen=True)
class LevelPair:
    qn: tuple[int, int, int]
    degeneracy: int
    x_over_pi: tuple[float, float, float]
    epsilon: float
    kinetic: float
    nr_epsilon: float
    nr_kinetic: float


@dataclass(frozen=True)
class DensityIndicator:
    threshold: float  # kinetic energy of an NR level
    count: int
    nr_count: int
    complete: bool

    @property
    def ratio(self) -> float:
        return self.count / self.nr_count if self.nr_count else math.nan


@dataclass(frozen=True)
class NRComparison:
    geometry: BoxGeometry
    n_max: int
    pairs: tuple[LevelPair, ...]
    indicators: tuple[DensityIndicator, ...]


def nr_comparison(geometry: BoxGeometry, n_max: int, table: LevelTable | None = None,
                  **kwargs) -> NRComparison:
    """Pair every relativistic level with its NR counterpart and compare counts.

    Thresholds are the NR kinetic energies.  ``complete`` is false where a
    threshold reaches past the relativistic table's coverage, in which case
    the relativistic count is only a lower bound.
    """
    if table is None:
        table = enumerate_spectrum(geometry, n_max, **kwargs)
    nr = nr_level_table(geometry, n_max)
    pairs = []
    for lev in table:
        rep = lev.members[0]
        ref = nr_solution(geometry, rep.qn)
        pairs.append(LevelPair(qn=rep.qn.n, degeneracy=lev.degeneracy,
                               x_over_pi=rep.x_over_pi, epsilon=rep.epsilon,
                               kinetic=rep.kinetic, nr_epsilon=ref.epsilon,
                               nr_kinetic=ref.kinetic))
    indicators = []
    for lev in nr:
        thr = lev.kinetic
        slack = thr * (1.0 + GROUP_RTOL)
        indicators.append(DensityIndicator(
            threshold=thr,
            count=_count(table, slack, kinetic=True),
            nr_count=_count(nr, slack, kinetic=True),
            complete=slack < table.coverage_kinetic,
        ))
    return NRComparison(geometry=geometry, n_max=n_max, pairs=tuple(pairs),
                        indicators=tuple(indicators))
