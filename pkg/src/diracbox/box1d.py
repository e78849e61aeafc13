"""Dirac particle in a one-dimensional MIT bag.

The wall conditions reduce to ``tan(x) = -x / lam`` for the phase ``x = k L``
with ``lam = L / L_C``.  The right side is negative for every ``x > 0``, so
branch ``n`` has exactly one root in ``((n - 1/2) pi, n pi)``: close to
``(n - 1/2) pi`` for a box much smaller than the Compton wavelength and close
to the Schroedinger value ``n pi`` for a large box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import rootfind
from .errors import ConvergenceFailure, MaxIterationsExceeded, NoSignChange
from .units import dispersion, kinetic_energy


@dataclass(frozen=True)
class Mode1D:
    n: int
    lam: float
    x: float
    u: float
    epsilon: float
    residual: float
    phase_residual: float
    iterations: int

    @property
    def kinetic(self) -> float:
        return kinetic_energy(self.u)


def branch_bracket(n: int) -> rootfind.Bracket:
    # tan -> -inf just above (n - 1/2) pi; at n pi the objective is n pi/lam > 0
    return rootfind.Bracket(
        (n - 0.5) * math.pi, n * math.pi, open_lo=True, open_hi=True,
        lo_sign=-1, hi_sign=1,
    )


def eigen_objective(x: float, lam: float) -> float:
    return math.tan(x) + x / lam


def solve_1d_mode(lam: float, n: int, tol_x: float = rootfind.TOL_X,
                  tol_f: float = rootfind.TOL_F) -> Mode1D:
    """Solve branch ``n`` of ``tan(x) = -x/lam``.

    The root is located to ``tol_x`` in the phase.  Convergence is judged on
    the phase-form residual ``x - n pi + atan(x/lam)``, which is well scaled
    in every regime; the raw ``tan`` residual is reported alongside but can
    be large for tiny boxes, where the objective is extremely steep.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise ValueError(f"box length must be positive and finite, got {lam!r}")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"branch index must be an integer >= 1, got {n!r}")
    n, lam = int(n), float(lam)
    try:
        rep = rootfind.bisect(
            lambda x: eigen_objective(x, lam), branch_bracket(n), tol_x=tol_x, tol_f=0.0
        )
    except (NoSignChange, MaxIterationsExceeded) as exc:
        raise ConvergenceFailure(f"1-D branch n={n} failed at lam={lam!r}: {exc}",
                                 n=n, lam=lam) from exc
    x = rep.root
    phase_res = x - n * math.pi + math.atan(x / lam)
    if abs(phase_res) > max(tol_f, 8.0 * tol_x):
        raise ConvergenceFailure(
            f"1-D branch n={n} residual {phase_res!r} above tolerance", n=n, lam=lam, x=x
        )
    u = x / lam
    return Mode1D(n=n, lam=float(lam), x=x, u=u, epsilon=dispersion(u),
                  residual=abs(eigen_objective(x, lam)), phase_residual=abs(phase_res),
                  iterations=rep.iterations)


def spectrum_1d(lam: float, n_max: int, **kwargs) -> list[Mode1D]:
    """Branches ``1..n_max`` in ascending energy (which is ascending ``n``)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max!r}")
    modes = [solve_1d_mode(lam, n, **kwargs) for n in range(1, n_max + 1)]
    modes.sort(key=lambda m: m.epsilon)
    return modes


def mirror_spectrum(modes) -> list[float]:
    """Signed energies ``{-eps_n} U {+eps_n}``, sorted ascending.

    The negative-energy levels are the exact sign mirror of the positive
    ones; no separate solve is done.
    """
    pos = sorted(m.epsilon for m in modes)
    return [-e for e in reversed(pos)] + pos
