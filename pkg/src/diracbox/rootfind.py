"""Bracketed scalar root finding.

Plain bisection: slow but it can never leave its bracket, which is what the
branch-by-branch eigenvalue solvers need.  Endpoints may be marked open so a
function that diverges there (``tan`` at odd multiples of pi/2) is sampled
just inside, or replaced by a known limiting sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import MaxIterationsExceeded, NoSignChange

TOL_X = 1e-12
TOL_F = 1e-10
MAX_ITER = 200

# inset of an open endpoint, relative to the bracket width
OPEN_INSET = 1e-12


@dataclass(frozen=True)
class Bracket:
    """Search interval ``[lo, hi]``.

    ``open_lo``/``open_hi`` mark ends where the objective is not evaluated
    exactly at the endpoint.  ``lo_sign``/``hi_sign`` optionally give the
    limiting sign of the objective at an open end (e.g. -1 where it tends to
    minus infinity); when absent the objective is sampled at the inset point.
    """

    lo: float
    hi: float
    open_lo: bool = False
    open_hi: bool = False
    lo_sign: Optional[int] = None
    hi_sign: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"bracket ends must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def effective(self) -> tuple[float, float]:
        d = OPEN_INSET * (self.hi - self.lo)
        a = self.lo + d if self.open_lo else self.lo
        b = self.hi - d if self.open_hi else self.hi
        return a, b

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class SolveReport:
    root: float
    residual: float
    iterations: int
    converged: bool
    width: float


def _sign(v: float) -> int:
    v = float(v)
    if math.isnan(v):
        raise ValueError("objective returned NaN")
    return (v > 0) - (v < 0)


def bisect(
    f: Callable[[float], float],
    bracket: Bracket,
    tol_x: float = TOL_X,
    tol_f: float = TOL_F,
    max_iter: int = MAX_ITER,
) -> SolveReport:
    """Find a root of ``f`` inside ``bracket`` by bisection.

    Stops when the bracket is narrower than ``tol_x`` (the midpoint is
    returned) or when ``|f(mid)| <= tol_f``.  Pass ``tol_f=0`` to rely on the
    width criterion alone.  Once the bracket can no longer be split in
    floating point the iteration also stops, with ``converged=True``: the
    root is then located to the resolution of the number format.

    Raises
    ------
    NoSignChange
        ``f`` has the same sign at both effective endpoints.
    MaxIterationsExceeded
        Neither tolerance was met in ``max_iter`` halvings.
    """
    a, b = bracket.effective
    if bracket.open_lo and bracket.lo_sign is not None:
        fa = float(bracket.lo_sign)
    else:
        fa = f(a)
    if bracket.open_hi and bracket.hi_sign is not None:
        fb = float(bracket.hi_sign)
    else:
        fb = f(b)
    sa, sb = _sign(fa), _sign(fb)
    if sa == 0:
        return SolveReport(a, fa, 0, True, b - a)
    if sb == 0:
        return SolveReport(b, fb, 0, True, b - a)
    if sa == sb:
        raise NoSignChange(
            f"no sign change on [{a!r}, {b!r}]: f(lo)={fa!r}, f(hi)={fb!r}"
        )

    for it in range(1, max_iter + 1):
        m = a + 0.5 * (b - a)
        fm = f(m)
        sm = _sign(fm)
        if sm == 0 or abs(fm) <= tol_f:
            return SolveReport(m, fm, it, True, b - a)
        if sm == sa:
            a = m
        else:
            b = m
        mid = a + 0.5 * (b - a)
        if b - a <= tol_x or mid <= a or mid >= b:
            return SolveReport(mid, f(mid), it, True, b - a)

    mid = a + 0.5 * (b - a)
    report = SolveReport(mid, f(mid), max_iter, False, b - a)
    raise MaxIterationsExceeded(
        f"bisection did not converge in {max_iter} iterations "
        f"(width {b - a!r}, residual {report.residual!r})",
        report,
    )
