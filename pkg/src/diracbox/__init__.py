"""Bound states of a Dirac particle confined to 1-D and 3-D MIT bag boxes."""

from .box1d import Mode1D, mirror_spectrum, solve_1d_mode, spectrum_1d
from .box3d import (
    Level,
    LevelTable,
    ModeSolution,
    enumerate_spectrum,
    reduced_dominant_equation,
    solve_mode,
)
from .dos import cumulative_count, nr_comparison, spacing_series
from .errors import (
    ConvergenceFailure,
    DiracBoxError,
    InsufficientSpectrum,
    InvalidBracket,
    MaxIterationsExceeded,
    NoSignChange,
    NotConverged,
)
from .spinor import SpinorField, build_field, build_field_1d, mit_residual, projected_mit_residual
from .units import BoxGeometry, QuantumNumbers, dispersion, kinetic_energy, r_factor, rhs_coupled

__version__ = "0.1.0"
