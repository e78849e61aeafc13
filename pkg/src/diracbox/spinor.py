"""Explicit spinor wavefunctions inside the bag and wall-condition checks.

Dirac representation throughout: ``alpha_i = [[0, s_i], [s_i, 0]]`` and
``beta = diag(I, -I)``.  Positions are in Compton wavelengths, so a box axis
runs over ``0 <= xi_l <= lam_l`` and the plane-wave phase is ``u_l xi_l``.

The 3-D field is built per axis from the pair ``(B_l, C_l)`` with the gauge
``B_l = 1``; only the ratio ``C_l / B_l`` is fixed by the wall at
``xi_l = 0``.  Its upper block is the product of 1-D standing waves times
``chi`` and its lower block is a sum over ``m`` where the ``m``-th factor has
its ``C`` term sign-flipped and is weighted by ``r k_m sigma_m``.

Only the part of the bag condition proportional to the identity (the
anticommutator part) is satisfied by this field.  The commutator terms
``[sigma_l, sigma_m]``, ``m != l``, are generally nonzero on a wall, so
:func:`mit_residual` is O(|psi|) for modes with more than one active axis.
:func:`projected_mit_residual` measures the identity part alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from . import rootfind
from .box1d import Mode1D
from .box3d import TOL_F, ModeSolution
from .errors import NotConverged
from .units import r_factor

I2 = np.eye(2, dtype=complex)
SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_Z = np.zeros((2, 2), dtype=complex)
ALPHA = np.array([np.block([[_Z, s], [s, _Z]]) for s in SIGMA])
BETA = np.block([[I2, _Z], [_Z, -I2]])
# gamma^0 = beta, gamma^i = beta alpha_i
GAMMA = np.array([BETA] + [BETA @ a for a in ALPHA])

DEFAULT_CHI = np.array([1.0, 0.0], dtype=complex)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def unit_spinor(chi) -> np.ndarray:
    chi = np.asarray(chi, dtype=complex).reshape(2)
    nrm = np.linalg.norm(chi)
    if nrm == 0:
        raise ValueError("spinor chi must be nonzero")
    return chi / nrm


def random_unit_spinor(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return unit_spinor(v)


def coefficient_ratio(r: float, khat: float) -> complex:
    """``C_l / B_l = (i r k_l - 1) / (i r k_l + 1)``, a unit-modulus number."""
    a = r * khat
    return (1j * a - 1.0) / (1j * a + 1.0)


@dataclass(frozen=True)
class CoefficientSet:
    B: np.ndarray
    C: np.ndarray


@dataclass(frozen=True)
class SpinorField:
    """Unnormalized 4-spinor of a converged 3-D mode."""

    solution: ModeSolution
    chi: np.ndarray
    coefficients: CoefficientSet
    # r * khat_l per axis
    a: np.ndarray

    @property
    def u(self) -> np.ndarray:
        return np.asarray(self.solution.u, dtype=float)

    @property
    def lam(self) -> tuple[float, float, float]:
        return self.solution.geometry.lam

    def axis_factors(self, point) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis ``B e^{i t} + C e^{-i t}`` and ``B e^{i t} - C e^{-i t}``."""
        t = self.u * np.asarray(point, dtype=float)
        ep, em = np.exp(1j * t), np.exp(-1j * t)
        B, C = self.coefficients.B, self.coefficients.C
        return B * ep + C * em, B * ep - C * em

    def blocks(self, point) -> tuple[complex, np.ndarray]:
        """Scalar upper amplitude ``P`` and per-axis lower amplitudes ``Q_m a_m``."""
        f, g = self.axis_factors(point)
        P = f[0] * f[1] * f[2]
        Q = np.array([g[0] * f[1] * f[2], f[0] * g[1] * f[2], f[0] * f[1] * g[2]])
        return P, Q * self.a

    def __call__(self, point) -> np.ndarray:
        P, Qa = self.blocks(point)
        upper = P * self.chi
        lower = np.einsum("m,mij,j->i", Qa, SIGMA, self.chi)
        return np.concatenate([upper, lower])

    def with_coefficients(self, B, C) -> "SpinorField":
        return replace(self, coefficients=CoefficientSet(np.asarray(B, complex), np.asarray(C, complex)))


def build_field(sol: ModeSolution, chi=None, tol_f: float = TOL_F) -> SpinorField:
    if max(sol.phase_residuals) > tol_f:
        raise NotConverged(f"mode {sol.qn.n} residuals {sol.phase_residuals} exceed {tol_f}")
    chi = DEFAULT_CHI if chi is None else unit_spinor(chi)
    u = np.asarray(sol.u, dtype=float)
    r = r_factor(sol.u)
    khat = u / np.linalg.norm(u)
    C = np.array([coefficient_ratio(r, k) for k in khat])
    B = np.ones(3, dtype=complex)
    return SpinorField(solution=sol, chi=chi, coefficients=CoefficientSet(B, C), a=r * khat)


def plane_wave_superposition(field: SpinorField, point) -> np.ndarray:
    """Evaluate the field as the sum of its 8 free plane-wave spinors.

    Each term travels along ``(s1 k1, s2 k2, s3 k3)`` with ``s_i = +-1`` and
    carries the product of ``B_i`` (for ``s_i = +1``) or ``C_i`` coefficients.
    """
    point = np.asarray(point, dtype=float)
    u = field.u
    B, C = field.coefficients.B, field.coefficients.C
    out = np.zeros(4, dtype=complex)
    for signs in itertools.product((1, -1), repeat=3):
        s = np.array(signs)
        coeff = np.prod(np.where(s > 0, B, C))
        phase = np.exp(1j * np.dot(s * u, point))
        low = np.einsum("m,mij,j->i", s * field.a, SIGMA, field.chi)
        out += coeff * phase * np.concatenate([field.chi, low])
    return out


def face_point(lam: Sequence[float], face: tuple[int, int], coords: Sequence[float]) -> np.ndarray:
    """Full position for in-face ``coords`` (remaining axes in ascending order)."""
    axis, side = face
    pt = np.empty(3)
    others = [j for j in range(3) if j != axis]
    pt[others[0]], pt[others[1]] = coords
    pt[axis] = 0.0 if side == 0 else lam[axis]
    return pt


def face_grid(lam: Sequence[float], face: tuple[int, int], m: int = 5) -> list[np.ndarray]:
    """Cell-centred ``m x m`` grid on a face; odd ``m`` includes the centre."""
    axis, _ = face
    others = [j for j in range(3) if j != axis]
    fr = (np.arange(m) + 0.5) / m
    return [face_point(lam, face, (p * lam[others[0]], q * lam[others[1]]))
            for p in fr for q in fr]


def random_face_points(lam, face, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    axis, _ = face
    others = [j for j in range(3) if j != axis]
    uv = rng.random((count, 2))
    return [face_point(lam, face, (p * lam[others[0]], q * lam[others[1]])) for p, q in uv]


FACES = tuple((axis, side) for axis in range(3) for side in (0, 1))


def wall_operator(axis: int, side: int) -> np.ndarray:
    """``s i beta alpha_l - 1`` with ``s = +1`` at ``xi_l = 0`` and ``-1`` at ``lam_l``."""
    s = 1.0 if side == 0 else -1.0
    return s * 1j * BETA @ ALPHA[axis] - np.eye(4)


def mit_residual(field: SpinorField, face: tuple[int, int], point) -> float:
    """``|(+-i beta alpha_l - 1) psi|`` at a wall point (absolute)."""
    point = np.asarray(point, dtype=float)
    if point.shape == (2,):
        point = face_point(field.lam, face, point)
    return float(np.linalg.norm(wall_operator(*face) @ field(point)))


def projected_mit_residual(field: SpinorField, face: tuple[int, int], point) -> float:
    """Identity part of the bag condition: ``|P -+ i Q_l a_l| |chi|``.

    This is the per-axis scalar condition the eigenvalue equation is built
    from; it vanishes on every wall for a converged mode.
    """
    point = np.asarray(point, dtype=float)
    if point.shape == (2,):
        point = face_point(field.lam, face, point)
    axis, side = face
    s = 1.0 if side == 0 else -1.0
    P, Qa = field.blocks(point)
    return float(abs(P - s * 1j * Qa[axis]) * np.linalg.norm(field.chi))


def dirac_current(psi_or_field, point=None) -> np.ndarray:
    """Four-current ``(psi^+ psi, psi^+ alpha_i psi)`` as ``psibar gamma^mu psi``."""
    psi = psi_or_field if point is None else psi_or_field(np.asarray(point, dtype=float))
    psibar = psi.conj() @ GAMMA[0]
    J = np.array([psibar @ GAMMA[mu] @ psi for mu in range(4)])
    scale = max(abs(J[0]), np.finfo(float).tiny)
    if np.max(np.abs(J.imag)) > 1e-10 * scale:
        raise ArithmeticError(f"current has imaginary part {J.imag}")
    return J.real


def outward_current(field: SpinorField, face: tuple[int, int], point) -> tuple[float, float]:
    """``(J . n, J0)`` at a wall point, ``n`` the outward normal."""
    axis, side = face
    J = dirac_current(field, point)
    n = -1.0 if side == 0 else 1.0
    return float(n * J[1 + axis]), float(J[0])


def phase_from_walls(field: SpinorField, axis: int) -> float:
    """Recover the phase ``u_l lam_l`` from the wall conditions alone.

    With ``C_l / B_l`` fixed by the wall at 0, the identity part of the
    condition at the opposite wall is scanned as a function of the wall's
    phase; its zero on the branch bracket is returned.  Nothing from the
    eigenvalue solver other than the field's own coefficients is used.
    """
    n = field.solution.qn[axis]
    B = field.coefficients.B[axis]
    C = field.coefficients.C[axis]
    a = field.a[axis]

    def wall(theta):
        ep, em = np.exp(1j * theta), np.exp(-1j * theta)
        return (B * ep + C * em) + 1j * a * (B * ep - C * em)

    # the condition is a fixed complex phase times a real function of theta
    ref = wall((n - 0.5) * math.pi)
    br = rootfind.Bracket((n - 0.5) * math.pi, n * math.pi)
    return rootfind.bisect(lambda t: float((wall(t) / ref).real), br, tol_f=0.0).root


@dataclass(frozen=True)
class Field1D:
    """Spinor of a 1-D mode along z: ``B e^{iuz}(chi, r s_z chi) + C e^{-iuz}(chi, -r s_z chi)``."""

    mode: Mode1D
    chi: np.ndarray
    B: complex
    C: complex
    r: float

    def __call__(self, z: float) -> np.ndarray:
        ep, em = np.exp(1j * self.mode.u * z), np.exp(-1j * self.mode.u * z)
        low = self.r * (SIGMA[2] @ self.chi)
        return np.concatenate([(self.B * ep + self.C * em) * self.chi,
                               (self.B * ep - self.C * em) * low])


def build_field_1d(mode: Mode1D, chi=None) -> Field1D:
    chi = DEFAULT_CHI if chi is None else unit_spinor(chi)
    r = r_factor(mode.u)
    return Field1D(mode=mode, chi=chi, B=1.0 + 0j, C=coefficient_ratio(r, 1.0), r=r)


def mit_residual_1d(field: Field1D, side: int) -> float:
    z = 0.0 if side == 0 else field.mode.lam
    return float(np.linalg.norm(wall_operator(2, side) @ field(z)))
