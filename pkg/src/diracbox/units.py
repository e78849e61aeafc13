"""Dimensionless kinematics for a massive spin-1/2 particle.

Lengths are measured in Compton wavelengths ``L_C = hbar/(m c)``, momenta in
``m c`` and energies in the rest energy ``m c^2``.  With these units a box edge
is the pure number ``lambda_l = L_l / L_C`` and a wavenumber component becomes
``u_l = hbar k_l / (m c)``; the phase accumulated across an edge is
``x_l = k_l L_l = u_l * lambda_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

Vector3 = Sequence[float]


@dataclass(frozen=True)
class BoxGeometry:
    """Box edges in Compton wavelengths."""

    lam: tuple[float, float, float]

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lam)
        if len(lam) != 3:
            raise ValueError(f"box needs three edge lengths, got {len(lam)}")
        for v in lam:
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"box edges must be positive and finite, got {lam}")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def cube(cls, edge: float) -> "BoxGeometry":
        return cls((edge, edge, edge))

    @property
    def is_cubic(self) -> bool:
        return self.lam[0] == self.lam[1] == self.lam[2]


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Branch labels ``(n1, n2, n3)``; every entry is at least 1."""

    n: tuple[int, int, int]

    def __post_init__(self):
        n = tuple(self.n)
        if len(n) != 3:
            raise ValueError(f"need three quantum numbers, got {len(n)}")
        for v in n:
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise ValueError(f"quantum numbers must be integers >= 1, got {n}")
        object.__setattr__(self, "n", tuple(int(v) for v in n))

    def __iter__(self):
        return iter(self.n)

    def __getitem__(self, i):
        return self.n[i]

    @property
    def multiset(self) -> tuple[int, int, int]:
        return tuple(sorted(self.n))


def magnitude(u: Union[float, Iterable[float]]) -> float:
    """Euclidean norm of a wave vector; scalars are returned as ``abs(u)``."""
    if isinstance(u, (int, float)):
        return abs(float(u))
    return math.hypot(*u)


def dispersion(u: Union[float, Iterable[float]]) -> float:
    """Scaled energy ``E/(m c^2) = sqrt(1 + u^2)``."""
    k = magnitude(u)
    return math.sqrt(1.0 + k * k)


def kinetic_energy(u: Union[float, Iterable[float]]) -> float:
    """Scaled kinetic energy ``E/(m c^2) - 1``.

    Evaluated as ``u^2 / (1 + eps)`` so that it stays accurate when ``u`` is
    tiny (the non-relativistic regime), where ``eps - 1`` would cancel.
    """
    k = magnitude(u)
    return k * k / (1.0 + math.sqrt(1.0 + k * k))


def r_factor(u: Union[float, Iterable[float]]) -> float:
    """Lower/upper spinor amplitude ratio ``r = u / (eps + 1)``, in ``[0, 1)``."""
    k = magnitude(u)
    return k / (dispersion(k) + 1.0)


def rhs_coupled(u: Vector3, axis: int) -> float:
    """Right side of the eigenvalue condition ``tan(x_l) = rhs`` for one axis.

    In Compton units this is ``2 u_l (eps+1) / (u_l^2 - (eps+1)^2)``, which is
    the same number as ``2 r k_l / (r^2 k_l^2 - 1)`` with ``k_l`` the unit
    vector component.  Because ``(eps+1)^2 = u^2 + 2(eps+1)`` exceeds
    ``u_l^2``, the value is negative whenever ``u_l > 0``.
    """
    ul = float(u[axis])
    p = dispersion(u) + 1.0
    # p^2 - u_l^2 rewritten without cancellation: sum of the other u_j^2 + 2p
    rest = sum(float(v) * float(v) for j, v in enumerate(u) if j != axis)
    return -2.0 * ul * p / (rest + 2.0 * p)
