"""Quotient ring of an ``m``-colored circle in evaluation coordinates.

An element is the vector of its values at the ``C(N, m)`` subsets of the
root set.  Schur-basis coordinates are obtained through
:func:`change_of_basis_matrix`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .symkit import (RootSet, box_complement, box_partitions, in_box, normalize_partition,
                     schur_difference)


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CircleRing:
    sigma: RootSet
    m: int
    schur_basis: Tuple[Tuple[int, ...], ...] = field(init=False, compare=False)
    idempotent_index: Tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.m <= self.sigma.N:
            raise ValueError(f"need 1 <= m <= N, got m={self.m}, N={self.sigma.N}")
        object.__setattr__(self, "schur_basis", tuple(box_partitions(self.m, self.N - self.m)))
        object.__setattr__(self, "idempotent_index", tuple(self.sigma.subsets(self.m)))

    @classmethod
    def create(cls, N: int, m: int, sigma: RootSet = None) -> "CircleRing":
        sigma = sigma or RootSet.default(N)
        if sigma.N != N:
            raise ValueError(f"root set has {sigma.N} roots, expected {N}")
        return cls(sigma, m)

    @property
    def N(self) -> int:
        return self.sigma.N

    @property
    def dimension(self) -> int:
        return comb(self.N, self.m)

    @property
    def grading_shift(self) -> int:
        """Quantum shift ``-m(N - m)`` carried by the circle module (metadata only)."""
        return -self.m * (self.N - self.m)

    def element(self, coords: Sequence) -> "CircleRingElement":
        return CircleRingElement(self, tuple(Fraction(c) for c in coords))

    def one(self) -> "CircleRingElement":
        return self.element([1] * self.dimension)

    def zero(self) -> "CircleRingElement":
        return self.element([0] * self.dimension)

    def idempotent(self, omega: int) -> "CircleRingElement":
        return self.element([int(o == omega) for o in self.idempotent_index])

    def from_schur(self, parts: Sequence[int], difference: bool) -> "CircleRingElement":
        parts = normalize_partition(parts)
        if not in_box(parts, self.m, self.N - self.m):
            raise ValueError(f"partition {parts} is outside the {self.m}x{self.N - self.m} box")
        coords = []
        for omega in self.idempotent_index:
            vals = self.sigma.subset(omega)
            coords.append(schur_difference(parts, vals, self.sigma.roots if difference else ()))
        return self.element(coords)

    def complement(self, parts: Sequence[int]) -> Tuple[int, ...]:
        return box_complement(parts, self.m, self.N - self.m)


@dataclass(frozen=True)
class CircleRingElement:
    ring: CircleRing
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.ring.dimension:
            raise ValueError("coordinate vector has the wrong length")

    def _same(self, other: "CircleRingElement") -> None:
        if other.ring != self.ring:
            raise RingMismatchError("elements belong to different circle rings")

    def __add__(self, other):
        self._same(other)
        return CircleRingElement(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return CircleRingElement(self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        if isinstance(other, CircleRingElement):
            return multiply(self, other)
        c = Fraction(other)
        return CircleRingElement(self.ring, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.ring.idempotent_index, self.coords))


def multiply(a: CircleRingElement, b: CircleRingElement) -> CircleRingElement:
    a._same(b)
    return CircleRingElement(a.ring, tuple(x * y for x, y in zip(a.coords, b.coords)))


def change_of_basis_matrix(ring: CircleRing, difference: bool = False) -> List[List[Fraction]]:
    """``M[Omega][lambda] = S_lambda(Omega)`` (or ``S_lambda(Omega - Sigma)``); asserted invertible."""
    cols = [ring.from_schur(lam, difference).coords for lam in ring.schur_basis]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(ring.dimension)]
    if linalg.det(mat) == 0:
        raise ArithmeticError("Schur family is not a basis of the circle ring")
    return mat


def schur_coordinates(x: CircleRingElement, difference: bool) -> List[Fraction]:
    return linalg.solve(change_of_basis_matrix(x.ring, difference), x.coords)


def zeta(ring: CircleRing, x: CircleRingElement) -> Fraction:
    """Coefficient of ``S_{box}(X - Sigma)`` in the difference-Schur expansion of ``x``.

    This is the functional fixed by ``zeta(S_mu(X - Sigma)) = [mu = box]``,
    the ``lambda = ()`` row of the defining pairing.
    """
    if x.ring != ring:
        raise RingMismatchError("element is not in this ring")
    coeffs = schur_coordinates(x, difference=True)
    return coeffs[ring.schur_basis.index((ring.N - ring.m,) * ring.m)]


def zeta_pairing_matrix(ring: CircleRing) -> List[List[Fraction]]:
    """``P[lambda][mu] = zeta(S_lambda(X) S_mu(X - Sigma))``."""
    plain = [ring.from_schur(lam, False) for lam in ring.schur_basis]
    diff = [ring.from_schur(mu, True) for mu in ring.schur_basis]
    return [[zeta(ring, a * b) for b in diff] for a in plain]


def complement_permutation_matrix(ring: CircleRing) -> List[List[Fraction]]:
    basis = ring.schur_basis
    return [[Fraction(int(mu == ring.complement(lam))) for mu in basis] for lam in basis]
