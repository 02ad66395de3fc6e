"""The ring of a closed MOY graph in idempotent coordinates.

Every edge carries one marked point with alphabet ``e<id>``.  An element is
stored as its values at the states of the graph, so ``Q_phi`` is the
indicator of ``phi`` and the product is pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..diagrams import DiagramError, KnottedMoyGraph
from ..interp import basis_poly
from ..symkit import RootSet, SymPoly
from .core import State, enumerate_states


def edge_alphabet(arc: int) -> str:
    return f"e{arc}"


class StateRing:
    def __init__(self, gamma: KnottedMoyGraph, sigma: Optional[RootSet] = None):
        if gamma.crossings:
            raise DiagramError("the state ring is defined for closed MOY graphs without crossings")
        self.gamma = gamma
        self.sigma = sigma or RootSet.default(gamma.N)
        self.states: Tuple[State, ...] = enumerate_states(gamma, self.sigma).states
        self._index = {s: i for i, s in enumerate(self.states)}
        self.alphabets = tuple((edge_alphabet(a), c) for a, c in gamma.arcs if c > 0)
        self._tables: Dict[int, Dict[Tuple[int, int], Fraction]] = {}

    @property
    def dimension(self) -> int:
        return len(self.states)

    def element(self, coords: Sequence) -> "StateRingElement":
        return StateRingElement(self, tuple(Fraction(c) for c in coords))

    def one(self) -> "StateRingElement":
        return self.element([1] * self.dimension)

    def zero(self) -> "StateRingElement":
        return self.element([0] * self.dimension)

    def Q(self, phi: State) -> "StateRingElement":
        """Idempotent of a state; for any other pre-state this goes through :meth:`reduce`."""
        if phi in self._index:
            return self.element([int(s == phi) for s in self.states])
        return self.evaluate_idempotent(phi)

    def evaluate_idempotent(self, phi: State) -> "StateRingElement":
        """Coordinates of the interpolation product ``Q_phi`` for any pre-state ``phi``."""
        cols = [(i, self._basis_values(c)) for i, (_, c) in enumerate(self.gamma.arcs) if c]
        pm = phi.masks
        coords = []
        for s in self.states:
            sm = s.masks
            v = 1
            for i, table in cols:
                v *= table[pm[i], sm[i]]
                if not v:
                    break
            coords.append(v)
        return self.element(coords)

    def _basis_values(self, c: int) -> Dict[Tuple[int, int], Fraction]:
        """``(omega, tau) -> basis_omega(tau)`` for ``c``-subsets, evaluated once per color."""
        table = self._tables.get(c)
        if table is None:
            name = edge_alphabet(0)
            table = {}
            for omega in self.sigma.subsets(c):
                poly = basis_poly(omega, c, self.sigma, name)
                for tau in self.sigma.subsets(c):
                    v = poly.evaluate({name: self.sigma.subset(tau)})
                    table[omega, tau] = v.numerator if v.denominator == 1 else v
            self._tables[c] = table
        return table

    def q_factors(self, phi: State) -> List[Tuple[int, SymPoly]]:
        """Per-edge interpolation idempotents whose product is ``Q_phi``."""
        return [(a, basis_poly(phi[a], c, self.sigma, edge_alphabet(a))) for a, c in self.gamma.arcs if c]

    def q_poly(self, phi: State) -> SymPoly:
        """``Q_phi`` expanded as one polynomial in all edge alphabets."""
        out = SymPoly.constant(self.alphabets, 1)
        for _, single in self.q_factors(phi):
            out = out * embed(single, self.alphabets)
        return out

    def reduce_product(self, factors: Iterable[Tuple[int, SymPoly]]) -> "StateRingElement":
        """Coordinates of a product of single-edge polynomials, evaluated factor by factor."""
        coords = [Fraction(1)] * self.dimension
        for a, f in factors:
            name = f.alphabets[0][0]
            for i, s in enumerate(self.states):
                if coords[i]:
                    coords[i] *= f.evaluate({name: self.sigma.subset(s[a])})
        return self.element(coords)

    def reduce(self, poly: SymPoly) -> "StateRingElement":
        """Coordinates of a polynomial in the edge alphabets: its values at every state."""
        coords = []
        for s in self.states:
            assignment = {name: () for name, _ in poly.alphabets}
            for a, c in self.gamma.arcs:
                name = edge_alphabet(a)
                if c and name in assignment:
                    assignment[name] = self.sigma.subset(s[a])
            coords.append(poly.evaluate(assignment))
        return self.element(coords)

    def generator(self, arc: int, k: int) -> SymPoly:
        return SymPoly.generator(self.alphabets, edge_alphabet(arc), k)


def embed(poly: SymPoly, alphabets) -> SymPoly:
    """View a polynomial over a subset of alphabets inside a larger alphabet list."""
    images = {name: [SymPoly.generator(alphabets, name, k) for k in range(1, size + 1)]
              for name, size in poly.alphabets}
    if not poly.terms:
        return SymPoly(alphabets)
    return poly.substitute(images)


@dataclass(frozen=True)
class StateRingElement:
    ring: StateRing
    coords: Tuple[Fraction, ...]

    def _same(self, other):
        if other.ring is not self.ring:
            raise ValueError("elements belong to different state rings")

    def __add__(self, other):
        self._same(other)
        return StateRingElement(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return StateRingElement(self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        if isinstance(other, StateRingElement):
            self._same(other)
            return StateRingElement(self.ring, tuple(a * b for a, b in zip(self.coords, other.coords)))
        c = Fraction(other)
        return StateRingElement(self.ring, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, StateRingElement) and other.ring is self.ring and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_dict(self) -> Dict[State, Fraction]:
        return dict(zip(self.ring.states, self.coords))


def idempotent_ring(gamma: KnottedMoyGraph, sigma: Optional[RootSet] = None) -> StateRing:
    return StateRing(gamma, sigma)
