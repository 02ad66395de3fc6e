"""Chen-Louck interpolation of symmetric polynomials over subsets of a root set.

A symmetric polynomial in ``m`` variables whose partial degrees are at most
``2(N - m)`` is determined by its values on the ``C(N, m)`` subsets of size
``m`` of the root set, and it is recovered as ``sum_Omega f(Omega) basis_Omega``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Tuple, Union

from .symkit import RootSet, SymPoly, frac, linear_factor_product


class PartialDegreeError(ValueError):
    """Raised when a polynomial exceeds the interpolation degree bound."""

    def __init__(self, alphabet: str, degree: int, bound: int):
        self.alphabet, self.degree, self.bound = alphabet, degree, bound
        super().__init__(
            f"partial degree {degree} in alphabet {alphabet!r} exceeds the bound {bound}")


@dataclass(frozen=True)
class InterpolationBasisElement:
    omega: int
    numerator: SymPoly
    denominator: Fraction

    def value(self, values) -> Fraction:
        return self.numerator.evaluate({self.numerator.alphabets[0][0]: values}) / self.denominator

    def as_poly(self) -> SymPoly:
        return self.numerator * (1 / self.denominator)


def _check_m(m: int, sigma: RootSet) -> None:
    if not 1 <= m <= sigma.N:
        raise ValueError(f"need 1 <= m <= N, got m={m}, N={sigma.N}")


@lru_cache(maxsize=256)
def _basis(m: int, sigma: RootSet, name: str) -> Tuple[InterpolationBasisElement, ...]:
    out = []
    for omega in sigma.subsets(m):
        rest = sigma.subset(((1 << sigma.N) - 1) & ~omega)
        num = linear_factor_product(m, rest, name)
        den = Fraction(1)
        for s in sigma.subset(omega):
            for r in rest:
                den *= s - r
        out.append(InterpolationBasisElement(omega, num, den))
    return tuple(out)


def interpolation_basis(m: int, sigma: RootSet, name: str = "X") -> Tuple[InterpolationBasisElement, ...]:
    """Basis elements for every ``m``-subset, in ``sigma.subsets(m)`` order (cached)."""
    _check_m(m, sigma)
    return _basis(m, sigma, name)


def basis_poly(omega: int, m: int, sigma: RootSet, name: str = "X") -> SymPoly:
    for b in interpolation_basis(m, sigma, name):
        if b.omega == omega:
            return b.as_poly()
    raise ValueError(f"subset mask {omega:#b} does not have size {m}")


Oracle = Union[Callable[[Tuple[Fraction, ...]], object], Mapping[int, object]]


def interpolate(f: Oracle, m: int, sigma: RootSet, name: str = "X") -> SymPoly:
    """Unique symmetric polynomial within the degree bound that agrees with ``f``.

    ``f`` is either a callable on the tuple of root values of a subset, or a
    mapping from subset bitmasks to values.
    """
    _check_m(m, sigma)
    out = SymPoly(((name, m),))
    for b in interpolation_basis(m, sigma, name):
        v = frac(f[b.omega]) if isinstance(f, Mapping) else frac(f(sigma.subset(b.omega)))
        if v:
            out = out + b.numerator * (v / b.denominator)
    return out


def check_degree_bound(g: SymPoly, sigma: RootSet) -> None:
    """Raise :class:`PartialDegreeError` if ``g`` violates ``2(N - m)``."""
    if len(g.alphabets) != 1:
        raise ValueError("interpolation works in a single alphabet")
    name, m = g.alphabets[0]
    bound = 2 * (sigma.N - m)
    deg = g.partial_degrees()[name]
    if deg > bound:
        raise PartialDegreeError(name, deg, bound)


def reconstruct_check(g: SymPoly, sigma: RootSet) -> bool:
    check_degree_bound(g, sigma)
    name, m = g.alphabets[0]
    values = {b.omega: g.evaluate({name: sigma.subset(b.omega)})
              for b in interpolation_basis(m, sigma, name)}
    return interpolate(values, m, sigma, name) == g


def random_bounded_poly(rng: random.Random, m: int, N: int, max_terms: int = 4,
                        coeff_range: int = 5, name: str = "X") -> SymPoly:
    """Random polynomial ``sum c_a X^a`` with ``sum a_k <= N - m``.

    Each ``X_k`` has partial degree one in every variable, so such a sum
    stays within the partial-degree bound.
    """
    budget = N - m
    gens = SymPoly.single(m, name)
    out = SymPoly(gens[0].alphabets)
    for _ in range(rng.randint(1, max_terms)):
        term = SymPoly.constant(gens[0].alphabets,
                                Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3)))
        for _ in range(rng.randint(0, budget)):
            term = term * gens[rng.randint(1, m)]
        out = out + term
    return out
