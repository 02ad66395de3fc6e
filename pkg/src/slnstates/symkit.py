"""Exact symmetric-function engine.

Scalars are :class:`fractions.Fraction`.  Symmetric polynomials are stored
in elementary symmetric generators, so an element of
``Sym(X_1 | ... | X_l)`` is a sparse map from exponent vectors over the
generators ``X_{a,k}`` (alphabet ``a``, ``1 <= k <= |a|``) to rationals.
Degrees follow the doubled convention: ``deg x = 2``, ``deg X_k = 2k``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import det

Scalar = Union[int, Fraction]

# Enumeration-heavy operations refuse root sets larger than this.
MAX_N = 16


def frac(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or a ``"p/q"`` string) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def frac_str(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (the denominator is always written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class RootSet:
    """Ordered set of ``N >= 1`` pairwise distinct rationals (roots of ``P'``)."""

    __slots__ = ("roots",)

    def __init__(self, roots: Iterable):
        roots = tuple(frac(r) for r in roots)
        if not roots:
            raise ValueError("a root set needs at least one root")
        if len(set(roots)) != len(roots):
            raise ValueError("roots must be pairwise distinct")
        self.roots = roots

    @classmethod
    def default(cls, N: int) -> "RootSet":
        return cls(range(N))

    @classmethod
    def parse(cls, text: str) -> "RootSet":
        return cls(t for t in text.replace(" ", "").split(",") if t)

    @property
    def N(self) -> int:
        return len(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.roots)

    def __getitem__(self, i: int) -> Fraction:
        return self.roots[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSet) and self.roots == other.roots

    def __hash__(self) -> int:
        return hash(self.roots)

    def __repr__(self) -> str:
        return "RootSet([%s])" % ", ".join(str(r) for r in self.roots)

    def subset(self, mask: int) -> Tuple[Fraction, ...]:
        """Root values selected by a bitmask over root positions."""
        return tuple(r for i, r in enumerate(self.roots) if mask >> i & 1)

    def mask_of(self, values: Iterable) -> int:
        index = {r: i for i, r in enumerate(self.roots)}
        mask = 0
        for v in values:
            mask |= 1 << index[frac(v)]
        return mask

    def subsets(self, size: int) -> List[int]:
        """All bitmasks of the given size, in lexicographic order of positions."""
        return [sum(1 << i for i in c) for c in itertools.combinations(range(self.N), size)]

    def affine(self, a, b) -> "RootSet":
        a, b = frac(a), frac(b)
        if a == 0:
            raise ValueError("affine relabeling needs a != 0")
        return RootSet(a * r + b for r in self.roots)

    def to_json(self) -> List[str]:
        return [frac_str(r) for r in self.roots]


def as_values(values) -> Tuple[Fraction, ...]:
    if isinstance(values, RootSet):
        return values.roots
    return tuple(frac(v) for v in values)


# -- partitions ---------------------------------------------------------------

def normalize_partition(parts: Sequence[int], length: Optional[int] = None) -> Tuple[int, ...]:
    """Validate a partition and pad it with zeros to ``length`` parts."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts of {parts} are not non-increasing")
    if length is not None:
        core = tuple(p for p in parts if p)
        if len(core) > length:
            raise ValueError(f"{parts} has more than {length} non-zero parts")
        parts = core + (0,) * (length - len(core))
    return parts


def in_box(parts: Sequence[int], m: int, n: int) -> bool:
    core = [p for p in parts if p]
    return len(core) <= m and all(p <= n for p in core)


def box_partitions(m: int, n: int) -> List[Tuple[int, ...]]:
    """``Lambda_{m,n}`` as length-``m`` tuples, ordered by size then reverse-lex."""
    out = [tuple(sorted(c, reverse=True))
           for c in itertools.combinations_with_replacement(range(n + 1), m)]
    out = sorted(set(out), key=lambda p: (sum(p), tuple(-x for x in p)))
    return out


def box_complement(parts: Sequence[int], m: int, n: int) -> Tuple[int, ...]:
    """``lambda^c = (n - lambda_m, ..., n - lambda_1)`` inside the ``m x n`` box."""
    parts = normalize_partition(parts, m)
    if not in_box(parts, m, n):
        raise ValueError(f"{parts} is not in the {m}x{n} box")
    return tuple(n - p for p in reversed(parts))


def rectangle(m: int, n: int) -> Tuple[int, ...]:
    return (n,) * m


# -- scalar symmetric functions -------------------------------------------------

def elementary_values(values) -> List[Fraction]:
    """``[e_0, e_1, ..., e_k]`` of a multiset of scalars."""
    e = [Fraction(1)]
    for v in as_values(values):
        e = [a + v * b for a, b in zip(e + [Fraction(0)], [Fraction(0)] + e)]
    return e


def complete_series(values1, values2, order: int) -> List[Fraction]:
    """Coefficients ``h_0..h_order`` of ``prod_{r in values2}(1 - r t) / prod_{s in values1}(1 - s t)``.

    These are the complete symmetric functions of the difference alphabet
    ``values1 - values2``; both arguments are multisets.
    """
    if order < 0:
        return []
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    for r in as_values(values2):
        for j in range(order, 0, -1):
            coeffs[j] -= r * coeffs[j - 1]
    for s in as_values(values1):
        # multiply by 1/(1 - s t) = sum s^i t^i
        for j in range(1, order + 1):
            coeffs[j] += s * coeffs[j - 1]
    return coeffs


def complete_difference(k: int, values, sigma) -> Fraction:
    """``h_k(Omega - Sigma)`` for a multiset ``Omega`` of values."""
    if k < 0:
        return Fraction(0)
    return complete_series(values, sigma, k)[k]


def schur_difference(parts: Sequence[int], values1, values2) -> Fraction:
    """``S_lambda(values1 - values2)`` via the Jacobi-Trudi determinant."""
    parts = tuple(p for p in normalize_partition(parts) if p)
    ell = len(parts)
    if ell == 0:
        return Fraction(1)
    top = parts[0] + ell
    h = complete_series(values1, values2, top)

    def hk(k):
        return h[k] if 0 <= k <= top else Fraction(0)

    return det([[hk(parts[i] - i + j) for j in range(ell)] for i in range(ell)])


def schur_box_ratio(m: int, n: int, omega1, omega2) -> Fraction:
    """``S_{lambda_{m,n}}(Omega1 - Omega2)`` for disjoint ``|Omega1| = m``, ``|Omega2| = n``.

    The value is checked against ``prod_{s in Omega1, r in Omega2} (s - r)``
    and is nonzero whenever the precondition holds.
    """
    o1, o2 = as_values(omega1), as_values(omega2)
    if len(o1) != m or len(o2) != n:
        raise ValueError(f"need |omega1| = {m} and |omega2| = {n}")
    if len(set(o1)) != m or len(set(o2)) != n:
        raise ValueError("values within each set must be distinct")
    if set(o1) & set(o2):
        raise ValueError("omega1 and omega2 must be disjoint")
    value = schur_difference(rectangle(m, n), o1, o2)
    product = Fraction(1)
    for s in o1:
        for r in o2:
            product *= s - r
    if value != product or value == 0:
        raise ArithmeticError(f"box Schur value {value} disagrees with product {product}")
    return value


# -- symbolic polynomials in elementary generators ------------------------------

Alphabets = Tuple[Tuple[str, int], ...]


def _norm_alphabets(alphabets) -> Alphabets:
    out = []
    for name, size in alphabets:
        if int(size) < 1:
            raise ValueError(f"alphabet {name!r} must have size >= 1")
        out.append((str(name), int(size)))
    if len({n for n, _ in out}) != len(out):
        raise ValueError("alphabet names must be distinct")
    return tuple(out)


class SymPoly:
    """Element of ``Sym(X_1|...|X_l)`` written in elementary generators.

    ``terms`` maps an exponent vector (one slot per generator ``X_{a,k}``,
    alphabets in order, ``k = 1..|a|``) to a nonzero rational.
    """

    __slots__ = ("alphabets", "terms", "_offsets")

    def __init__(self, alphabets, terms: Optional[Mapping[Tuple[int, ...], Scalar]] = None):
        self.alphabets: Alphabets = _norm_alphabets(alphabets)
        offsets, pos = {}, 0
        for name, size in self.alphabets:
            offsets[name] = pos
            pos += size
        self._offsets = offsets
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != pos:
                raise ValueError("exponent vector has the wrong length")
            c = frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction
    @property
    def ngens(self) -> int:
        return sum(s for _, s in self.alphabets)

    def _zero_exp(self) -> Tuple[int, ...]:
        return (0,) * self.ngens

    @classmethod
    def constant(cls, alphabets, c: Scalar = 1) -> "SymPoly":
        p = cls(alphabets)
        return cls(p.alphabets, {p._zero_exp(): c})

    @classmethod
    def generator(cls, alphabets, name: str, k: int) -> "SymPoly":
        """``X_k`` of the named alphabet (``1`` for ``k = 0``, ``0`` past the size)."""
        p = cls(alphabets)
        size = dict(p.alphabets)[name]
        if k == 0:
            return cls.constant(p.alphabets, 1)
        if k < 0 or k > size:
            return cls(p.alphabets)
        exp = list(p._zero_exp())
        exp[p._offsets[name] + k - 1] = 1
        return cls(p.alphabets, {tuple(exp): 1})

    @classmethod
    def single(cls, m: int, name: str = "X") -> Tuple["SymPoly", ...]:
        """Convenience: ``(1, X_1, ..., X_m)`` for a single alphabet of size ``m``."""
        alph = ((name, m),)
        return tuple(cls.generator(alph, name, k) for k in range(m + 1))

    # ring structure
    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.alphabets != self.alphabets:
                raise ValueError("polynomials live over different alphabets")
            return other
        return SymPoly.constant(self.alphabets, frac(other))

    def __add__(self, other) -> "SymPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return SymPoly(self.alphabets, terms)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.alphabets, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SymPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SymPoly":
        if not isinstance(other, SymPoly):
            c = frac(other)
            return SymPoly(self.alphabets, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SymPoly(self.alphabets, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymPoly":
        if k < 0:
            raise ValueError("negative power")
        out = SymPoly.constant(self.alphabets, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self.alphabets == other.alphabets and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.alphabets, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"SymPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = []
        for name, size in self.alphabets:
            for k in range(1, size + 1):
                names.append(f"{name}_{k}" if len(self.alphabets) > 1 else f"X_{k}")
        pieces = []
        for exp in sorted(self.terms, key=lambda e: (-self._deg(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, exp) if a)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    # grading
    def _deg(self, exp) -> int:
        d = 0
        for name, size in self.alphabets:
            off = self._offsets[name]
            d += sum((k + 1) * exp[off + k] for k in range(size))
        return 2 * d

    def degree(self) -> int:
        """Doubled total degree; ``-1`` for the zero polynomial."""
        return max((self._deg(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self._deg(e) for e in self.terms}) <= 1

    # evaluation and substitution
    def evaluate(self, assignment: Mapping[str, Sequence]) -> Fraction:
        """Value at ``X_a = assignment[a]`` (each a multiset of size ``|a|``)."""
        gens: List[Fraction] = []
        for name, size in self.alphabets:
            vals = as_values(assignment[name])
            if len(vals) != size:
                raise ValueError(f"alphabet {name!r} has size {size}, got {len(vals)} values")
            gens.extend(elementary_values(vals)[1:])
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for g, a in zip(gens, exp):
                if a:
                    t *= g ** a
            total += t
        return total

    def substitute(self, images: Mapping[str, Sequence["SymPoly"]]) -> "SymPoly":
        """Ring map sending ``X_{a,k}`` to ``images[a][k-1]`` (all images share alphabets)."""
        imgs: List[SymPoly] = []
        for name, size in self.alphabets:
            row = list(images[name])
            if len(row) != size:
                raise ValueError(f"need {size} images for alphabet {name!r}")
            imgs.extend(row)
        target = imgs[0].alphabets
        out = SymPoly(target)
        for exp, c in self.terms.items():
            t = SymPoly.constant(target, c)
            for g, a in zip(imgs, exp):
                if a:
                    t = t * g ** a
            out = out + t
        return out

    # monomial expansion (test oracle; also used for partial degrees)
    def monomials(self) -> Dict[Tuple[int, ...], Fraction]:
        """Expansion in the concrete variables ``x_{a,1..|a|}`` (exponent vectors)."""
        nvars = self.ngens
        out: Dict[Tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            poly = {(0,) * nvars: c}
            for name, size in self.alphabets:
                off = self._offsets[name]
                for k in range(size):
                    for _ in range(exp[off + k]):
                        poly = _mono_mul(poly, _elementary_monomials(nvars, off, size, k + 1))
            for e, v in poly.items():
                out[e] = out.get(e, Fraction(0)) + v
        return {e: v for e, v in out.items() if v}

    def partial_degrees(self) -> Dict[str, int]:
        """Doubled partial degree in each variable, per alphabet (symmetry makes it uniform)."""
        mons = self.monomials()
        out = {}
        for name, size in self.alphabets:
            off = self._offsets[name]
            out[name] = 2 * max((e[off] for e in mons), default=0)
        return out


def _mono_mul(p, q):
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: v for e, v in out.items() if v}


@lru_cache(maxsize=None)
def _elementary_monomials_cached(nvars: int, off: int, size: int, k: int):
    out = {}
    for combo in itertools.combinations(range(size), k):
        e = [0] * nvars
        for i in combo:
            e[off + i] = 1
        out[tuple(e)] = Fraction(1)
    return tuple(out.items())


def _elementary_monomials(nvars, off, size, k):
    return dict(_elementary_monomials_cached(nvars, off, size, k))


def linear_factor_product(m: int, roots: Iterable, name: str = "X") -> SymPoly:
    """``prod_{x in X, r in roots} (x - r)`` for an alphabet of size ``m``."""
    gens = SymPoly.single(m, name)
    alph = gens[0].alphabets
    out = SymPoly.constant(alph, 1)
    for r in as_values(roots):
        # prod_{x}(x - r) = sum_k X_k (-r)^{m-k}
        factor = SymPoly(alph)
        for k in range(m + 1):
            factor = factor + gens[k] * (-r) ** (m - k)
        out = out * factor
    return out


def affine_elementary_substitution(i: int, m: int, a, b) -> SymPoly:
    """Image of ``X_i`` under ``x_j -> a x_j + b``, written in ``X_1..X_m``.

    ``e_i(a x + b) = sum_k a^k b^(i-k) C(m-k, i-k) X_k``: choosing the
    ``k`` factors that contribute ``a x`` leaves ``i - k`` of the remaining
    ``m - k`` slots to contribute ``b``.
    """
    a, b = frac(a), frac(b)
    if a == 0:
        raise ValueError("affine substitution needs a != 0")
    if not 1 <= i <= m:
        raise ValueError(f"need 1 <= i <= m, got i={i}, m={m}")
    gens = SymPoly.single(m)
    out = SymPoly(gens[0].alphabets)
    for k in range(i + 1):
        out = out + gens[k] * (a ** k * b ** (i - k) * comb(m - k, i - k))
    return out


def affine_substitution_images(m: int, a, b) -> List[SymPoly]:
    return [affine_elementary_substitution(i, m, a, b) for i in range(1, m + 1)]
