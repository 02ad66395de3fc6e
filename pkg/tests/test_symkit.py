from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from slnstates.symkit import (MAX_N, RootSet, SymPoly, affine_elementary_substitution, affine_substitution_images,
                              box_complement, box_partitions, complete_difference, complete_series,
                              elementary_values, frac, frac_str, in_box, normalize_partition, schur_box_ratio,
                              schur_difference)

t = sympy.Symbol("t")
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def sympy_complete(k, xs, ys):
    gen = sympy.prod([1 - sympy.Rational(y) * t for y in ys]) / sympy.prod([1 - sympy.Rational(x) * t for x in xs])
    return Fraction(str(sympy.series(gen, t, 0, k + 1).removeO().coeff(t, k)))


def sympy_schur(parts, xs):
    """Bialternant formula for a concrete alphabet of distinct values."""
    n = len(xs)
    lam = list(parts) + [0] * (n - len(parts))
    num = sympy.Matrix(n, n, lambda i, j: sympy.Rational(xs[i]) ** (lam[j] + n - 1 - j))
    den = sympy.Matrix(n, n, lambda i, j: sympy.Rational(xs[i]) ** (n - 1 - j))
    return Fraction(str(num.det() / den.det()))


# -- root sets ------------------------------------------------------------------

def test_root_set_default_and_masks():
    s = RootSet.default(4)
    assert s.N == 4 and list(s) == [0, 1, 2, 3]
    assert s.subset(0b1010) == (1, 3)
    assert s.mask_of([3, 1]) == 0b1010
    assert s.subsets(2)[:3] == [0b0011, 0b0101, 0b1001]
    assert len(s.subsets(2)) == 6


def test_root_set_rejects_repeats():
    with pytest.raises(ValueError):
        RootSet([0, 1, 1])


def test_root_set_parse_and_json():
    s = RootSet.parse("0, 1/2,-3")
    assert s.roots == (0, Fraction(1, 2), -3)
    assert s.to_json() == ["0/1", "1/2", "-3/1"]
    assert RootSet(s.roots) == s and hash(RootSet(s.roots)) == hash(s)


def test_affine_relabel():
    s = RootSet.default(3).affine(2, -1)
    assert s.roots == (-1, 1, 3)
    with pytest.raises(ValueError):
        RootSet.default(3).affine(0, 1)


def test_frac_helpers():
    assert frac("3/6") == Fraction(1, 2)
    assert frac_str(Fraction(-4, 2)) == "-2/1"
    assert frac_str(Fraction(1, 3)) == "1/3"
    assert MAX_N == 16


# -- partitions -------------------------------------------------------------------

def test_partition_validation():
    assert normalize_partition((2, 1), 4) == (2, 1, 0, 0)
    with pytest.raises(ValueError):
        normalize_partition((1, 2))
    with pytest.raises(ValueError):
        normalize_partition((1, 1, 1), 2)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 2)])
def test_box_complement_is_an_involution(m, n):
    parts = box_partitions(m, n)
    assert len(parts) == comb(m + n, m)
    for lam in parts:
        assert in_box(lam, m, n)
        assert box_complement(box_complement(lam, m, n), m, n) == lam
        assert sum(lam) + sum(box_complement(lam, m, n)) == m * n


def test_box_complement_rejects_outside():
    with pytest.raises(ValueError):
        box_complement((3,), 1, 2)


# -- complete and Schur values ---------------------------------------------------

def test_complete_difference_examples():
    assert complete_difference(3, [0], [0, 1, 2]) == 0
    assert complete_difference(0, [1], [0, 1, 2]) == 1
    assert complete_difference(1, [0], [0, 1, 2]) == -3
    assert complete_difference(-1, [0], [0, 1]) == 0


@given(st.lists(rationals, max_size=3), st.lists(rationals, max_size=3), st.integers(0, 5))
def test_complete_series_matches_sympy(xs, ys, k):
    assert complete_series(xs, ys, k)[k] == sympy_complete(k, xs, ys)


def test_elementary_values():
    assert elementary_values([1, 2, 3]) == [1, 6, 11, 6]
    assert elementary_values([]) == [1]


def test_schur_difference_examples():
    assert schur_difference((1,), [0], [1]) == -1
    assert schur_difference((), [5], [7, 8]) == 1
    # full overlap: the box partition of a larger alphabet vanishes
    assert schur_difference((1, 1), [0, 1], [0, 1]) == 0


@pytest.mark.parametrize("parts", [p for n in range(1, 7) for p in sympy.utilities.iterables.partitions(n)])
def test_schur_difference_matches_bialternant(parts):
    lam = tuple(sorted((k for k, v in parts.items() for _ in range(v)), reverse=True))
    for xs in ([2], [1, -3], [0, 2, 5]):
        if len(lam) > len(xs):
            assert schur_difference(lam, xs, []) == 0
            continue
        assert schur_difference(lam, xs, []) == sympy_schur(lam, xs)


@given(st.lists(rationals, min_size=1, max_size=3), st.lists(rationals, max_size=3))
def test_schur_difference_one_row_is_complete(xs, ys):
    for k in range(4):
        assert schur_difference((k,), xs, ys) == complete_difference(k, xs, ys)


def test_schur_box_ratio_examples():
    assert schur_box_ratio(1, 1, [0], [1]) == -1
    assert schur_box_ratio(1, 2, [3], [0, 1]) == 6
    with pytest.raises(ValueError):
        schur_box_ratio(1, 1, [0], [0])


def test_schur_box_ratio_exhaustive_small():
    roots = range(6)
    for m in (1, 2):
        for n in (1, 2):
            for o1 in combinations(roots, m):
                rest = [r for r in roots if r not in o1]
                for o2 in combinations(rest, n):
                    expected = sympy.prod([s - r for s in o1 for r in o2])
                    assert schur_box_ratio(m, n, o1, o2) == expected


# -- SymPoly --------------------------------------------------------------------

def test_sympoly_canonical_form():
    one, x1, x2 = SymPoly.single(2)
    p = x1 * x2 - x2 * x1
    assert p.is_zero() and p.terms == {}
    assert (x1 + 1) * (x1 - 1) == x1 ** 2 - 1
    assert x2.degree() == 4 and x1.degree() == 2 and SymPoly(x1.alphabets).degree() == -1
    assert (x1 * x1 + x2).is_homogeneous() and not (x1 + 1).is_homogeneous()


def test_sympoly_alphabet_mismatch():
    a = SymPoly.single(1, "A")[1]
    b = SymPoly.single(1, "B")[1]
    with pytest.raises(ValueError):
        a + b


@given(st.lists(rationals, min_size=2, max_size=2, unique=True), st.integers(-3, 3), st.integers(-3, 3))
def test_sympoly_evaluate_is_a_ring_map(xs, a, b):
    _, x1, x2 = SymPoly.single(2)
    p, q = x1 * a + x2, x2 * b - x1 ** 2
    at = {"X": xs}
    assert (p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at)
    assert (p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at)


def test_sympoly_monomials_and_partial_degrees():
    _, x1, x2 = SymPoly.single(2)
    assert x1.monomials() == {(1, 0): 1, (0, 1): 1}
    assert (x1 ** 2).partial_degrees() == {"X": 4}
    assert (x2 * x1).partial_degrees() == {"X": 4}
    assert SymPoly.constant(x1.alphabets, 3).partial_degrees() == {"X": 0}


@given(st.integers(-3, 3), st.integers(-3, 3), st.lists(rationals, min_size=3, max_size=3))
def test_sympoly_monomials_agree_with_evaluation(c1, c2, xs):
    _, x1, x2, x3 = SymPoly.single(3)
    p = x1 * c1 + x2 * x3 * c2 + x3
    direct = sum(c * sympy.prod([sympy.Rational(v) ** e for v, e in zip(xs, exp)])
                 for exp, c in p.monomials().items())
    assert p.evaluate({"X": xs}) == Fraction(str(direct))


# -- affine substitution ----------------------------------------------------------

def test_affine_substitution_examples():
    _, x1, x2 = SymPoly.single(2)
    assert affine_elementary_substitution(1, 2, 1, 0) == x1
    assert affine_elementary_substitution(1, 2, 2, 3) == x1 * 2 + 6
    assert affine_elementary_substitution(2, 2, 1, 1) == x2 + x1 + 1
    with pytest.raises(ValueError):
        affine_elementary_substitution(1, 2, 0, 1)
    with pytest.raises(ValueError):
        affine_elementary_substitution(3, 2, 1, 1)


@pytest.mark.parametrize("m", range(1, 5))
def test_affine_identity(m):
    gens = SymPoly.single(m)
    assert affine_substitution_images(m, 1, 0) == list(gens[1:])


@given(st.integers(1, 4), rationals.filter(bool), rationals, rationals.filter(bool), rationals)
def test_affine_substitutions_compose(m, a, b, a2, b2):
    # x -> a x + b first, then x -> a2 x + b2
    first = affine_substitution_images(m, a, b)
    second = affine_substitution_images(m, a2, b2)
    composed = [p.substitute({"X": first}) for p in second]
    assert composed == affine_substitution_images(m, a2 * a, a2 * b + b2)


@given(st.integers(1, 3), rationals.filter(bool), rationals,
       st.lists(rationals, min_size=3, max_size=3))
def test_affine_substitution_matches_values(m, a, b, xs):
    xs = xs[:m]
    for i in range(1, m + 1):
        shifted = elementary_values([a * x + b for x in xs])[i]
        assert affine_elementary_substitution(i, m, a, b).evaluate({"X": xs}) == shifted
