import json
import random

import pytest
from hypothesis import given, strategies as st

from slnstates import fixtures
from slnstates.diagrams import ColoredBraid, DiagramError
from slnstates.invariants import (SInvariantResult, Violation, chirality_certificate, classify,
                                  cobordism_constant_state_transport, parse_moves, s_bounds, s_exact,
                                  s_invariant, symmetry_relations, symmetry_table, uniform_braid, variant_braids)

LEFT = (2, (-1, -1, -1))
RIGHT = (2, (1, 1, 1))


def test_exact_examples():
    assert s_exact(uniform_braid(*LEFT, 1, 2), 1, 2).value == -2
    assert s_exact(uniform_braid(1, (), 2, 5), 2, 5).value == 0
    assert s_exact(uniform_braid(*RIGHT, 1, 3), 1, 3).value == 4
    assert s_exact(uniform_braid(3, (), 2, 4), 2, 4).value == 8


def test_exact_declines_unknown_classes():
    fig8 = uniform_braid(3, (1, -2, 1, -2), 1, 3)
    assert classify(fig8) is None
    assert s_exact(fig8, 1, 3) is None
    # positive braid with several components is a link: no mirror shortcut
    assert s_exact(uniform_braid(2, (1, 1), 1, 3), 1, 3) is None


@pytest.mark.parametrize("N", range(2, 6))
def test_exact_values_divisible(N):
    for m in range(1, N):
        for b, word in list(fixtures.NEGATIVE_TORUS.values()) + [(3, ()), RIGHT]:
            v = s_exact(uniform_braid(b, word, m, N), m, N).value
            assert v % (m * (N - m)) == 0


def test_bounds_pin_right_trefoil_with_genus():
    br = uniform_braid(*RIGHT, 1, 2)
    plain = s_bounds(br, 1, 2)
    assert (plain.lower, plain.upper, plain.value) == (2, 4, None)
    pinned = s_bounds(br, 1, 2, genus_hint=1)
    assert pinned.value == 2 and pinned.lower == pinned.upper == 2
    assert any("genus" in p for p in pinned.provenance)


def test_bounds_unknot_and_left_trefoil():
    u = s_bounds(uniform_braid(1, (), 1, 3), 1, 3)
    assert u.lower == u.upper == u.value == 0
    t = s_bounds(uniform_braid(*LEFT, 1, 2), 1, 2)
    assert t.lower <= -2 <= t.upper
    assert s_invariant(uniform_braid(*LEFT, 1, 2), 1, 2).value == -2


def test_bounds_for_unlink():
    r = s_bounds(uniform_braid(3, (), 1, 3), 1, 3)
    assert r.lower == -4 and r.upper == 4
    with pytest.raises(DiagramError):
        s_bounds(uniform_braid(3, (), 1, 3), 1, 3, genus_hint=0)


def test_bounds_reject_bad_arguments():
    with pytest.raises(ValueError):
        s_bounds(uniform_braid(*LEFT, 1, 2), 3, 2)
    with pytest.raises(ValueError):
        s_bounds(uniform_braid(*LEFT, 1, 2), 1, 2, genus_hint=-1)


@given(st.integers(0, 10 ** 6))
def test_exact_inside_bounds(seed):
    rng = random.Random(seed)
    b = rng.randint(2, 5)
    l = rng.randint(0, 12)
    word = tuple(-rng.randint(1, b - 1) for _ in range(l))
    N = rng.randint(2, 5)
    m = rng.randint(1, N - 1)
    br = uniform_braid(b, word, m, N)
    ex = s_exact(br, m, N)
    bd = s_bounds(br, m, N)
    assert (bd.lower is None or bd.lower <= ex.value) and ex.value <= bd.upper
    assert s_invariant(br, m, N).value == ex.value


@pytest.mark.parametrize("name", sorted(fixtures.NEGATIVE_TORUS))
def test_genus_relation_for_torus_knots(name):
    b, word = fixtures.NEGATIVE_TORUS[name]
    for N in range(2, 6):
        for m in range(1, N):
            v = s_exact(uniform_braid(b, word, m, N), m, N).value
            assert abs(v) == m * (N - m) * (len(word) + 1 - b)


def test_result_validation_and_json():
    with pytest.raises(ValueError):
        SInvariantResult(1, 2, value=3, lower=2, upper=3)
    with pytest.raises(ValueError):
        SInvariantResult(1, 2, lower=3, upper=2)
    r = s_invariant(uniform_braid(*LEFT, 1, 2), 1, 2)
    data = json.loads(json.dumps(r.to_json()))
    assert data["value"] == -2 and data["lower"] == data["upper"] == -2 and data["provenance"]


# -- symmetry -----------------------------------------------------------------------

def test_trefoil_pair_consistent():
    values = {("K", 1): -2, ("Kmir", 1): 2}
    assert symmetry_relations(1, 2, values) == []


def test_color_symmetry():
    values = {("K", 1): -4, ("K", 2): -4}
    assert symmetry_relations(1, 3, values) == []


def test_injected_violation_detected():
    table = symmetry_table(uniform_braid(*LEFT, 1, 3), 1, 3)
    table[("Kbar", 2)] = 7
    out = symmetry_relations(1, 3, table)
    assert out == [Violation("Kbar", 2, 7, 4)]


def test_symmetry_input_validation():
    with pytest.raises(ValueError):
        symmetry_relations(1, 3, {("K", 1): 0})
    with pytest.raises(ValueError):
        symmetry_relations(1, 3, {("K", 1): 0, ("X", 1): 0})
    with pytest.raises(ValueError):
        symmetry_relations(1, 4, {("K", 1): 0, ("K", 2): 0})


def test_unlink_mirror_entries_skipped():
    table = symmetry_table(uniform_braid(2, (), 1, 3), 1, 3)
    assert table[("K", 1)] == table[("Kmir", 1)] == 2
    assert symmetry_relations(1, 3, table, knot=False) == []
    assert symmetry_relations(1, 3, table, knot=True)


def test_variant_braids():
    br = uniform_braid(2, (-1, -1, -1), 1, 3)
    v = variant_braids(br)
    assert v["Kmir"].word == (1, 1, 1)
    assert v["Kbar"].writhe == -br.writhe
    assert v["-K"].writhe == br.writhe


# -- chirality --------------------------------------------------------------------

def test_chirality_examples():
    assert chirality_certificate(uniform_braid(*RIGHT, 1, 2))["verdict"] == "chiral"
    left = chirality_certificate(uniform_braid(*LEFT, 1, 2))
    assert left["verdict"] == "inconclusive" and left["self_linking"] == -5
    assert chirality_certificate(uniform_braid(3, (1, -2, 1, -2), 1, 2))["verdict"] == "inconclusive"
    with pytest.raises(DiagramError):
        chirality_certificate(uniform_braid(2, (1, 1), 1, 2))


# -- cobordisms -------------------------------------------------------------------

def test_circle_creation_counts():
    r = cobordism_constant_state_transport(["birth"], [0b1], 1, 3)
    assert r.chi == 1 and r.target_components == 2
    assert r.compatible_count == 3
    assert r.obstruction is not None
    merged = cobordism_constant_state_transport(["birth", "saddle_merge 0 1"], [0b1], 1, 3)
    assert merged.chi == 0 and merged.obstruction is None
    assert merged.target_state == (0b1,)


def test_saddle_merge_equal_sets():
    r = cobordism_constant_state_transport(["saddle_merge 0 1"], [0b11, 0b11], 2, 4)
    assert r.target_state == (0b11,) and r.compatible_count == 1 and r.chi == -1
    assert r.degree_bound == 4  # -m(N-m) chi
    assert r.to_json()["target_state"] == [[0, 1]]


@pytest.mark.parametrize("b", range(1, 6))
def test_punctured_disc(b):
    r = cobordism_constant_state_transport(["saddle_split 0"] * (b - 1), [0b10], 1, 3)
    assert r.chi == 1 - b
    assert r.target_components == b
    assert r.target_state == (0b10,) * b


def test_closed_component_obstruction():
    r = cobordism_constant_state_transport(["birth", "death 1"], [0b1], 1, 3)
    assert r.obstruction and "closed" in r.obstruction


def test_malformed_moves():
    with pytest.raises(ValueError):
        parse_moves(["twist 0"])
    with pytest.raises(ValueError):
        parse_moves(["saddle_merge 0"])
    with pytest.raises(ValueError):
        cobordism_constant_state_transport(["death 3"], [0b1], 1, 3)
    with pytest.raises(ValueError):
        cobordism_constant_state_transport([], [0b1, 0b10], 1, 3)
    assert parse_moves(["R1", ("birth",), "saddle_merge:0,1"]) == [("R1",), ("birth",), ("saddle_merge", 0, 1)]
