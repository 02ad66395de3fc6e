from math import comb

import pytest

from slnstates import checks, fixtures
from slnstates.diagrams import circle, disjoint_union, marked_circle, theta
from slnstates.statecalc import StateError, enumerate_states, is_state
from slnstates.statecalc import transport as tr
from slnstates.symkit import RootSet


def bivalent_cycles(g):
    nxt = {v.ins[0]: v.outs[0] for v in g.vertices}
    seen, count = set(), 0
    for a in g.arc_ids:
        if a in seen:
            continue
        count += 1
        while a not in seen:
            seen.add(a)
            a = nxt[a]
    return count


def first_state(g):
    return enumerate_states(g).states[0]


@pytest.mark.parametrize("i,j,N", [(1, 1, 3), (1, 2, 4), (2, 2, 4), (1, 3, 5)])
def test_edge_split_count(i, j, N):
    g = theta(i, j, N)
    for psi in enumerate_states(g).states:
        res = tr.edge_split(g, psi, 2, i)
        assert res.count == comb(i + j, i)
        assert len(tr.compatible_states(g, psi, res.target)) == res.count
        for t in res.states:
            assert is_state(res.target, t.state)


def test_edge_merge_inverts_split():
    g = theta(1, 1, 3)
    psi = first_state(g)
    split = tr.edge_split(g, psi, 2, 1)
    for t in split.states:
        e1, e2 = [a for a in split.target.arc_ids if a not in g.arc_ids][:2]
        back = tr.edge_merge(split.target, t.state, e1, e2)
        assert back.count == 1
        assert back.states[0].state.as_dict()[2] == psi[2]


@pytest.mark.parametrize("m,N", [(1, 3), (2, 3), (2, 4), (3, 5)])
def test_circle_create_count(m, N):
    c = circle(1, N)
    psi = first_state(c)
    res = tr.circle_create(c, psi, m)
    assert res.count == comb(N, m)
    assert len(tr.compatible_states(c, psi, res.target)) == comb(N, m)


def test_circle_annihilate():
    g = disjoint_union(theta(1, 1, 3), circle(2, 3))
    psi = first_state(g)
    free = max(g.arc_ids)
    res = tr.circle_annihilate(g, psi, free)
    assert res.count == 1 and free not in res.target.arc_ids
    with pytest.raises(tr.PatternMismatch):
        tr.circle_annihilate(g, psi, 0)


@pytest.mark.parametrize("m,N", [(1, 3), (2, 4)])
def test_saddle(m, N):
    g = fixtures.saddle_fixture(m, N)
    for psi in enumerate_states(g).states:
        res = tr.saddle(g, psi, 0, 2)
        if psi[0] == psi[2]:
            assert res.count == 1
            assert bivalent_cycles(g) == 2 and bivalent_cycles(res.target) == 1
        else:
            assert res.count == 0


def test_saddle_pattern_mismatch():
    g = disjoint_union(marked_circle(1, 3, 2), marked_circle(2, 3, 2))
    with pytest.raises(tr.PatternMismatch):
        tr.saddle(g, first_state(g), 0, 2)


def test_chi0_vanishing_cases_are_empty():
    for a, b, N in ((1, 1, 3), (1, 2, 4)):
        g, site = fixtures.chi0_fixture(a, b, a, N, vanishing=True)
        for psi in enumerate_states(g).states:
            assert tr.chi0(g, psi, **site).count == 0


def test_chi0_nonvanishing():
    g, site = fixtures.chi0_fixture(1, 1, 1, 3)
    hits = 0
    for psi in enumerate_states(g).states:
        res = tr.chi0(g, psi, **site)
        if psi[site["e1"]] & psi[site["e4"]]:
            assert res.count == 0
        else:
            hits += 1
            assert res.count == 1 and res.states[0].certificate != 0
    assert hits


def test_chi1_formula():
    g, site = fixtures.chi1_fixture(1, 1, 1, 1, 3)
    for psi in enumerate_states(g).states:
        res = tr.chi1(g, psi, **site)
        if psi[site["e1"]] & psi[site["e4"]]:
            assert res.count == 0
            continue
        assert res.count == 1
        out = res.states[0]
        ep = [a for a in res.target.arc_ids if a not in g.arc_ids][0]
        assert out.state[ep] == psi[site["e3"]] & ~psi[site["e1"]]
        assert out.certificate != 0


def test_chi1_with_shifted_roots():
    g, site = fixtures.chi1_fixture(1, 2, 2, 1, 4)
    sigma = RootSet([-3, 1, 2, 7])
    for psi in enumerate_states(g, sigma).states:
        res = tr.chi1(g, psi, sigma=sigma, **site)
        assert res.count == (0 if psi[site["e1"]] & psi[site["e4"]] else 1)


def test_transport_dispatch_and_errors():
    g = theta(1, 1, 3)
    psi = first_state(g)
    assert tr.transport("edge_split", g, psi, e=2, m=1).count == 2
    with pytest.raises(ValueError):
        tr.transport("fold", g, psi)
    with pytest.raises(tr.PatternMismatch):
        tr.transport("edge_split", g, psi, edge=2)
    with pytest.raises(tr.PatternMismatch):
        tr.edge_split(g, psi, 2, 5)
    with pytest.raises(tr.PatternMismatch):
        tr.edge_merge(g, psi, 0, 2)
    with pytest.raises(StateError):
        tr.edge_split(g, psi.__class__((0b1, 0b1, 0b11), psi.arcs), 2, 1)


@pytest.mark.parametrize("case", checks.transport_cases(), ids=lambda c: c[0].replace(" ", "-"))
def test_transport_cases(case):
    _, res, expected, oracle = case
    assert res.count == expected
    assert oracle in (None, expected)
