"""Which basis states a local move sends a state to.

Each move takes a closed MOY graph, the edge ids naming the site, and a
state of the source graph.  It returns the target graph together with the
target states that receive a nonzero coefficient.  Edge ids outside the
site are shared between source and target.

Sites:

* ``edge_split``: an edge ``e`` (with vertices at both ends) of color
  ``m + n`` becomes ``e -> [e1 (m), e2 (n)] -> e'``.
* ``edge_merge``: the inverse, given ``e1, e2`` of such a bigon.
* ``chi0``: vertices ``e2 -> e', e4`` and ``e1, e' -> e3`` become
  ``e1, e2 -> e -> e3, e4``.  ``chi1`` is the reverse.
* ``circle_create`` / ``circle_annihilate``: add or drop a free circle.
* ``saddle``: edges ``e1`` (u1 -> v1) and ``e2`` (u2 -> v2) of equal color
  are cut and reconnected as ``e1`` (u1 -> v2), ``e2`` (u2 -> v1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ..diagrams import DiagramError, KnottedMoyGraph, Vertex
from ..symkit import RootSet, schur_box_ratio
from .core import State, StateError, enumerate_states, is_state, subsets_of_size

MOVES = ("edge_split", "edge_merge", "chi0", "chi1", "circle_create", "circle_annihilate", "saddle")


class PatternMismatch(DiagramError):
    pass


@dataclass(frozen=True)
class Transported:
    state: State
    certificate: Optional[Fraction] = None  # nonzero scalar witnessing the coefficient, when known


@dataclass(frozen=True)
class TransportResult:
    move: str
    target: KnottedMoyGraph
    states: Tuple[Transported, ...]

    @property
    def count(self) -> int:
        return len(self.states)


def _new_ids(d: KnottedMoyGraph, k: int) -> List[int]:
    start = max(d.arc_ids, default=-1) + 1
    return list(range(start, start + k))


def _vertex_with(d: KnottedMoyGraph, arc: int, side: str) -> int:
    for i, v in enumerate(d.vertices):
        if arc in (v.ins if side == "in" else v.outs):
            return i
    raise PatternMismatch(f"arc {arc} has no vertex at its {'head' if side == 'in' else 'tail'}")


def _replace_in(v: Vertex, old: int, new: int, side: str) -> Vertex:
    if side == "in":
        return Vertex(tuple(new if a == old else a for a in v.ins), v.outs)
    return Vertex(v.ins, tuple(new if a == old else a for a in v.outs))


def _require_state(d, psi):
    if not is_state(d, psi):
        raise StateError("source assignment is not a state of the source graph")


def _finish(move, target, assignments, certs=None) -> TransportResult:
    states = []
    for i, a in enumerate(assignments):
        s = State.from_dict(target, a)
        if not is_state(target, s):
            raise AssertionError(f"{move}: produced a non-state")
        states.append(Transported(s, certs[i] if certs else None))
    return TransportResult(move, target, tuple(sorted(states, key=lambda t: t.state)))


# -- edge splitting and merging ---------------------------------------------------

def split_target(d: KnottedMoyGraph, e: int, m: int) -> Tuple[KnottedMoyGraph, int, int, int]:
    total = d.color(e)
    if not 0 <= m <= total:
        raise PatternMismatch(f"cannot split color {total} into {m} + {total - m}")
    hv = _vertex_with(d, e, "in")
    _vertex_with(d, e, "out")
    e1, e2, ep = _new_ids(d, 3)
    vertices = list(d.vertices)
    vertices[hv] = _replace_in(vertices[hv], e, ep, "in")
    vertices += [Vertex((e,), (e1, e2)), Vertex((e1, e2), (ep,))]
    arcs = list(d.arcs) + [(e1, m), (e2, total - m), (ep, total)]
    return KnottedMoyGraph(d.N, arcs, d.crossings, vertices), e1, e2, ep


def edge_split(d: KnottedMoyGraph, psi: State, e: int, m: int) -> TransportResult:
    _require_state(d, psi)
    target, e1, e2, ep = split_target(d, e, m)
    val = psi.as_dict()
    whole = val[e]
    out = []
    for sub in subsets_of_size(d.N, m):
        if sub & ~whole:
            continue
        a = dict(val)
        a.update({e1: sub, e2: whole & ~sub, ep: whole})
        out.append(a)
    assert len(out) == comb(d.color(e), m)
    return _finish("edge_split", target, out)


def merge_target(d: KnottedMoyGraph, e1: int, e2: int) -> Tuple[KnottedMoyGraph, int, int]:
    s = _vertex_with(d, e1, "out")
    t = _vertex_with(d, e1, "in")
    vs, vt = d.vertices[s], d.vertices[t]
    if sorted(vs.outs) != sorted((e1, e2)) or len(vs.ins) != 1 or sorted(vt.ins) != sorted((e1, e2)) \
            or len(vt.outs) != 1:
        raise PatternMismatch("edges do not form a split-merge bigon")
    e, ep = vs.ins[0], vt.outs[0]
    keep = [v for i, v in enumerate(d.vertices) if i not in (s, t)]
    if e == ep:
        # the bigon closes up on itself: the merged edge becomes a free circle
        arcs = [(a, c) for a, c in d.arcs if a not in (e1, e2)]
        return KnottedMoyGraph(d.N, arcs, d.crossings, keep), e, ep
    hv = next(i for i, v in enumerate(keep) if ep in v.ins)
    keep[hv] = _replace_in(keep[hv], ep, e, "in")
    arcs = [(a, c) for a, c in d.arcs if a not in (e1, e2, ep)]
    return KnottedMoyGraph(d.N, arcs, d.crossings, keep), e, ep


def edge_merge(d: KnottedMoyGraph, psi: State, e1: int, e2: int) -> TransportResult:
    _require_state(d, psi)
    target, e, _ = merge_target(d, e1, e2)
    val = psi.as_dict()
    return _finish("edge_merge", target, [{a: val[a] for a in target.arc_ids}])


# -- chi moves ------------------------------------------------------------------

def _chi0_site(d, e1, e2, e3, e4, ep):
    up = _vertex_with(d, e2, "in")
    lo = _vertex_with(d, e1, "in")
    vu, vl = d.vertices[up], d.vertices[lo]
    if vu.ins != (e2,) or sorted(vu.outs) != sorted((ep, e4)) or sorted(vl.ins) != sorted((e1, ep)) \
            or vl.outs != (e3,):
        raise PatternMismatch("arcs do not match the chi0 pattern")
    return up, lo


def chi0_target(d, e1, e2, e3, e4, ep):
    up, lo = _chi0_site(d, e1, e2, e3, e4, ep)
    (e,) = _new_ids(d, 1)
    keep = [v for i, v in enumerate(d.vertices) if i not in (up, lo)]
    keep += [Vertex((e1, e2), (e,)), Vertex((e,), (e3, e4))]
    arcs = [(a, c) for a, c in d.arcs if a != ep] + [(e, d.color(e1) + d.color(e2))]
    return KnottedMoyGraph(d.N, arcs, d.crossings, keep), e


def chi0(d: KnottedMoyGraph, psi: State, e1: int, e2: int, e3: int, e4: int, ep: int,
         sigma: Optional[RootSet] = None) -> TransportResult:
    _require_state(d, psi)
    target, e = chi0_target(d, e1, e2, e3, e4, ep)
    val = psi.as_dict()
    if val[e1] & val[e4]:
        return TransportResult("chi0", target, ())
    a = {x: val[x] for x in target.arc_ids if x != e}
    a[e] = val[e1] | val[e2]
    sigma = sigma or RootSet.default(d.N)
    cert = schur_box_ratio(d.color(e1), d.color(e4), sigma.subset(val[e1]), sigma.subset(val[e4]))
    return _finish("chi0", target, [a], [cert])


def _chi1_site(d, e1, e2, e3, e4, e):
    top = _vertex_with(d, e, "out")
    bot = _vertex_with(d, e, "in")
    vt, vb = d.vertices[top], d.vertices[bot]
    if sorted(vt.ins) != sorted((e1, e2)) or vt.outs != (e,) or vb.ins != (e,) \
            or sorted(vb.outs) != sorted((e3, e4)):
        raise PatternMismatch("arcs do not match the chi1 pattern")
    if d.color(e1) > d.color(e3):
        raise PatternMismatch("chi moves need color(e1) <= color(e3)")
    return top, bot


def chi1_target(d, e1, e2, e3, e4, e):
    top, bot = _chi1_site(d, e1, e2, e3, e4, e)
    (ep,) = _new_ids(d, 1)
    keep = [v for i, v in enumerate(d.vertices) if i not in (top, bot)]
    keep += [Vertex((e2,), (ep, e4)), Vertex((e1, ep), (e3,))]
    arcs = [(a, c) for a, c in d.arcs if a != e] + [(ep, d.color(e3) - d.color(e1))]
    return KnottedMoyGraph(d.N, arcs, d.crossings, keep), ep


def chi1(d: KnottedMoyGraph, psi: State, e1: int, e2: int, e3: int, e4: int, e: int,
         sigma: Optional[RootSet] = None) -> TransportResult:
    _require_state(d, psi)
    target, ep = chi1_target(d, e1, e2, e3, e4, e)
    val = psi.as_dict()
    if val[e1] & val[e4]:
        return TransportResult("chi1", target, ())
    a = {x: val[x] for x in target.arc_ids if x != ep}
    a[ep] = val[e3] & ~val[e1]
    sigma = sigma or RootSet.default(d.N)
    cert = schur_box_ratio(d.color(e1), d.color(e4), sigma.subset(val[e1]), sigma.subset(val[e4]))
    return _finish("chi1", target, [a], [cert])


# -- circles --------------------------------------------------------------------

def circle_create(d: KnottedMoyGraph, psi: State, m: int) -> TransportResult:
    _require_state(d, psi)
    (c,) = _new_ids(d, 1)
    target = KnottedMoyGraph(d.N, list(d.arcs) + [(c, m)], d.crossings, d.vertices)
    val = psi.as_dict()
    return _finish("circle_create", target, [{**val, c: s} for s in subsets_of_size(d.N, m)])


def circle_annihilate(d: KnottedMoyGraph, psi: State, e: int) -> TransportResult:
    _require_state(d, psi)
    ends = d.endpoints()[e]
    if ends != (None, None):
        raise PatternMismatch(f"arc {e} is not a free circle")
    target = KnottedMoyGraph(d.N, [(a, c) for a, c in d.arcs if a != e], d.crossings, d.vertices)
    val = psi.as_dict()
    return _finish("circle_annihilate", target, [{a: val[a] for a in target.arc_ids}])


# -- saddle ---------------------------------------------------------------------

def saddle_target(d: KnottedMoyGraph, e1: int, e2: int) -> KnottedMoyGraph:
    if e1 == e2 or d.color(e1) != d.color(e2):
        raise PatternMismatch("saddle needs two distinct edges of equal color")
    h1, h2 = _vertex_with(d, e1, "in"), _vertex_with(d, e2, "in")
    _vertex_with(d, e1, "out")
    _vertex_with(d, e2, "out")
    vertices = list(d.vertices)
    # swap heads: e1 now ends where e2 ended and vice versa
    tmp = -1
    vertices[h1] = _replace_in(vertices[h1], e1, tmp, "in")
    vertices[h2] = _replace_in(vertices[h2], e2, e1, "in")
    vertices[h1] = _replace_in(vertices[h1], tmp, e2, "in")
    return KnottedMoyGraph(d.N, d.arcs, d.crossings, vertices)


def saddle(d: KnottedMoyGraph, psi: State, e1: int, e2: int) -> TransportResult:
    _require_state(d, psi)
    target = saddle_target(d, e1, e2)
    val = psi.as_dict()
    if val[e1] != val[e2]:
        return TransportResult("saddle", target, ())
    return _finish("saddle", target, [dict(val)])


def transport(move: str, d: KnottedMoyGraph, psi: State, **site) -> TransportResult:
    fn = {"edge_split": edge_split, "edge_merge": edge_merge, "chi0": chi0, "chi1": chi1,
          "circle_create": circle_create, "circle_annihilate": circle_annihilate,
          "saddle": saddle}.get(move)
    if fn is None:
        raise ValueError(f"unknown move {move!r}; expected one of {', '.join(MOVES)}")
    try:
        return fn(d, psi, **site)
    except TypeError as exc:
        raise PatternMismatch(f"bad site for {move}: {exc}") from exc


# -- brute-force oracle -----------------------------------------------------------

def compatible_states(source: KnottedMoyGraph, psi: State, target: KnottedMoyGraph,
                      halves: Optional[Dict[int, Sequence[int]]] = None) -> List[State]:
    """Target states agreeing with ``psi`` on shared arcs.

    ``halves`` lists, for target arcs built from pieces of source arcs (the
    saddle), the source arcs whose values the target arc must carry.
    """
    val = psi.as_dict()
    shared = set(source.arc_ids) & set(target.arc_ids)
    out = []
    for s in enumerate_states(target).states:
        a = s.as_dict()
        if halves:
            if all(a[t] == val[x] for t, xs in halves.items() for x in xs) and \
                    all(a[x] == val[x] for x in shared if x not in halves):
                out.append(s)
        elif all(a[x] == val[x] for x in shared):
            out.append(s)
    return sorted(out)
