"""States, quasi-states, gradings and resolutions of colored diagrams."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..diagrams import (Crossing, DiagramError, KnottedMoyGraph, Vertex, color_complement, mirror,
                        reverse_orientation)
from ..symkit import MAX_N, RootSet, complete_difference, elementary_values, frac


class StateError(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_indices(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def subsets_of_size(N: int, k: int) -> List[int]:
    if not 0 <= k <= N:
        return []
    return [sum(1 << i for i in c) for c in combinations(range(N), k)]


@dataclass(frozen=True, order=True)
class State:
    """Assignment arc -> subset bitmask, positional over ``arcs``."""

    masks: Tuple[int, ...]
    arcs: Tuple[int, ...]

    def __getitem__(self, arc: int) -> int:
        return self.masks[self.arcs.index(arc)]

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.arcs, self.masks))

    def root_indices(self) -> List[List[int]]:
        return [mask_indices(m) for m in self.masks]

    def values(self, sigma: RootSet) -> Tuple[frozenset, ...]:
        return tuple(frozenset(sigma.subset(m)) for m in self.masks)

    @classmethod
    def from_dict(cls, d: KnottedMoyGraph, assignment: Mapping[int, int]) -> "State":
        return cls(tuple(assignment[a] for a in d.arc_ids), d.arc_ids)


def _check_size(d: KnottedMoyGraph, sigma: RootSet) -> None:
    if sigma.N != d.N:
        raise StateError(f"root set has {sigma.N} roots but the diagram uses N={d.N}")
    if d.N > MAX_N:
        raise StateError(f"enumeration is limited to N <= {MAX_N}")


# -- local admissibility ---------------------------------------------------------

def vertex_admissible(ins: Sequence[int], outs: Sequence[int]) -> bool:
    """Pairwise disjoint on each side and equal unions."""
    def disjoint_union(masks):
        acc = 0
        for m in masks:
            if acc & m:
                return None
            acc |= m
        return acc
    u_in, u_out = disjoint_union(ins), disjoint_union(outs)
    return u_in is not None and u_out is not None and u_in == u_out


def crossing_admissible(m1: int, m2: int, m3: int, m4: int) -> bool:
    return m1 == m3 and m2 == m4


def crossing_quasi_admissible(m1: int, m2: int, m3: int, m4: int) -> bool:
    return (m1 & m2) == (m3 & m4) and (m1 | m2) == (m3 | m4)


def is_state(d: KnottedMoyGraph, psi: State) -> bool:
    return _is_admissible(d, psi, quasi=False)


def is_quasi_state(d: KnottedMoyGraph, psi: State) -> bool:
    return _is_admissible(d, psi, quasi=True)


def _is_admissible(d: KnottedMoyGraph, psi: State, quasi: bool) -> bool:
    a = psi.as_dict()
    if set(a) != set(d.arc_ids):
        return False
    if any(popcount(a[x]) != d.color(x) or a[x] >> d.N for x in d.arc_ids):
        return False
    test = crossing_quasi_admissible if quasi else crossing_admissible
    if not all(test(*(a[x] for x in c.arcs)) for c in d.crossings):
        return False
    return all(vertex_admissible([a[x] for x in v.ins], [a[x] for x in v.outs]) for v in d.vertices)


# -- enumeration --------------------------------------------------------------------

class _Problem:
    """Variables, domains and constraints for backtracking enumeration."""

    def __init__(self, d: KnottedMoyGraph, quasi: bool):
        arcs = d.arc_ids
        index = {a: i for i, a in enumerate(arcs)}
        parent = list(range(len(arcs)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if not quasi:
            for c in d.crossings:
                for x, y in ((c.a1, c.a3), (c.a2, c.a4)):
                    rx, ry = find(index[x]), find(index[y])
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        roots = sorted({find(i) for i in range(len(arcs))})
        var_of_root = {r: k for k, r in enumerate(roots)}
        self.arc_var = [var_of_root[find(i)] for i in range(len(arcs))]
        self.nvars = len(roots)
        self.domains = [subsets_of_size(d.N, d.color(arcs[r])) for r in roots]
        # constraints: ('v', ins, outs) or ('q', v1, v2, v3, v4), all in variable indices
        cons = []
        for v in d.vertices:
            cons.append(("v", tuple(self.arc_var[index[a]] for a in v.ins),
                         tuple(self.arc_var[index[a]] for a in v.outs)))
        if quasi:
            for c in d.crossings:
                cons.append(("q",) + tuple(self.arc_var[index[a]] for a in c.arcs))
        self.constraints = cons
        self.order = self._order()
        # constraints touching each variable, checked when that variable is assigned
        self.watch: List[List[tuple]] = [[] for _ in range(self.nvars)]
        for con in cons:
            vars_ = set(con[1]) | set(con[2]) if con[0] == "v" else set(con[1:])
            for v in vars_:
                self.watch[v].append(con)

    def _order(self) -> List[int]:
        adj: List[set] = [set() for _ in range(self.nvars)]
        for con in self.constraints:
            vars_ = list(con[1]) + list(con[2]) if con[0] == "v" else list(con[1:])
            for x in vars_:
                adj[x].update(vars_)
        order, seen = [], set()
        for start in range(self.nvars):
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            while queue:
                x = queue.pop(0)
                order.append(x)
                for y in sorted(adj[x]):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return order

    @staticmethod
    def _ok(con, val: List[Optional[int]]) -> bool:
        if con[0] == "q":
            ms = [val[x] for x in con[1:]]
            if any(m is None for m in ms):
                return True
            return crossing_quasi_admissible(*ms)
        _, ins, outs = con
        uin = uout = 0
        full = True
        for side in (ins, outs):
            acc = 0
            for x in side:
                m = val[x]
                if m is None:
                    full = False
                    continue
                if acc & m:
                    return False
                acc |= m
            if side is ins:
                uin = acc
            else:
                uout = acc
        if full:
            return uin == uout
        if all(val[x] is not None for x in outs) and uin & ~uout:
            return False
        if all(val[x] is not None for x in ins) and uout & ~uin:
            return False
        return True

    def solve(self, first: Optional[int] = None) -> List[Tuple[int, ...]]:
        val: List[Optional[int]] = [None] * self.nvars
        out: List[Tuple[int, ...]] = []
        order = self.order

        def rec(k: int):
            if k == len(order):
                out.append(tuple(val))
                return
            x = order[k]
            dom = self.domains[x] if (k or first is None) else [first]
            for m in dom:
                val[x] = m
                if all(self._ok(con, val) for con in self.watch[x]):
                    rec(k + 1)
            val[x] = None

        rec(0)
        return out


def _solve_branch(args) -> List[Tuple[int, ...]]:
    d, quasi, first = args
    return _Problem(d, quasi).solve(first)


def _enumerate_masks(d: KnottedMoyGraph, quasi: bool, jobs: int = 1) -> List[Tuple[int, ...]]:
    prob = _Problem(d, quasi)
    if prob.nvars == 0:
        return [()]
    if jobs > 1:
        first_dom = prob.domains[prob.order[0]]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_solve_branch, [(d, quasi, f) for f in first_dom]))
        sols = [s for p in parts for s in p]
    else:
        sols = prob.solve()
    rows = sorted(tuple(s[prob.arc_var[i]] for i in range(len(d.arc_ids))) for s in sols)
    return rows


# -- gradings -----------------------------------------------------------------------

def crossing_h(c: Crossing, d: KnottedMoyGraph, m1: int, m2: int) -> int:
    inter = popcount(m1 & m2)
    ci, cj = d.color(c.a1), d.color(c.a2)
    if c.sign > 0:
        return inter if ci != cj else inter - ci
    return -inter if ci != cj else ci - inter


def h_grading(d: KnottedMoyGraph, psi: State) -> int:
    a = psi.as_dict()
    return sum(crossing_h(c, d, a[c.a1], a[c.a2]) for c in d.crossings)


@dataclass(frozen=True)
class GradedStateSet:
    diagram: KnottedMoyGraph
    sigma: RootSet
    states: Tuple[State, ...]
    h: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.states)

    @property
    def histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.h).items()))

    def value_sets(self) -> List[Tuple[frozenset, ...]]:
        return sorted((s.values(self.sigma) for s in self.states), key=_value_key)


def _value_key(vals):
    return tuple(tuple(sorted(v)) for v in vals)


def enumerate_states(d: KnottedMoyGraph, sigma: Optional[RootSet] = None, jobs: int = 1) -> GradedStateSet:
    sigma = sigma or RootSet.default(d.N)
    _check_size(d, sigma)
    states = tuple(State(m, d.arc_ids) for m in _enumerate_masks(d, False, jobs))
    return GradedStateSet(d, sigma, states, tuple(h_grading(d, s) for s in states))


def enumerate_quasi_states(d: KnottedMoyGraph, sigma: Optional[RootSet] = None, jobs: int = 1) -> List[State]:
    sigma = sigma or RootSet.default(d.N)
    _check_size(d, sigma)
    return [State(m, d.arc_ids) for m in _enumerate_masks(d, True, jobs)]


def enumerate_pre_states(d: KnottedMoyGraph) -> List[State]:
    """Every assignment of correctly sized subsets (no admissibility)."""
    if d.N > MAX_N:
        raise StateError(f"enumeration is limited to N <= {MAX_N}")
    rows: List[Tuple[int, ...]] = [()]
    for a in d.arc_ids:
        dom = subsets_of_size(d.N, d.color(a))
        rows = [r + (m,) for r in rows for m in dom]
    return [State(r, d.arc_ids) for r in rows]


# -- shifts -------------------------------------------------------------------------

def _shift_terms(d: KnottedMoyGraph):
    if d.vertices:
        raise DiagramError("shifts are defined for colored link diagrams only")
    N = d.N
    for c in d.crossings:
        m, n = d.color(c.a4), d.color(c.a3)
        if m == n or m == N - n:
            yield 0, 0
        elif c.sign > 0:
            yield N - 2 * n, N - 2 * m
        else:
            yield 2 * m - N, 2 * n - N


def shift_s(d: KnottedMoyGraph) -> int:
    return sum(s for s, _ in _shift_terms(d))


def shift_s_prime(d: KnottedMoyGraph) -> int:
    return sum(t for _, t in _shift_terms(d))


# -- resolutions --------------------------------------------------------------------

def resolve_state(d: KnottedMoyGraph, psi: State) -> Tuple[KnottedMoyGraph, State]:
    """Unique MOY resolution of a state: each crossing becomes a square.

    With ``A = psi(a1)`` and ``B = psi(a2)`` the square carries
    ``e1 = B - A``, ``e2 = B & A``, ``e3 = A - B``, ``e4 = A | B`` and vertices
    ``a1 + e1 -> e4``, ``a2 -> e2 + e1``, ``e4 -> a4 + e3``, ``e2 + e3 -> a3``.
    """
    if not is_state(d, psi):
        raise StateError("resolution needs a state (admissible at every crossing and vertex)")
    val = psi.as_dict()
    next_id = max(d.arc_ids, default=-1) + 1
    arcs = list(d.arcs)
    vertices = list(d.vertices)
    for c in d.crossings:
        A, B = val[c.a1], val[c.a2]
        e1, e2, e3, e4 = range(next_id, next_id + 4)
        next_id += 4
        for e, mask in ((e1, B & ~A), (e2, B & A), (e3, A & ~B), (e4, A | B)):
            arcs.append((e, popcount(mask)))
            val[e] = mask
        vertices += [Vertex((c.a1, e1), (e4,)), Vertex((c.a2,), (e2, e1)),
                     Vertex((e4,), (c.a4, e3)), Vertex((e2, e3), (c.a3,))]
    gamma = KnottedMoyGraph(d.N, arcs, (), vertices)
    phi = State.from_dict(gamma, val)
    if not is_state(gamma, phi):
        raise AssertionError("resolved assignment is not a state")
    return gamma, phi


# -- admissibility through evaluations ---------------------------------------------

def admissibility_via_evaluation(gamma: KnottedMoyGraph, phi: State, sigma: Optional[RootSet] = None) -> bool:
    """Vertex admissibility from elementary and ``U_p`` evaluations.

    At a vertex with total color ``M`` the pre-state is admissible iff for
    ``p = 1..M`` the elementary symmetric values of the incoming and outgoing
    root multisets agree and ``(-1)^(p+1) (N+1) h_(N+1-p)(X_in - Sigma)``
    vanishes.  Once the elementary values agree this is the value of ``U_p``.
    """
    sigma = sigma or RootSet.default(gamma.N)
    if gamma.crossings:
        raise DiagramError("evaluation criterion applies to MOY graphs")
    a = phi.as_dict()
    for x in gamma.arc_ids:
        if popcount(a[x]) != gamma.color(x):
            raise StateError(f"arc {x} carries a subset of the wrong size")
    N = sigma.N
    for v in gamma.vertices:
        ins = [r for x in v.ins for r in sigma.subset(a[x])]
        outs = [r for x in v.outs for r in sigma.subset(a[x])]
        M = len(ins)
        if elementary_values(ins) != elementary_values(outs):
            return False
        for p in range(1, M + 1):
            if (-1) ** (p + 1) * (N + 1) * complete_difference(N + 1 - p, ins, sigma.roots):
                return False
    return True


# -- relabeling and dualities ----------------------------------------------------------

def relabel_sigma(states: GradedStateSet, a, b) -> GradedStateSet:
    """Move every root ``r`` to ``a r + b``; masks keep their positions."""
    a = frac(a)
    if a == 0:
        raise ValueError("relabeling needs a != 0")
    return GradedStateSet(states.diagram, states.sigma.affine(a, b), states.states, states.h)


def state_dual_bar(psi: State) -> State:
    """Same subsets on the reversed mirror diagram (arc ids are kept)."""
    return State(psi.masks, psi.arcs)


def bar_diagram(d: KnottedMoyGraph) -> KnottedMoyGraph:
    return mirror(reverse_orientation(d))


def state_dual_op(psi: State, sigma: RootSet) -> State:
    full = (1 << sigma.N) - 1
    return State(tuple(full & ~m for m in psi.masks), psi.arcs)


def op_diagram(d: KnottedMoyGraph) -> KnottedMoyGraph:
    return color_complement(d)


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
