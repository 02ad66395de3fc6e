"""Hand-built diagrams used by the verification suites and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .diagrams import (ColoredBraid, Crossing, DiagramError, KnottedMoyGraph, Vertex, braid_closure_to_knotted,
                       braid_cycles, circle, disjoint_union, marked_circle, theta, with_strand_colors)


# -- braid-like closures with vertices ---------------------------------------------

def ladder_closure(colors: Sequence[int], ops: Sequence[tuple], N: int) -> KnottedMoyGraph:
    """Close up a braid-like word that may also merge and split strands.

    ``ops`` items: ``("x", p, sign)`` crosses positions ``p`` and ``p + 1``;
    ``("merge", p)`` joins positions ``p`` and ``p + 1`` into one strand;
    ``("split", p, c)`` splits position ``p`` into colors ``c`` and the rest.
    The final strand colors must match the initial ones.
    """
    arc_color = list(colors)
    cur = list(range(len(colors)))
    crossings, vertices = [], []

    def new(c):
        arc_color.append(c)
        return len(arc_color) - 1

    for op in ops:
        kind, p = op[0], op[1]
        if kind == "x":
            a1, a2 = cur[p], cur[p + 1]
            a3, a4 = new(arc_color[a1]), new(arc_color[a2])
            crossings.append((op[2], a1, a2, a3, a4))
            cur[p], cur[p + 1] = a4, a3
        elif kind == "merge":
            a, b = cur[p], cur[p + 1]
            z = new(arc_color[a] + arc_color[b])
            vertices.append(((a, b), (z,)))
            cur[p:p + 2] = [z]
        elif kind == "split":
            a = cur[p]
            if not 0 <= op[2] <= arc_color[a]:
                raise DiagramError(f"cannot split color {arc_color[a]} off {op[2]}")
            x, y = new(op[2]), new(arc_color[a] - op[2])
            vertices.append(((a,), (x, y)))
            cur[p:p + 1] = [x, y]
        else:
            raise DiagramError(f"unknown ladder op {kind!r}")
    if [arc_color[a] for a in cur] != list(colors):
        raise DiagramError("ladder word does not close up with matching colors")
    parent = list(range(len(arc_color)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for j, a in enumerate(cur):
        ra, rb = find(a), find(j)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    ids: Dict[int, int] = {}
    for a in range(len(arc_color)):
        ids.setdefault(find(a), len(ids))
    arcs = sorted({(ids[find(a)], arc_color[a]) for a in range(len(arc_color))})
    return KnottedMoyGraph(
        N, arcs,
        [Crossing(s, *(ids[find(a)] for a in rest)) for s, *rest in crossings],
        [Vertex(tuple(ids[find(a)] for a in i), tuple(ids[find(a)] for a in o)) for i, o in vertices])


# -- Reidemeister pairs -------------------------------------------------------------

@dataclass(frozen=True)
class MovePair:
    name: str
    move: str
    colors: Tuple[int, int]
    N: int
    before: KnottedMoyGraph
    after: KnottedMoyGraph


def _closure(b, word, strand_colors, N):
    return braid_closure_to_knotted(with_strand_colors(b, word, strand_colors, N))


def reidemeister_pairs(Ns: Sequence[int] = (3, 4),
                       color_pairs: Sequence[Tuple[int, int]] = ((1, 1), (1, 2), (2, 2))) -> List[MovePair]:
    """Paired diagrams differing by one Reidemeister move.

    The colors ``(m, n)`` go on the two strands taking part in the move; R1
    is Markov stabilization on a strand of color ``n`` inside a Hopf clasp.
    """
    out = []
    for N in Ns:
        for m, n in color_pairs:
            tag = f"N{N}-{m}{n}"
            for s in (1, -1):
                sgn = "+" if s > 0 else "-"
                out.append(MovePair(f"R1{sgn}-{tag}", "R1", (m, n), N,
                                    _closure(2, (1, 1), (m, n), N),
                                    _closure(3, (1, 1, 2 * s), (m, n, n), N)))
            out.append(MovePair(f"R2-{tag}", "R2", (m, n), N,
                                _closure(2, (1, -1), (m, n), N),
                                _closure(2, (), (m, n), N)))
            out.append(MovePair(f"R2-clasp-{tag}", "R2", (m, n), N,
                                _closure(2, (-1, 1, 1, 1), (m, n), N),
                                _closure(2, (1, 1), (m, n), N)))
            for s in (1, -1):
                sgn = "+" if s > 0 else "-"
                out.append(MovePair(f"R3{sgn}-{tag}", "R3", (m, n), N,
                                    _closure(3, (s, 2 * s, s), (m, n, m), N),
                                    _closure(3, (2 * s, s, 2 * s), (m, n, m), N)))
    return out


def fork_slide_pair(i: int, j: int, k: int, N: int) -> Tuple[KnottedMoyGraph, KnottedMoyGraph]:
    """A strand of color ``k`` crossing the ``i + j`` edge of a merge, before and after sliding
    one crossing through the merge vertex."""
    before = ladder_closure((i, j, k), [("merge", 0), ("x", 0, 1), ("x", 0, 1), ("split", 0, i)], N)
    after = ladder_closure((i, j, k), [("x", 1, 1), ("x", 0, 1), ("merge", 1), ("x", 0, 1), ("split", 0, i)], N)
    return before, after


# -- closed MOY graphs --------------------------------------------------------------

def square(m: int, n: int, k: int, N: int) -> KnottedMoyGraph:
    """Closed crossing resolution: strands ``m`` (arc 0) and ``n`` (arc 1) joined through
    rungs ``e1 = 2`` (``k``), ``e2 = 3``, ``e3 = 4``, ``e4 = 5``."""
    arcs = [(0, m), (1, n), (2, k), (3, n - k), (4, m - n + k), (5, m + k)]
    vertices = [Vertex((0, 2), (5,)), Vertex((1,), (3, 2)), Vertex((5,), (1, 4)), Vertex((3, 4), (0,))]
    return KnottedMoyGraph(N, arcs, (), vertices)


def admissibility_graphs() -> List[Tuple[str, KnottedMoyGraph]]:
    return [
        ("circle-1-N3", circle(1, 3)),
        ("circle-2-N4", circle(2, 4)),
        ("marked-circle-1-N3", marked_circle(1, 3, 3)),
        ("theta-1-1-N3", theta(1, 1, 3)),
        ("theta-1-2-N4", theta(1, 2, 4)),
        ("theta-0-2-N3", theta(0, 2, 3)),
        ("square-1-1-0-N3", square(1, 1, 0, 3)),
        ("square-1-1-1-N3", square(1, 1, 1, 3)),
        ("square-2-1-1-N4", square(2, 1, 1, 4)),
        ("theta-and-circle-N3", disjoint_union(theta(1, 1, 3), circle(1, 3))),
    ]


def ring_graphs(max_N: int = 4) -> List[Tuple[str, KnottedMoyGraph]]:
    """Circle, theta and two-theta graphs for the idempotent checks."""
    out = []
    for N in range(2, max_N + 1):
        for m in range(1, N + 1):
            out.append((f"circle-{m}-N{N}", circle(m, N)))
        for i in range(1, N):
            for j in range(1, N - i + 1):
                if i <= j:
                    out.append((f"theta-{i}-{j}-N{N}", theta(i, j, N)))
    out.append(("two-theta-N3", disjoint_union(theta(1, 1, 3), theta(1, 1, 3))))
    out.append(("two-theta-N4", disjoint_union(theta(1, 1, 4), theta(1, 2, 4))))
    return out


# -- local transport sites ------------------------------------------------------------

def chi0_fixture(a: int, b: int, c: int, N: int, vanishing: bool = False):
    """Graph carrying the chi0 source pattern with arcs ``e1..e4 = 1..4`` and ``e' = 0``.

    Colors: ``e1 = a``, ``e' = b``, ``e4 = c``, ``e2 = b + c``, ``e3 = a + b``.  The
    ordinary closure is a vertex ``e3, e4 -> e1, e2``; the vanishing one joins
    ``e3 -> e2`` and ``e4 -> e1`` by bivalent vertices (needs ``a = c``).
    """
    arcs = [(0, b), (1, a), (2, b + c), (3, a + b), (4, c)]
    vs = [Vertex((2,), (0, 4)), Vertex((1, 0), (3,))]
    if vanishing:
        if a != c:
            raise DiagramError("the vanishing closure needs color(e1) = color(e4)")
        vs += [Vertex((3,), (2,)), Vertex((4,), (1,))]
    else:
        vs.append(Vertex((3, 4), (1, 2)))
    site = dict(e1=1, e2=2, e3=3, e4=4, ep=0)
    return KnottedMoyGraph(N, arcs, (), vs), site


def chi1_fixture(a: int, b: int, c: int, d: int, N: int):
    """``e1 (a), e2 (b) -> e (a + b) -> e3 (c), e4 (d)`` closed by ``e3, e4 -> e1, e2``."""
    if a + b != c + d or a > c:
        raise DiagramError("need a + b = c + d and a <= c")
    arcs = [(0, a + b), (1, a), (2, b), (3, c), (4, d)]
    vs = [Vertex((1, 2), (0,)), Vertex((0,), (3, 4)), Vertex((3, 4), (1, 2))]
    return KnottedMoyGraph(N, arcs, (), vs), dict(e1=1, e2=2, e3=3, e4=4, e=0)


def saddle_fixture(m: int, N: int) -> KnottedMoyGraph:
    """Two marked circles of color ``m``; the saddle acts on arcs 0 and 2."""
    return disjoint_union(marked_circle(m, N, 2), marked_circle(m, N, 2))


# -- braids ---------------------------------------------------------------------------

NEGATIVE_TORUS = {
    "T(2,3)": (2, (-1,) * 3),
    "T(2,5)": (2, (-1,) * 5),
    "T(2,7)": (2, (-1,) * 7),
    "T(3,4)": (3, (-1, -2) * 4),
}


def uniform(b: int, word: Sequence[int], m: int, N: int) -> ColoredBraid:
    return ColoredBraid(b, tuple(word), (m,) * len(braid_cycles(b, word)), N)


def random_braid(rng: random.Random, max_b: int = 4, max_len: int = 10, max_N: int = 6,
                 min_N: int = 2) -> ColoredBraid:
    """Random closure with per-component colors in ``0..N``."""
    b = rng.randint(1, max_b)
    N = rng.randint(min_N, max_N)
    length = rng.randint(0, max_len) if b > 1 else 0
    word = tuple(rng.choice((1, -1)) * rng.randint(1, b - 1) for _ in range(length))
    colors = tuple(rng.randint(0, N) for _ in braid_cycles(b, word))
    return ColoredBraid(b, word, colors, N)


def relabel_fixtures(count: int = 50, seed: int = 1303) -> List[Tuple[str, KnottedMoyGraph]]:
    """Small braid closures and graphs for the root relabeling checks."""
    rng = random.Random(seed)
    out = [(name, g) for name, g in admissibility_graphs()]
    out += [(f"pair-{p.name}-before", p.before) for p in reidemeister_pairs((3,), ((1, 2),))[:4]]
    while len(out) < count:
        br = random_braid(rng, max_b=3, max_len=6, max_N=4)
        out.append((f"braid-{len(out)}:{br.b}:{' '.join(map(str, br.word))}:{br.colors}:N{br.N}",
                    braid_closure_to_knotted(br)))
    return out[:count]


def knot_fixtures() -> List[Tuple[str, ColoredBraid]]:
    """Single-component closures in several colors."""
    out = []
    for N in (2, 3, 4):
        for m in range(1, N):
            out.append((f"unknot-m{m}-N{N}", uniform(1, (), m, N)))
            out.append((f"left-trefoil-m{m}-N{N}", uniform(2, (-1, -1, -1), m, N)))
            out.append((f"right-trefoil-m{m}-N{N}", uniform(2, (1, 1, 1), m, N)))
            out.append((f"figure-eight-m{m}-N{N}", uniform(3, (1, -2, 1, -2), m, N)))
            out.append((f"stabilized-unknot-m{m}-N{N}", uniform(3, (1, -2), m, N)))
    out.append(("T(2,5)-m1-N3", uniform(2, (-1,) * 5, 1, 3)))
    out.append(("T(3,4)-m1-N2", uniform(3, (-1, -2) * 4, 1, 2)))
    return out
