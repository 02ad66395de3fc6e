"""Colored MOY graphs, knotted MOY graphs and link diagrams.

One structure covers all three: arcs carry colors, MOY vertices list their
incoming and outgoing arcs, and crossings list four arcs in the fixed
rotational order

    a4   a3        a1, a2 enter from below; a3, a4 leave at the top.
      \\ /         The strand a1 -> a3 keeps color n, a2 -> a4 keeps m.
       X          sign +1: the a1 -> a3 strand passes over.
      / \\         sign -1: the a2 -> a4 strand passes over.
    a1   a2

An arc with no endpoints is a free circle.  Colored link diagrams have no
vertices; MOY graphs have no crossings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple


class DiagramError(ValueError):
    """A structurally valid input that violates a diagram invariant."""


class ParseError(ValueError):
    """Malformed textual input."""


@dataclass(frozen=True)
class Crossing:
    sign: int
    a1: int
    a2: int
    a3: int
    a4: int

    @property
    def arcs(self) -> Tuple[int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4)


@dataclass(frozen=True)
class Vertex:
    ins: Tuple[int, ...]
    outs: Tuple[int, ...]


@dataclass(frozen=True)
class KnottedMoyGraph:
    N: int
    arcs: Tuple[Tuple[int, int], ...]
    crossings: Tuple[Crossing, ...] = ()
    vertices: Tuple[Vertex, ...] = ()
    _colors: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(a), int(c)) for a, c in self.arcs))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "vertices", tuple(
            Vertex(tuple(v.ins), tuple(v.outs)) for v in self.vertices))
        colors = dict(self.arcs)
        object.__setattr__(self, "_colors", colors)
        self._validate()

    # -- validation ---------------------------------------------------------
    def _validate(self) -> None:
        if self.N < 1:
            raise DiagramError("N must be at least 1")
        if len(self._colors) != len(self.arcs):
            raise DiagramError("duplicate arc id")
        for a, c in self.arcs:
            if not 0 <= c <= self.N:
                raise DiagramError(f"arc {a} has color {c} outside 0..{self.N}")
        heads: Dict[int, int] = {}
        tails: Dict[int, int] = {}

        def mark(table, arc, where):
            if arc not in self._colors:
                raise DiagramError(f"{where} references unknown arc {arc}")
            if arc in table:
                raise DiagramError(f"arc {arc} has two {'heads' if table is heads else 'tails'}")
            table[arc] = 1

        for i, c in enumerate(self.crossings):
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing {i} has sign {c.sign}")
            mark(heads, c.a1, f"crossing {i}")
            mark(heads, c.a2, f"crossing {i}")
            mark(tails, c.a3, f"crossing {i}")
            mark(tails, c.a4, f"crossing {i}")
            if self._colors[c.a1] != self._colors[c.a3] or self._colors[c.a2] != self._colors[c.a4]:
                raise DiagramError(f"crossing {i}: strand colors change across the crossing")
        for i, v in enumerate(self.vertices):
            if not v.ins or not v.outs:
                raise DiagramError(f"vertex {i} needs incoming and outgoing arcs")
            for a in v.ins:
                mark(heads, a, f"vertex {i}")
            for a in v.outs:
                mark(tails, a, f"vertex {i}")
            if sum(self._colors[a] for a in v.ins) != sum(self._colors[a] for a in v.outs):
                raise DiagramError(f"vertex {i}: flow is not conserved")
        for a, _ in self.arcs:
            if (a in heads) != (a in tails):
                raise DiagramError(f"arc {a} has a dangling end")

    # -- accessors ----------------------------------------------------------
    def color(self, arc: int) -> int:
        return self._colors[arc]

    @property
    def arc_ids(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.arcs)

    @property
    def colors(self) -> Tuple[int, ...]:
        return tuple(c for _, c in self.arcs)

    def is_link_diagram(self) -> bool:
        return not self.vertices

    def is_moy_graph(self) -> bool:
        return not self.crossings

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def endpoints(self) -> Dict[int, Tuple[Optional[Tuple[str, int]], Optional[Tuple[str, int]]]]:
        """``arc -> (tail, head)``, each ``('v', i)``, ``('c', i)`` or ``None`` on free circles."""
        tail: Dict[int, Tuple[str, int]] = {}
        head: Dict[int, Tuple[str, int]] = {}
        for i, c in enumerate(self.crossings):
            head[c.a1] = head[c.a2] = ("c", i)
            tail[c.a3] = tail[c.a4] = ("c", i)
        for i, v in enumerate(self.vertices):
            for a in v.ins:
                head[a] = ("v", i)
            for a in v.outs:
                tail[a] = ("v", i)
        return {a: (tail.get(a), head.get(a)) for a in self.arc_ids}

    def edges(self) -> List[Tuple[int, Optional[int], Optional[int], int]]:
        """MOY view: ``(id, tail vertex, head vertex, color)``; ``None`` on free circles."""
        if self.crossings:
            raise DiagramError("edge view is only defined for MOY graphs")
        ends = self.endpoints()
        return [(a, ends[a][0] and ends[a][0][1], ends[a][1] and ends[a][1][1], c)
                for a, c in self.arcs]

    def components(self) -> List[List[int]]:
        """Arc cycles of a link diagram, in order of their first arc."""
        if self.vertices:
            raise DiagramError("components are defined for vertex-free diagrams only")
        nxt: Dict[int, int] = {}
        for c in self.crossings:
            nxt[c.a1] = c.a3
            nxt[c.a2] = c.a4
        seen, comps = set(), []
        for a in self.arc_ids:
            if a in seen:
                continue
            cyc, x = [], a
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = nxt.get(x, x)
            comps.append(cyc)
        return comps

    def component_of(self) -> Dict[int, int]:
        return {a: i for i, comp in enumerate(self.components()) for a in comp}

    # -- serialization --------------------------------------------------------
    def to_pd(self) -> dict:
        return {
            "N": self.N,
            "arcs": [{"id": a, "color": c} for a, c in self.arcs],
            "crossings": [{"sign": c.sign, "a1": c.a1, "a2": c.a2, "a3": c.a3, "a4": c.a4}
                          for c in self.crossings],
            "vertices": [{"in": list(v.ins), "out": list(v.outs)} for v in self.vertices],
        }

    def to_pd_json(self) -> str:
        return json.dumps(self.to_pd(), separators=(",", ":"))

    def canonical(self) -> "KnottedMoyGraph":
        """Relabel arcs ``0, 1, ...`` by order of first appearance (isomorphism normal form)."""
        order: List[int] = []
        for c in self.crossings:
            order.extend(c.arcs)
        for v in self.vertices:
            order.extend(v.ins + v.outs)
        order.extend(self.arc_ids)
        new: Dict[int, int] = {}
        for a in order:
            new.setdefault(a, len(new))
        return self.relabel(new)

    def relabel(self, new: Dict[int, int]) -> "KnottedMoyGraph":
        arcs = sorted(((new[a], c) for a, c in self.arcs))
        return KnottedMoyGraph(
            self.N, arcs,
            [Crossing(c.sign, *(new[a] for a in c.arcs)) for c in self.crossings],
            [Vertex(tuple(new[a] for a in v.ins), tuple(new[a] for a in v.outs))
             for v in self.vertices])


MoyGraph = KnottedMoyGraph


def parse_pd(text_or_obj) -> KnottedMoyGraph:
    """Parse colored PD JSON (string or already-decoded object)."""
    try:
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, (str, bytes)) else text_or_obj
        N = obj["N"]
        arcs = [(a["id"], a["color"]) for a in obj["arcs"]]
        crossings = [Crossing(c["sign"], c["a1"], c["a2"], c["a3"], c["a4"])
                     for c in obj.get("crossings", [])]
        vertices = [Vertex(tuple(v["in"]), tuple(v["out"])) for v in obj.get("vertices", [])]
        ints = [N] + [x for a in arcs for x in a] + [x for c in crossings for x in (c.sign,) + c.arcs]
        ints += [x for v in vertices for x in v.ins + v.outs]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in ints):
            raise ParseError("PD fields must be integers")
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed PD JSON: {exc}") from exc
    return KnottedMoyGraph(N, arcs, crossings, vertices)


def disjoint_union(*ds: KnottedMoyGraph) -> KnottedMoyGraph:
    if not ds:
        raise ValueError("need at least one diagram")
    N = ds[0].N
    if any(d.N != N for d in ds):
        raise DiagramError("diagrams use different N")
    arcs, crossings, vertices, offset = [], [], [], 0
    for d in ds:
        shift = {a: a + offset for a in d.arc_ids}
        e = d.relabel(shift)
        arcs.extend(e.arcs)
        crossings.extend(e.crossings)
        vertices.extend(e.vertices)
        offset = max(shift.values(), default=offset - 1) + 1
    return KnottedMoyGraph(N, arcs, crossings, vertices)


# -- surgeries ------------------------------------------------------------------

def mirror(d: KnottedMoyGraph) -> KnottedMoyGraph:
    return replace(d, crossings=tuple(replace(c, sign=-c.sign) for c in d.crossings))


def reverse_orientation(d: KnottedMoyGraph) -> KnottedMoyGraph:
    # Turning the crossing picture half a turn puts the old exits at the bottom.
    return replace(d,
                   crossings=tuple(Crossing(c.sign, c.a3, c.a4, c.a1, c.a2) for c in d.crossings),
                   vertices=tuple(Vertex(v.outs, v.ins) for v in d.vertices))


def color_complement(d: KnottedMoyGraph, N: Optional[int] = None) -> KnottedMoyGraph:
    N = d.N if N is None else N
    if any(c > N for c in d.colors):
        raise DiagramError(f"color exceeds N={N}")
    return replace(d, N=N, arcs=tuple((a, N - c) for a, c in d.arcs))


# -- braids ---------------------------------------------------------------------

@dataclass(frozen=True)
class ColoredBraid:
    b: int
    word: Tuple[int, ...]
    colors: Tuple[int, ...]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(x) for x in self.word))
        object.__setattr__(self, "colors", tuple(int(x) for x in self.colors))
        if self.b < 1:
            raise DiagramError("a braid needs at least one strand")
        if self.N < 1:
            raise DiagramError("N must be at least 1")
        for g in self.word:
            if g == 0 or abs(g) > self.b - 1:
                raise DiagramError(f"generator {g} is out of range for {self.b} strands")
        ncomp = len(self.components)
        if len(self.colors) != ncomp:
            raise DiagramError(f"closure has {ncomp} components but {len(self.colors)} colors given")
        for c in self.colors:
            if not 0 <= c <= self.N:
                raise DiagramError(f"color {c} outside 0..{self.N}")

    @property
    def components(self) -> List[List[int]]:
        return braid_cycles(self.b, self.word)

    @property
    def strand_colors(self) -> Tuple[int, ...]:
        col = [0] * self.b
        for comp, c in zip(self.components, self.colors):
            for j in comp:
                col[j] = c
        return tuple(col)

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    @property
    def l_plus(self) -> int:
        return sum(1 for g in self.word if g > 0)

    @property
    def l_minus(self) -> int:
        return sum(1 for g in self.word if g < 0)

    @property
    def self_linking(self) -> int:
        return self.writhe - self.b

    def is_knot(self) -> bool:
        return len(self.components) == 1

    def mirror(self) -> "ColoredBraid":
        return ColoredBraid(self.b, tuple(-g for g in self.word), self.colors, self.N)

    def reverse(self) -> "ColoredBraid":
        """Orientation reversal: read the word backwards and flip the strand order."""
        word = tuple((self.b - abs(g)) * (1 if g > 0 else -1) for g in reversed(self.word))
        return with_strand_colors(self.b, word, tuple(reversed(self.strand_colors)), self.N)

    def color_complement(self) -> "ColoredBraid":
        return ColoredBraid(self.b, self.word, tuple(self.N - c for c in self.colors), self.N)

    def to_text(self) -> str:
        return (f"b={self.b} N={self.N}\n" + " ".join(str(g) for g in self.word) + "\n"
                + ",".join(str(c) for c in self.colors) + "\n")


def braid_cycles(b: int, word: Sequence[int]) -> List[List[int]]:
    """Cycles of the closure permutation, each listed from its smallest position."""
    for g in word:
        if g == 0 or abs(g) > b - 1:
            raise DiagramError(f"generator {g} is out of range for {b} strands")
    pos = list(range(b))
    for g in word:
        p = abs(g) - 1
        pos[p], pos[p + 1] = pos[p + 1], pos[p]
    perm = {s: p for p, s in enumerate(pos)}
    seen, out = set(), []
    for j in range(b):
        if j in seen:
            continue
        cyc, x = [], j
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def with_strand_colors(b: int, word: Sequence[int], strand_colors: Sequence[int], N: int) -> ColoredBraid:
    """Build a braid from per-position colors (must be constant on each closure component)."""
    colors = []
    for comp in braid_cycles(b, word):
        cs = {strand_colors[j] for j in comp}
        if len(cs) != 1:
            raise DiagramError(f"strand colors are not constant on component {comp}")
        colors.append(cs.pop())
    return ColoredBraid(b, word, colors, N)


_WORD_RE = re.compile(r"^\s*([+-]?\d+(\s+[+-]?\d+)*)?\s*$")


def parse_word(text: str) -> Tuple[int, ...]:
    text = text.replace(",", " ")
    if not _WORD_RE.match(text):
        raise ParseError(f"braid word must be whitespace-separated signed integers: {text!r}")
    return tuple(int(t) for t in text.split())


def parse_braid(text: str, colors: Sequence[int], N: int, b: Optional[int] = None) -> ColoredBraid:
    """Parse a signed braid word; ``b`` defaults to one more than the largest index."""
    word = parse_word(text)
    if b is None:
        b = max((abs(g) for g in word), default=0) + 1
    return ColoredBraid(b, word, tuple(colors), N)


def parse_braid_file(text: str) -> ColoredBraid:
    """Three-line format: ``b=<int> N=<int>``, the word, comma-separated colors."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) not in (2, 3):
        raise ParseError("braid file needs a header, a word line and a color line")
    head = re.fullmatch(r"\s*b\s*=\s*(\d+)\s+N\s*=\s*(\d+)\s*", lines[0])
    if not head:
        raise ParseError(f"bad braid header {lines[0]!r}")
    b, N = int(head.group(1)), int(head.group(2))
    if len(lines) == 2:  # empty word
        word_line, color_line = "", lines[1]
    else:
        word_line, color_line = lines[1], lines[2]
    try:
        colors = [int(c) for c in color_line.split(",") if c.strip()]
    except ValueError as exc:
        raise ParseError(f"bad color line {color_line!r}") from exc
    return parse_braid(word_line, colors, N, b)


def braid_closure_to_knotted(braid: ColoredBraid) -> KnottedMoyGraph:
    """Closure of a braid as a vertex-free knotted MOY graph."""
    b = braid.b
    col = list(braid.strand_colors)
    arc_color: List[int] = list(col)
    cur = list(range(b))
    crossings = []
    for g in braid.word:
        p = abs(g) - 1
        a1, a2 = cur[p], cur[p + 1]
        a3, a4 = len(arc_color), len(arc_color) + 1
        arc_color.extend([arc_color[a1], arc_color[a2]])
        crossings.append((1 if g > 0 else -1, a1, a2, a3, a4))
        cur[p], cur[p + 1] = a4, a3
    parent = list(range(len(arc_color)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(b):
        ra, rb = find(cur[j]), find(j)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    order: Dict[int, int] = {}
    for _, a1, a2, a3, a4 in crossings:
        for a in (a1, a2, a3, a4):
            order.setdefault(find(a), len(order))
    for a in range(len(arc_color)):
        order.setdefault(find(a), len(order))
    arcs = sorted({(order[find(a)], arc_color[a]) for a in range(len(arc_color))})
    return KnottedMoyGraph(
        braid.N, arcs,
        [Crossing(s, *(order[find(a)] for a in (a1, a2, a3, a4))) for s, a1, a2, a3, a4 in crossings])


# -- small fixtures ---------------------------------------------------------------

def circle(m: int, N: int) -> KnottedMoyGraph:
    return KnottedMoyGraph(N, [(0, m)])


def marked_circle(m: int, N: int, marks: int = 1) -> KnottedMoyGraph:
    """Circle with ``marks`` bivalent vertices (one arc between consecutive marks)."""
    arcs = [(i, m) for i in range(marks)]
    vertices = [Vertex((i,), ((i + 1) % marks,)) for i in range(marks)]
    return KnottedMoyGraph(N, arcs, (), vertices)


def theta(i: int, j: int, N: int) -> KnottedMoyGraph:
    """Two vertices joined by edges colored ``i``, ``j`` one way and ``i + j`` back."""
    return KnottedMoyGraph(N, [(0, i), (1, j), (2, i + j)], (),
                           [Vertex((0, 1), (2,)), Vertex((2,), (0, 1))])
