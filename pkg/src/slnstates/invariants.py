"""Colored Rasmussen invariants: exact values, bounds and derived criteria.

Exact values are produced only for unknots, unlinks, closed negative braids
and (for knots) closed positive braids.  Anything else gets an interval
from the writhe and self-linking bounds.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagrams import ColoredBraid, DiagramError

VARIANTS = ("K", "-K", "Kbar", "Kmir")
_SIGN = {"K": 1, "-K": 1, "Kbar": -1, "Kmir": -1}


@dataclass(frozen=True)
class SInvariantResult:
    m: int
    N: int
    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    provenance: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.value is not None and (self.lower != self.value or self.upper != self.value):
            raise ValueError("an exact value must equal both bounds")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    def to_json(self) -> dict:
        return {"value": self.value, "lower": self.lower, "upper": self.upper,
                "provenance": list(self.provenance), "m": self.m, "N": self.N}


def uniform_braid(b: int, word: Sequence[int], m: int, N: int) -> ColoredBraid:
    from .diagrams import braid_cycles
    return ColoredBraid(b, tuple(word), (m,) * len(braid_cycles(b, word)), N)


def _check(m: int, N: int) -> int:
    if N < 2 or not 0 <= m <= N:
        raise ValueError(f"need N >= 2 and 0 <= m <= N, got m={m}, N={N}")
    return m * (N - m)


def classify(braid: ColoredBraid) -> Optional[str]:
    """``unknot``, ``unlink``, ``negative``, ``positive`` or ``None``."""
    if not braid.word:
        return "unknot" if braid.b == 1 else "unlink"
    if all(g < 0 for g in braid.word):
        return "negative"
    if all(g > 0 for g in braid.word):
        return "positive"
    return None


def s_exact(braid: ColoredBraid, m: int, N: int) -> Optional[SInvariantResult]:
    """Exact value when a closed formula applies, else ``None``."""
    k = _check(m, N)
    kind = classify(braid)
    b, l = braid.b, len(braid.word)
    if kind == "unknot":
        v, why = 0, "unknot"
    elif kind == "unlink":
        v, why = k * (b - 1), f"{b}-component unlink"
    elif kind == "negative":
        v, why = k * (b - l - 1), "closed negative braid"
    elif kind == "positive" and braid.is_knot():
        v, why = k * (l - b + 1), "closed positive braid knot, negated mirror value"
    else:
        return None
    return SInvariantResult(m, N, v, v, v, (why,))


def s_bounds(braid: ColoredBraid, m: int, N: int, genus_hint: Optional[int] = None) -> SInvariantResult:
    k = _check(m, N)
    w, b = braid.writhe, braid.b
    lower, upper = None, k * (w + b - 1)
    prov = [f"upper {upper}: writhe bound m(N-m)(w+b-1)"]
    if braid.is_knot():
        lo = k * (w - b + 1)
        lower = lo
        # the writhe bound on the mirror gives the same number through s(K) = -s(K_mir)
        prov.append(f"lower {lo}: representative self-linking bound m(N-m)(SL+1), SL=w-b={w - b}")
        prov.append(f"lower {lo}: writhe bound on the mirror, negated")
        if genus_hint is not None:
            if genus_hint < 0:
                raise ValueError("genus hint must be non-negative")
            g = 2 * k * genus_hint
            prov.append(f"|s| <= {g}: slice genus bound with g*={genus_hint}")
            upper = min(upper, g)
            lower = max(lower, -g)
    elif genus_hint is not None:
        raise DiagramError("the slice genus bound applies to knots only")
    if classify(braid) == "unlink":
        lower = -k * (b - 1) if lower is None else max(lower, -k * (b - 1))
        prov.append(f"lower {-k * (b - 1)}: unlink estimate |s| <= m(N-m)(b-1)")
    if lower is not None and lower > upper:
        raise ValueError(f"bounds are inconsistent: [{lower}, {upper}]")
    value = lower if lower is not None and lower == upper else None
    return SInvariantResult(m, N, value, lower, upper, tuple(prov))


def s_invariant(braid: ColoredBraid, m: int, N: int, genus_hint: Optional[int] = None) -> SInvariantResult:
    """Exact value when known, otherwise the bounds; the two are cross-checked."""
    bounds = s_bounds(braid, m, N, genus_hint)
    exact = s_exact(braid, m, N)
    if exact is None:
        return bounds
    if (bounds.lower is not None and exact.value < bounds.lower) or exact.value > bounds.upper:
        raise ArithmeticError(f"exact value {exact.value} lies outside [{bounds.lower}, {bounds.upper}]")
    return SInvariantResult(m, N, exact.value, exact.value, exact.value,
                            exact.provenance + bounds.provenance)


# -- symmetry relations -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    variant: str
    color: int
    value: int
    expected: int


def symmetry_relations(m: int, N: int, values: Mapping[Tuple[str, int], int],
                       knot: bool = True) -> List[Violation]:
    """Check ``s(K) = s(-K) = -s(Kbar) = -s(Kmir)`` across colors ``m`` and ``N - m``.

    Keys are ``(variant, color)`` with variant in ``K, -K, Kbar, Kmir``.  For
    links (``knot=False``) the mirror entries are not related and are skipped.
    """
    if len(values) < 2:
        raise ValueError("need at least two related values")
    for variant, color in values:
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if color not in (m, N - m):
            raise ValueError(f"color {color} is neither m={m} nor N-m={N - m}")
    used = {key: v for key, v in values.items() if knot or _SIGN[key[0]] > 0}
    normalized = {key: _SIGN[key[0]] * v for key, v in used.items()}
    counts = Counter(normalized.values())
    best = max(counts.values())
    anchor = normalized.get(("K", m))
    consensus = anchor if anchor is not None and counts[anchor] == best else \
        min(v for v, c in counts.items() if c == best)
    out = []
    for (variant, color), v in sorted(used.items()):
        if normalized[(variant, color)] != consensus:
            out.append(Violation(variant, color, v, _SIGN[variant] * consensus))
    return out


def variant_braids(braid: ColoredBraid) -> Dict[str, ColoredBraid]:
    return {"K": braid, "-K": braid.reverse(), "Kmir": braid.mirror(),
            "Kbar": braid.mirror().reverse()}


def symmetry_table(braid: ColoredBraid, m: int, N: int) -> Dict[Tuple[str, int], int]:
    """Exact values for every variant and both colors (every entry must be exact)."""
    out = {}
    for variant, br in variant_braids(braid).items():
        for color in sorted({m, N - m}):
            res = s_exact(br, color, N)
            if res is None:
                raise ValueError(f"no exact value for {variant} at color {color}")
            out[(variant, color)] = res.value
    return out


# -- chirality --------------------------------------------------------------------

def chirality_certificate(braid: ColoredBraid) -> dict:
    if not braid.is_knot():
        raise DiagramError("chirality certificate needs a single-component closure")
    sl = braid.self_linking
    verdict = "chiral" if sl >= 0 else "inconclusive"
    return {"verdict": verdict, "self_linking": sl, "writhe": braid.writhe, "strands": braid.b}


# -- cobordisms ---------------------------------------------------------------------

MOVE_CHI = {"R1": 0, "R2": 0, "R3": 0, "saddle_merge": -1, "saddle_split": -1, "birth": 1, "death": 1}


@dataclass(frozen=True)
class CobordismResult:
    chi: int
    degree_bound: int
    target_components: int
    compatible_count: int
    target_state: Optional[Tuple[int, ...]]
    obstruction: Optional[str]

    def to_json(self) -> dict:
        return {"chi": self.chi, "degree_bound": self.degree_bound,
                "target_components": self.target_components,
                "compatible_count": self.compatible_count,
                "target_state": None if self.target_state is None else
                [[i for i in range(x.bit_length()) if x >> i & 1] for x in self.target_state],
                "obstruction": self.obstruction}


def parse_moves(moves: Iterable) -> List[Tuple]:
    out = []
    for mv in moves:
        if isinstance(mv, str):
            parts = mv.replace(":", " ").replace(",", " ").split()
            mv = (parts[0],) + tuple(int(x) for x in parts[1:])
        mv = tuple(mv)
        if not mv or mv[0] not in MOVE_CHI:
            raise ValueError(f"unknown cobordism move {mv!r}")
        arity = {"saddle_merge": 2, "saddle_split": 1, "death": 1}.get(mv[0], 0)
        if len(mv) != 1 + arity:
            raise ValueError(f"move {mv[0]} takes {arity} component indices")
        out.append(mv)
    return out


def cobordism_constant_state_transport(moves: Iterable, psi: Sequence[int], m: int, N: int) -> CobordismResult:
    """Carry a constant state of the source link through a movie of elementary moves.

    ``psi`` lists the subset bitmask of each source component.  Components are
    indexed ``0..c-1``; births append a component, splits append the new
    piece, merges keep the lower index and deaths delete the index.
    """
    moves = parse_moves(moves)
    psi = tuple(psi)
    if not psi:
        raise ValueError("source link needs at least one component")
    if len(set(psi)) != 1:
        raise ValueError("source state is not constant")
    if any(bin(x).count("1") != m or x >> N for x in psi):
        raise ValueError(f"source subsets must be {m}-subsets of {N} roots")
    parent: List[int] = []
    touches_source: List[bool] = []

    def new_piece(src: bool) -> int:
        parent.append(len(parent))
        touches_source.append(src)
        return len(parent) - 1

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
            touches_source[rx] = touches_source[rx] or touches_source[ry]
        return rx

    comps = [new_piece(True) for _ in psi]
    source_piece = list(comps)
    chi = 0
    for mv in moves:
        name = mv[0]
        chi += MOVE_CHI[name]
        idx = mv[1:]
        for i in idx:
            if not 0 <= i < len(comps):
                raise ValueError(f"move {mv} refers to component {i} of {len(comps)}")
        if name == "birth":
            comps.append(new_piece(False))
        elif name == "death":
            comps.pop(idx[0])
        elif name == "saddle_merge":
            i, j = idx
            if i == j:
                raise ValueError("saddle_merge needs two different components")
            union(comps[i], comps[j])
            comps.pop(max(i, j))
        elif name == "saddle_split":
            comps.append(comps[idx[0]])
    pieces = {find(p) for p in range(len(parent))}
    target_pieces = {find(c) for c in comps}
    closed = [p for p in pieces if not touches_source[p] and p not in target_pieces]
    semi = [p for p in pieces if touches_source[p] != (p in target_pieces)]
    k = m * (N - m)
    # compatible target states: pieces with a source end fix the subset, others are free
    subset_of_piece = {}
    consistent = True
    for i, p in enumerate(source_piece):
        r = find(p)
        if subset_of_piece.setdefault(r, psi[i]) != psi[i]:
            consistent = False
    free = [p for p in target_pieces if p not in subset_of_piece]
    count = comb(N, m) ** len(free) if consistent else 0
    obstruction = None
    if closed:
        obstruction = f"{len(closed)} closed surface component(s)"
    elif semi:
        obstruction = f"{len(semi)} semi-closed surface component(s)"
    target_state = None if obstruction else tuple(psi[0] for _ in comps)
    return CobordismResult(chi, -k * chi, len(comps), count, target_state, obstruction)
