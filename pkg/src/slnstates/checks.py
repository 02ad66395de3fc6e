"""Named property suites with fixed, overridable seeds.

Each suite returns a :class:`SuiteReport` listing every property with the
number of cases checked and the first counterexample found, if any.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import fixtures
from .circlering import CircleRing, change_of_basis_matrix, complement_permutation_matrix, zeta_pairing_matrix
from .diagrams import braid_closure_to_knotted, circle, theta
from .interp import PartialDegreeError, check_degree_bound, interpolation_basis, random_bounded_poly, \
    reconstruct_check
from .invariants import (chirality_certificate, cobordism_constant_state_transport, s_bounds, s_exact,
                         symmetry_relations, symmetry_table, uniform_braid)
from .statecalc.core import (admissibility_via_evaluation, enumerate_pre_states, enumerate_states, is_state,
                             relabel_sigma, resolve_state, shift_s, shift_s_prime)
from .statecalc.ring import StateRing
from .statecalc.symbolic import SymbolicGraphRing
from .statecalc import transport as tr
from .symkit import RootSet, SymPoly, complete_difference, frac

SUITES = ("interpolation", "circle-ring", "idempotents", "moves", "bounds")
DEFAULT_SEEDS = {"interpolation": 4101, "circle-ring": 0, "idempotents": 4110, "moves": 1707, "bounds": 0}
AFFINE_PARAMS = tuple((frac(a), frac(b)) for a in (1, -1, 2, -2, Fraction(1, 2)) for b in (0, 1, -1))


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None
    notes: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    properties: List[PropertyResult]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "properties": [p.to_json() for p in self.properties]}


def check_all(name: str, cases: Iterable, predicate: Callable[[object], bool],
              describe: Callable[[object], str] = repr) -> PropertyResult:
    n = 0
    for case in cases:
        n += 1
        if not predicate(case):
            return PropertyResult(name, False, n, describe(case))
    return PropertyResult(name, True, n)


# -- interpolation ---------------------------------------------------------------------

def vanishing_cases(max_N: int = 6):
    for N in range(1, max_N + 1):
        sigma = list(range(N))
        for m in range(N + 1):
            for omega in combinations(sigma, m):
                for k in range(N - m + 1, N - m + 6):
                    yield k, omega, tuple(sigma)


def round_trip_cases(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        N = rng.randint(2, 6)
        m = rng.randint(1, N)
        sigma = RootSet(rng.sample(range(-6, 7), N)) if rng.random() < 0.5 else RootSet.default(N)
        yield random_bounded_poly(rng, m, N), sigma


def _raises_degree_error(case) -> bool:
    m, N = case
    x1 = SymPoly.single(m)[1]
    try:
        check_degree_bound(x1 ** (N - m + 1), RootSet.default(N))
    except PartialDegreeError:
        return True
    return False


def _basis_is_delta(case) -> bool:
    m, N = case
    sigma = RootSet.default(N)
    basis = interpolation_basis(m, sigma)
    return all(b.value(sigma.subset(w)) == (b.omega == w) for b in basis for w in sigma.subsets(m))


def suite_interpolation(seed: int, count: int = 200) -> List[PropertyResult]:
    return [
        check_all("vanishing law h_k(Omega - Sigma) = 0 for k > N - m", vanishing_cases(),
                  lambda c: complete_difference(*c) == 0),
        check_all("interpolation basis is a delta family", ((m, N) for N in range(2, 6) for m in range(1, N + 1)),
                  _basis_is_delta),
        check_all(f"round trip of {count} random bounded polynomials", round_trip_cases(count, seed),
                  lambda c: reconstruct_check(*c), lambda c: f"{c[0]} over {c[1]}"),
        check_all("degree bound violations are rejected", ((m, N) for N in range(2, 6) for m in range(1, N + 1)),
                  _raises_degree_error),
    ]


# -- circle ring -----------------------------------------------------------------------

def suite_circle_ring(seed: int) -> List[PropertyResult]:
    def dims(case):
        m, N = case
        return enumerate_states(circle(m, N)).count == comb(N, m) == CircleRing.create(N, m).dimension

    def zeta_ok(case):
        m, N = case
        ring = CircleRing.create(N, m)
        return zeta_pairing_matrix(ring) == complement_permutation_matrix(ring)

    def bases(case):
        m, N = case
        ring = CircleRing.create(N, m)
        change_of_basis_matrix(ring, False)
        change_of_basis_matrix(ring, True)
        return True

    small = [(m, N) for N in range(2, 6) for m in range(1, N + 1)]
    return [
        check_all("circle state count and ring dimension equal C(N,m)",
                  ((m, N) for N in range(2, 7) for m in range(1, N + 1)), dims),
        check_all("zeta pairing is the complement permutation", small, zeta_ok),
        check_all("both Schur families are bases", small, bases),
    ]


# -- idempotents ---------------------------------------------------------------------

def evaluation_identities(gamma, expand_limit: int = 12) -> Optional[str]:
    """First failing idempotent identity in evaluation coordinates, else ``None``.

    Interpolation products are evaluated factor by factor; for rings of
    dimension at most ``expand_limit`` the fully expanded product is also
    reduced and compared.
    """
    ring = StateRing(gamma)
    qs = [ring.Q(s) for s in ring.states]
    for s, q in zip(ring.states, qs):
        if q * q != q:
            return f"Q^2 != Q at {s.as_dict()}"
        if ring.evaluate_idempotent(s) != q or ring.reduce_product(ring.q_factors(s)) != q:
            return f"interpolation product differs from the indicator at {s.as_dict()}"
        if ring.dimension <= expand_limit and ring.reduce(ring.q_poly(s)) != q:
            return f"expanded interpolation product differs from the indicator at {s.as_dict()}"
    for (s, q), (t, r) in combinations(zip(ring.states, qs), 2):
        if not (q * r).is_zero():
            return f"Q Q' != 0 for {s.as_dict()}, {t.as_dict()}"
    total = ring.zero()
    for q in qs:
        total = total + q
    if total != ring.one():
        return "sum of idempotents is not 1"
    states = set(ring.states)
    for psi in enumerate_pre_states(gamma):
        if psi not in states and not ring.evaluate_idempotent(psi).is_zero():
            return f"non-admissible pre-state {psi.as_dict()} has nonzero idempotent"
    return None


def symbolic_identities(gamma, pair_limit: Optional[int] = None) -> Optional[str]:
    """The same identities checked by normal forms in the quotient ring."""
    ring = StateRing(gamma)
    sym = SymbolicGraphRing(gamma, ring.sigma)
    states = set(ring.states)
    nf = {}
    prefix = {(): sym.one()}

    def product(factors):
        # normal forms of shared prefixes are reused across the lexicographic sweep
        key = ()
        out = prefix[()]
        for arc, f in factors:
            key += ((arc, f),)
            if key not in prefix:
                prefix[key] = sym.normal_form(out * sym.normal_form(sym.to_expr(f)))
            out = prefix[key]
        return out

    for psi in enumerate_pre_states(gamma):
        expr = product(ring.q_factors(psi))
        zero = sym.is_zero(expr)
        if zero == (psi in states):
            return f"pre-state {psi.as_dict()} reduces {'to zero' if zero else 'to nonzero'}"
        if psi in states:
            nf[psi] = expr
    total = sum(nf.values(), sym.ring.zero) - sym.one()
    if not sym.is_zero(total):
        return "sum of idempotents minus 1 is nonzero"
    for psi, q in nf.items():
        if not sym.is_zero(q * q - q):
            return f"Q^2 - Q nonzero at {psi.as_dict()}"
    pairs = list(combinations(sorted(nf), 2))
    if pair_limit is not None:
        pairs = pairs[:pair_limit]
    for a, b in pairs:
        if not sym.is_zero(nf[a] * nf[b]):
            return f"Q Q' nonzero for {a.as_dict()}, {b.as_dict()}"
    return None


def symbolic_graphs() -> List[Tuple[str, object]]:
    from .diagrams import disjoint_union
    out = [(f"circle-{m}-N{N}", circle(m, N)) for N in range(2, 5) for m in range(1, N)]
    out += [(f"theta-1-1-N{N}", theta(1, 1, N)) for N in range(2, 5)]
    out += [("theta-1-2-N4", theta(1, 2, 4)),
            ("two-theta-N3", disjoint_union(theta(1, 1, 3), theta(1, 1, 3)))]
    return out


def _homomorphism_cases(seed: int, count: int = 20):
    rng = random.Random(seed)
    graphs = fixtures.ring_graphs(3)
    for _ in range(count):
        name, g = graphs[rng.randrange(len(graphs))]
        yield name, g, rng.randrange(1 << 30)


def _reduce_is_homomorphism(case) -> bool:
    _, g, s = case
    rng = random.Random(s)
    ring = StateRing(g)

    def rand_poly():
        out = SymPoly.constant(ring.alphabets, rng.randint(-3, 3))
        for _ in range(3):
            name, size = ring.alphabets[rng.randrange(len(ring.alphabets))]
            out = out + SymPoly.generator(ring.alphabets, name, rng.randint(1, size)) * rng.randint(-3, 3)
        return out

    f, g2 = rand_poly(), rand_poly()
    return ring.reduce(f * g2) == ring.reduce(f) * ring.reduce(g2) and \
        ring.reduce(f + g2) == ring.reduce(f) + ring.reduce(g2)


def suite_idempotents(seed: int) -> List[PropertyResult]:
    graphs = fixtures.ring_graphs(4)
    out = []
    for label, fn, cases in (("evaluation coordinates", evaluation_identities, graphs),
                             ("symbolic reducer", symbolic_identities, symbolic_graphs())):
        failure = None
        for name, g in cases:
            msg = fn(g)
            if msg:
                failure = f"{name}: {msg}"
                break
        out.append(PropertyResult(f"idempotent identities ({label})", failure is None, len(cases), failure))
    out.append(check_all("reduce is a ring homomorphism", _homomorphism_cases(seed), _reduce_is_homomorphism,
                         lambda c: c[0]))
    return out


# -- moves --------------------------------------------------------------------------

def histogram_shift(a: Dict[int, int], b: Dict[int, int]) -> Optional[int]:
    """Integer ``t`` with ``b[h + t] = a[h]`` for all ``h``, or ``None``."""
    if sum(a.values()) != sum(b.values()):
        return None
    if not a:
        return 0
    t = min(b) - min(a)
    return t if {h + t: c for h, c in a.items()} == b else None


def random_link_cases(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        yield fixtures.random_braid(rng, max_b=4, max_len=10, max_N=6)


def _pair_ok(p) -> bool:
    a, b = enumerate_states(p.before), enumerate_states(p.after)
    return a.count == b.count and a.histogram == b.histogram


def _admissibility_sweep(case) -> bool:
    _, g = case
    return all(admissibility_via_evaluation(g, psi) == is_state(g, psi) for psi in enumerate_pre_states(g))


def _relabel_ok(case) -> bool:
    _, g = case
    base = enumerate_states(g)
    for a, b in AFFINE_PARAMS:
        sigma = base.sigma.affine(a, b)
        moved = relabel_sigma(base, a, b)
        direct = enumerate_states(g, sigma)
        if moved.count != direct.count or moved.histogram != direct.histogram:
            return False
        if moved.value_sets() != direct.value_sets():
            return False
        # the relabeled states stay admissible for the evaluation criterion on the new roots
        for psi in direct.states[:3]:
            gamma, phi = resolve_state(g, psi) if g.crossings else (g, psi)
            if not admissibility_via_evaluation(gamma, phi, sigma):
                return False
    return True


def transport_cases():
    """``(label, result, expected count, oracle count or None)``."""
    out = []
    for N in (3, 4):
        for i, j in ((1, 1), (1, 2)):
            if i + j > N:
                continue
            g = theta(i, j, N)
            for psi in enumerate_states(g).states:
                res = tr.edge_split(g, psi, 2, i)
                oracle = len(tr.compatible_states(g, psi, res.target))
                out.append((f"edge_split theta({i},{j}) N={N}", res, comb(i + j, i), oracle))
        for m in range(1, N):
            c = circle(m, N)
            psi = enumerate_states(c).states[0]
            res = tr.circle_create(c, psi, m)
            out.append((f"circle_create m={m} N={N}", res, comb(N, m),
                        len(tr.compatible_states(c, psi, res.target))))
    for m, N in ((1, 3), (2, 4)):
        g = fixtures.saddle_fixture(m, N)
        for psi in enumerate_states(g).states:
            res = tr.saddle(g, psi, 0, 2)
            expect = int(psi[0] == psi[2])
            out.append((f"saddle m={m} N={N}", res, expect, None))
    for a, b, N in ((1, 1, 3), (1, 1, 4), (1, 2, 4)):
        g, site = fixtures.chi0_fixture(a, b, a, N, vanishing=True)
        for psi in enumerate_states(g).states:
            res = tr.chi0(g, psi, **site)
            out.append((f"chi0 vanishing a={a} b={b} N={N}", res, 0, None))
    for a, b, c, d, N in ((1, 1, 1, 1, 3), (1, 2, 2, 1, 4), (1, 1, 1, 1, 4)):
        g, site = fixtures.chi1_fixture(a, b, c, d, N)
        for psi in enumerate_states(g).states:
            res = tr.chi1(g, psi, **site)
            expect = 0 if psi[site["e1"]] & psi[site["e4"]] else 1
            out.append((f"chi1 a={a} b={b} c={c} d={d} N={N}", res, expect, None))
    return out


def suite_moves(seed: int, braid_count: int = 500) -> List[PropertyResult]:
    pairs = fixtures.reidemeister_pairs()
    results = [check_all("Reidemeister pairs keep count and histogram", pairs, _pair_ok, lambda p: p.name)]
    shifts = {}
    ok = True
    for (i, j, k, N) in ((1, 1, 1, 3), (1, 1, 2, 3), (1, 2, 1, 4), (2, 1, 1, 4)):
        before, after = fixtures.fork_slide_pair(i, j, k, N)
        t = histogram_shift(enumerate_states(before).histogram, enumerate_states(after).histogram)
        shifts[f"{i},{j},{k},N={N}"] = t
        ok = ok and t is not None
    results.append(PropertyResult("fork slide keeps the histogram up to a global shift", ok, len(shifts),
                                  None if ok else repr(shifts), {"observed_shift": shifts}))
    results.append(check_all(f"s = s' on {braid_count} random closures", random_link_cases(braid_count, seed),
                             lambda br: shift_s(braid_closure_to_knotted(br)) ==
                             shift_s_prime(braid_closure_to_knotted(br)), lambda br: br.to_text()))
    results.append(check_all("knot states have h = 0", fixtures.knot_fixtures(),
                             lambda c: set(enumerate_states(braid_closure_to_knotted(c[1])).h) <= {0},
                             lambda c: c[0]))
    hopf = braid_closure_to_knotted(uniform_braid(2, (1, 1), 1, 2))
    results.append(check_all("Hopf link histogram {-2: 2, 0: 2}", [hopf],
                             lambda d: enumerate_states(d).histogram == {-2: 2, 0: 2}))
    results.append(check_all("admissibility by evaluation matches the set criterion",
                             fixtures.admissibility_graphs(), _admissibility_sweep, lambda c: c[0]))
    results.append(check_all("root relabeling keeps counts and histograms", fixtures.relabel_fixtures(),
                             _relabel_ok, lambda c: c[0]))
    results.append(check_all("transport cardinalities", transport_cases(),
                             lambda c: c[1].count == c[2] and (c[3] is None or c[3] == c[2]),
                             lambda c: f"{c[0]}: got {c[1].count}, expected {c[2]}, oracle {c[3]}"))
    return results


# -- bounds --------------------------------------------------------------------------

def exact_value_cases():
    """``(label, braid, m, N, expected)``."""
    out = []
    for N in range(2, 6):
        for m in range(1, N):
            k = m * (N - m)
            out.append((f"unknot m={m} N={N}", uniform_braid(1, (), m, N), m, N, 0))
            out.append((f"T(2,5) negative m={m} N={N}", uniform_braid(2, (-1,) * 5, m, N), m, N, -4 * k))
            for b in (2, 3, 4):
                out.append((f"{b}-unlink m={m} N={N}", uniform_braid(b, (), m, N), m, N, k * (b - 1)))
    out.append(("left trefoil m=1 N=2", uniform_braid(2, (-1, -1, -1), 1, 2), 1, 2, -2))
    out.append(("right trefoil m=1 N=3", uniform_braid(2, (1, 1, 1), 1, 3), 1, 3, 4))
    out.append(("3-unlink m=2 N=4", uniform_braid(3, (), 2, 4), 2, 4, 8))
    return out


def negative_braid_cases(max_N: int = 5):
    for name, (b, word) in fixtures.NEGATIVE_TORUS.items():
        for N in range(2, max_N + 1):
            for m in range(1, N):
                yield name, uniform_braid(b, word, m, N), m, N


def _bound_consistent(case) -> bool:
    _, br, m, N = case
    ex = s_exact(br, m, N).value
    bd = s_bounds(br, m, N)
    two_g = len(br.word) + 1 - br.b
    return bd.lower <= ex <= bd.upper and abs(ex) * 2 == 2 * m * (N - m) * two_g and ex % (m * (N - m) or 1) == 0


def symmetry_cases(max_N: int = 5):
    words = {"left trefoil": (2, (-1,) * 3, True), "right trefoil": (2, (1,) * 3, True),
             "T(2,5)-": (2, (-1,) * 5, True), "T(2,5)+": (2, (1,) * 5, True),
             "2-unlink": (2, (), False), "3-unlink": (3, (), False), "unknot": (1, (), True)}
    for name, (b, word, knot) in words.items():
        for N in range(2, max_N + 1):
            for m in range(1, N):
                yield name, uniform_braid(b, word, m, N), m, N, knot


def suite_bounds(seed: int) -> List[PropertyResult]:
    return [
        check_all("exact values", exact_value_cases(), lambda c: s_exact(c[1], c[2], c[3]).value == c[4],
                  lambda c: c[0]),
        check_all("negative braids: exact value inside the bounds and |s| = 2m(N-m)g*",
                  negative_braid_cases(), _bound_consistent, lambda c: f"{c[0]} m={c[2]} N={c[3]}"),
        check_all("symmetry relations have no violations", symmetry_cases(),
                  lambda c: not symmetry_relations(c[2], c[3], symmetry_table(c[1], c[2], c[3]), knot=c[4]),
                  lambda c: f"{c[0]} m={c[2]} N={c[3]}"),
        check_all("chirality certificates",
                  [((2, (1, 1, 1)), "chiral"), ((2, (-1, -1, -1)), "inconclusive"),
                   ((3, (1, -2, 1, -2)), "inconclusive")],
                  lambda c: chirality_certificate(uniform_braid(*c[0], 1, 2))["verdict"] == c[1]),
        check_all("punctured disc from the unknot to the b-unlink has chi = 1 - b", range(1, 6),
                  lambda b: cobordism_constant_state_transport(["saddle_split 0"] * (b - 1), [1], 1, 3).chi == 1 - b),
    ]


def run_suite(name: str, seed: Optional[int] = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    seed = DEFAULT_SEEDS[name] if seed is None else seed
    fn = {"interpolation": suite_interpolation, "circle-ring": suite_circle_ring,
          "idempotents": suite_idempotents, "moves": suite_moves, "bounds": suite_bounds}[name]
    return SuiteReport(name, seed, fn(seed))
