"""Small-case symbolic model of the graph ring, independent of state evaluation.

The quotient is built from its defining generators (edge relations
``h_k(X_e - Sigma)`` for ``k > N - m_e`` and, at each vertex,
``X~_j - Y~_j`` together with the divided differences ``U_j`` of the
potential) and a Groebner basis per connected component, computed with
sympy.  It is only meant for the circle and theta sized graphs used in
tests, where it confirms that the idempotent identities really hold in the
quotient ring rather than merely at the evaluation points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy.polys.rings import PolyElement, PolyRing

from ..diagrams import DiagramError, KnottedMoyGraph
from ..symkit import RootSet, SymPoly, elementary_values


def _complete_in_elementary(e: Sequence, kmax: int) -> List:
    """``h_0..h_kmax`` of an alphabet with elementary values ``e`` (``e[0] = 1``)."""
    h = [sympy.Integer(1)]
    for k in range(1, kmax + 1):
        acc = sympy.Integer(0)
        for i in range(1, min(k, len(e) - 1) + 1):
            acc += (-1) ** (i - 1) * e[i] * h[k - i]
        h.append(sympy.expand(acc))
    return h


def _power_sums(e: Sequence, kmax: int) -> List:
    """Newton's identities: ``p_1..p_kmax`` from elementary values (``e[0] = 1``)."""
    M = len(e) - 1
    el = lambda i: e[i] if i <= M else 0
    p = [None]
    for k in range(1, kmax + 1):
        acc = (-1) ** (k - 1) * k * el(k)
        for i in range(1, k):
            acc += (-1) ** (i - 1) * el(i) * p[k - i]
        p.append(sympy.expand(acc))
    return p


def potential_coefficients(sigma: RootSet) -> List[Fraction]:
    """Coefficients ``c_k`` of ``P(x) = (N+1) * integral_0^x prod_r (t - r) dt``."""
    N = sigma.N
    # prod (t - r) = sum_i (-1)^(N-i) e_(N-i) t^i
    e = elementary_values(sigma.roots)
    coeffs = [Fraction(0)] * (N + 2)
    for i in range(N + 1):
        coeffs[i + 1] = (N + 1) * (-1) ** (N - i) * e[N - i] / (i + 1)
    return coeffs


class SymbolicGraphRing:
    def __init__(self, gamma: KnottedMoyGraph, sigma: RootSet = None):
        if gamma.crossings:
            raise DiagramError("symbolic ring needs a MOY graph")
        self.gamma = gamma
        self.sigma = sigma or RootSet.default(gamma.N)
        N = self.sigma.N
        self.syms: Dict[int, List] = {}
        for a, c in gamma.arcs:
            self.syms[a] = [sympy.Integer(1)] + [sympy.Symbol(f"x_{a}_{k}") for k in range(1, c + 1)]
        self.gens = [s for a in gamma.arc_ids for s in self.syms[a][1:]]
        self.ring = PolyRing(self.gens, sympy.QQ, "grevlex") if self.gens else PolyRing("_unit", sympy.QQ)
        sig_e = elementary_values(self.sigma.roots)
        relations: Dict[int, List] = {a: [] for a in gamma.arc_ids}
        for a, c in gamma.arcs:
            if c == 0:
                continue
            h = _complete_in_elementary(self.syms[a], N)
            for k in range(N + 1 - c, N + 1):
                rel = sum(sympy.Rational(*_ratio((-1) ** i * sig_e[i])) * h[k - i]
                          for i in range(0, min(k, N) + 1))
                relations[a].append(sympy.expand(rel))
        self._vertex_relations: List[Tuple[List[int], List]] = []
        pc = potential_coefficients(self.sigma)
        for v in gamma.vertices:
            xt = self._union_elementary(v.ins)
            yt = self._union_elementary(v.outs)
            M = len(xt) - 1
            rels = [sympy.expand(xt[j] - yt[j]) for j in range(1, M + 1)]
            rels += self._divided_differences(xt, yt, M, pc)
            self._vertex_relations.append((list(v.ins) + list(v.outs), rels))
        self._groebner = self._component_bases(relations)

    def _union_elementary(self, arcs: Sequence[int]) -> List:
        seq = [sympy.Integer(1)]
        for a in arcs:
            e = self.syms[a]
            new = [sympy.Integer(0)] * (len(seq) + len(e) - 1)
            for i, x in enumerate(seq):
                for j, y in enumerate(e):
                    new[i + j] += x * y
            seq = [sympy.expand(t) for t in new]
        return seq

    @staticmethod
    def _divided_differences(xt, yt, M, pc) -> List:
        A = sympy.symbols(f"A1:{M + 1}")
        B = sympy.symbols(f"B1:{M + 1}")
        T = [sympy.Integer(1)] + list(A)
        p = _power_sums(T, len(pc) - 1)
        P = sum(sympy.Rational(*_ratio(c)) * p[k] for k, c in enumerate(pc) if k and c)
        P = sympy.expand(P)
        out = []
        for j in range(1, M + 1):
            before = {A[i]: B[i] for i in range(j - 1)}
            after = {A[i]: B[i] for i in range(j)}
            num = sympy.expand(P.subs(before, simultaneous=True) - P.subs(after, simultaneous=True))
            q, r = sympy.div(sympy.Poly(num, *A, *B), sympy.Poly(A[j - 1] - B[j - 1], *A, *B))
            if not r.is_zero:
                raise ArithmeticError("divided difference is not exact")
            sub = {A[i]: xt[i + 1] for i in range(M)}
            sub.update({B[i]: yt[i + 1] for i in range(M)})
            out.append(sympy.expand(q.as_expr().subs(sub, simultaneous=True)))
        return out

    def _component_bases(self, edge_relations):
        # connected components of arcs via vertices
        parent = {a: a for a in self.gamma.arc_ids}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for arcs, _ in self._vertex_relations:
            for a in arcs[1:]:
                ra, rb = find(arcs[0]), find(a)
                if ra != rb:
                    parent[rb] = ra
        comps: Dict[int, List[int]] = {}
        for a in self.gamma.arc_ids:
            comps.setdefault(find(a), []).append(a)
        bases = []
        for arcs in comps.values():
            gens = [s for a in arcs for s in self.syms[a][1:]]
            rels = [r for a in arcs for r in edge_relations[a]]
            for varcs, vrels in self._vertex_relations:
                if find(varcs[0]) == find(arcs[0]):
                    rels.extend(vrels)
            rels = [r for r in rels if r != 0]
            if not gens:
                continue
            G = sympy.groebner(rels, *gens, order="grevlex", domain=sympy.QQ)
            bases.extend(G.exprs)
        return [self.ring.from_expr(b) for b in bases]

    def to_expr(self, poly: SymPoly):
        """Translate to an element of the sparse polynomial ring over all generators."""
        slot = {}
        pos = {g: i for i, g in enumerate(self.gens)}
        k = 0
        for name, size in poly.alphabets:
            arc = int(name[1:])
            for s in self.syms[arc][1:size + 1]:
                slot[k] = pos[s]
                k += 1
        terms = {}
        for exp, c in poly.terms.items():
            full = [0] * len(self.gens)
            for i, e in enumerate(exp):
                full[slot[i]] += e
            terms[tuple(full)] = sympy.QQ(c.numerator, c.denominator)
        return self.ring.from_dict(terms)

    def one(self):
        return self.ring.one

    def normal_form(self, f):
        if not isinstance(f, PolyElement):
            f = self.ring.from_expr(sympy.expand(f)) if f != 0 else self.ring.zero
        if not f or not self._groebner:
            return f
        return f.rem(self._groebner)

    def product_expr(self, factors):
        """Normal form of a product of single-edge polynomials, reduced after every factor."""
        out = self.ring.one
        for _, f in factors:
            out = self.normal_form(out * self.normal_form(self.to_expr(f)))
        return out

    def is_zero(self, f) -> bool:
        f = self.to_expr(f) if isinstance(f, SymPoly) else f
        return not self.normal_form(f)


def _ratio(x) -> Tuple[int, int]:
    x = Fraction(x)
    return x.numerator, x.denominator
