"""First homology of Schützenberger graphs as a Lausch M-module.

The component at an idempotent e is H1 of the graph on the L-class of e,
with one basis cycle per non-tree edge of the breadth-first spanning tree
(the same tree ``cover.KernelGroup`` uses, so abelianized kernel words and
cycle coordinates agree letter for letter).  An element s of M acts by the
graph morphism ``v -> vs``, which carries the component at e to the
component at ``s⁻¹es``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .backend import (FiniteInverseMonoid, Presentation, SchutzGraph, StephenBudget,
                      adjoin_zero, enumerate_monoid, schutzenberger_graph)
from .cover import KernelGroup, basis_multiply, kernel_group, psi, t_multiply, t_inverse, t_of_word
from .intmat import IntegerMatrix


@dataclass
class ChainComplexAt:
    """``C1 -> C0`` for one graph; C1 is indexed by edges ``(x, s)``."""

    e: object
    vertices: list
    edges: list  # (generator index, source vertex)
    boundary: IntegerMatrix
    graph: SchutzGraph = field(repr=False)
    kernel: KernelGroup = field(repr=False)

    @classmethod
    def from_graph(cls, graph: SchutzGraph, e=None, monoid=None) -> "ChainComplexAt":
        if graph.elements is not None:
            name = list(graph.elements)
        else:
            name = list(graph.vertices)
        order = sorted(graph.vertices, key=lambda v: name[v])
        pos = {v: i for i, v in enumerate(order)}
        edges = sorted(graph.edges, key=lambda ed: (name[ed[1]], ed[0]))
        cols = []
        for x, s, t in edges:
            col = [0] * len(order)
            col[pos[t]] += 1
            col[pos[s]] -= 1
            cols.append(col)
        bd = IntegerMatrix.from_columns(cols, len(order))
        return cls(e, [name[v] for v in order], [(x, name[s]) for x, s, _ in edges], bd,
                   graph, KernelGroup(graph, e, monoid))

    @property
    def rank_h1(self) -> int:
        return self.kernel.rank

    def edge_index(self) -> dict:
        return {ed: i for i, ed in enumerate(self.edges)}

    def path_chain(self, w: Sequence[int]) -> list[int]:
        """C1 vector of the path read from the base along w."""
        g = self.graph
        name = list(g.elements) if g.elements is not None else list(g.vertices)
        idx = self.edge_index()
        vec = [0] * len(self.edges)
        v = g.base
        for a in w:
            t = g.step(v, a)
            if a % 2 == 0:
                vec[idx[(a >> 1, name[v])]] += 1
            else:
                vec[idx[(a >> 1, name[t])]] -= 1
            v = t
        return vec

    def h1_basis(self) -> list[list[int]]:
        return [self.path_chain(self.kernel.basis_loop(i)) for i in range(self.kernel.rank)]

    def coordinates(self, cycle: Sequence[int]) -> list[int]:
        """H1 coordinates of a cycle: its entries on the non-tree edges."""
        g = self.graph
        name = list(g.elements) if g.elements is not None else list(g.vertices)
        idx = self.edge_index()
        return [cycle[idx[(x, name[s])]] for x, s, _ in self.kernel.basis]


def chain_complex_at(M: FiniteInverseMonoid, e: int) -> ChainComplexAt:
    M.require_idempotent(e)
    return ChainComplexAt.from_graph(schutzenberger_graph(M, e), e, M)


def h1_basis(M: FiniteInverseMonoid, e: int) -> list[list[int]]:
    return chain_complex_at(M, e).h1_basis()


class LauschModule:
    """Semilattice-indexed family of free abelian groups with an S-action.

    ``act_matrix(e, s)`` returns the matrix of ``a -> a ◁ s`` from the
    component at e to the component at ``target(e, s) = s⁻¹es``.  Structure
    maps are the actions of idempotents below e.
    """

    def __init__(self, M: FiniteInverseMonoid, ranks: dict, act_matrix: Callable,
                 labels: dict | None = None):
        self.M = M
        self.ranks = dict(ranks)
        self.labels = labels or {e: [str(i) for i in range(r)] for e, r in self.ranks.items()}
        self._act = act_matrix
        self._cache: dict = {}

    def target(self, e: int, s: int) -> int:
        M = self.M
        return M.mul[M.mul[M.inv[s]][e]][s]

    def action(self, e: int, s: int) -> IntegerMatrix:
        key = (e, s)
        if key not in self._cache:
            A = self._act(e, s)
            if A.shape != (self.ranks[self.target(e, s)], self.ranks[e]):
                raise ValueError(f"action matrix at {key} has shape {A.shape}")
            self._cache[key] = A
        return self._cache[key]

    def structure_map(self, e: int, f: int) -> IntegerMatrix:
        """φ^e_f for f <= e."""
        if self.M.mul[e][f] != f:
            raise ValueError(f"{self.M.name(f)} is not below {self.M.name(e)}")
        return self.action(e, f)

    # module operations on elements (e, vector)

    def act(self, a, s: int):
        e, vec = a
        return (self.target(e, s), self.action(e, s) @ vec)

    def add(self, a, b):
        (e, u), (f, v) = a, b
        g = self.M.mul[e][f]
        x = self.structure_map(e, g) @ u
        y = self.structure_map(f, g) @ v
        return (g, [p + q for p, q in zip(x, y)])

    def zero(self, e: int):
        return (e, [0] * self.ranks[e])

    def idempotents(self) -> list[int]:
        return list(self.M.idempotents)

    def random_element(self, rng: random.Random, bound: int = 3):
        e = rng.choice(self.idempotents())
        return (e, [rng.randint(-bound, bound) for _ in range(self.ranks[e])])

    def hasse_covers(self) -> list[tuple[int, int]]:
        """Pairs (e, f) with f < e and nothing strictly between."""
        M = self.M
        E = self.idempotents()
        below = {e: [f for f in E if f != e and M.mul[e][f] == f] for e in E}
        out = []
        for e in E:
            for f in below[e]:
                if not any(M.mul[g][f] == f and g != f and g in below[e] for g in below[e]):
                    out.append((e, f))
        return out

    def to_json(self) -> dict:
        M = self.M
        comps = [{"e": M.name(e), "rank": self.ranks[e], "basis": self.labels[e]}
                 for e in self.idempotents()]
        maps = [{"from": M.name(e), "to": M.name(f), "matrix": self.structure_map(e, f).tolist()}
                for e, f in self.hasse_covers()]
        acts = []
        for e in self.idempotents():
            for x, gen in enumerate(M.alphabet.generators):
                s = M.letter_images[2 * x]
                acts.append({"generator": gen, "from": M.name(e), "to": M.name(self.target(e, s)),
                             "matrix": self.action(e, s).tolist()})
        return {"components": comps, "structure_maps": maps, "actions": acts}

    def hasse_table(self) -> str:
        M = self.M
        rows = [("idempotent", "rank", "H1 basis", "maps to")]
        covers = self.hasse_covers()
        for e in self.idempotents():
            down = [f"{M.name(f)} {self.structure_map(e, f).tolist()}" for g, f in covers if g == e]
            rows.append((M.name(e), str(self.ranks[e]), ", ".join(self.labels[e]) or "-",
                         "; ".join(down) or "-"))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines)


def _edge_label(M: FiniteInverseMonoid, x: int, s: int) -> str:
    return f"{M.alphabet.generators[x]}@{M.name(s)}"


def relation_module(M: FiniteInverseMonoid) -> LauschModule:
    complexes = {e: chain_complex_at(M, e) for e in M.idempotents}

    def act(e, s):
        src, dst = complexes[e], complexes[M.mul[M.mul[M.inv[s]][e]][s]]
        idx = dst.edge_index()
        cols = []
        for cyc in src.h1_basis():
            image = [0] * len(dst.edges)
            for (x, v), c in zip(src.edges, cyc):
                if c:
                    image[idx[(x, M.mul[v][s])]] += c
            cols.append(dst.coordinates(image))
        return IntegerMatrix.from_columns(cols, dst.rank_h1)

    labels = {}
    for e, cx in complexes.items():
        labels[e] = [_edge_label(M, x, cx.graph.elements[s]) for x, s, _ in cx.kernel.basis]
    module = LauschModule(M, {e: cx.rank_h1 for e, cx in complexes.items()}, act, labels)
    module.complexes = complexes
    return module


# verification ---------------------------------------------------------------


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < 20:
            self.failures.append(msg)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f": {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name} ({self.checked} checks){extra}"


def verify_lausch_axioms(mod: LauschModule, samples: int = 500,
                         rng: random.Random | None = None) -> Report:
    """Check additivity, associativity, idempotent and zero laws plus coherence of the structure maps."""
    rng = rng or random.Random(0)
    M = mod.M
    rep = Report("module axioms")
    E = mod.idempotents()
    for e in E:
        rep.checked += 1
        if mod.structure_map(e, e) != IntegerMatrix.identity(mod.ranks[e]):
            rep.fail(f"structure map at {M.name(e)} is not the identity")
        for f in E:
            if M.mul[e][f] != f:
                continue
            for g in E:
                if M.mul[f][g] != g:
                    continue
                rep.checked += 1
                if mod.structure_map(f, g) @ mod.structure_map(e, f) != mod.structure_map(e, g):
                    rep.fail(f"structure maps do not compose along {M.name(e)} >= {M.name(f)} >= {M.name(g)}")
    for _ in range(samples):
        a, b = mod.random_element(rng), mod.random_element(rng)
        s, t = rng.randrange(M.order), rng.randrange(M.order)
        e = rng.choice(E)
        rep.checked += 4
        if mod.act(mod.add(a, b), s) != mod.add(mod.act(a, s), mod.act(b, s)):
            rep.fail(f"action not additive for s = {M.name(s)}")
        if mod.act(mod.act(a, s), t) != mod.act(a, M.mul[s][t]):
            rep.fail(f"action not associative for s = {M.name(s)}, t = {M.name(t)}")
        if mod.act(a, e) != mod.add(a, mod.zero(e)):
            rep.fail(f"idempotent action differs from the structure map for e = {M.name(e)}")
        if mod.act(mod.zero(e), s) != mod.zero(M.mul[M.mul[M.inv[s]][e]][s]):
            rep.fail(f"zero not sent to zero for e = {M.name(e)}, s = {M.name(s)}")
    return rep


def verify_conjugation_action(mod: LauschModule, samples: int = 200,
                              rng: random.Random | None = None) -> Report:
    """The graph action agrees with conjugation ``k -> t⁻¹kt`` in the cover.

    For k in K_e and t lying over s, ``t⁻¹kt`` lies in K_{s⁻¹es}; its
    abelianized basis word must equal the action matrix applied to the
    abelianization of k.
    """
    rng = rng or random.Random(0)
    M = mod.M
    rep = Report("conjugation equals graph action")
    kernels = {e: cx.kernel for e, cx in mod.complexes.items()}
    for _ in range(samples):
        e = rng.choice(mod.idempotents())
        K = kernels[e]
        k = basis_multiply((), tuple((rng.randrange(K.rank), rng.choice((1, -1)))
                                     for _ in range(rng.randint(0, 4)))) if K.rank else ()
        s = rng.randrange(M.order)
        t = t_of_word(M.words[s], M)
        conj = t_multiply(t_multiply(t_inverse(t), K.to_element(k)), t)
        f = psi(conj)
        rep.checked += 1
        if f != mod.target(e, s):
            rep.fail(f"conjugate lands over {M.name(f)}")
            continue
        got = kernels[f].abelianize(kernels[f].from_element(conj))
        want = mod.action(e, s) @ K.abelianize(k)
        if got != want:
            rep.fail(f"mismatch at e = {M.name(e)}, s = {M.name(s)}: {got} vs {want}")
    return rep


def verify_module_isomorphism(mod: LauschModule, samples: int = 200,
                              rng: random.Random | None = None) -> Report:
    """Abelianized kernel words match the cycle classes of their closed paths."""
    rng = rng or random.Random(0)
    rep = Report("kernel abelianization equals cycle class")
    for _ in range(samples):
        e = rng.choice(mod.idempotents())
        cx = mod.complexes[e]
        K = cx.kernel
        k = basis_multiply((), tuple((rng.randrange(K.rank), rng.choice((1, -1)))
                                     for _ in range(rng.randint(0, 5)))) if K.rank else ()
        cyc = cx.path_chain(K.kappa_inv(k))
        rep.checked += 1
        if any(cx.boundary @ cyc):
            rep.fail("closed path has nonzero boundary")
        if cx.coordinates(cyc) != K.abelianize(k):
            rep.fail(f"class mismatch at {mod.M.name(e)}")
    return rep


@dataclass
class ZeroAdjunctionReport:
    zero_rank: int
    expected_zero_rank: int
    matching: dict  # idempotent name -> (rank in M, rank in M0)

    @property
    def ok(self) -> bool:
        return (self.zero_rank == self.expected_zero_rank
                and all(a == b for a, b in self.matching.values()))


def adjoin_zero_check(P: Presentation, budget: StephenBudget = StephenBudget(),
                      zero: str = "z") -> ZeroAdjunctionReport:
    M = enumerate_monoid(P, budget)
    P0 = adjoin_zero(P, zero)
    M0 = enumerate_monoid(P0, budget)
    mod, mod0 = relation_module(M), relation_module(M0)
    z = M0.evaluate(P0.alphabet.parse(zero))
    matching = {}
    for e in M.idempotents:
        e0 = M0.evaluate(M.words[e])
        matching[M.name(e)] = (mod.ranks[e], mod0.ranks[e0])
    return ZeroAdjunctionReport(mod0.ranks[z], len(P0.alphabet), matching)
