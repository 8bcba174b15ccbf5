"""Stephen's procedure: approximate Schützenberger graphs from a presentation.

The left graph of w⁻¹w reads words left to right while M acts on the left,
so it is built as the ordinary (right) Stephen automaton of ``rev(w)`` over
the reversed relations.  Folding identifies vertices with union-find.
"""

from __future__ import annotations

import enum
from typing import Sequence

from ..errors import InconsistentEquality, NotFinishedWithinBudget
from ..fim import Word
from .graph import SchutzGraph, StephenBudget, canonical_graph
from .monoid import FiniteInverseMonoid
from .presentation import Presentation


class Verdict(enum.Enum):
    EQUAL = "Equal"
    UNEQUAL = "Unequal"
    UNKNOWN = "Unknown"


class _FoldingGraph:
    def __init__(self):
        self.parent: list[int] = []
        self.out: list[dict] = []
        self.inn: list[dict] = []
        self.live = 0
        self._pending: list[tuple[int, int]] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        self.live += 1
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def step(self, v: int, a: int) -> int | None:
        table = self.inn if a & 1 else self.out
        t = table[v].get(a >> 1)
        return None if t is None else self.find(t)

    def trace(self, v: int, w: Sequence[int]) -> int | None:
        for a in w:
            v = self.step(v, a)
            if v is None:
                return None
        return v

    def _link(self, s: int, x: int, t: int):
        t0 = self.out[s].get(x)
        if t0 is not None and self.find(t0) != t:
            self._pending.append((t0, t))
        else:
            self.out[s][x] = t
        s0 = self.inn[t].get(x)
        if s0 is not None and self.find(s0) != s:
            self._pending.append((s0, s))
        else:
            self.inn[t][x] = s

    def add_edge(self, s: int, x: int, t: int):
        self._link(self.find(s), x, self.find(t))
        self.fold()

    def merge(self, u: int, v: int):
        self._pending.append((u, v))
        self.fold()

    def fold(self):
        while self._pending:
            u, v = self._pending.pop()
            u, v = self.find(u), self.find(v)
            if u == v:
                continue
            if v < u:
                u, v = v, u
            self.parent[v] = u
            self.live -= 1
            out_v, in_v = self.out[v], self.inn[v]
            self.out[v], self.inn[v] = {}, {}
            for x, t in out_v.items():
                t = self.find(t)
                self._link(u, x, t)
                # keep the target's in-entry consistent with the new source
                self._repoint_in(t, x, u)
            for x, s in in_v.items():
                s = self.find(s)
                self._link(s, x, u)
                self._repoint_out(s, x, u)

    def _repoint_in(self, t, x, u):
        s0 = self.inn[t].get(x)
        if s0 is not None and self.find(s0) == u:
            self.inn[t][x] = u

    def _repoint_out(self, s, x, u):
        t0 = self.out[s].get(x)
        if t0 is not None and self.find(t0) == u:
            self.out[s][x] = u

    def sew(self, v: int, w: Sequence[int], target: int):
        """Add a path reading w from v to target, then fold."""
        if not w:
            self.merge(v, target)
            return
        cur = v
        for i, a in enumerate(w):
            nxt = target if i == len(w) - 1 else self.new_vertex()
            if a & 1:
                self._link(self.find(nxt), a >> 1, self.find(cur))
            else:
                self._link(self.find(cur), a >> 1, self.find(nxt))
            self.fold()
            cur = nxt

    def roots(self) -> list[int]:
        return [v for v in range(len(self.parent)) if self.parent[v] == v]

    def edges(self):
        for v in self.roots():
            for x, t in self.out[v].items():
                yield (x, v, self.find(t))


def stephen_graph(P: Presentation, w: Sequence[int],
                  budget: StephenBudget = StephenBudget()) -> SchutzGraph:
    """Approximate the left Schützenberger graph of the L-class of w⁻¹w.

    The base vertex is w⁻¹w and ``end`` is the vertex of w itself.  The
    result is ``Converged`` when no elementary expansion applies, otherwise
    ``Truncated`` once the expansion or vertex budget is spent.
    """
    rels = [(tuple(reversed(l)), tuple(reversed(r))) for l, r in P.relations]
    g = _FoldingGraph()
    base = g.new_vertex()
    if w:
        g.sew(base, tuple(reversed(w)), g.new_vertex())
    end = g.trace(base, tuple(reversed(w)))
    expansions = 0
    converged = False
    while True:
        applied = False
        for v in g.roots():
            if g.find(v) != v:
                continue
            for l, r in rels:
                for a, b in ((l, r), (r, l)):
                    v = g.find(v)
                    t = g.trace(v, a)
                    if t is None or g.trace(v, b) == t:
                        continue
                    if expansions >= budget.max_expansions or g.live > budget.max_vertices:
                        return _finish(P, g, base, end, False, budget)
                    g.sew(v, b, t)
                    expansions += 1
                    applied = True
        if not applied:
            converged = True
            break
    return _finish(P, g, base, end, converged, budget)


def _finish(P, g, base, end, converged, budget):
    return canonical_graph(P.alphabet, g.find(base), list(g.edges()), converged=converged,
                           budget=budget, end=None if end is None else g.find(end))


def m_equal(P: Presentation, u: Sequence[int], v: Sequence[int],
            budget: StephenBudget = StephenBudget()) -> Verdict:
    """Decide u = v in M by Stephen's criterion; Unknown on any truncation."""
    gu = stephen_graph(P, u, budget)
    gv = stephen_graph(P, v, budget)
    return _compare(gu, u, gv, v)


def _compare(gu, u, gv, v) -> Verdict:
    if not (gu.converged and gv.converged):
        return Verdict.UNKNOWN
    # v >= u  iff  v theta * (u⁻¹u) = u, i.e. acting by v on the base of gu reaches u
    if gu.act(v, gu.base) == gu.end and gv.act(u, gv.base) == gv.end:
        return Verdict.EQUAL
    return Verdict.UNEQUAL


def enumerate_monoid(P: Presentation,
                     budget: StephenBudget = StephenBudget()) -> FiniteInverseMonoid:
    """Enumerate M by breadth-first right multiplication, identifying words via Stephen.

    Raises NotFinishedWithinBudget when some Stephen graph fails to converge
    or the element count exceeds ``budget.max_vertices``.
    """
    alphabet = P.alphabet
    words: list[Word] = []
    graphs: list[SchutzGraph] = []

    def graph_of(w):
        gr = stephen_graph(P, w, budget)
        if not gr.converged:
            raise NotFinishedWithinBudget(
                f"Stephen graph of {alphabet.format(w)!r} did not converge")
        return gr

    def locate(w, gw):
        hits = [i for i in range(len(words))
                if _compare(gw, w, graphs[i], words[i]) is Verdict.EQUAL]
        if len(hits) > 1:
            raise InconsistentEquality(f"{alphabet.format(w)!r} equals {len(hits)} elements")
        return hits[0] if hits else None

    words.append(())
    graphs.append(graph_of(()))
    step: list[list[int]] = []
    i = 0
    while i < len(words):
        row = []
        for a in alphabet.letters:
            w = words[i] + (a,)
            gw = graph_of(w)
            j = locate(w, gw)
            if j is None:
                if len(words) >= budget.max_vertices:
                    raise NotFinishedWithinBudget("too many elements")
                j = len(words)
                words.append(w)
                graphs.append(gw)
            row.append(j)
        step.append(row)
        i += 1
    return FiniteInverseMonoid(alphabet, step, words)
