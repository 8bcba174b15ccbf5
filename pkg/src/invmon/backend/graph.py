"""Left Schützenberger graphs, exact or truncated.

A graph is an automaton over A reading words left to right: an x-edge
``s -> (x theta) s`` is followed forwards by the letter x and backwards by
x⁻¹.  Hence tracing a word ``w`` from ``v`` lands at ``rev(w) theta * v``,
and ``act(u, v)`` (which traces ``rev(u)``) lands at ``u theta * v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import NotIdempotent
from ..fim import Alphabet, Word
from .monoid import FiniteInverseMonoid


@dataclass(frozen=True)
class StephenBudget:
    max_expansions: int = 500
    max_vertices: int = 5000

    def __post_init__(self):
        if self.max_expansions <= 0 or self.max_vertices <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True, eq=False)
class SchutzGraph:
    alphabet: Alphabet
    base: int
    num_vertices: int
    edges: tuple  # (generator index, source, target), sorted
    converged: bool = True
    budget: StephenBudget | None = None
    labels: tuple = ()
    end: int | None = None
    elements: tuple | None = None  # M element of each vertex (exact backend)
    _out: dict = field(init=False, repr=False)
    _in: dict = field(init=False, repr=False)

    def __post_init__(self):
        out, inn = {}, {}
        for x, s, t in self.edges:
            if (s, x) in out or (t, x) in inn:
                raise ValueError("graph is not folded")
            out[(s, x)] = t
            inn[(t, x)] = s
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inn)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @property
    def status(self) -> str:
        if self.converged:
            return "Converged"
        return f"Truncated({self.budget.max_expansions})" if self.budget else "Truncated"

    @property
    def rank(self) -> int:
        """Rank of the first homology of this (connected) graph."""
        return len(self.edges) - self.num_vertices + 1

    def step(self, v: int, a: int) -> int | None:
        if a & 1:
            return self._in.get((v, a >> 1))
        return self._out.get((v, a >> 1))

    def trace(self, v: int, w: Sequence[int]) -> int | None:
        for a in w:
            v = self.step(v, a)
            if v is None:
                return None
        return v

    def act(self, u: Sequence[int], v: int) -> int | None:
        return self.trace(v, tuple(reversed(u)))

    def is_deterministic(self) -> bool:
        outs = [(s, x) for x, s, _ in self.edges]
        ins = [(t, x) for x, _, t in self.edges]
        return len(set(outs)) == len(outs) and len(set(ins)) == len(ins)

    def is_tree(self) -> bool:
        return len(self.edges) == self.num_vertices - 1 and self.is_connected()

    def is_simple_path(self) -> bool:
        if not self.is_tree():
            return False
        deg = [0] * self.num_vertices
        for _, s, t in self.edges:
            deg[s] += 1
            deg[t] += 1
        return all(d <= 2 for d in deg)

    def is_connected(self) -> bool:
        return len(self.bfs_words()) == self.num_vertices

    def bfs_words(self) -> dict:
        """Shortlex-minimal word read from the base to each vertex."""
        seen = {self.base: ()}
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            for a in self.alphabet.letters:
                t = self.step(v, a)
                if t is not None and t not in seen:
                    seen[t] = seen[v] + (a,)
                    queue.append(t)
        return seen

    def embedding_into(self, other: "SchutzGraph") -> dict | None:
        """Label-preserving map sending base to base, if one exists."""
        phi = {self.base: other.base}
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            for a in self.alphabet.letters:
                t = self.step(v, a)
                if t is None:
                    continue
                t2 = other.step(phi[v], a)
                if t2 is None:
                    return None
                if t in phi:
                    if phi[t] != t2:
                        return None
                else:
                    phi[t] = t2
                    queue.append(t)
        return phi

    def isomorphic_to(self, other: "SchutzGraph") -> bool:
        if self.num_vertices != other.num_vertices or len(self.edges) != len(other.edges):
            return False
        phi = self.embedding_into(other)
        return phi is not None and len(set(phi.values())) == self.num_vertices

    def to_dot(self, name: str = "G") -> str:
        gens = self.alphabet.generators
        lines = [f'digraph "{name}" {{']
        if not self.converged:
            lines.append(f'  label="{self.status}";')
        for v in self.vertices:
            shape = "doublecircle" if v == self.base else "circle"
            label = self.labels[v] if self.labels else str(v)
            lines.append(f'  v{v} [label="{label}", shape={shape}];')
        for x, s, t in self.edges:
            lines.append(f'  v{s} -> v{t} [label="{gens[x]}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        gens = self.alphabet.generators
        return {
            "base": self.base,
            "vertices": [self.labels[v] if self.labels else str(v) for v in self.vertices],
            "edges": [[s, gens[x], t] for x, s, t in self.edges],
            "status": self.status,
        }


def canonical_graph(alphabet: Alphabet, base, edges, *, converged=True, budget=None,
                    end=None, elements=None, label_fn=None) -> SchutzGraph:
    """Renumber vertices by BFS from ``base`` in alphabet order.

    ``edges`` is an iterable of ``(x, s, t)`` over arbitrary hashable vertex
    ids; vertices unreachable from the base are dropped.
    """
    out, inn = {}, {}
    for x, s, t in edges:
        out[(s, x)] = t
        inn[(t, x)] = s
    num = {base: 0}
    words = {base: ()}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for a in alphabet.letters:
            t = inn.get((v, a >> 1)) if a & 1 else out.get((v, a >> 1))
            if t is not None and t not in num:
                num[t] = len(num)
                words[t] = words[v] + (a,)
                queue.append(t)
    new_edges = sorted((x, num[s], num[t]) for (s, x), t in out.items() if s in num)
    order = sorted(num, key=num.get)
    if label_fn is None:
        # vertex v is reached by reading w from the base, so v = rev(w) * base
        labels = tuple(alphabet.format(tuple(reversed(words[v]))) for v in order)
    else:
        labels = tuple(label_fn(v) for v in order)
    elems = tuple(elements[v] for v in order) if elements is not None else None
    return SchutzGraph(alphabet, 0, len(num), tuple(new_edges), converged, budget,
                       labels, None if end is None else num.get(end), elems)


def schutzenberger_graph(M: FiniteInverseMonoid, e: int) -> SchutzGraph:
    """Exact left Schützenberger graph of the L-class of the idempotent e."""
    if not M.is_idempotent(e):
        raise NotIdempotent(f"{M.name(e)} is not idempotent")
    edges = []
    for s in M.l_class(e):
        rs = M.ran(s)
        for x in range(len(M.alphabet)):
            xi = M.letter_images[2 * x]
            xx = M.dom(xi)
            if M.mul[xx][rs] == rs:  # (x⁻¹x) >= ss⁻¹
                edges.append((x, s, M.mul[xi][s]))
    return canonical_graph(M.alphabet, e, edges, elements={s: s for s in M.l_class(e)},
                           label_fn=M.name)
