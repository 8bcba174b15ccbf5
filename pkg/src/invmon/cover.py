"""The arboreal cover T(M, X) of a finite inverse monoid and its kernel groups.

An element of T is stored by its key ``(g, e)``: the free reduction ``g`` of
any representative word and the M-class ``e`` of ``rep⁻¹·rep``.  The
representative kept on the element is a short canonical one, so products
never grow.

Closed paths in a Schützenberger graph are read left to right from the base
vertex, vertex ``v_i = (a_i theta) v_{i-1}``.  The isomorphism ``kappa``
sends the class of a closed path ``w`` to the kernel element ``e·ŵ`` where
``ŵ`` inverts every letter of ``w`` in place.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .backend import FiniteInverseMonoid, SchutzGraph, schutzenberger_graph
from .errors import AlphabetMismatch, BackendMismatch, NotAClosedPath, NotInKernelComponent
from .fim import Word, free_reduce, inverse_word, invert_letters, munn_tree

BasisWord = tuple  # tuple of (basis index, +1 | -1), freely reduced


@dataclass(frozen=True)
class TElement:
    g: Word
    e: int
    M: FiniteInverseMonoid = field(compare=False, repr=False)
    m: int = field(default=-1, compare=False, repr=False)  # image in M, filled in on creation

    def __post_init__(self):
        if self.m < 0:
            object.__setattr__(self, "m", self.M.evaluate(self.rep))

    @property
    def key(self):
        return (self.g, self.e)

    @property
    def rep(self) -> Word:
        """Shortest canonical representative: ``g``, padded by ``ê ê⁻¹`` when needed."""
        M = self.M
        if M.dom(M.evaluate(self.g)) == self.e:
            return self.g
        ew = M.words[self.e]
        return self.g + ew + inverse_word(ew)

    def is_idempotent(self) -> bool:
        return not self.g

    def __mul__(self, other: "TElement") -> "TElement":
        return t_multiply(self, other)

    def inverse(self) -> "TElement":
        return t_inverse(self)

    def psi(self) -> int:
        return psi(self)

    def format(self) -> str:
        a = self.M.alphabet
        return f"({a.format(self.g)} | {self.M.name(self.e)})"

    def to_json(self) -> dict:
        a = self.M.alphabet
        return {"g": a.format(self.g), "e": self.M.name(self.e), "rep": a.format(self.rep)}


def t_of_word(w: Sequence[int], M: FiniteInverseMonoid) -> TElement:
    w = tuple(w)
    if w and max(w) >= 2 * len(M.alphabet):
        raise AlphabetMismatch("word uses letters outside the monoid's alphabet")
    m = M.evaluate(w)
    return TElement(free_reduce(w), M.dom(m), M, m)


def t_identity(M: FiniteInverseMonoid) -> TElement:
    return TElement((), 0, M, 0)


def t_idempotent(M: FiniteInverseMonoid, e: int) -> TElement:
    """The idempotent of T lying over the idempotent e of M."""
    M.require_idempotent(e)
    return TElement((), e, M, e)


def _same(s: TElement, t: TElement):
    if s.M is not t.M:
        raise BackendMismatch("elements come from different monoids")


def _join(a: Word, b: Word) -> Word:
    """Free reduction of a product of two reduced words."""
    i, n = 0, min(len(a), len(b))
    while i < n and a[-1 - i] == b[i] ^ 1:
        i += 1
    return a[:len(a) - i] + b[i:]


def t_multiply(s: TElement, t: TElement) -> TElement:
    # psi is a homomorphism and the key is (sigma, right idempotent), so
    # both parts of the product key come from the factors' keys
    _same(s, t)
    M = s.M
    m = M.mul[s.m][t.m]
    return TElement(_join(s.g, t.g), M.dom(m), M, m)


def t_inverse(t: TElement) -> TElement:
    M = t.M
    m = M.inv[t.m]
    return TElement(inverse_word(t.g), M.dom(m), M, m)


def t_equal(s: TElement, t: TElement) -> bool:
    _same(s, t)
    return s.key == t.key


def psi(t: TElement) -> int:
    return t.m


def t_product(M: FiniteInverseMonoid, *elements: TElement) -> TElement:
    out = t_identity(M)
    for x in elements:
        out = t_multiply(out, x)
    return out


def witness_equal(u: Sequence[int], v: Sequence[int], M: FiniteInverseMonoid) -> bool:
    """Direct test for u, v having the same image in T.

    With ``e0 = u⁻¹u v⁻¹v`` in FIM(X): both ``u⁻¹u`` and ``v⁻¹v`` must equal
    ``e0`` in M, and ``u·e0 = v·e0`` must hold as Munn trees.  The element
    ``u·e0`` is then a common lower bound of u and v whose image in M is
    already forced, which is the defining property of the smallest
    idempotent-separating congruence.
    """
    a = M.alphabet
    iu, iv = inverse_word(u), inverse_word(v)
    e0 = tuple(iu) + tuple(u) + tuple(iv) + tuple(v)
    m0 = M.evaluate(e0)
    if M.evaluate(iu + tuple(u)) != m0 or M.evaluate(iv + tuple(v)) != m0:
        return False
    return munn_tree(tuple(u) + e0, a) == munn_tree(tuple(v) + e0, a)


# kernel groups --------------------------------------------------------------


def _reduce_basis(k) -> BasisWord:
    out: list = []
    for i, s in k:
        if out and out[-1] == (i, -s):
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


def basis_multiply(a: BasisWord, b: BasisWord) -> BasisWord:
    return _reduce_basis(tuple(a) + tuple(b))


def basis_inverse(a: BasisWord) -> BasisWord:
    return tuple((i, -s) for i, s in reversed(a))


class KernelGroup:
    """The free group K_e, based on the non-tree edges of the graph at e.

    Works for exact graphs and for truncated Stephen graphs alike; for the
    latter ``monoid`` is None and only the path-level maps are available.
    """

    def __init__(self, graph: SchutzGraph, e=None, monoid: FiniteInverseMonoid | None = None):
        self.graph = graph
        self.e = e
        self.monoid = monoid
        self.tree_words: dict[int, Word] = {graph.base: ()}
        tree_edges = set()
        queue = deque([graph.base])
        while queue:
            v = queue.popleft()
            for a in graph.alphabet.letters:
                t = graph.step(v, a)
                if t is None or t in self.tree_words:
                    continue
                self.tree_words[t] = self.tree_words[v] + (a,)
                tree_edges.add((a >> 1, v, t) if a % 2 == 0 else (a >> 1, t, v))
                queue.append(t)
        self.basis = [ed for ed in graph.edges if ed not in tree_edges]
        self.index = {ed: i for i, ed in enumerate(self.basis)}
        self.edge_ids = {ed: i for i, ed in enumerate(graph.edges)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_loop(self, i: int) -> Word:
        """Closed path at the base running once along non-tree edge i."""
        x, s, t = self.basis[i]
        return self.tree_words[s] + (2 * x,) + inverse_word(self.tree_words[t])

    def kappa(self, w: Sequence[int]) -> BasisWord:
        g = self.graph
        v = g.base
        out = []
        for a in w:
            t = g.step(v, a)
            if t is None:
                raise NotAClosedPath(f"{g.alphabet.format(w)!r} leaves the graph")
            ed = (a >> 1, v, t) if a % 2 == 0 else (a >> 1, t, v)
            i = self.index.get(ed)
            if i is not None:
                out.append((i, 1 if a % 2 == 0 else -1))
            v = t
        if v != g.base:
            raise NotAClosedPath(f"{g.alphabet.format(w)!r} does not return to the base")
        return _reduce_basis(out)

    def kappa_inv(self, k: BasisWord) -> Word:
        out: Word = ()
        for i, s in k:
            loop = self.basis_loop(i)
            out += loop if s > 0 else inverse_word(loop)
        return out

    def is_closed(self, w: Sequence[int]) -> bool:
        return self.graph.trace(self.graph.base, w) == self.graph.base

    # passage to the cover (exact backend only)

    def _require_monoid(self):
        if self.monoid is None or self.e is None:
            raise BackendMismatch("kernel group was built without a finite monoid")

    def element_of_path(self, w: Sequence[int]) -> TElement:
        """The kernel element ``ẽ·ŵ`` named by a closed path w."""
        self._require_monoid()
        if not self.is_closed(w):
            raise NotAClosedPath(self.graph.alphabet.format(w))
        return t_multiply(t_idempotent(self.monoid, self.e),
                          t_of_word(invert_letters(w), self.monoid))

    def to_element(self, k: BasisWord) -> TElement:
        return self.element_of_path(self.kappa_inv(k))

    def from_element(self, t: TElement) -> BasisWord:
        """Basis word of a kernel element lying over e."""
        self._require_monoid()
        if psi(t) != self.e:
            raise NotInKernelComponent(f"{t.format()} does not lie over {self.monoid.name(self.e)}")
        return self.kappa(invert_letters(t.g))

    def abelianize(self, k: BasisWord) -> list[int]:
        vec = [0] * self.rank
        for i, s in k:
            vec[i] += s
        return vec

    def to_json(self) -> dict:
        name = self.monoid.name(self.e) if self.monoid is not None and self.e is not None else self.e
        return {"e": name, "rank": self.rank, "basis": [self.edge_ids[ed] for ed in self.basis]}


def kernel_group(M: FiniteInverseMonoid, e: int) -> KernelGroup:
    M.require_idempotent(e)
    return KernelGroup(schutzenberger_graph(M, e), e, M)
