"""Words, free reduction and Munn-tree arithmetic in the free inverse monoid.

Letters are small integers: generator ``i`` is letter ``2*i`` and its inverse
is ``2*i + 1``, so ``a ^ 1`` inverts a letter and integer order is the
alphabet order ``x < x' < y < y' < ...`` used for every tie-break.
A word is a tuple of letters.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, MalformedToken, ParseError, UnknownGenerator

Word = tuple

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Alphabet:
    """An ordered set of generator names X together with A = X ⊔ X⁻¹."""

    def __init__(self, generators: Iterable[str]):
        gens = tuple(generators)
        for g in gens:
            if not _NAME.match(g):
                raise ParseError(f"bad generator name {g!r}")
        if len(set(gens)) != len(gens):
            raise ParseError(f"duplicate generator in {gens}")
        self.generators = gens
        self._index = {g: i for i, g in enumerate(gens)}

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"Alphabet({list(self.generators)!r})"

    @property
    def letters(self) -> range:
        return range(2 * len(self.generators))

    def letter(self, name: str, inverse: bool = False) -> int:
        try:
            return 2 * self._index[name] + int(inverse)
        except KeyError:
            raise UnknownGenerator(name) from None

    def gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def letter_name(self, a: int) -> str:
        name = self.generators[a >> 1]
        return name + "'" if a & 1 else name

    def parse(self, text: str) -> Word:
        tokens = text.split()
        if tokens == ["1"]:
            return ()
        out = []
        for tok in tokens:
            if tok == "1":
                raise MalformedToken("'1' is only allowed as the sole token")
            name, inv = tok, False
            if tok.endswith("'"):
                name, inv = tok[:-1], True
            if not _NAME.match(name):
                raise MalformedToken(tok)
            out.append(self.letter(name, inv))
        return tuple(out)

    def format(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        return " ".join(self.letter_name(a) for a in w)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    return alphabet.parse(text)


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(a ^ 1 for a in reversed(w))


def invert_letters(w: Sequence[int]) -> Word:
    """Replace each letter by its inverse, keeping the order."""
    return tuple(a ^ 1 for a in w)


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for a in w:
        if out and out[-1] == a ^ 1:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def shortlex_key(w: Sequence[int]):
    return (len(w), tuple(w))


@dataclass(frozen=True)
class MunnTree:
    """Birooted folded tree, stored as a prefix-closed set of reduced words.

    The start root is the empty word; ``end`` is the free reduction of any
    word representing the element.  Equality is structural.
    """

    alphabet: Alphabet = field(compare=False)
    vertices: frozenset
    end: Word

    def __post_init__(self):
        if () not in self.vertices or self.end not in self.vertices:
            raise ValueError("roots must be vertices")

    @property
    def size(self) -> int:
        return len(self.vertices)

    def is_idempotent(self) -> bool:
        return self.end == ()

    def __mul__(self, other: "MunnTree") -> "MunnTree":
        return fim_multiply(self, other)

    def inverse(self) -> "MunnTree":
        return fim_inverse(self)

    def edges(self):
        """Edges ``(u, i, v)``: an edge labelled by generator ``i`` from u to v."""
        out = []
        for v in self.vertices:
            if v:
                a = v[-1]
                u = v[:-1]
                out.append((u, a >> 1, v) if a % 2 == 0 else (v, a >> 1, u))
        return out

    def canonical_numbering(self) -> dict:
        order = {(): 0}
        queue = deque([()])
        while queue:
            v = queue.popleft()
            for a in self.alphabet.letters:
                nxt = free_reduce(v + (a,))
                if nxt in self.vertices and nxt not in order:
                    order[nxt] = len(order)
                    queue.append(nxt)
        return order

    def to_json(self) -> dict:
        num = self.canonical_numbering()
        edges = sorted(
            [num[u], self.alphabet.generators[i], num[v]] for u, i, v in self.edges()
        )
        return {"vertices": len(num), "start": 0, "end": num[self.end], "edges": edges}


def munn_tree(w: Sequence[int], alphabet: Alphabet) -> MunnTree:
    verts = {()}
    cur: Word = ()
    for a in w:
        cur = free_reduce(cur + (a,))
        verts.add(cur)
    return MunnTree(alphabet, frozenset(verts), cur)


def _check(s: MunnTree, t: MunnTree):
    if s.alphabet != t.alphabet:
        raise AlphabetMismatch(f"{s.alphabet} vs {t.alphabet}")


def _translate(g: Word, verts) -> set:
    return {free_reduce(g + v) for v in verts}


def fim_multiply(s: MunnTree, t: MunnTree) -> MunnTree:
    _check(s, t)
    verts = set(s.vertices) | _translate(s.end, t.vertices)
    return MunnTree(s.alphabet, frozenset(verts), free_reduce(s.end + t.end))


def fim_inverse(s: MunnTree) -> MunnTree:
    g = inverse_word(s.end)
    return MunnTree(s.alphabet, frozenset(_translate(g, s.vertices)), g)


def fim_leq(s: MunnTree, t: MunnTree) -> bool:
    """Natural partial order: s <= t iff s = (s s^-1) t."""
    _check(s, t)
    return s == fim_multiply(fim_multiply(s, fim_inverse(s)), t)
