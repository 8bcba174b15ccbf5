"""Finite inverse monoids given by a right Cayley table over A = X ⊔ X⁻¹."""

from __future__ import annotations

import random
from collections import deque
from typing import Callable, Hashable, Mapping, Sequence

from ..errors import NotIdempotent, NotInjective
from ..fim import Alphabet, Word

EXHAUSTIVE_ASSOC_LIMIT = 200
SAMPLED_ASSOC_TRIPLES = 100_000


class FiniteInverseMonoid:
    """Exact finite inverse monoid.

    Elements are ``0..n-1`` with 0 the identity, numbered in shortlex order
    of their minimal representative words, which also serve as names.
    ``step[s][a]`` is ``s * (a theta)`` for a letter ``a``.
    """

    def __init__(self, alphabet: Alphabet, step: Sequence[Sequence[int]], words: Sequence[Word]):
        self.alphabet = alphabet
        self.step = [list(row) for row in step]
        self.words = [tuple(w) for w in words]
        n = len(self.words)
        self.order = n
        self.identity = 0
        self.mul = [[self._apply(i, self.words[j]) for j in range(n)] for i in range(n)]
        self.inv = [self._apply(0, tuple(a ^ 1 for a in reversed(w))) for w in self.words]
        self.letter_images = [self.step[0][a] for a in alphabet.letters]
        self.idempotents = [s for s in range(n) if self.mul[s][s] == s]
        self._idem_set = frozenset(self.idempotents)
        self.verify()

    def _apply(self, s: int, w: Word) -> int:
        for a in w:
            s = self.step[s][a]
        return s

    # construction --------------------------------------------------------

    @classmethod
    def from_action(cls, alphabet: Alphabet, identity: Hashable,
                    images: Mapping[int, Hashable], compose: Callable) -> "FiniteInverseMonoid":
        """Close ``identity`` under right multiplication by letter images.

        ``images`` maps each letter to an object; ``compose(s, t)`` is the
        product ``st`` of objects.
        """
        objs = [identity]
        index = {identity: 0}
        words: list[Word] = [()]
        step: list[list[int]] = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            row = []
            for a in alphabet.letters:
                t = compose(objs[i], images[a])
                j = index.get(t)
                if j is None:
                    j = len(objs)
                    index[t] = j
                    objs.append(t)
                    words.append(words[i] + (a,))
                    queue.append(j)
                row.append(j)
            step.append(row)
        return cls(alphabet, step, words)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], generators: Mapping[str, int],
                   identity: int = 0) -> "FiniteInverseMonoid":
        """Build from a full multiplication table and named generators.

        Only the submonoid generated by the named elements is kept; inverses
        of generators are found in the table.
        """
        n = len(table)
        names = list(generators)
        alphabet = Alphabet(names)

        def inverse(s):
            cands = [t for t in range(n)
                     if table[table[s][t]][s] == s and table[table[t][s]][t] == t]
            if len(cands) != 1:
                raise ValueError(f"element {s} has {len(cands)} inverses")
            return cands[0]

        images = {}
        for name in names:
            g = generators[name]
            images[alphabet.letter(name)] = g
            images[alphabet.letter(name, True)] = inverse(g)
        return cls.from_action(alphabet, identity, images, lambda s, t: table[s][t])

    # queries ---------------------------------------------------------------

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteInverseMonoid(order={self.order}, generators={list(self.alphabet.generators)})"

    def evaluate(self, w: Sequence[int]) -> int:
        return self._apply(0, tuple(w))

    def name(self, s: int) -> str:
        return self.alphabet.format(self.words[s])

    def is_idempotent(self, s: int) -> bool:
        return s in self._idem_set

    def require_idempotent(self, e: int):
        if e not in self._idem_set:
            raise NotIdempotent(f"{self.name(e)} is not idempotent")

    def dom(self, s: int) -> int:
        """s⁻¹s"""
        return self.mul[self.inv[s]][s]

    def ran(self, s: int) -> int:
        """ss⁻¹"""
        return self.mul[s][self.inv[s]]

    def leq(self, s: int, t: int) -> bool:
        return s == self.mul[self.ran(s)][t]

    def l_class(self, e: int) -> list[int]:
        return [s for s in range(self.order) if self.dom(s) == e]

    def element_by_name(self, text: str) -> int:
        return self.evaluate(self.alphabet.parse(text))

    # validation ------------------------------------------------------------

    def verify(self, rng: random.Random | None = None):
        n = self.order
        mul = self.mul
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(n):
                ma = mul[a]
                for b in range(n):
                    mab = mul[ma[b]]
                    mb = mul[b]
                    for c in range(n):
                        if mab[c] != ma[mb[c]]:
                            raise ValueError(f"not associative at {(a, b, c)}")
        else:
            rng = rng or random.Random(0)
            for _ in range(SAMPLED_ASSOC_TRIPLES):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise ValueError(f"not associative at {(a, b, c)}")
        for s in range(n):
            t = self.inv[s]
            if mul[mul[s][t]][s] != s or mul[mul[t][s]][t] != t:
                raise ValueError(f"bad inverse for {self.name(s)}")
        for e in self.idempotents:
            for f in self.idempotents:
                if mul[e][f] != mul[f][e]:
                    raise ValueError("idempotents do not commute")
        if any(mul[0][s] != s or mul[s][0] != s for s in range(n)):
            raise ValueError("element 0 is not an identity")


def _normalize_partial(n: int, g) -> tuple:
    """Partial injection on {1..n} as a 0-based tuple with None for undefined."""
    if isinstance(g, Mapping):
        out = [None] * n
        for k, v in g.items():
            if not (1 <= k <= n and 1 <= v <= n):
                raise ValueError(f"point out of range in {g}")
            out[k - 1] = v - 1
    else:
        if len(g) != n:
            raise ValueError(f"expected {n} images, got {g}")
        out = [None if v is None else v - 1 for v in g]
    images = [v for v in out if v is not None]
    if len(set(images)) != len(images):
        raise NotInjective(f"{g} is not injective")
    return tuple(out)


def _compose_partial(s: tuple, t: tuple) -> tuple:
    # apply s first, then t
    return tuple(None if x is None else t[x] for x in s)


def _invert_partial(s: tuple) -> tuple:
    out = [None] * len(s)
    for i, v in enumerate(s):
        if v is not None:
            out[v] = i
    return tuple(out)


def from_partial_bijections(degree: int, gens: Mapping[str, object]) -> FiniteInverseMonoid:
    """Inverse submonoid of the symmetric inverse monoid on {1..degree}.

    ``gens`` maps generator names to partial injections, given either as a
    dict ``{point: image}`` or a sequence of images with None for undefined.
    Products compose left to right.
    """
    alphabet = Alphabet(gens)
    images = {}
    for name, g in gens.items():
        p = _normalize_partial(degree, g)
        images[alphabet.letter(name)] = p
        images[alphabet.letter(name, True)] = _invert_partial(p)
    ident = tuple(range(degree))
    return FiniteInverseMonoid.from_action(alphabet, ident, images, _compose_partial)


def same_monoid(M1: FiniteInverseMonoid, M2: FiniteInverseMonoid) -> bool:
    """True when sending each generator to its namesake is an isomorphism."""
    if M1.alphabet != M2.alphabet or M1.order != M2.order:
        return False
    image = [M2.evaluate(w) for w in M1.words]
    if len(set(image)) != M1.order:
        return False
    return all(image[M1.mul[a][b]] == M2.mul[image[a]][image[b]]
               for a in range(M1.order) for b in range(M1.order))
