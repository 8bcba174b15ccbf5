"""Edge paths of the Squier complex and their λ-normal forms.

An edge ``(p, rel, q)`` applies relation ``l = r`` in context, running from
``p·l·q`` to ``p·r·q`` in the cover.  The vertex monoid acts on paths from
both sides, and the two derived products are

    α ∗ β = (α ◁ β.d) ∘ (α.r ▷ β)
    α ⊛ β = (α.d ▷ β) ∘ (α ◁ β.r)

with ∘ the diagrammatic composition (α first).  A path whose source lies
over the idempotent e rectifies edge by edge to a word in the generators
``λ^e_{l,r,q} = (e q⁻¹ l⁻¹, l, r, qe)``; a reversed edge contributes the
inverse generator.
"""

from __future__ import annotations

import abc
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .backend import FiniteInverseMonoid, Presentation
from .cover import TElement, psi, t_idempotent, t_inverse, t_multiply, t_of_word
from .errors import BackendMismatch, NotComposable, NotInKernelComponent
from .relmod import Report
from .xmod import CrossedElement, FreeCrossedModule


class PseudoregularGroupoid(abc.ABC):
    """Groupoid with a vertex monoid acting on arrows from both sides."""

    @abc.abstractmethod
    def d(self, a): ...

    @abc.abstractmethod
    def r(self, a): ...

    @abc.abstractmethod
    def vmul(self, x, y): ...

    @abc.abstractmethod
    def vone(self): ...

    @abc.abstractmethod
    def left(self, x, a): ...

    @abc.abstractmethod
    def right(self, a, x): ...

    @abc.abstractmethod
    def compose(self, a, b): ...

    @abc.abstractmethod
    def unit(self, v): ...

    def star_product(self, a, b):
        return self.compose(self.right(a, self.d(b)), self.left(self.r(a), b))

    def circ_product(self, a, b):
        return self.compose(self.left(self.d(a), b), self.right(a, self.r(b)))


def check_pseudoregular(G: PseudoregularGroupoid, sample, samples: int = 500,
                        rng: random.Random | None = None) -> Report:
    """Action, unit, endpoint, functoriality and identity-arrow laws on sampled data.

    ``sample(rng)`` must return ``(x, y, α, β)`` with vertices x, y and
    arrows α, β such that ``α ∘ β`` is defined.
    """
    rng = rng or random.Random(0)
    rep = Report("pseudoregular axioms")
    one = G.vone()
    for _ in range(samples):
        x, y, a, b = sample(rng)
        xy = G.vmul(x, y)
        checks = {
            "left action associative": G.left(xy, a) == G.left(x, G.left(y, a)),
            "right action associative": G.right(a, xy) == G.right(G.right(a, x), y),
            "actions commute": G.right(G.left(x, a), y) == G.left(x, G.right(a, y)),
            "unit acts trivially": G.left(one, a) == a == G.right(a, one),
            "left action on sources": G.d(G.left(x, a)) == G.vmul(x, G.d(a)),
            "right action on sources": G.d(G.right(a, x)) == G.vmul(G.d(a), x),
            "left action on targets": G.r(G.left(x, a)) == G.vmul(x, G.r(a)),
            "right action on targets": G.r(G.right(a, x)) == G.vmul(G.r(a), x),
            "left action preserves composition": G.left(x, G.compose(a, b)) == G.compose(G.left(x, a), G.left(x, b)),
            "right action preserves composition": G.right(G.compose(a, b), x) == G.compose(G.right(a, x), G.right(b, x)),
            "identity arrows": G.left(x, G.unit(y)) == G.unit(xy) == G.right(G.unit(x), y),
        }
        for name, ok in checks.items():
            rep.checked += 1
            if not ok:
                rep.fail(name)
    return rep


# the finite groupoid U -------------------------------------------------------


class FixtureU(PseudoregularGroupoid):
    """Pairs over the semilattice {1, e, f, 0} with ef = 0.

    Arrows are ``(x, y)`` with neither coordinate 1, together with (1, 1);
    d and r are the projections and both actions multiply coordinatewise.
    """

    VERTICES = ("1", "e", "f", "0")

    def vmul(self, x, y):
        if x == "1":
            return y
        if y == "1" or x == y:
            return x
        return "0"

    def vone(self):
        return "1"

    def arrows(self) -> list:
        V = self.VERTICES
        return [("1", "1")] + [(x, y) for x in V[1:] for y in V[1:]]

    def d(self, a):
        return a[0]

    def r(self, a):
        return a[1]

    def left(self, x, a):
        return (self.vmul(x, a[0]), self.vmul(x, a[1]))

    def right(self, a, x):
        return (self.vmul(a[0], x), self.vmul(a[1], x))

    def compose(self, a, b):
        if a[1] != b[0]:
            raise NotComposable(f"{a} then {b}")
        return (a[0], b[1])

    def unit(self, v):
        return (v, v)

    def star(self, v) -> list:
        return [a for a in self.arrows() if a[0] == v]

    def sample(self, rng: random.Random):
        x, y = rng.choice(self.VERTICES), rng.choice(self.VERTICES)
        a = rng.choice(self.arrows())
        b = rng.choice([c for c in self.arrows() if c[0] == a[1]])
        return x, y, a, b


def star_identity_failures(G: FixtureU, v) -> list:
    """Arrows of star_v for which the unit at v fails to be a two-sided ∗-identity."""
    u = G.unit(v)
    return [a for a in G.star(v) if G.star_product(u, a) != a or G.star_product(a, u) != a]


# Squier edges and paths ------------------------------------------------------


@dataclass(frozen=True)
class SquierEdge:
    p: TElement
    rel: int
    q: TElement
    forward: bool = True

    def reversed(self) -> "SquierEdge":
        return SquierEdge(self.p, self.rel, self.q, not self.forward)


@dataclass(frozen=True)
class SquierPath:
    start: TElement
    edges: tuple = ()


@dataclass(frozen=True)
class LambdaGenerator:
    """λ^e_{l,r,q}^sign, stored with q already multiplied by e."""

    e: int
    rel: int
    q: TElement
    sign: int = 1

    def inverse(self) -> "LambdaGenerator":
        return LambdaGenerator(self.e, self.rel, self.q, -self.sign)

    def base(self):
        return (self.e, self.rel, self.q)


class SquierComplex(PseudoregularGroupoid):
    def __init__(self, P: Presentation, M: FiniteInverseMonoid,
                 crossed: FreeCrossedModule | None = None):
        self.P, self.M = P, M
        self.crossed = crossed or FreeCrossedModule(P, M)
        self.h = [t_of_word(l, M) for l, _ in P.relations]
        self.k = [t_of_word(r, M) for _, r in P.relations]

    # endpoints

    def _check(self, *ts: TElement):
        for t in ts:
            if t.M is not self.M:
                raise BackendMismatch("element from a different monoid")

    def edge_endpoints(self, ed: SquierEdge):
        self._check(ed.p, ed.q)
        src = t_multiply(t_multiply(ed.p, self.h[ed.rel]), ed.q)
        dst = t_multiply(t_multiply(ed.p, self.k[ed.rel]), ed.q)
        return (src, dst) if ed.forward else (dst, src)

    def path(self, start: TElement, edges: Sequence[SquierEdge]) -> SquierPath:
        v = start
        for ed in edges:
            s, t = self.edge_endpoints(ed)
            if s != v:
                raise NotComposable(f"edge starts at {s.format()}, path is at {v.format()}")
            v = t
        return SquierPath(start, tuple(edges))

    def edge_path(self, ed: SquierEdge) -> SquierPath:
        return SquierPath(self.edge_endpoints(ed)[0], (ed,))

    # groupoid structure

    def d(self, a: SquierPath):
        return a.start

    def r(self, a: SquierPath):
        v = a.start
        for ed in a.edges:
            v = self.edge_endpoints(ed)[1]
        return v

    def vmul(self, x, y):
        return t_multiply(x, y)

    def vone(self):
        return t_of_word((), self.M)

    def left(self, x, a: SquierPath):
        return SquierPath(t_multiply(x, a.start),
                          tuple(SquierEdge(t_multiply(x, ed.p), ed.rel, ed.q, ed.forward)
                                for ed in a.edges))

    def right(self, a: SquierPath, x):
        return SquierPath(t_multiply(a.start, x),
                          tuple(SquierEdge(ed.p, ed.rel, t_multiply(ed.q, x), ed.forward)
                                for ed in a.edges))

    def compose(self, a: SquierPath, b: SquierPath):
        if self.r(a) != b.start:
            raise NotComposable("paths do not meet")
        return SquierPath(a.start, a.edges + b.edges)

    def unit(self, v):
        return SquierPath(v, ())

    def reverse(self, a: SquierPath) -> SquierPath:
        return SquierPath(self.r(a), tuple(ed.reversed() for ed in reversed(a.edges)))

    def star_inverse(self, a: SquierPath) -> SquierPath:
        """α* = (α.r)⁻¹ ▷ α° ◁ (α.d)⁻¹"""
        return self.right(self.left(t_inverse(self.r(a)), self.reverse(a)), t_inverse(a.start))

    # λ-normal form

    def lambda_generator(self, e: int, rel: int, q: TElement, sign: int = 1) -> LambdaGenerator:
        """λ^e_{l,r,q}; raises unless e <= q⁻¹ (l⁻¹l) q."""
        M = self.M
        hq = psi(t_multiply(self.h[rel], q))
        if M.mul[e][M.dom(hq)] != e:
            raise NotInKernelComponent(
                f"{M.name(e)} is not below the domain of {self.P.format_relation(rel)} at {q.format()}")
        return LambdaGenerator(e, rel, t_multiply(q, t_idempotent(M, e)), sign)

    def lambda_edge(self, g: LambdaGenerator) -> SquierEdge:
        """The single edge (e q⁻¹ l⁻¹, l, r, qe) realizing a generator."""
        M = self.M
        te = t_idempotent(M, g.e)
        p = t_multiply(t_multiply(te, t_inverse(g.q)), t_inverse(self.h[g.rel]))
        return SquierEdge(p, g.rel, g.q, g.sign > 0)

    def lambda_rectify(self, a: SquierPath) -> list[LambdaGenerator]:
        M = self.M
        e = psi(a.start)
        if not M.is_idempotent(e):
            raise NotInKernelComponent(f"path starts at {a.start.format()}, not over an idempotent")
        return [self.lambda_generator(e, ed.rel, ed.q, 1 if ed.forward else -1)
                for ed in a.edges]

    def lambda_path(self, gens: Sequence[LambdaGenerator], e: int) -> SquierPath:
        """∗-product of the single-edge paths of a λ-word, as an explicit path."""
        out = self.unit(t_idempotent(self.M, e))
        for g in gens:
            ed = self.lambda_edge(g)
            one = self.edge_path(SquierEdge(ed.p, ed.rel, ed.q, True))
            out = self.star_product(out, one if g.sign > 0 else self.star_inverse(one))
        return out

    def mu(self, gens: Sequence[LambdaGenerator], e: int) -> CrossedElement:
        out = self.crossed.identity(e)
        for g in gens:
            out = out * self.crossed.generator(g.rel, g.q, g.sign)
        return out

    def path_canonical_form(self, a: SquierPath):
        e = psi(a.start)
        return self.crossed.canonical_form(self.mu(self.lambda_rectify(a), e))

    def format_lambda(self, gens: Sequence[LambdaGenerator]) -> str:
        if not gens:
            return "1"
        M, P = self.M, self.P
        return " * ".join(f"L[{M.name(g.e)}; {P.format_relation(g.rel)}; {g.q.format()}]^{'+1' if g.sign > 0 else '-1'}"
                          for g in gens)

    # sampling

    def random_element(self, rng: random.Random, max_len: int = 3) -> TElement:
        n = rng.randint(0, max_len)
        letters = list(self.M.alphabet.letters)
        return t_of_word(tuple(rng.choice(letters) for _ in range(n)), self.M)

    def random_edge_at(self, v: TElement, rng: random.Random, tries: int = 200):
        """An oriented edge leaving v, or None if none was found."""
        for _ in range(tries):
            rel = rng.randrange(len(self.P.relations))
            q = self.random_element(rng)
            forward = rng.random() < 0.5
            side = self.h[rel] if forward else self.k[rel]
            p = t_multiply(v, t_inverse(t_multiply(side, q)))
            ed = SquierEdge(p, rel, q, forward)
            if self.edge_endpoints(ed)[0] == v:
                return ed
        return None

    def random_path(self, rng: random.Random, length: int, start: TElement | None = None) -> SquierPath:
        """A random path; when no start is given it begins at an idempotent."""
        if start is None:
            ed = SquierEdge(self.random_element(rng), rng.randrange(len(self.P.relations)),
                            self.random_element(rng), rng.random() < 0.5)
            s = self.edge_endpoints(ed)[0]
            ed = SquierEdge(t_multiply(t_inverse(s), ed.p), ed.rel, ed.q, ed.forward)
            start = self.edge_endpoints(ed)[0]
            edges = [ed]
        else:
            edges = []
        v = start
        for ed in edges:
            v = self.edge_endpoints(ed)[1]
        while len(edges) < length:
            ed = self.random_edge_at(v, rng)
            if ed is None:
                break
            edges.append(ed)
            v = self.edge_endpoints(ed)[1]
        return SquierPath(start, tuple(edges[:length]))

    def random_star_path(self, rng: random.Random, length: int) -> SquierPath:
        """A path in star^⋈ at some idempotent: e ▷ α ◁ e with α.d = e."""
        a = self.random_path(rng, length)
        e = a.start
        return self.right(self.left(e, a), e)

    def sample_axioms(self, rng: random.Random):
        x, y = self.random_element(rng), self.random_element(rng)
        a = self.random_path(rng, rng.randint(0, 3))
        b = self.random_path(rng, rng.randint(0, 3), start=self.r(a))
        return x, y, a, b

    # two-cell search

    def _delta(self, g) -> TElement:
        rel, q, s = g
        d = self.crossed.generator_delta(rel, q)
        return d if s > 0 else t_inverse(d)

    def two_cell_equiv(self, u: Sequence[LambdaGenerator], v: Sequence[LambdaGenerator],
                       search_bound: int = 2000, deadline: float | None = None) -> bool:
        """Search for a rewrite of u into v by the defining relations.

        A move replaces an adjacent pair ``X Y`` by ``Y X^{δY}`` or the
        reverse, where ``X^{k}`` multiplies X's q by k on the right; free
        cancellation is applied after every move.  True certifies
        equivalence, False only means nothing was found within the bound.
        """
        if not u and not v:
            return True
        es = {g.e for g in list(u) + list(v)}
        if len(es) != 1:
            return False

        def norm(gs):
            out = []
            for g in gs:
                if out and out[-1][:2] == g[:2] and out[-1][2] == -g[2]:
                    out.pop()
                else:
                    out.append(g)
            return tuple(out)

        def moves(state):
            for i in range(len(state) - 1):
                (r1, q1, s1), Y = state[i], state[i + 1]
                # X Y -> Y X^{δY}
                X2 = (r1, t_multiply(q1, self._delta(Y)), s1)
                yield norm(state[:i] + (Y, X2) + state[i + 2:])
                # Y Z -> Z^{δY⁻¹} Y, read with Y on the left
                Yl, (r2, q2, s2) = state[i], state[i + 1]
                Z2 = (r2, t_multiply(q2, t_inverse(self._delta(Yl))), s2)
                yield norm(state[:i] + (Z2, Yl) + state[i + 2:])

        a = norm(tuple((g.rel, g.q, g.sign) for g in u))
        b = norm(tuple((g.rel, g.q, g.sign) for g in v))
        if a == b:
            return True
        seen = [{a: 0}, {b: 0}]
        frontier = [deque([a]), deque([b])]
        explored = 0
        while frontier[0] or frontier[1]:
            side = 0 if (len(frontier[0]) <= len(frontier[1]) and frontier[0]) or not frontier[1] else 1
            state = frontier[side].popleft()
            for nxt in moves(state):
                if nxt in seen[1 - side]:
                    return True
                if nxt not in seen[side]:
                    seen[side][nxt] = seen[side][state] + 1
                    frontier[side].append(nxt)
            explored += 1
            if explored >= search_bound or (deadline is not None and time.monotonic() > deadline):
                return False
        return False
