"""The free crossed module on a presentation, its abelianization and identities.

Generators of the crossed module at an idempotent e are triples
``(rel, u)`` with u in the cover, ``u⁻¹u`` lying over e and the relation's
``(l⁻¹r) theta`` above ``uu⁻¹``.  The boundary of a generator is
``u⁻¹ (l⁻¹r) u``, an element of the kernel group K_e.

A crossed element is decided by its canonical form: the boundary as a
basis word of K_e together with the abelianized generator vector over
``Y_e = {(rel, m) : (l⁻¹r) theta >= mm⁻¹, m⁻¹m = e}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .backend import FiniteInverseMonoid, Presentation
from .cover import (KernelGroup, TElement, psi, t_idempotent, t_inverse, t_multiply,
                    t_of_word)
from .errors import AlphabetMismatch, AnchorMismatch, LiftFailure
from .fim import inverse_word
from .intmat import IntegerMatrix, invariant_factors, kernel_basis
from .relmod import LauschModule, relation_module


@dataclass(frozen=True)
class CrossedElement:
    """Formal product of generators ``(rel, u)^sign`` anchored at e."""

    ctx: "FreeCrossedModule" = field(compare=False, repr=False)
    anchor: int
    terms: tuple = ()  # (rel index, u: TElement, sign)

    def __mul__(self, other: "CrossedElement") -> "CrossedElement":
        if self.anchor != other.anchor:
            raise AnchorMismatch("crossed elements live over different idempotents")
        return CrossedElement(self.ctx, self.anchor, self.terms + other.terms)

    def inverse(self) -> "CrossedElement":
        return CrossedElement(self.ctx, self.anchor,
                              tuple((i, u, -s) for i, u, s in reversed(self.terms)))

    def act(self, t: TElement) -> "CrossedElement":
        return self.ctx.act(self, t)

    def delta(self) -> TElement:
        return self.ctx.delta(self)

    def canonical_form(self) -> "CanonicalForm":
        return self.ctx.canonical_form(self)

    def format(self) -> str:
        if not self.terms:
            return "1"
        P = self.ctx.P
        return " * ".join(f"({P.format_relation(i)}; {u.format()})^{s:+d}".replace("+", "")
                          for i, u, s in self.terms)


@dataclass(frozen=True)
class CanonicalForm:
    e: int
    k: tuple  # basis word in K_e
    vec: tuple  # integer vector over Y_e

    def is_identity(self) -> bool:
        return not self.k and not any(self.vec)


@dataclass
class CrossedBasis:
    sets: dict  # idempotent x -> list of relation indices in R_x
    omega: dict  # (rel, x) -> TElement

    def size(self) -> int:
        return sum(len(v) for v in self.sets.values())


@dataclass
class ExactSequenceEntry:
    e: str
    free_rank: int
    image_rank: int
    kernel_rank: int
    h1_rank: int
    surjective: bool
    kernel_basis: list

    def to_json(self) -> dict:
        return {"e": self.e, "freeRank": self.free_rank, "imageRank": self.image_rank,
                "kernelRank": self.kernel_rank, "surjective": self.surjective,
                "kernelBasis": self.kernel_basis}


@dataclass
class ExactSequenceReport:
    entries: list
    natural: bool = True
    kernel_closed: bool = True
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.natural and self.kernel_closed and not self.problems
                and all(en.surjective and en.kernel_rank + en.image_rank == en.free_rank
                        for en in self.entries))

    def to_json(self) -> dict:
        return {"entries": [en.to_json() for en in self.entries], "natural": self.natural,
                "kernelClosed": self.kernel_closed, "ok": self.ok}

    def table(self) -> str:
        rows = [("e", "free", "image", "kernel", "H1", "onto")]
        for en in self.entries:
            rows.append((en.e, str(en.free_rank), str(en.image_rank), str(en.kernel_rank),
                         str(en.h1_rank), "yes" if en.surjective else "no"))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines)


class FreeCrossedModule:
    """Everything built from a presentation P of a finite monoid M."""

    def __init__(self, P: Presentation, M: FiniteInverseMonoid):
        if P.alphabet != M.alphabet:
            raise AlphabetMismatch("presentation and monoid use different alphabets")
        self.P, self.M = P, M
        self.module = relation_module(M)
        self.kernels: dict[int, KernelGroup] = {e: cx.kernel
                                                 for e, cx in self.module.complexes.items()}
        # (l⁻¹r) theta for each relation: an idempotent, since l = r in M
        self.rel_idem = [M.evaluate(inverse_word(l) + r) for l, r in P.relations]
        self.h = [t_of_word(l, M) for l, _ in P.relations]
        self.k = [t_of_word(r, M) for _, r in P.relations]
        self._Y = {e: self._free_basis(e) for e in M.idempotents}
        self._Y_index = {e: {y: i for i, y in enumerate(ys)} for e, ys in self._Y.items()}
        self._rbar: dict = {}

    # bases -----------------------------------------------------------------

    def _free_basis(self, e: int) -> list:
        M = self.M
        out = []
        for i, f in enumerate(self.rel_idem):
            for m in M.l_class(e):
                if M.mul[f][M.ran(m)] == M.ran(m):
                    out.append((i, m))
        return out

    def free_module_basis(self, e: int) -> list:
        return list(self._Y[e])

    def z_sets(self) -> dict:
        return {e: [i for i, f in enumerate(self.rel_idem) if f == e] for e in self.M.idempotents}

    def crossed_basis(self) -> CrossedBasis:
        M = self.M
        sets, omega = {}, {}
        for x in M.idempotents:
            sets[x] = [i for i, f in enumerate(self.rel_idem) if M.mul[f][x] == x]
            tx = t_idempotent(M, x)
            for i in sets[x]:
                l, r = self.P.relations[i]
                omega[(i, x)] = t_multiply(t_multiply(tx, t_of_word(inverse_word(l) + r, M)), tx)
        return CrossedBasis(sets, omega)

    # crossed elements --------------------------------------------------------

    def generator(self, rel: int, u: TElement, sign: int = 1) -> CrossedElement:
        M = self.M
        if M.mul[self.rel_idem[rel]][M.ran(psi(u))] != M.ran(psi(u)):
            raise ValueError(f"relation {self.P.format_relation(rel)} is not above {u.format()}")
        return CrossedElement(self, M.dom(psi(u)), ((rel, u, sign),))

    def identity(self, e: int) -> CrossedElement:
        self.M.require_idempotent(e)
        return CrossedElement(self, e)

    def lift(self, m: int) -> TElement:
        """Cover element over m read from m's shortlex word."""
        if not 0 <= m < self.M.order:
            raise LiftFailure(f"no element {m}")
        return t_of_word(self.M.words[m], self.M)

    def generator_delta(self, rel: int, u: TElement) -> TElement:
        l, r = self.P.relations[rel]
        w = t_of_word(inverse_word(l) + r, self.M)
        return t_multiply(t_multiply(t_inverse(u), w), u)

    def delta(self, c: CrossedElement) -> TElement:
        out = t_idempotent(self.M, c.anchor)
        for rel, u, s in c.terms:
            d = self.generator_delta(rel, u)
            out = t_multiply(out, d if s > 0 else t_inverse(d))
        return out

    def act(self, c: CrossedElement, t: TElement) -> CrossedElement:
        M = self.M
        if M.ran(psi(t)) != c.anchor:
            raise AnchorMismatch(f"{t.format()} does not start at {M.name(c.anchor)}")
        return CrossedElement(self, M.dom(psi(t)),
                              tuple((i, t_multiply(u, t), s) for i, u, s in c.terms))

    def canonical_form(self, c: CrossedElement) -> CanonicalForm:
        e = c.anchor
        k = self.kernels[e].from_element(self.delta(c))
        vec = [0] * len(self._Y[e])
        index = self._Y_index[e]
        for rel, u, s in c.terms:
            y = (rel, psi(u))
            if y not in index:
                raise AnchorMismatch(f"generator {u.format()} is not anchored at {self.M.name(e)}")
            vec[index[y]] += s
        return CanonicalForm(e, k, tuple(vec))

    def peiffer(self, a: CrossedElement, b: CrossedElement) -> CrossedElement:
        """⟨a, b⟩ = a⁻¹ b⁻¹ a b^{δa}"""
        return a.inverse() * b.inverse() * a * self.act(b, self.delta(a))

    # abelianized boundary ----------------------------------------------------

    def rbar_column(self, e: int, y, lift: TElement | None = None) -> list[int]:
        rel, m = y
        u = self.lift(m) if lift is None else lift
        if psi(u) != m:
            raise LiftFailure(f"{u.format()} does not lie over {self.M.name(m)}")
        K = self.kernels[e]
        return K.abelianize(K.from_element(self.generator_delta(rel, u)))

    def rbar_matrix(self, e: int) -> IntegerMatrix:
        if e not in self._rbar:
            cols = [self.rbar_column(e, y) for y in self._Y[e]]
            self._rbar[e] = IntegerMatrix.from_columns(cols, self.kernels[e].rank)
        return self._rbar[e]

    def lifts(self, m: int, max_length: int) -> list[TElement]:
        """Every word of length at most max_length over A mapping to m, as cover elements."""
        M = self.M
        out = []
        letters = list(M.alphabet.letters)
        for n in range(max_length + 1):
            for w in itertools.product(letters, repeat=n):
                if M.evaluate(w) == m:
                    out.append(t_of_word(w, M))
        if not out:
            raise LiftFailure(f"no word of length <= {max_length} reaches {M.name(m)}")
        return out

    def free_module(self) -> LauschModule:
        M = self.M

        def act(e, s):
            f = M.mul[M.mul[M.inv[s]][e]][s]
            index = self._Y_index[f]
            cols = []
            for rel, m in self._Y[e]:
                col = [0] * len(self._Y[f])
                col[index[(rel, M.mul[m][s])]] = 1
                cols.append(col)
            return IntegerMatrix.from_columns(cols, len(self._Y[f]))

        labels = {e: [f"{self.P.format_relation(i)} @ {M.name(m)}" for i, m in ys]
                  for e, ys in self._Y.items()}
        return LauschModule(M, {e: len(ys) for e, ys in self._Y.items()}, act, labels)

    def identity_module(self, e: int) -> list[list[int]]:
        A = self.rbar_matrix(e)
        if A.cols == 0:
            return []
        return kernel_basis(A)

    def verify_exact_sequence(self) -> ExactSequenceReport:
        M = self.M
        free = self.free_module()
        entries = []
        for e in M.idempotents:
            A = self.rbar_matrix(e)
            h1 = self.kernels[e].rank
            if A.cols == 0 or A.rows == 0:
                image, factors = 0, []
            else:
                factors = invariant_factors(A)
                image = len(factors)
            kb = self.identity_module(e)
            surj = image == h1 and all(d == 1 for d in factors)
            entries.append(ExactSequenceEntry(M.name(e), A.cols, image, len(kb), h1, surj, kb))
        report = ExactSequenceReport(entries)
        for e in M.idempotents:
            kb = self.identity_module(e)
            for s in range(M.order):
                f = free.target(e, s)
                Fs = free.action(e, s)
                Hs = self.module.action(e, s)
                R_e, R_f = self.rbar_matrix(e), self.rbar_matrix(f)
                if not _compose_equal(R_f, Fs, Hs, R_e):
                    report.natural = False
                    report.problems.append(f"r-bar not natural at {M.name(e)}, {M.name(s)}")
                for v in kb:
                    if R_f.cols and any(R_f @ (Fs @ v)):
                        report.kernel_closed = False
                        report.problems.append(
                            f"identity at {M.name(e)} leaves the kernel under {M.name(s)}")
        return report


def _compose_equal(A: IntegerMatrix, B: IntegerMatrix, C: IntegerMatrix, D: IntegerMatrix) -> bool:
    """A @ B == C @ D, tolerating empty shapes."""
    def prod(X, Y):
        if X.cols == 0 or Y.rows == 0:
            return IntegerMatrix.zeros(X.rows, Y.cols)
        return X @ Y
    return prod(A, B) == prod(C, D)


def crossed_basis(P: Presentation, M: FiniteInverseMonoid) -> CrossedBasis:
    return FreeCrossedModule(P, M).crossed_basis()


def verify_exact_sequence(P: Presentation, M: FiniteInverseMonoid) -> ExactSequenceReport:
    return FreeCrossedModule(P, M).verify_exact_sequence()


def elements_from_terms(ctx: FreeCrossedModule, anchor: int,
                        terms: Sequence[tuple]) -> CrossedElement:
    out = ctx.identity(anchor)
    for rel, u, s in terms:
        g = ctx.generator(rel, u, s)
        out = out * g
    return out
