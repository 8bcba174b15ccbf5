"""Checks shared by the acceptance tests and ``invmon verify``.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
``suite`` function runs the checks that apply to one builtin example.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import builtins
from .backend import (StephenBudget, enumerate_monoid, same_monoid, stephen_graph)
from .cover import (KernelGroup, basis_multiply, kernel_group, psi, t_inverse, t_multiply,
                    t_of_word, witness_equal)
from .errors import NotFinishedWithinBudget
from .fim import Alphabet, free_reduce, inverse_word, munn_tree
from .relmod import (ChainComplexAt, Report, adjoin_zero_check, relation_module,
                     verify_conjugation_action, verify_lausch_axioms, verify_module_isomorphism)
from .squier import FixtureU, SquierComplex, check_pseudoregular, star_identity_failures
from .xmod import FreeCrossedModule


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.passed else "FAIL"
        t = f" [{self.seconds:.2f}s]" if timing else ""
        return f"{status} {self.name}{t} {self.detail}".rstrip()


def _timed(name):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CriterionResult(name, passed, detail, time.perf_counter() - t0)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _ranks(M, mod):
    return tuple(mod.ranks[M.element_by_name(n)] for n in ("1", "e", "f", "e f"))


def _injective(A) -> bool:
    return A.rank() == A.cols


# acceptance criteria ---------------------------------------------------------


@_timed("1 semilattice relation module")
def criterion_semilattice():
    P, M = builtins.load("semilattice")
    mod = relation_module(M)
    ranks = _ranks(M, mod)
    ef = M.element_by_name("e f")
    maps = [mod.structure_map(M.element_by_name(x), ef) for x in ("e", "f")]
    ok = M.order == 4 and ranks == (0, 1, 1, 2) and all(_injective(A) for A in maps)
    return ok, f"order {M.order}, ranks {ranks}, maps into ef {[A.tolist() for A in maps]}"


@_timed("2 bicyclic graphs are trees")
def criterion_bicyclic(max_budget: int = 50, powers=(1, 2, 3, 4, 5)):
    P = builtins.bicyclic()
    x = P.alphabet.letter("x")
    bad = []
    for q in powers:
        w = (x ^ 1,) * q + (x,) * q
        for b in range(1, max_budget + 1):
            g = stephen_graph(P, w, StephenBudget(max_expansions=b))
            h1 = ChainComplexAt.from_graph(g).rank_h1
            if not g.is_simple_path() or h1 != 0:
                bad.append((q, b))
    try:
        enumerate_monoid(P, StephenBudget(max_expansions=50, max_vertices=200))
        finished = True
    except NotFinishedWithinBudget:
        finished = False
    ok = not bad and not finished
    return ok, (f"{len(powers) * max_budget} truncations checked, {len(bad)} non-paths; "
                f"enumeration {'finished' if finished else 'reports NotFinishedWithinBudget'}")


@_timed("3 I2 components and ranks")
def criterion_i2():
    M = builtins.i2()
    shapes = []
    mod = relation_module(M)
    for e in M.idempotents:
        g = mod.complexes[e].graph
        shapes.append((g.num_vertices, len(g.edges)))
    names = ("1", "eps", "tau eps tau", "eps tau eps")
    ranks = tuple(mod.ranks[M.element_by_name(n)] for n in names)
    ok = (M.order == 7 and sorted(shapes) == sorted([(2, 2), (2, 3), (2, 3), (1, 2)])
          and ranks == (1, 2, 2, 2))
    return ok, f"order {M.order}, components {shapes}, ranks {ranks}"


@_timed("4 zero adjunction")
def criterion_zero():
    rep = adjoin_zero_check(builtins.semilattice())
    P0, M0 = builtins.load("semilattice0")
    mod0 = relation_module(M0)
    base = _ranks(M0, mod0)
    ok = rep.ok and rep.zero_rank == 3 and base == (0, 1, 1, 2)
    return ok, f"rank at 0 is {rep.zero_rank}, nonzero ranks {base}"


@_timed("5 exact sequence on the semilattice")
def criterion_exact_sequence():
    P, M = builtins.load("semilattice")
    report = FreeCrossedModule(P, M).verify_exact_sequence()
    got = {en.e: (en.free_rank, en.image_rank, en.kernel_rank) for en in report.entries}
    want = {"1": (0, 0, 0), "e": (1, 1, 0), "f": (1, 1, 0), "e f": (3, 2, 1)}
    ok = report.ok and got == want
    return ok, f"{got}; natural={report.natural}, kernel closed={report.kernel_closed}"


def _random_closed_path(K: KernelGroup, rng: random.Random, length: int):
    """A random walk from the base closed up along the spanning tree."""
    g = K.graph
    v = g.base
    w = []
    for _ in range(length):
        steps = [(a, g.step(v, a)) for a in g.alphabet.letters if g.step(v, a) is not None]
        if not steps:
            break
        a, v = rng.choice(steps)
        w.append(a)
    return tuple(w) + inverse_word(K.tree_words[v])


def _random_basis_word(K: KernelGroup, rng: random.Random, max_len: int = 5):
    if not K.rank:
        return ()
    n = rng.randint(0, max_len)
    return basis_multiply((), tuple((rng.randrange(K.rank), rng.choice((1, -1)))
                                    for _ in range(n)))


@_timed("6 kappa isomorphism")
def criterion_kappa(seed: int = 0, pairs: int = 500, round_trips: int = 100):
    rng = random.Random(seed)
    failures = 0
    checked = 0
    for M in (builtins.load("semilattice")[1], builtins.i2()):
        kernels = [kernel_group(M, e) for e in M.idempotents]
        for _ in range(pairs):
            K = rng.choice(kernels)
            u = _random_closed_path(K, rng, rng.randint(0, 6))
            v = _random_closed_path(K, rng, rng.randint(0, 6))
            checked += 1
            if K.kappa(u + v) != basis_multiply(K.kappa(u), K.kappa(v)):
                failures += 1
            # the same law read inside the cover
            if K.element_of_path(u + v) != t_multiply(K.element_of_path(u), K.element_of_path(v)):
                failures += 1
            if K.from_element(K.element_of_path(u)) != K.kappa(u):
                failures += 1
        for _ in range(round_trips):
            K = rng.choice(kernels)
            k = _random_basis_word(K, rng)
            checked += 1
            if K.kappa(K.kappa_inv(k)) != k:
                failures += 1
    return failures == 0, f"{checked} samples, {failures} failures"


def crossed_samples(X: FreeCrossedModule, rng: random.Random, max_terms: int = 3):
    """Random crossed element with a random conjugator that may act on it."""
    M = X.M
    while True:
        e = rng.choice(M.idempotents)
        Y = X.free_module_basis(e)
        if Y:
            break
    K = X.kernels[e]
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        rel, m = rng.choice(Y)
        u = X.lift(m)
        if K.rank:
            u = t_multiply(u, K.to_element(_random_basis_word(K, rng, 2)))
        terms.append((rel, u, rng.choice((1, -1))))
    c = X.identity(e)
    for rel, u, s in terms:
        c = c * X.generator(rel, u, s)
    s = rng.choice([s for s in range(M.order) if M.ran(s) == e])
    t = X.lift(s)
    Kd = X.kernels[M.dom(s)]
    if Kd.rank:
        t = t_multiply(t, Kd.to_element(_random_basis_word(Kd, rng, 2)))
    return c, t


def check_crossed_module(X: FreeCrossedModule, samples: int, rng: random.Random) -> Report:
    rep = Report("crossed module CM1/CM2")
    for _ in range(samples):
        c, t = crossed_samples(X, rng)
        a, _ = crossed_samples(X, rng)
        while a.anchor != c.anchor:
            a, _ = crossed_samples(X, rng)
        rep.checked += 3
        lhs = X.delta(X.act(c, t))
        rhs = t_multiply(t_multiply(t_inverse(t), X.delta(c)), t)
        if lhs != rhs:
            rep.fail(f"CM1 fails for {c.format()} under {t.format()}")
        if X.canonical_form(X.act(c, X.delta(a))) != X.canonical_form(a.inverse() * c * a):
            rep.fail(f"CM2 fails for {c.format()}, {a.format()}")
        if not X.canonical_form(X.peiffer(a, c)).is_identity():
            rep.fail("Peiffer element is not trivial")
    return rep


def check_star_groups(S: SquierComplex, samples: int, rng: random.Random) -> Report:
    """Monoidality, star inverses and the endpoint law on sampled star paths."""
    rep = Report("star groups")
    X = S.crossed
    for _ in range(samples):
        a = S.random_star_path(rng, rng.randint(0, 3))
        e = a.start
        b = S.random_path(rng, rng.randint(0, 3), start=e)
        b = S.right(S.left(e, b), e)
        rep.checked += 3
        if S.path_canonical_form(S.star_product(a, b)) != S.path_canonical_form(S.circ_product(a, b)):
            rep.fail("α ∗ β and α ⊛ β differ")
        if not S.path_canonical_form(S.star_product(a, S.star_inverse(a))).is_identity():
            rep.fail("α ∗ α* is not the identity")
        gens = S.lambda_rectify(a)
        if X.delta(S.mu(gens, psi(e))) != t_multiply(t_inverse(a.start), S.r(a)):
            rep.fail("endpoint law fails")
    return rep


@_timed("7 axiom suites")
def criterion_axioms(seed: int = 0, samples: int = 500):
    rng = random.Random(seed)
    reports = []
    U = FixtureU()
    reports.append(check_pseudoregular(U, U.sample, samples, rng))
    P, M = builtins.load("semilattice")
    S = SquierComplex(P, M)
    reports.append(check_pseudoregular(S, S.sample_axioms, samples, rng))
    reports.append(check_crossed_module(S.crossed, samples, rng))
    reports.append(verify_lausch_axioms(relation_module(M), samples, rng))
    reports.append(verify_lausch_axioms(relation_module(builtins.i2()), samples, rng))
    reports.append(verify_lausch_axioms(S.crossed.free_module(), samples, rng))
    not_identity = star_identity_failures(U, "0")
    failed = [r.summary() for r in reports if not r.ok]
    ok = not failed and bool(not_identity)
    detail = f"{sum(r.checked for r in reports)} checks; unit at 0 fails on {not_identity}"
    if failed:
        detail += "; " + "; ".join(failed)
    return ok, detail


def words_up_to(n_letters: int, max_len: int):
    letters = range(n_letters)
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


@_timed("8 cover keys match the witness test")
def criterion_keys(max_len: int = 5, cross_samples: int = 5000, seed: int = 0):
    P, M = builtins.load("semilattice")
    words = list(words_up_to(4, max_len))
    keys = [t_of_word(w, M).key for w in words]
    groups: dict = {}
    for i, w in enumerate(words):
        groups.setdefault(free_reduce(w), []).append(i)
    # a successful witness forces equal Munn end roots, i.e. equal free
    # reductions, so pairs in different groups fail both tests
    discrepancies = 0
    pairs = 0
    for idx in groups.values():
        for a, b in itertools.combinations_with_replacement(idx, 2):
            pairs += 1
            if (keys[a] == keys[b]) != witness_equal(words[a], words[b], M):
                discrepancies += 1
    rng = random.Random(seed)
    for _ in range(cross_samples):
        a, b = rng.randrange(len(words)), rng.randrange(len(words))
        if free_reduce(words[a]) == free_reduce(words[b]):
            continue
        pairs += 1
        if keys[a] == keys[b] or witness_equal(words[a], words[b], M):
            discrepancies += 1
    return discrepancies == 0, f"{len(words)} words, {pairs} pairs compared, {discrepancies} discrepancies"


def wagner_classes(max_len: int, closure_len: int, n_gens: int = 2):
    """Union-find classes of the Wagner rewrites ``u u⁻¹ u = u`` and
    ``u u⁻¹ v v⁻¹ = v v⁻¹ u u⁻¹`` on all words of length <= closure_len,
    restricted to words of length <= max_len."""
    n_letters = 2 * n_gens
    words = list(words_up_to(n_letters, closure_len))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    # idempotent factors u u⁻¹ with |u u⁻¹| bounded
    idem = [u + inverse_word(u) for u in words_up_to(n_letters, closure_len // 2) if u]
    for w in words:
        n = len(w)
        for i in range(n):
            for j in range(i + 1, n + 1):
                u = w[i:j]
                if n + 2 * len(u) <= closure_len:
                    union(w, w[:j] + inverse_word(u) + u + w[j:])
    for a in idem:
        for b in idem:
            if a < b and len(a) + len(b) <= closure_len:
                ab, ba = a + b, b + a
                room = closure_len - len(ab)
                for pre in words_up_to(n_letters, room):
                    for suf in words_up_to(n_letters, room - len(pre)):
                        union(pre + ab + suf, pre + ba + suf)
    small = [w for w in words if len(w) <= max_len]
    return small, [find(index[w]) for w in small]


@_timed("9 Munn trees match the Wagner rewrite closure")
def criterion_wagner(max_len: int = 6, closure_len: int = 8):
    small, cls = wagner_classes(max_len, closure_len)
    A = Alphabet(["x", "y"])
    trees = [munn_tree(w, A) for w in small]
    by_class: dict = {}
    by_tree: dict = {}
    for c, t in zip(cls, trees):
        by_class.setdefault(c, set()).add(t)
        by_tree.setdefault(t, set()).add(c)
    split = sum(1 for s in by_class.values() if len(s) > 1)
    merged = sum(1 for s in by_tree.values() if len(s) > 1)
    ok = split == 0 and merged == 0
    return ok, (f"{len(small)} words, {len(by_tree)} Munn classes, {len(by_class)} rewrite classes; "
                f"{split} rewrite classes with several trees, {merged} trees spanning several classes")


CRITERIA = (criterion_semilattice, criterion_bicyclic, criterion_i2, criterion_zero,
            criterion_exact_sequence, criterion_kappa, criterion_axioms, criterion_keys,
            criterion_wagner)


# per-builtin suite for the CLI ---------------------------------------------


def _named(rep: Report, name: str) -> Report:
    rep.name = name
    return rep


def suite(P, M, seed: int = 0, samples: int = 200) -> list[str]:
    """Run every sampled check that applies to (P, M); returns PASS/FAIL lines.

    ``P`` may be None (table-only monoid); the checks that need relations
    are then skipped.
    """
    rng = random.Random(seed)
    mod = relation_module(M)
    reps = [_named(verify_lausch_axioms(mod, samples, rng), "relation module axioms"),
            verify_conjugation_action(mod, samples, rng),
            verify_module_isomorphism(mod, samples, rng)]
    lines = [r.summary() for r in reps]
    if P is None or not P.relations:
        return lines
    S = SquierComplex(P, M)
    X = S.crossed
    for rep in (check_pseudoregular(S, S.sample_axioms, samples, rng),
                check_crossed_module(X, samples, rng),
                check_star_groups(S, max(1, samples // 4), rng),
                _named(verify_lausch_axioms(X.free_module(), samples, rng), "free module axioms")):
        lines.append(rep.summary())
    es = X.verify_exact_sequence()
    lines.append(f"{'PASS' if es.ok else 'FAIL'} exact sequence"
                 + (f": {es.problems[0]}" if es.problems else ""))
    return lines


def i2_presentation_check(budget: StephenBudget = StephenBudget()) -> str:
    ok = same_monoid(enumerate_monoid(builtins.i2_presentation(), budget), builtins.i2())
    return f"{'PASS' if ok else 'FAIL'} candidate presentation gives the partial-bijection table"
