import itertools
import random

import pytest

from invmon import builtins
from invmon.backend import StephenBudget, stephen_graph
from invmon.cover import (KernelGroup, basis_multiply, kernel_group, psi, t_idempotent,
                          t_inverse, t_multiply, t_of_word, witness_equal)
from invmon.errors import AlphabetMismatch, NotAClosedPath, NotInKernelComponent
from invmon.fim import inverse_word, munn_tree
from invmon.verification import _random_basis_word, _random_closed_path


def rand_word(rng, n_letters, max_len=6):
    return tuple(rng.randrange(n_letters) for _ in range(rng.randint(0, max_len)))


def test_key_examples(semilattice):
    P, M = semilattice
    w = P.alphabet.parse
    t = t_of_word(w("e f f' e'"), M)
    assert t.is_idempotent() and t.e == M.evaluate(w("e f f' e'"))
    ef, fe = t_of_word(w("e f"), M), t_of_word(w("f e"), M)
    assert ef != fe and psi(ef) == psi(fe)
    with pytest.raises(AlphabetMismatch):
        t_of_word((7,), M)


@pytest.mark.parametrize("name", ["semilattice", "i2"])
def test_cover_laws(name):
    P = builtins.presentation_for(name)
    M = builtins.load(name)[1]
    rng = random.Random(3)
    n = 2 * len(M.alphabet)
    for _ in range(100):
        u, v = rand_word(rng, n), rand_word(rng, n)
        tu, tv = t_of_word(u, M), t_of_word(v, M)
        # homomorphism, padding by w⁻¹w, inverse, ψ = θ
        assert t_multiply(tu, tv) == t_of_word(u + v, M)
        assert tu == t_of_word(u + inverse_word(u) + u, M)
        assert t_inverse(tu) == t_of_word(inverse_word(u), M)
        assert psi(tu) == M.evaluate(u)
        # the stored representative names the same element
        assert t_of_word(tu.rep, M) == tu
        # idempotent pure: idempotent in the cover forces a Munn idempotent
        if tu.is_idempotent():
            assert munn_tree(u, M.alphabet).is_idempotent()


def test_idempotents_biject_with_monoid_idempotents(i2):
    M = i2
    keys = set()
    for w in itertools.chain.from_iterable(itertools.product(range(4), repeat=k) for k in range(7)):
        t = t_of_word(w, M)
        if t.is_idempotent():
            keys.add(t.key)
    assert sorted(e for _, e in keys) == sorted(M.idempotents)
    # ψ separates idempotents
    assert len({psi(t_idempotent(M, e)) for e in M.idempotents}) == len(M.idempotents)


def test_witness_agrees_with_keys_on_sample(semilattice):
    P, M = semilattice
    rng = random.Random(8)
    for _ in range(300):
        u = rand_word(rng, 4, 4)
        v = u + rand_word(rng, 4, 2) if rng.random() < 0.5 else rand_word(rng, 4, 4)
        assert witness_equal(u, v, M) == (t_of_word(u, M) == t_of_word(v, M))


def test_kernel_ranks(semilattice, i2):
    M = semilattice[1]
    assert kernel_group(M, M.element_by_name("e f")).rank == 2
    assert kernel_group(i2, 0).rank == 1
    B = builtins.bicyclic()
    for b in (1, 5, 20):
        g = stephen_graph(B, B.alphabet.parse("x' x"), StephenBudget(b))
        assert KernelGroup(g).rank == 0


@pytest.mark.parametrize("name", ["semilattice", "i2", "semilattice0"])
def test_kappa_is_an_isomorphism(name):
    M = builtins.load(name)[1]
    rng = random.Random(11)
    for e in M.idempotents:
        K = kernel_group(M, e)
        assert K.kappa(()) == ()
        assert K.rank == len(K.graph.edges) - K.graph.num_vertices + 1
        for _ in range(40):
            u = _random_closed_path(K, rng, 5)
            v = _random_closed_path(K, rng, 5)
            assert K.kappa(u + v) == basis_multiply(K.kappa(u), K.kappa(v))
            k = _random_basis_word(K, rng)
            assert K.kappa(K.kappa_inv(k)) == k
            # passing through the cover loses nothing
            assert K.from_element(K.to_element(k)) == k
            t = K.element_of_path(u)
            assert psi(t) == e


def test_kappa_errors(i2):
    K = kernel_group(i2, 0)
    eps = i2.alphabet.letter("eps")
    with pytest.raises(NotAClosedPath):
        K.kappa((eps,))
    with pytest.raises(NotAClosedPath):
        K.kappa((0,))  # tau leaves the base without returning
    with pytest.raises(NotInKernelComponent):
        K.from_element(t_of_word((0,), i2))
