import random

import pytest
import sympy

from invmon import builtins
from invmon.backend import Presentation, enumerate_monoid
from invmon.cover import psi, t_of_word
from invmon.errors import AnchorMismatch
from invmon.verification import check_crossed_module
from invmon.xmod import FreeCrossedModule, crossed_basis, verify_exact_sequence


@pytest.fixture(scope="module")
def X():
    P = builtins.semilattice()
    return FreeCrossedModule(P, enumerate_monoid(P))


def test_free_bases(X):
    M = X.M
    ef = M.element_by_name("e f")
    z = X.z_sets()
    assert z[M.element_by_name("e")] == [0] and z[M.element_by_name("f")] == [1]
    assert z[ef] == [2] and z[0] == []
    assert len(X.free_module_basis(ef)) == 3


def test_rbar_on_semilattice(X):
    M = X.M
    R = X.rbar_matrix(M.element_by_name("e f"))
    assert [[abs(v) for v in row] for row in R.tolist()] == [[1, 0, 0], [0, 1, 0]]
    assert sympy.Matrix(R.tolist()).rank() == 2


@pytest.mark.parametrize("name", ["semilattice", "i2", "semilattice0"])
def test_rbar_does_not_depend_on_the_lift(name):
    P = builtins.presentation_for(name)
    M = builtins.load(name)[1]
    X = FreeCrossedModule(P, M)
    for e in M.idempotents:
        for y in X.free_module_basis(e):
            cols = {tuple(X.rbar_column(e, y, u)) for u in X.lifts(y[1], 5)}
            assert len(cols) == 1


def test_trivial_relation_column_is_zero():
    P = Presentation.from_strings("e", [("e e", "e"), ("e", "e")])
    X = FreeCrossedModule(P, enumerate_monoid(P))
    e = X.M.element_by_name("e")
    for i, y in enumerate(X.free_module_basis(e)):
        if y[0] == 1:
            assert not any(X.rbar_column(e, y))


def test_single_idempotent_presentation_is_exact():
    P = Presentation.from_strings("e", [("e e", "e")])
    rep = verify_exact_sequence(P, enumerate_monoid(P))
    assert rep.ok
    assert [(en.free_rank, en.image_rank, en.kernel_rank) for en in rep.entries] == [(0, 0, 0), (1, 1, 0)]


def test_exact_sequence_ranks():
    P = builtins.semilattice()
    rep = verify_exact_sequence(P, enumerate_monoid(P))
    got = {en.e: (en.free_rank, en.image_rank, en.kernel_rank) for en in rep.entries}
    assert got == {"1": (0, 0, 0), "e": (1, 1, 0), "f": (1, 1, 0), "e f": (3, 2, 1)}
    assert rep.ok and rep.natural and rep.kernel_closed
    rep = verify_exact_sequence(builtins.i2_presentation(), builtins.i2())
    assert rep.ok


def test_omega_lies_in_the_kernel(X):
    M = X.M
    cb = crossed_basis(X.P, M)
    ef = M.element_by_name("e f")
    assert cb.sets[ef] == [0, 1, 2] and cb.sets[M.element_by_name("e")] == [0]
    for (i, x), w in cb.omega.items():
        m = psi(w)
        assert M.is_idempotent(m) and M.dom(m) == M.ran(m)


def test_canonical_form_examples(X):
    M = X.M
    e = M.element_by_name("e")
    g = X.generator(0, t_of_word(M.words[e], M))
    cf = X.canonical_form(g)
    assert cf.vec == (1,) and len(cf.k) == 1
    assert X.canonical_form(g * g.inverse()).is_identity()
    assert X.canonical_form(X.identity(e)).is_identity()
    assert X.delta(X.identity(e)).is_idempotent()
    with pytest.raises(AnchorMismatch):
        X.act(g, t_of_word((), M))


@pytest.mark.parametrize("name", ["semilattice", "i2", "semilattice0"])
def test_crossed_module_axioms(name):
    P = builtins.presentation_for(name)
    M = builtins.load(name)[1]
    rep = check_crossed_module(FreeCrossedModule(P, M), 200, random.Random(4))
    assert rep.ok, rep.summary()
