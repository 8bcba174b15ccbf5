import random

import pytest

from invmon import builtins
from invmon.backend import enumerate_monoid
from invmon.cover import psi, t_inverse, t_multiply, t_of_word
from invmon.errors import NotComposable
from invmon.squier import (FixtureU, SquierComplex, SquierEdge, check_pseudoregular,
                           star_identity_failures)
from invmon.verification import check_star_groups


@pytest.fixture(scope="module", params=["semilattice", "i2"])
def S(request):
    P = builtins.presentation_for(request.param)
    return SquierComplex(P, enumerate_monoid(P))


def test_edge_endpoints(S):
    one = S.vone()
    for rel, (l, r) in enumerate(S.P.relations):
        ed = SquierEdge(one, rel, one)
        src, dst = S.edge_endpoints(ed)
        assert (src, dst) == (t_of_word(l, S.M), t_of_word(r, S.M))
        assert S.edge_endpoints(ed.reversed()) == (dst, src)
        # relations hold in M
        assert psi(src) == psi(dst)


def test_fixture_u():
    U = FixtureU()
    assert check_pseudoregular(U, U.sample, 500, random.Random(0)).ok
    assert U.star_product(("e", "f"), ("e", "e")) == ("e", "0")
    assert star_identity_failures(U, "0") == [("0", "e"), ("0", "f")]
    assert star_identity_failures(U, "1") == []


def test_squier_is_pseudoregular(S):
    rep = check_pseudoregular(S, S.sample_axioms, 300, random.Random(1))
    assert rep.ok, rep.summary()
    a = S.random_path(random.Random(2), 2)
    assert S.left(S.vone(), a) == a == S.right(a, S.vone())


def test_star_groups(S):
    rep = check_star_groups(S, 150, random.Random(3))
    assert rep.ok, rep.summary()


def test_compose_checks_endpoints(S):
    rng = random.Random(4)
    a = S.random_path(rng, 1)
    with pytest.raises(NotComposable):
        S.compose(a, S.unit(t_of_word((0, 0, 0), S.M)))


def test_rectification_examples(S):
    rng = random.Random(5)
    e = t_of_word((), S.M)
    assert S.lambda_rectify(S.unit(e)) == []
    for _ in range(30):
        a = S.random_star_path(rng, 3)
        gens = S.lambda_rectify(a)
        # a λ-word rectifies to itself
        for g in gens:
            ed = S.lambda_edge(g)
            assert S.lambda_rectify(S.edge_path(SquierEdge(ed.p, ed.rel, ed.q, True))) == [
                g if g.sign > 0 else g.inverse()]
        # the explicit path of a λ-word has the same canonical form
        p = S.lambda_path(gens, psi(a.start))
        assert S.path_canonical_form(p) == S.path_canonical_form(a)


def test_cancelling_pair_rectifies_away(S):
    rng = random.Random(6)
    for _ in range(20):
        a = S.random_star_path(rng, 2)
        v = S.r(a)
        ed = S.random_edge_at(v, rng)
        if ed is None:
            continue
        g = S.edge_path(ed)
        b = S.compose(S.compose(a, g), S.reverse(g))
        assert S.path_canonical_form(b) == S.path_canonical_form(a)
        assert S.two_cell_equiv(S.lambda_rectify(b), S.lambda_rectify(a))


def two_cell(S, rng):
    """The two boundary paths of a square formed by two disjoint rewrites."""
    n = len(S.P.relations)
    r1, r2 = rng.randrange(n), rng.randrange(n)
    p, m, q = (S.random_element(rng, 2) for _ in range(3))
    h1, k1, h2, k2 = S.h[r1], S.k[r1], S.h[r2], S.k[r2]
    mul = lambda *ts: ts[0] if len(ts) == 1 else t_multiply(ts[0], mul(*ts[1:]))
    start = mul(p, h1, m, h2, q)
    first = [SquierEdge(p, r1, mul(m, h2, q)), SquierEdge(mul(p, k1, m), r2, q)]
    second = [SquierEdge(mul(p, h1, m), r2, q), SquierEdge(p, r1, mul(m, k2, q))]
    shift = t_inverse(start)
    return (S.left(shift, S.path(start, first)), S.left(shift, S.path(start, second)))


def test_two_cells_are_equivalent(S):
    rng = random.Random(7)
    for _ in range(25):
        a, b = two_cell(S, rng)
        assert S.path_canonical_form(a) == S.path_canonical_form(b)
        assert S.two_cell_equiv(S.lambda_rectify(a), S.lambda_rectify(b))


def test_different_canonical_forms_are_not_found(S):
    rng = random.Random(8)
    checked = 0
    while checked < 10:
        a, b = S.random_star_path(rng, 2), S.random_star_path(rng, 2)
        if a.start != b.start or S.path_canonical_form(a) == S.path_canonical_form(b):
            continue
        checked += 1
        assert not S.two_cell_equiv(S.lambda_rectify(a), S.lambda_rectify(b), search_bound=300)
