import itertools

import pytest

from invmon import builtins
from invmon.backend import (Presentation, StephenBudget, Verdict, adjoin_zero, enumerate_monoid,
                            from_partial_bijections, m_equal, parse_presentation, same_monoid,
                            schutzenberger_graph, stephen_graph)
from invmon.errors import (NameClash, NotFinishedWithinBudget, NotIdempotent, ParseError,
                           UnknownGenerator)


def closure_of_partial_maps(gens):
    """Brute-force submonoid generated by partial injections (dicts), inverses included."""
    gens = list(gens) + [{v: k for k, v in g.items()} for g in gens]
    ident = {1: 1, 2: 2}
    seen = {frozenset(ident.items())}
    frontier = [ident]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                p = {k: g[v] for k, v in s.items() if v in g}
                key = frozenset(p.items())
                if key not in seen:
                    seen.add(key)
                    nxt.append(p)
        frontier = nxt
    return seen


def test_i2_has_seven_elements(i2):
    assert i2.order == 7
    assert len(closure_of_partial_maps([{1: 2, 2: 1}, {1: 1}])) == 7
    assert len(i2.idempotents) == 4


def test_partial_bijection_small_cases():
    assert from_partial_bijections(2, {}).order == 1
    assert from_partial_bijections(2, {"eps": {1: 1}}).order == 2


def test_enumerate_examples(semilattice):
    assert semilattice[1].order == 4
    with pytest.raises(NotFinishedWithinBudget):
        enumerate_monoid(builtins.bicyclic(), StephenBudget(max_expansions=50))
    assert enumerate_monoid(Presentation.from_strings("x", [("x", "1")])).order == 1
    assert enumerate_monoid(builtins.semilattice0()).order == 5


def test_i2_candidate_presentation(i2):
    M = enumerate_monoid(builtins.i2_presentation())
    assert same_monoid(M, i2) and same_monoid(i2, M)


def test_m_equal_examples():
    B = builtins.bicyclic()
    x = B.alphabet.parse
    # x x' = 1 holds in B, but the L-class of 1 is infinite: its graph never
    # converges, so the answer stays Unknown rather than Equal
    assert m_equal(B, x("x x'"), (), StephenBudget(50)) is Verdict.UNKNOWN
    free = Presentation.from_strings("x")
    assert m_equal(free, (0,), (0, 1)) is Verdict.UNEQUAL
    S = builtins.semilattice()
    assert m_equal(S, S.alphabet.parse("e f"), S.alphabet.parse("f e")) is Verdict.EQUAL
    # truncated graphs never give a verdict
    assert m_equal(B, x("x' x"), x("x' x x' x"), StephenBudget(3)) is Verdict.UNKNOWN


def test_stephen_examples():
    B = builtins.bicyclic()
    g = stephen_graph(B, B.alphabet.parse("x' x"), StephenBudget(10))
    assert not g.converged and g.is_simple_path() and g.status == "Truncated(10)"
    free = Presentation.from_strings("x")
    g = stephen_graph(free, (0, 1))
    assert g.converged and g.num_vertices == 2 and len(g.edges) == 1
    S = builtins.semilattice()
    ef = S.alphabet.parse("e f")
    g = stephen_graph(S, ef + tuple(reversed([a ^ 1 for a in ef])))
    assert g.converged and g.num_vertices == 1 and len(g.edges) == 2


def test_stephen_agrees_with_exact_backend(semilattice):
    P, M = semilattice
    for e in M.idempotents:
        assert stephen_graph(P, M.words[e]).isomorphic_to(schutzenberger_graph(M, e))


def test_stephen_monotone_on_bicyclic():
    B = builtins.bicyclic()
    w = B.alphabet.parse("x' x")
    prev = None
    for b in range(1, 21):
        g = stephen_graph(B, w, StephenBudget(b))
        if prev is not None:
            assert g.num_vertices >= prev.num_vertices
            assert prev.embedding_into(g) is not None
        prev = g


def test_graphs_are_deterministic_both_ways(i2, semilattice0):
    for M in (i2, semilattice0[1]):
        for e in M.idempotents:
            g = schutzenberger_graph(M, e)
            assert g.is_deterministic() and g.is_connected()
            assert g.rank == len(g.edges) - g.num_vertices + 1


def test_schutzenberger_examples(semilattice, i2):
    M = semilattice[1]
    g = schutzenberger_graph(M, M.element_by_name("e f"))
    assert (g.num_vertices, sorted(x for x, _, _ in g.edges)) == (1, [0, 1])
    g = schutzenberger_graph(i2, 0)
    assert g.num_vertices == 2
    assert sorted(g.edges) == [(0, 0, 1), (0, 1, 0)]  # two tau edges
    T = enumerate_monoid(Presentation.from_strings("x y", [("x", "1"), ("y", "1")]))
    g = schutzenberger_graph(T, 0)
    assert g.num_vertices == 1 and len(g.edges) == 2
    with pytest.raises(NotIdempotent):
        schutzenberger_graph(i2, i2.element_by_name("tau"))


def test_adjoin_zero():
    P0 = adjoin_zero(builtins.semilattice())
    assert len(P0.alphabet) == 3 and len(P0.relations) == 8
    with pytest.raises(NameClash):
        adjoin_zero(P0)
    empty = adjoin_zero(Presentation.from_strings(""))
    assert len(empty.alphabet) == 1 and len(empty.relations) == 1


def test_parse_presentation():
    P = parse_presentation("# comment\ngenerators: x\nrelation: x x' = 1\n")
    assert P.relations == (((0, 1), ()),)
    for bad in ("relation: x = 1", "generators: x\nrelation: x", "generators: x\nrule: x = x", ""):
        with pytest.raises(ParseError):
            parse_presentation(bad)
    with pytest.raises(UnknownGenerator):
        parse_presentation("generators: x\nrelation: y = 1")


def test_monoid_tables_are_inverse(i2):
    for s, t in itertools.product(range(i2.order), repeat=2):
        assert i2.mul[i2.mul[s][i2.inv[s]]][s] == s
        e, f = i2.mul[s][i2.inv[s]], i2.mul[t][i2.inv[t]]
        assert i2.mul[e][f] == i2.mul[f][e]
