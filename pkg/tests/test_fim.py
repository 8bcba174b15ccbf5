import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invmon.errors import MalformedToken, UnknownGenerator
from invmon.fim import (Alphabet, fim_inverse, fim_leq, fim_multiply, free_reduce, inverse_word,
                        munn_tree, parse_word)

XY = Alphabet(["x", "y"])
words = st.lists(st.integers(0, 3), max_size=8).map(tuple)


def fold_path(w):
    """Stallings fold of the path labelled w; returns (vertices, edges, start == end)."""
    n = len(w) + 1
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    edges = {(i, a >> 1, i + 1) if a % 2 == 0 else (i + 1, a >> 1, i) for i, a in enumerate(w)}
    changed = True
    while changed:
        changed = False
        live = {(find(s), x, find(t)) for s, x, t in edges}
        seen = {}
        for s, x, t in sorted(live):
            for key, other in (((s, x, "out"), t), ((t, x, "in"), s)):
                if key in seen and find(seen[key]) != find(other):
                    parent[find(other)] = find(seen[key])
                    changed = True
                seen.setdefault(key, other)
    live = {(find(s), x, find(t)) for s, x, t in edges}
    verts = {find(v) for v in range(n)}
    return len(verts), len(live), find(0) == find(n - 1)


def test_parse_word_examples():
    X = Alphabet(["x"])
    assert parse_word("x x' x", X) == (0, 1, 0)
    assert parse_word("1", X) == ()
    assert parse_word("ab c'", Alphabet(["ab", "c"])) == (0, 3)


@pytest.mark.parametrize("text,err", [("x''", MalformedToken), ("q", UnknownGenerator),
                                      ("x 1", MalformedToken)])
def test_parse_word_errors(text, err):
    with pytest.raises(err):
        parse_word(text, Alphabet(["x"]))


def test_free_reduce_examples():
    E = Alphabet(["e", "f"])
    assert free_reduce(parse_word("e e'", E) + (0,)) == (0,)
    assert free_reduce(()) == ()
    assert free_reduce(parse_word("e f f' e'", E)) == ()


def test_munn_tree_small_cases():
    X = Alphabet(["x"])
    t = munn_tree((0, 1), X)
    assert t.size == 2 and len(t.edges()) == 1 and t.end == ()
    assert munn_tree((0, 1, 0), X) == munn_tree((0,), X)
    assert t.is_idempotent() and not munn_tree((0,), X).is_idempotent()


@settings(max_examples=200, deadline=None)
@given(words)
def test_munn_tree_matches_stallings_fold(w):
    t = munn_tree(w, XY)
    v, e, closed = fold_path(w)
    assert (t.size, len(t.edges()), t.is_idempotent()) == (v, e, closed)


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_multiply_is_concatenation(u, v):
    assert fim_multiply(munn_tree(u, XY), munn_tree(v, XY)) == munn_tree(u + v, XY)
    assert fim_inverse(munn_tree(u, XY)) == munn_tree(inverse_word(u), XY)


def test_inverse_monoid_axioms():
    rng = random.Random(5)
    for _ in range(50):
        u = munn_tree([rng.randrange(4) for _ in range(rng.randint(0, 8))], XY)
        assert u * u.inverse() * u == u
    e = munn_tree((0, 1), XY)
    assert e * e == e


def test_natural_order():
    x = munn_tree((0,), XY)
    assert fim_leq(x, x)
    assert not fim_leq(x, munn_tree((0, 1), XY))
    rng = random.Random(9)
    for _ in range(100):
        w = munn_tree([rng.randrange(4) for _ in range(rng.randint(0, 6))], XY)
        u = [rng.randrange(4) for _ in range(rng.randint(0, 4))]
        e = munn_tree(tuple(u) + inverse_word(u), XY)
        assert fim_leq(w * e, w)
        s, t = w * e, w
        if fim_leq(s, t) and fim_leq(t, s):
            assert s == t


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_idempotents_commute(u, v):
    e = munn_tree(u + inverse_word(u), XY)
    f = munn_tree(v + inverse_word(v), XY)
    assert e * f == f * e
