import random

import pytest
from hypothesis import given, strategies as st

from conftest import thetas, words
from oracles import letters_of, terminal_forms
from kg2.core import (
    EMPTY,
    IndexOutOfRange,
    NormalWord,
    NotABijection,
    NotAPermutation,
    Theta2Graph,
    TwoGraphError,
    WordSyntaxError,
    anti_normal_form,
    concat,
    dotted,
    e,
    enumerate_words,
    f,
    flip_from_permutation,
    flip_theta,
    format_word,
    identity_theta,
    make_theta,
    normal_form,
    parse_word,
    random_theta,
    words_up_to,
)


def test_flip_examples():
    G = flip_theta(2)
    assert normal_form(parse_word("f1.e2"), G) == NormalWord((1,), (2,))
    assert normal_form(parse_word("f1.e2"), identity_theta(2, 2)) == NormalWord((2,), (1,))
    assert format_word(normal_form(parse_word("e1"), G)) == "e(1) f()"


def test_relation_is_respected():
    G = random_theta(3, 2, random.Random(7))
    for i, j in G.pairs():
        a, b = G(i, j)
        assert normal_form([e(i), f(j)], G) == normal_form([f(b), e(a)], G)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2)])
def test_normal_form_matches_exhaustive_rewriting(m, n):
    G = random_theta(m, n, random.Random(m * 10 + n))
    forms = terminal_forms(m, n, {k: G(*k) for k in G.pairs()}, 5)
    for w, terms in forms.items():
        assert len(terms) == 1
        (t,) = terms
        nf = normal_form(letters_of(w), G)
        assert t == tuple(nf.u) + tuple(-j for j in nf.v)


@given(st.data())
def test_normal_form_is_idempotent_and_keeps_degree(data):
    G = data.draw(thetas())
    w = data.draw(words(G))
    nf = normal_form(w, G)
    assert normal_form(nf.letters(), G) == nf
    assert nf.degree == (sum(x.color == "blue" for x in w), sum(x.color == "red" for x in w))


@given(st.data())
def test_concatenation_is_associative(data):
    G = data.draw(thetas())
    a, b, c = (normal_form(data.draw(words(G, 4)), G) for _ in range(3))
    assert concat(concat(a, b, G), c, G) == concat(a, concat(b, c, G), G)
    assert concat(EMPTY, a, G) == a == concat(a, EMPTY, G)


@given(st.data())
def test_anti_normal_form_names_the_same_element(data):
    G = data.draw(thetas())
    w = data.draw(words(G))
    v, u = anti_normal_form(w, G)
    assert normal_form([f(j) for j in v] + [e(i) for i in u], G) == normal_form(w, G)


@given(st.data())
def test_rewrite_steps_bounded(data):
    G = data.draw(thetas())
    w = data.draw(words(G, 8))
    stats = {}
    nf = normal_form(w, G, stats=stats)
    assert stats["steps"] <= len(nf.u) * len(nf.v)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_counting(m, n):
    G = identity_theta(m, n)
    for k in range(4):
        for l in range(4):
            ws = enumerate_words(G, k, l)
            assert len(ws) == m ** k * n ** l == len(set(ws))
            assert all(normal_form(w.letters(), G) == w for w in ws)


def test_words_up_to_order():
    G = identity_theta(2, 2)
    ws = list(words_up_to(G, 2))
    assert ws[0] == EMPTY
    assert [len(w) for w in ws] == sorted(len(w) for w in ws)
    assert len(ws) == 1 + 4 + 12


def test_theta_validation():
    with pytest.raises(NotABijection):
        make_theta(2, 1, {(1, 1): (1, 1), (2, 1): (1, 1)})
    with pytest.raises(NotABijection):
        make_theta(2, 1, {(1, 1): (1, 1)})
    with pytest.raises(IndexOutOfRange):
        make_theta(1, 1, {(1, 1): (2, 1)})
    with pytest.raises(NotAPermutation):
        flip_from_permutation((1, 1))
    with pytest.raises(TwoGraphError):
        Theta2Graph.from_json({"m": 1})


def test_flip_from_permutation_formula():
    G = flip_from_permutation((2, 3, 1))
    for i in range(1, 4):
        for j in range(1, 4):
            assert G(i, j) == ((2, 3, 1)[j - 1], (3, 1, 2)[i - 1])
    assert flip_from_permutation((1, 2)) == flip_theta(2)


@given(thetas())
def test_theta_json_round_trip(G):
    assert Theta2Graph.from_json(G.to_json()) == G


def test_parse_word():
    assert parse_word("") == [] == parse_word("1")
    assert parse_word("e1.f12") == [e(1), f(12)]
    for bad in ("e1..f2", "g1", "e0", "e1.f"):
        with pytest.raises(WordSyntaxError):
            parse_word(bad)
    with pytest.raises(IndexOutOfRange):
        normal_form(parse_word("f3"), identity_theta(2, 2))
    assert dotted(NormalWord((1, 2), (2,))) == "e1.e2.f2"
