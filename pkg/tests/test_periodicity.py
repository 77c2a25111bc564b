import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import thetas
from oracles import is_period_brute
from kg2.core import flip_from_permutation, flip_theta, identity_theta, make_theta
from kg2.periodicity import (
    AperiodicityCertificate,
    DegeneratePeriodicity,
    PeriodWitness,
    SearchSpaceTooLarge,
    candidates,
    check_period,
    find_period,
    verify_witness,
)


def pairs(G):
    return {k: G(*k) for k in G.pairs()}


def test_flip_has_period_one_one():
    G = flip_theta(2)
    W = find_period(G, 4, 4)
    assert isinstance(W, PeriodWitness)
    assert (W.a, W.b) == (1, 1)
    assert W.gamma == {(1,): (1,), (2,): (2,)}
    assert verify_witness(G, W)
    assert is_period_brute(2, 2, pairs(G), 1, 1, W.gamma)


def test_identity_is_aperiodic_up_to_bounds():
    G = identity_theta(2, 2)
    cert = find_period(G, 4, 4)
    assert isinstance(cert, AperiodicityCertificate)
    assert [(c.a, c.b) for c in cert.checked_pairs] == [(1, 1), (2, 2), (3, 3), (4, 4)]
    assert cert.to_json()["periodic"] is False


def test_identity_has_no_bijection_at_all_small_sizes():
    # e_u f_v = f_v e_u for theta = id, so no gamma can work; check every bijection
    G = identity_theta(2, 2)
    for a in (1, 2):
        dom = list(itertools.product((1, 2), repeat=a))
        for img in itertools.permutations(dom):
            assert not is_period_brute(2, 2, pairs(G), a, a, dict(zip(dom, img)))


def test_failed_candidates_carry_real_counterexamples():
    G = identity_theta(2, 2)
    for c in find_period(G, 3, 3).checked_pairs:
        assert len(c.u) == c.a and len(c.v) == c.b
        assert c.reason


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_twisted_flip_has_period_one_one(n):
    for alpha in itertools.permutations(range(1, n + 1)):
        G = flip_from_permutation(alpha)
        if n == 1:
            assert isinstance(find_period(G), DegeneratePeriodicity)
        W = check_period(G, 1, 1)
        assert W is not None and verify_witness(G, W)
        assert is_period_brute(n, n, pairs(G), 1, 1, W.gamma)


def test_alpha_swap_example():
    W = find_period(flip_from_permutation((2, 1)), 2, 2)
    assert (W.a, W.b) == (1, 1)


@pytest.mark.parametrize("alpha", [(1, 2), (2, 1), (2, 3, 1), (1, 3, 2)])
def test_period_multiples(alpha):
    G = flip_from_permutation(alpha)
    W2 = check_period(G, 2, 2)
    assert W2 is not None and verify_witness(G, W2)
    assert is_period_brute(G.m, G.n, pairs(G), 2, 2, W2.gamma)


@given(thetas(max_m=3, max_n=3), st.integers(1, 3), st.integers(1, 3))
def test_cardinality_is_necessary(G, a, b):
    if G.m ** a != G.n ** b:
        assert check_period(G, a, b) is None


@given(thetas(max_m=2, max_n=2))
def test_witnesses_are_sound(G):
    res = find_period(G, 3, 3)
    if isinstance(res, PeriodWitness):
        assert verify_witness(G, res)
        assert is_period_brute(G.m, G.n, pairs(G), res.a, res.b, res.gamma)
        W2 = check_period(G, 2 * res.a, 2 * res.b)
        assert W2 is not None


def test_tampered_witness_rejected():
    G = flip_theta(2)
    W = PeriodWitness(1, 1, {(1,): (2,), (2,): (1,)})
    assert not verify_witness(G, W)


def test_degenerate_and_rectangular_cases():
    res = find_period(identity_theta(1, 3))
    assert isinstance(res, DegeneratePeriodicity)
    assert res.to_json()["periodic"] is True
    cert = find_period(identity_theta(2, 3))
    assert isinstance(cert, AperiodicityCertificate) and cert.checked_pairs == ()
    assert candidates(identity_theta(2, 4), 4, 4) == [(2, 1), (4, 2)]


def test_cap(monkeypatch):
    with pytest.raises(SearchSpaceTooLarge):
        find_period(identity_theta(2, 2), 4, 4, cap=8)
    monkeypatch.setenv("KG2_CAP", "4")
    with pytest.raises(SearchSpaceTooLarge):
        find_period(identity_theta(2, 2), 4, 4)


def test_invalid_bounds():
    with pytest.raises(ValueError):
        find_period(flip_theta(2), 0, 1)
    with pytest.raises(ValueError):
        check_period(flip_theta(2), 0, 1)


def test_nontrivial_gamma():
    # e_i f_j = f_alpha^-1(i) e_alpha(j), so gamma = alpha^-1
    G = flip_from_permutation((2, 3, 1))
    W = check_period(G, 1, 1)
    assert W.gamma == {(1,): (3,), (2,): (1,), (3,): (2,)}
    assert is_period_brute(3, 3, pairs(G), 1, 1, W.gamma)
