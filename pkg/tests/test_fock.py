import warnings

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, strategies as st

import kg2.fock as fock
from oracles import compressed_words, exact_rank
from kg2.atomic import dilate
from kg2.bundled import BUNDLED, one_vertex_seed, swap_seed
from kg2.core import BLUE, RED, flip_theta, identity_theta, normal_form, Letter
from kg2.fock import (
    CapExceeded,
    MatrixRep,
    build_free_fock,
    build_left_regular,
    commutation_residual,
    cuntz_residual,
    defect_residual,
    dump_coo,
    example_3_3_check,
    example_3_3_commutation,
    fock_dimension,
    opnorm,
    star_commute_check,
    structure_check,
    verify_commutation_numeric,
    verify_cuntz_interior,
)
from conftest import thetas


def test_small_dimensions():
    assert build_left_regular(identity_theta(2, 2), 1).dim == 5
    assert build_left_regular(identity_theta(2, 2), 2).dim == 17


def test_dimension_formula_by_counting():
    for m in range(1, 4):
        for n in range(1, 4):
            for L in range(0, 5):
                count = sum(m ** k * n ** l for k in range(L + 1) for l in range(L + 1 - k))
                assert fock_dimension(m, n, L) == count
                if 1 <= L <= 3:
                    assert build_left_regular(identity_theta(m, n), L).dim == count


def test_first_column():
    F = build_left_regular(identity_theta(2, 2), 2)
    col = F.E[0][:, F.index[F.basis[0]]].toarray().ravel()
    target = F.index[normal_form([Letter(BLUE, 1)], F.theta)]
    assert col[target] == 1 and col.sum() == 1


@given(thetas(3, 3))
def test_column_invariant(G):
    F = build_left_regular(G, 3)
    for (color, i), A in F.gens.items():
        A = A.tocsc()
        for w in F.basis:
            col = A[:, F.index[w]]
            if len(w) >= F.L:
                assert col.nnz == 0
            else:
                t = normal_form([Letter(color, i)] + w.letters(), G)
                assert col.nnz == 1 and col[F.index[t], 0] == 1


@pytest.mark.parametrize("G", [identity_theta(2, 2), flip_theta(2), identity_theta(2, 3)])
def test_left_regular_identities(G):
    F = build_left_regular(G, 3)
    assert verify_cuntz_interior(F).residual == 0
    assert verify_commutation_numeric(F).residual == 0


def test_boundary_honesty():
    F = build_left_regular(flip_theta(2), 3)
    everything = np.ones(F.dim, dtype=bool)
    assert cuntz_residual(F, everything) > 0.5
    M = MatrixRep.from_dilation(dilate(one_vertex_seed(), 3))
    assert cuntz_residual(M, np.ones(M.dim, dtype=bool)) > 0.5


def test_corrupted_models_are_detected():
    F = build_left_regular(identity_theta(2, 2), 3)
    bad = dict(F.gens)
    A = bad[(BLUE, 1)].tolil()
    A[0, 0] = 1
    bad[(BLUE, 1)] = A.tocsr()
    G = fock.TruncatedFock(F.theta, F.L, F.basis, F.index, bad, F.level)
    assert verify_cuntz_interior(G).residual > 0
    assert verify_commutation_numeric(G).residual > 0


def test_one_vertex_matrix_rep(dov):
    M = MatrixRep.from_dilation(dov)
    assert verify_cuntz_interior(M).residual == 0
    assert verify_commutation_numeric(M).residual == 0
    assert defect_residual(M) == 0  # every kept vertex keeps its incoming edges
    assert star_commute_check(M).residual <= 1e-12


def test_star_commute_reporting():
    F = build_left_regular(identity_theta(2, 2), 3)
    rep = star_commute_check(F)
    assert not rep.asserted and rep.residual >= 0
    assert rep.to_json()["asserted"] is False
    with pytest.raises(ValueError):
        star_commute_check(build_left_regular(flip_theta(2), 2))


def test_star_commute_detects_corruption(dov):
    M = MatrixRep.from_dilation(dov)
    gens = dict(M.gens)
    gens[(RED, 1)] = gens[(BLUE, 1)]
    bad = MatrixRep(M.theta, M.vertices, M.index, gens, M.level, M.depth, M.P)
    assert star_commute_check(bad).residual > 0


@pytest.mark.parametrize("n", [2, 3])
def test_example_3_3(n):
    vec = example_3_3_check(n, 2)
    vac = build_free_fock(n, 2).vacuum()
    assert np.array_equal(vec, vac)
    assert example_3_3_commutation(n, 3) == 0


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_graph_matrix_coherence(name):
    D = dilate(BUNDLED[name](), 3)
    M = MatrixRep.from_dilation(D)
    for color, table, count in ((BLUE, D.graph.blue, D.graph.m), (RED, D.graph.red, D.graph.n)):
        for k in range(1, count + 1):
            for x in D.graph.vertices:
                assert M.apply(color, k, x) == table.get((k, x))
    for A in M.gens.values():
        mods = np.abs(A.data)
        assert np.all(np.abs(mods - 1) <= 1e-12)
    assert not np.any(M.P & ~M.interior())


def test_structure_one_vertex(dov):
    sc = structure_check(MatrixRep.from_dilation(dov), 4)
    assert sc.span_dim == 1 and sc.stabilized and sc.passed
    assert sc.residual_selfadjoint == 0 and sc.residual_invariance == 0


def test_structure_swap(dswap):
    sc = structure_check(MatrixRep.from_dilation(dswap), 4)
    assert sc.passed and sc.residual_selfadjoint <= 1e-10
    assert sc.residual_invariance <= 1e-10
    A = swap_seed()
    core = list(A.core)
    blue = {k: y for k, (y, _) in dswap.graph.blue.items()}
    red = {k: y for k, (y, _) in dswap.graph.red.items()}
    assert sc.span_dim == exact_rank(compressed_words(core, blue, red, 2, 2, 4)) == 2


def test_structure_negative_control(dov):
    sc = structure_check(MatrixRep.from_dilation(dov, [dov.at("e2")]), 4)
    assert sc.residual_invariance > 1e-3 and not sc.passed


def test_structure_rejects_empty_projection(dov):
    with pytest.raises(ValueError):
        structure_check(MatrixRep.from_dilation(dov, []), 4)
    with pytest.raises(ValueError):
        structure_check(MatrixRep.from_dilation(dov), 0)


def test_structure_json_fields(dswap):
    js = structure_check(MatrixRep.from_dilation(dswap), 2).to_json()
    assert {"residual_selfadjoint", "residual_invariance", "bound", "tolerance", "pass"} <= set(js)
    assert js["bound"] == 2


def test_cap_exceeded(monkeypatch):
    with pytest.raises(CapExceeded):
        build_left_regular(identity_theta(3, 3), 4, cap=100)
    monkeypatch.setenv("KG2_CAP", "10")
    with pytest.raises(CapExceeded):
        build_left_regular(identity_theta(2, 2), 2)


def test_opnorm_dense_and_iterative(monkeypatch):
    rng = np.random.default_rng(3)
    A = sp.random(60, 40, density=0.2, random_state=4, format="csr") + 1j * sp.random(60, 40, density=0.1, random_state=5)
    exact = np.linalg.norm(A.toarray(), 2)
    assert abs(opnorm(A) - exact) <= 1e-12 * max(1, exact)
    monkeypatch.setattr(fock, "DENSE_LIMIT", 10)
    assert abs(opnorm(A) - exact) <= 1e-6 * exact
    assert opnorm(sp.csr_matrix((5, 0))) == 0.0
    assert rng is not None


def test_dump_coo():
    A = sp.csr_matrix(np.array([[0, 1j], [2, 0]]))
    assert dump_coo(A) == "0 1 0 1\n1 0 2 0\n"
    assert dump_coo(sp.csr_matrix((2, 2))) == ""
