import pytest

from flkernels import indices as ix
from flkernels.blmcore import AlgebraCtx, mult_general
from flkernels.qring import LaurentPoly, make_ring
from flkernels.uqgroup import (
    ADeltaLambda,
    GeneratorSym,
    basis_report,
    commute_E_formula,
    embed_adl,
    embed_generator,
    frobenius_tower_report,
    kernel_injectivity_report,
    oracle_report,
    sign_det,
    sign_matrix,
    verify_relations,
)

v = LaurentPoly.v()


def test_identity_and_periodic_k():
    k = make_ring(3, 2, 1)
    W = AlgebraCtx.quotient(2, k)
    assert embed_adl(ADeltaLambda.zero(2), W) == W.one()
    K1 = embed_generator(GeneratorSym("K", 1), W)
    assert K1 ** k.period == W.one()
    Kinv = embed_generator(GeneratorSym("Kinv", 1), W)
    assert mult_general(K1, Kinv) == W.one()


def test_schur_generator_images():
    S2 = AlgebraCtx.schur(2, 2)
    K1 = embed_generator(GeneratorSym("K", 1), S2)
    want = S2.zero()
    for mu in ix.compositions(2, 2):
        want = want + S2.basis(ix.diag_mat(mu), v ** mu[0])
    assert K1 == want
    S1 = AlgebraCtx.schur(2, 1)
    assert embed_generator(GeneratorSym("E", 1), S1) == S1.basis(ix.elem_mat(2, 1, 2))
    assert embed_generator(GeneratorSym("E", 1, 2), S2) == S2.basis(ix.elem_mat(2, 1, 2, 2))


def test_generator_validation():
    W = AlgebraCtx.quotient(2, make_ring(3, 2, 1))
    with pytest.raises(ValueError):
        embed_generator(GeneratorSym("E", 1, 3), W)
    with pytest.raises(ValueError):
        embed_generator(GeneratorSym("E", 2), W)
    with pytest.raises(ValueError):
        GeneratorSym("X", 1)
    with pytest.raises(ValueError):
        ADeltaLambda(ix.diag_mat((1, 0)), (0, 0), (0, 0))


@pytest.mark.parametrize("n,r", [(2, 1), (2, 3), (3, 2), (3, 3)])
def test_relations(n, r):
    rep = verify_relations(AlgebraCtx.schur(n, r))
    assert rep.passed, rep.summary()


def test_relations_need_schur_context():
    with pytest.raises(ValueError):
        verify_relations(AlgebraCtx.quotient(2, make_ring(3, 2, 1)))


def test_commute_formula_examples():
    k = make_ring(3, 2, 1)
    W = AlgebraCtx.quotient(2, k)
    x = ADeltaLambda.zero(2)
    assert commute_E_formula(0, 1, x, W) == embed_adl(x, W)
    E = embed_generator(GeneratorSym("E", 1), W)
    assert commute_E_formula(1, 1, x, W) == mult_general(E, embed_adl(x, W))


def test_oracle_small():
    rep = oracle_report(make_ring(3, 2, 1), 2, offdiag=[ix.zero_mat(2), ix.elem_mat(2, 2, 1)])
    assert rep.passed, rep.summary()


def test_basis_reports():
    k = make_ring(3, 2, 1)
    for kind in ("N_h", "M", "B", "Bp", "reduced"):
        rep = basis_report(kind, k)
        assert rep.passed and rep.params["rank"] == 81, rep.summary()
    rep = basis_report("M0", k)
    assert rep.passed and rep.params["rank"] == 9 and rep.params["family_size"] == 36
    e = make_ring(4, 3, 1)
    rep = basis_report("B_h", e)
    assert rep.passed and rep.params["rank"] == rep.params["family_size"] == 64
    with pytest.raises(ValueError):
        basis_report("N_h", e)
    with pytest.raises(ValueError):
        basis_report("B_h", k)


def test_sign_matrix_is_hadamard():
    for m in range(1, 5):
        X = sign_matrix(m)
        N = len(X)
        for i in range(N):
            for j in range(N):
                assert sum(X[i][t] * X[j][t] for t in range(N)) == (N if i == j else 0)


def test_sign_det_values():
    assert sign_det(1)["det"] == -2
    assert sign_det(2)["det"] == 16
    assert sign_det(3)["det"] == 4096
    for m in range(1, 9):
        d = sign_det(m)
        assert abs(d["det"]) == 2 ** (m * 2 ** (m - 1))
    assert sign_det(7)["method"] == "kronecker"


def test_kernel_injectivity():
    assert kernel_injectivity_report(2, make_ring(3, 2, 1)).passed
    rep = kernel_injectivity_report(2, make_ring(4, 3, 1))
    assert rep.passed, rep.summary()


def test_frobenius_tower():
    rep = frobenius_tower_report(3, 2, 1, samples=5, seed=1)
    assert rep.passed, rep.summary()


def test_relation_d_needs_n4():
    rep = verify_relations(AlgebraCtx.schur(4, 2))
    assert rep.passed, rep.summary()
    assert sum(c.name.startswith("(d)") for c in rep.checks) == 4
