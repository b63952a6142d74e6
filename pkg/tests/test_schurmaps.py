import random

from flkernels import indices as ix
from flkernels.blmcore import AlgebraCtx, double_bracket, mult_general
from flkernels.qring import make_ring
from flkernels.schurmaps import RBracket, infinitesimal_basis_report, little_schur_report, zeta_image

k = make_ring(3, 2, 1)
W = AlgebraCtx.quotient(2, k)


def test_zeta_identity():
    for r in range(4):
        S = AlgebraCtx.schur(2, r, k)
        assert zeta_image(W.one(), r) == S.one()


def test_rbracket_matches_double_bracket():
    E12 = ix.elem_mat(2, 1, 2)
    for r in range(4):
        for res in [(0, 0), (1, 2), (2, 0)]:
            rb = RBracket(E12, res, r)
            assert rb.value(k) == zeta_image(double_bracket(E12, res, W), r)
    assert RBracket(ix.elem_mat(2, 1, 2, 2), (0, 0), 1).is_zero(k)


def test_zeta_multiplicative():
    rnd = random.Random(11)
    keys = W.basis_keys()
    for _ in range(100):
        x = W.basis(rnd.choice(keys), k.eps_pow(rnd.randrange(3)))
        y = W.basis(rnd.choice(keys)) + W.basis(rnd.choice(keys))
        r = rnd.randint(0, 3)
        assert zeta_image(mult_general(x, y), r) == mult_general(zeta_image(x, r), zeta_image(y, r))


def test_little_schur_small():
    rep = little_schur_report(2, k, 1)
    assert rep.passed, rep.summary()


def test_infinitesimal_small():
    rep = infinitesimal_basis_report(2, k, 2)
    assert rep.passed, rep.summary()
    assert rep.params["theta_nr_h"] == len(ix.enumerate_set("theta_nr_h", n=2, r=2, ring=k))


def test_infinitesimal_full_when_bound_large():
    big = make_ring(3, 2, 2)  # bound 6 > r
    rep = infinitesimal_basis_report(2, big, 2)
    assert rep.passed and rep.params["theta_nr_h"] == ix.count_theta_nr(2, 2)
