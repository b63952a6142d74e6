from hypothesis import given, strategies as st

from flkernels import indices as ix
from flkernels.indices import Order
from flkernels.qring import make_ring

E12 = ix.elem_mat(2, 1, 2)
E21 = ix.elem_mat(2, 2, 1)


def test_row_column_sums():
    I = ix.diag_mat((1, 1))
    assert ix.ro(I) == ix.co(I) == (1, 1)
    assert (ix.ro(E12), ix.co(E12)) == ((1, 0), (0, 1))
    A = ix.mat([[0, 1], [1, -1]])
    assert ix.ro(A) == ix.co(A) == (1, 0)


def test_sigma_examples():
    assert ix.sigma_vec(ix.diag_mat((2, 3))) == (0, 0)
    assert ix.sigma_weight(ix.diag_mat((2, 3))) == 0
    t = ix.sigma_table(ix.add_diag(E12, (0, 0)) if False else ix.mat([[0, 1], [1, 0]]))
    assert (t[(1, 2)], t[(2, 1)]) == (1, 1)
    assert ix.sigma_stats(ix.mat([[0, 2], [1, 0]])) == ({(1, 2): 2, (2, 1): 1}, (0, 3))


def test_order_examples():
    assert ix.cmp_order(ix.diag_mat((1, 1)), ix.mat([[0, 1], [1, 0]])) == Order.LOWER
    A = ix.mat([[1, 2], [3, 4]])
    assert ix.cmp_order(A, A) == Order.EQUAL
    assert ix.cmp_order(E12, E21) == Order.INCOMPARABLE
    assert ix.cmp_order(ix.mat([[0, 1], [1, 0]]), ix.diag_mat((1, 1))) == Order.HIGHER


def test_enumeration_counts():
    k = make_ring(3, 2, 1)
    assert len(ix.enumerate_set("theta_nr", n=2, r=1)) == 4
    assert len(ix.enumerate_set("theta_pm_h", n=2, ring=k)) == 9
    assert len(ix.enumerate_set("theta_tilde_hq", n=2, ring=k)) == 81
    for n in (1, 2, 3):
        for r in range(5):
            s = ix.enumerate_set("theta_nr", n=n, r=r)
            assert len(s) == len(set(s)) == ix.count_theta_nr(n, r)
            assert s == sorted(s)


def test_theta_nr_h_large_bound_is_everything():
    big = make_ring(3, 2, 3)  # bound 12 > r
    for r in range(4):
        assert len(ix.enumerate_set("theta_nr_h", n=2, r=r, ring=big)) == ix.count_theta_nr(2, r)


def test_projection_examples():
    assert ix.pr(ix.diag_mat((3, -3)), 3) == ix.diag_mat((0, 0))
    assert ix.pr(ix.diag_mat((4, 1)), 3) == ix.diag_mat((1, 1))
    A = ix.add_diag(E12, (-1, 5))
    P = ix.pr(A, 3)
    assert ix.off_diag(P) == E12 and ix.diagonal(P) == (2, 2)
    assert ix.lift(ix.zero_mat(2), (1, 2), 3) == ix.diag_mat((1, 2))


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_lift_then_project(off, diag):
    A = ix.mat([[0, off[0], 0], [off[1], 0, 0], [0, 0, 0]])
    res = tuple(d % 6 for d in diag)
    L = ix.lift(A, res, 6)
    assert ix.pr(L, 6) == ix.with_diag(A, res)


def test_compositions():
    assert list(ix.compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(ix.compositions(3, 0)) == [(0, 0, 0)]
    assert list(ix.compositions_bounded(2, 3, (1, None))) == [(0, 3), (1, 2)]


def test_transpose_and_reverse():
    A = ix.mat([[1, 2], [3, 4]])
    assert ix.transpose_mat(A) == ix.mat([[1, 3], [2, 4]])
    assert ix.reverse_mat(A) == ix.mat([[4, 3], [2, 1]])
