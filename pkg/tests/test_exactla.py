from fractions import Fraction

import pytest

from flkernels.blmcore import AlgebraCtx, mult_general
from flkernels.exactla import Echelon, UnitriangularError, det, in_span, rank, solve_unitriangular
from flkernels import indices as ix
from flkernels.qring import LaurentPoly, make_ring

v = LaurentPoly.v()


def test_rank_examples():
    eye = [[int(i == j) for j in range(5)] for i in range(5)]
    assert rank(eye) == 5
    assert rank([[0] * 4 for _ in range(3)]) == 0
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}]) == 1


def test_rank_over_ring():
    k = make_ring(3, 2, 1)
    e = k.eps
    rows = [{0: k.one, 1: e}, {0: e, 1: e * e}, {1: k.one}]
    assert rank(rows, k) == 2


def test_rank_laurent_rows():
    rows = [{0: v, 1: LaurentPoly.const(1)}, {0: v * v, 1: v}]
    assert rank(rows) == 1


def test_in_span():
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    ok, coords = in_span({0: 1, 1: 1}, rows)
    assert ok and coords == {0: 1}
    assert in_span({}, rows) == (True, {})
    ok, coords = in_span({0: 1, 2: -1}, rows)
    assert ok and coords == {0: 1, 1: -1}
    assert in_span({2: 5, 0: 1}, rows)[0] is False


def test_in_span_schur_product():
    S = AlgebraCtx.schur(2, 2, make_ring(3, 0, 1))
    x = mult_general(S.basis(ix.add_diag(ix.elem_mat(2, 1, 2), (0, 1))), S.basis(ix.add_diag(ix.elem_mat(2, 2, 1), (0, 1))))
    rows = [{A: c} for A, c in x.terms.items()]
    assert in_span(S.basis(ix.diag_mat((1, 1))).terms, rows, S.ring)[0]


def test_echelon_certificates():
    k = make_ring(4, 3, 1)
    ech = Echelon(ring=k, track=True)
    a = {"x": k.one, "y": k.eps}
    b = {"y": k.one}
    assert ech.insert(a) and ech.insert(b)
    assert not ech.insert({"x": k.one * 2, "y": k.eps * 2 + k.one})
    ok, coords = ech.contains({"x": k.one, "y": k.eps + k.one})
    assert ok and coords[0] == k.one and coords[1] == k.one
    assert ech.contains({"z": k.one}) == (False, None)


def test_det():
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2
    k = make_ring(3, 2, 1)
    assert det([[k.eps, k.one], [k.one, k.eps]]) == k.eps * k.eps - k.one
    assert det([[1, 2], [2, 4]]) == 0


def test_solve_unitriangular():
    order = ["a", "b"]
    lead = {"a": {"a": 1}, "b": {"b": 1, "a": v ** -1}}
    inv = solve_unitriangular(order, lead)
    assert inv["b"]["a"] == -(v ** -1)
    with pytest.raises(UnitriangularError):
        solve_unitriangular(order, {"a": {"a": 2}, "b": {"b": 1}})


def test_unitriangular_schur_monomials():
    # the monomial basis of S(2,2) is unitriangular in the standard basis; the inverse re-multiplies to the identity
    from flkernels.blmcore import monomial_for

    S = AlgebraCtx.schur(2, 2)
    keys = S.basis_keys()
    assert len(keys) == 10
    lead = {A: monomial_for(A, S)[1].terms for A in keys}
    order = sorted(keys, key=lambda A: (ix.sigma_weight(A), A))
    inv = solve_unitriangular(order, lead)
    for X in keys:
        acc = {}
        for Y, c in inv[X].items():
            for Z, d in lead[Y].items():
                acc[Z] = acc.get(Z, 0) + c * d
        acc = {Z: c for Z, c in acc.items() if c}
        assert acc == {X: 1}
