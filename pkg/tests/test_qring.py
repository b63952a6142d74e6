import pytest
from hypothesis import given, settings, strategies as st

from flkernels.qring import (
    LaurentPoly,
    classical_binom,
    cyclotomic_poly,
    gauss_binom,
    gauss_binom_product,
    make_ring,
    qbinom_at_eps,
    quantum_factorial,
    quantum_int,
)

v = LaurentPoly.v()


def test_quantum_int_examples():
    assert quantum_int(0) == 0
    assert quantum_int(2) == v + v ** -1
    for i in range(1, 6):
        assert quantum_int(-i) == -quantum_int(i)


def test_gauss_binom_examples():
    assert str(gauss_binom(4, 2)) == "v^4 + v^2 + 2 + v^-2 + v^-4"
    for N in range(-5, 6):
        assert gauss_binom(N, 0) == 1


def test_negative_top_entry():
    for b in range(7):
        for a in range(7):
            assert gauss_binom(-b, a) == (-1) ** a * gauss_binom(b + a - 1, a)


def test_matches_product_formula():
    for N in range(-6, 9):
        for t in range(0, 7):
            assert gauss_binom(N, t) == gauss_binom_product(N, t)


@given(st.integers(0, 12), st.integers(0, 12))
def test_symmetry_and_bar_invariance(N, t):
    if t <= N:
        assert gauss_binom(N, t) == gauss_binom(N, N - t)
    assert gauss_binom(N, t).bar() == gauss_binom(N, t)


@given(st.integers(-8, 10), st.integers(1, 8))
def test_pascal_rule(N, t):
    lhs = gauss_binom(N + 1, t)
    rhs = v ** t * gauss_binom(N, t) + v ** (t - N - 1) * gauss_binom(N, t - 1)
    assert lhs == rhs


def test_factorial_divides():
    assert quantum_factorial(3) == quantum_int(1) * quantum_int(2) * quantum_int(3)
    assert gauss_binom(5, 2) * quantum_factorial(2) * quantum_factorial(3) == quantum_factorial(5)


def test_text_roundtrip():
    for x in (gauss_binom(5, 2), -v ** -3 + 7, LaurentPoly({})):
        assert LaurentPoly.from_text(str(x)) == x


def test_cyclotomic():
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)


def test_ring_construction():
    k = make_ring(3, 2, 1)
    assert k.size == 4
    e = k.eps
    assert e * e + e + 1 == k.zero
    k = make_ring(4, 3, 1)
    assert k.size == 9
    assert k.eps ** 2 == -k.one
    with pytest.raises(ValueError):
        make_ring(3, 0, 2)
    with pytest.raises(ValueError):
        make_ring(4, 2, 1)


@pytest.mark.parametrize("args", [(3, 2, 1), (4, 3, 1), (5, 2, 1), (6, 5, 1), (7, 2, 2), (3, 0, 1), (5, 0, 1), (8, 0, 1)])
def test_eps_is_primitive(args):
    k = make_ring(*args)
    lp = args[0]
    assert k.eps ** lp == k.one
    for j in range(1, lp):
        if lp % j == 0:
            assert k.eps ** j != k.one


def test_derived_parameters():
    k = make_ring(4, 3, 2)
    assert (k.l, k.bound, k.period) == (2, 6, 12)
    k = make_ring(3, 2, 2)
    assert (k.l, k.bound, k.period) == (3, 6, 6)


def test_specialization_examples():
    k = make_ring(3, 2, 1)
    assert k.eps_pow(3) == k.one
    assert k(quantum_int(3)) == k.zero
    assert k(quantum_int(2)) == k.one
    for ring in (make_ring(3, 2, 1), make_ring(3, 0, 1)):
        assert qbinom_at_eps(4, 3, ring) == ring.one
        assert qbinom_at_eps(3, 1, ring) == ring.zero
    k = make_ring(4, 3, 1)
    assert qbinom_at_eps(3, 1, k) == -k.one


@pytest.mark.parametrize("args", [(3, 2, 1), (3, 2, 2), (4, 3, 1), (5, 2, 2), (3, 0, 1)])
def test_ladic_route_agrees(args):
    k = make_ring(*args)
    for N in range(0, 3 * k.period + 1):
        for t in range(0, N + 1):
            assert qbinom_at_eps(N, t, k) == qbinom_at_eps(N, t, k, via="ladic")


def test_classical_binom():
    k = make_ring(4, 3, 2)
    assert classical_binom(5, 2, k) == classical_binom(2, 2, k) == k.one
    k2 = make_ring(3, 2, 1)
    for s in range(5):
        assert classical_binom(0, s, k) == (k.one if s == 0 else k.zero)
        assert classical_binom(-1, s, k2) == (k2.one if s % 2 == 0 else -k2.one)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=2), st.lists(st.integers(0, 1), min_size=2, max_size=2))
def test_field_axioms_f4(a, b):
    k = make_ring(3, 2, 1)
    x = k.one * a[0] + k.eps * a[1]
    y = k.one * b[0] + k.eps * b[1]
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if x:
        assert x * x.inverse() == k.one


def test_rehome_between_equal_rings():
    a, b = make_ring(3, 2, 1), make_ring(3, 2, 2)
    assert b(a.eps) == b.eps
    with pytest.raises(ValueError):
        make_ring(4, 3, 1)(a.eps)
