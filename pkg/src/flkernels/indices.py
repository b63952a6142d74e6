"""Matrix index sets, corner-sum statistics and the order they induce.

A matrix index is a tuple of row tuples (hashable, immutable).  Off-diagonal
entries are nonnegative; diagonal entries may be any integers.  Row and
column positions are 0-based here, while generator subscripts elsewhere in the
package follow the usual 1-based convention.
"""

from __future__ import annotations

import itertools
import math
from enum import Enum
from typing import Iterator, Sequence

__all__ = [
    "MatIdx",
    "mat",
    "zero_mat",
    "elem_mat",
    "diag_mat",
    "ro",
    "co",
    "diagonal",
    "off_diag",
    "with_diag",
    "add_diag",
    "entry_sum",
    "transpose_mat",
    "reverse_mat",
    "sigma_table",
    "sigma_stats",
    "sigma_vec",
    "sigma_weight",
    "Order",
    "cmp_order",
    "compositions",
    "compositions_bounded",
    "enumerate_set",
    "pr",
    "lift",
    "lift_composable",
    "is_valid_index",
]

MatIdx = tuple  # tuple[tuple[int, ...], ...]


def mat(rows: Sequence[Sequence[int]]) -> MatIdx:
    A = tuple(tuple(int(x) for x in r) for r in rows)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix index must be square")
    for i in range(n):
        for j in range(n):
            if i != j and A[i][j] < 0:
                raise ValueError(f"negative off-diagonal entry at ({i}, {j})")
    return A


def zero_mat(n: int) -> MatIdx:
    return tuple((0,) * n for _ in range(n))


def elem_mat(n: int, i: int, j: int, m: int = 1) -> MatIdx:
    """``m`` times the matrix unit E_{ij} (1-based subscripts, as in E12)."""
    rows = [[0] * n for _ in range(n)]
    rows[i - 1][j - 1] = m
    return mat(rows)


def diag_mat(d: Sequence[int]) -> MatIdx:
    n = len(d)
    return tuple(tuple(d[i] if i == j else 0 for j in range(n)) for i in range(n))


def ro(A: MatIdx) -> tuple:
    return tuple(sum(r) for r in A)


def co(A: MatIdx) -> tuple:
    return tuple(sum(c) for c in zip(*A))


def diagonal(A: MatIdx) -> tuple:
    return tuple(A[i][i] for i in range(len(A)))


def off_diag(A: MatIdx) -> MatIdx:
    return tuple(tuple(0 if i == j else x for j, x in enumerate(r)) for i, r in enumerate(A))


def with_diag(A: MatIdx, d: Sequence[int]) -> MatIdx:
    return tuple(tuple(d[i] if i == j else x for j, x in enumerate(r)) for i, r in enumerate(A))


def add_diag(A: MatIdx, d: Sequence[int]) -> MatIdx:
    return tuple(tuple(x + d[i] if i == j else x for j, x in enumerate(r)) for i, r in enumerate(A))


def entry_sum(A: MatIdx) -> int:
    return sum(map(sum, A))


def transpose_mat(A: MatIdx) -> MatIdx:
    return tuple(zip(*A))


def reverse_mat(A: MatIdx) -> MatIdx:
    """Conjugate by the longest permutation: a_ij -> a_{n+1-i, n+1-j}."""
    return tuple(tuple(reversed(r)) for r in reversed(A))


def sigma_table(A: MatIdx) -> dict:
    """Corner sums sigma_{i,j}(A) for i != j, keyed by 1-based (i, j).

    For i < j the sum runs over the north-east corner s <= i, t >= j; for
    i > j over the south-west corner s >= i, t <= j.
    """
    n = len(A)
    out = {}
    for i in range(n):
        for j in range(n):
            if i < j:
                out[(i + 1, j + 1)] = sum(A[s][t] for s in range(i + 1) for t in range(j, n))
            elif i > j:
                out[(i + 1, j + 1)] = sum(A[s][t] for s in range(i, n) for t in range(j + 1))
    return out


def sigma_vec(A: MatIdx) -> tuple:
    """sigma_i(A) = sum_{j < i} (a_ij + a_ji)."""
    n = len(A)
    return tuple(sum(A[i][j] + A[j][i] for j in range(i)) for i in range(n))


def sigma_stats(A: MatIdx) -> tuple:
    return sigma_table(A), sigma_vec(A)


def sigma_weight(A: MatIdx) -> int:
    """Sum of all corner sums; strictly decreases along the order."""
    return sum(sigma_table(A).values())


class Order(Enum):
    LOWER = "strictly-lower"
    EQUAL = "equal-stats"
    HIGHER = "strictly-higher"
    INCOMPARABLE = "incomparable"


def cmp_order(B: MatIdx, A: MatIdx) -> Order:
    """Compare B against A in the corner-sum order."""
    if len(A) != len(B):
        raise ValueError("size mismatch")
    sb, sa = sigma_table(B), sigma_table(A)
    le = all(sb[k] <= sa[k] for k in sa)
    ge = all(sb[k] >= sa[k] for k in sa)
    if le and ge:
        return Order.EQUAL
    if le:
        return Order.LOWER
    if ge:
        return Order.HIGHER
    return Order.INCOMPARABLE


# ---------------------------------------------------------------------------
# compositions and enumeration


def compositions(n: int, r: int) -> Iterator[tuple]:
    """Lambda(n, r): n-tuples of nonnegative integers summing to r, lexicographic."""
    if n == 0:
        if r == 0:
            yield ()
        return
    for first in range(r + 1):
        for rest in compositions(n - 1, r - first):
            yield (first,) + rest


def compositions_bounded(n: int, r: int, upper: Sequence[int | None]) -> Iterator[tuple]:
    """Compositions of r into n parts with part u at most ``upper[u]`` (None = unbounded)."""
    if n == 0:
        if r == 0:
            yield ()
        return
    cap = r if upper[0] is None else min(r, upper[0])
    for first in range(cap + 1):
        for rest in compositions_bounded(n - 1, r - first, upper[1:]):
            yield (first,) + rest


def _offdiag_positions(n):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _build(n, offvals, diagvals):
    rows = [[0] * n for _ in range(n)]
    for (i, j), x in zip(_offdiag_positions(n), offvals):
        rows[i][j] = x
    for i, x in enumerate(diagvals):
        rows[i][i] = x
    return tuple(tuple(r) for r in rows)


def _bound_of(params) -> int:
    if "bound" in params:
        return params["bound"]
    return params["ring"].bound


def _period_of(params) -> int:
    if "period" in params:
        return params["period"]
    return params["ring"].period


def enumerate_set(kind: str, **params) -> list:
    """Exhaustive, duplicate-free, lexicographically ordered index sets.

    kinds and parameters:

    ``theta_pm``        n, max_entry: zero-diagonal matrices with entries <= max_entry
    ``theta_pm_h``      n, ring (or bound): off-diagonals < l p^(h-1)
    ``theta_nr``        n, r: nonnegative matrices with entry sum r
    ``theta_nr_h``      n, r, ring (or bound): theta_nr with off-diagonals < l p^(h-1)
    ``theta_tilde_h``   n, ring (or bound), window=(lo, hi): diagonals in [lo, hi]
    ``theta_tilde_hq``  n, ring (or bound, period): diagonals are residues mod l' p^(h-1)
    """
    n = params["n"]
    pos = _offdiag_positions(n)
    if kind == "theta_pm":
        if "max_entry" not in params:
            raise ValueError("theta_pm is infinite; pass max_entry")
        rng = range(params["max_entry"] + 1)
        out = [_build(n, off, (0,) * n) for off in itertools.product(rng, repeat=len(pos))]
    elif kind == "theta_pm_h":
        rng = range(_bound_of(params))
        out = [_build(n, off, (0,) * n) for off in itertools.product(rng, repeat=len(pos))]
    elif kind in ("theta_nr", "theta_nr_h"):
        r = params["r"]
        bound = _bound_of(params) if kind == "theta_nr_h" else None
        out = []
        for flat in compositions(n * n, r):
            A = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
            if bound is not None and any(A[i][j] >= bound for i, j in pos):
                continue
            out.append(A)
    elif kind == "theta_tilde_h":
        if "window" not in params:
            raise ValueError("theta_tilde_h is infinite; pass a diagonal window (lo, hi)")
        lo, hi = params["window"]
        rng = range(_bound_of(params))
        out = [
            _build(n, off, dg)
            for off in itertools.product(rng, repeat=len(pos))
            for dg in itertools.product(range(lo, hi + 1), repeat=n)
        ]
    elif kind == "theta_tilde_hq":
        rng = range(_bound_of(params))
        L = _period_of(params)
        out = [
            _build(n, off, dg)
            for off in itertools.product(rng, repeat=len(pos))
            for dg in itertools.product(range(L), repeat=n)
        ]
    else:
        raise ValueError(f"unknown index set {kind!r}")
    out.sort(key=lambda A: tuple(itertools.chain.from_iterable(A)))
    return out


def is_valid_index(A: MatIdx, bound: int | None = None) -> bool:
    n = len(A)
    for i, j in _offdiag_positions(n):
        if A[i][j] < 0 or (bound is not None and A[i][j] >= bound):
            return False
    return True


def pr(A: MatIdx, period: int, bound: int | None = None) -> MatIdx:
    """Reduce the diagonal mod ``period``; the result has diagonal in [0, period)."""
    if bound is not None and not is_valid_index(A, bound):
        raise ValueError(f"off-diagonal entries of {A} must lie in [0, {bound})")
    return with_diag(A, [x % period for x in diagonal(A)])


def lift(offdiag: MatIdx, residues: Sequence[int], period: int, ro_target: Sequence[int] | None = None) -> MatIdx:
    """A representative of (offdiag, residues).

    Without a target the diagonal is the smallest nonnegative lift; with
    ``ro_target`` the diagonal is shifted by multiples of ``period`` so the
    row sums equal the target exactly.
    """
    A = with_diag(offdiag, [x % period for x in residues])
    if ro_target is None:
        return A
    cur = ro(A)
    shift = []
    for c, t in zip(cur, ro_target):
        if (t - c) % period:
            raise ValueError("row-sum target incompatible with residues")
        shift.append(t - c)
    return add_diag(A, shift)


def lift_composable(A: MatIdx, Ap: MatIdx, period: int):
    """Lifts (A~, A'~) with co(A~) = ro(A'~) exactly, or None if co(A) != ro(A') mod period."""
    left = with_diag(A, [x % period for x in diagonal(A)])
    c = co(left)
    if any((x - y) % period for x, y in zip(c, ro(Ap))):
        return None
    return left, lift(off_diag(Ap), diagonal(Ap), period, ro_target=c)


def count_theta_nr(n: int, r: int) -> int:
    return math.comb(n * n + r - 1, r)
