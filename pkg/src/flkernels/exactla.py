"""Exact linear algebra: rank, span membership, determinants, unitriangular solves.

Vectors are sparse dicts ``{column_key: coefficient}``.  Coefficients are
:class:`~flkernels.qring.RingElem` (field k), :class:`~flkernels.qring.LaurentPoly`
(generic v, rank over the fraction field Q(v)), or ``int``/``Fraction``.

Over a finite k every element is replaced by its integer code and arithmetic
goes through addition/multiplication tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .qring import LaurentPoly, RingElem, RingSpec

__all__ = [
    "SparseMatrix",
    "NotAFieldError",
    "rank",
    "in_span",
    "Echelon",
    "det",
    "solve_unitriangular",
    "UnitriangularError",
]


class NotAFieldError(TypeError):
    pass


class UnitriangularError(ValueError):
    """The leading matrix is not unitriangular in the given order."""


class SparseMatrix:
    """Rows of ``{column: value}`` over a fixed column set; zeros never stored."""

    def __init__(self, rows: Iterable[Mapping], columns: Sequence[Hashable] | None = None):
        self.rows = [{k: x for k, x in r.items() if x} for r in rows]
        if columns is None:
            seen: dict = {}
            for r in self.rows:
                for k in r:
                    seen.setdefault(k, None)
            columns = list(seen)
        self.columns = list(columns)
        colset = set(self.columns)
        for r in self.rows:
            if not colset.issuperset(r):
                raise ValueError("row entry outside the declared columns")

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.columns)

    def transpose(self) -> "SparseMatrix":
        cols: dict = {c: {} for c in self.columns}
        for i, r in enumerate(self.rows):
            for c, x in r.items():
                cols[c][i] = x
        return SparseMatrix([cols[c] for c in self.columns], columns=list(range(len(self.rows))))

    def rank(self) -> int:
        return rank(self.rows)

    def to_triplets(self) -> str:
        """Sparse triplet text: header ``nrows ncols nnz`` then ``i j value`` per line."""
        index = {c: j for j, c in enumerate(self.columns)}
        lines = []
        for i, r in enumerate(self.rows):
            for c, x in sorted(r.items(), key=lambda kv: index[kv[0]]):
                lines.append(f"{i} {index[c]} {x}")
        return "\n".join([f"{len(self.rows)} {len(self.columns)} {len(lines)}"] + lines) + "\n"


# ---------------------------------------------------------------------------
# field back-ends


class _CodeField:
    """F_q with elements as integer codes and table arithmetic."""

    def __init__(self, ring: RingSpec):
        self.ring = ring
        q = ring.size
        els = list(ring.elements())
        self.add = [[(a + b).code for b in els] for a in els]
        self.mul = [[(a * b).code for b in els] for a in els]
        self.neg = [(-a).code for a in els]
        self.inv = [0] + [a.inverse().code for a in els[1:]]
        self.q = q
        self.els = els

    def encode(self, x: RingElem) -> int:
        return x.code

    def decode(self, c: int) -> RingElem:
        return self.els[c]


_CODE_FIELDS: dict = {}


def _code_field(ring: RingSpec) -> _CodeField:
    f = _CODE_FIELDS.get(ring)
    if f is None:
        f = _CodeField(ring)
        _CODE_FIELDS[ring] = f
    return f


def _scalar_kind(x):
    if isinstance(x, RingElem):
        return "ring"
    if isinstance(x, LaurentPoly):
        return "laurent"
    if isinstance(x, (int, Fraction)):
        return "rational"
    raise NotAFieldError(f"coefficients of type {type(x).__name__} do not lie in a supported field")


def _first_entry(rows):
    for r in rows:
        for x in r.values():
            return x
    return None


class Echelon:
    """Incrementally maintained row echelon form with optional certificates.

    Rows are reduced as they are inserted.  When ``track`` is on, every pivot
    row remembers its expression in the inserted rows, so membership queries
    return coordinates.
    """

    def __init__(self, ring: RingSpec | None = None, track: bool = False, kind: str | None = None):
        self.ring = ring
        self.track = track
        self._kind = kind
        self._field = None
        if ring is not None:
            self._kind = "ring"
            if ring.p and ring.size <= 2048:
                self._field = _code_field(ring)
        self._colidx: dict = {}
        self._cols: list = []
        self.pivots: dict = {}  # col index -> (row, combo)
        self.n_inserted = 0

    # -- encoding
    def _setup(self, x):
        if self._kind is None:
            self._kind = _scalar_kind(x)
            if self._kind == "laurent":
                raise NotAFieldError("use rank() for Laurent coefficients")
            if self._kind == "ring":
                self.ring = x.ring
                if x.ring.p and x.ring.size <= 2048:
                    self._field = _code_field(x.ring)

    def _encode(self, vec: Mapping) -> dict:
        out = {}
        for k, x in vec.items():
            if not x:
                continue
            self._setup(x)
            j = self._colidx.get(k)
            if j is None:
                j = len(self._cols)
                self._colidx[k] = j
                self._cols.append(k)
            if self._field is not None:
                out[j] = x.code
            elif self._kind == "rational":
                out[j] = Fraction(x)
            else:
                out[j] = x
        return out

    # -- arithmetic on encoded rows
    def _reduce(self, row: dict, combo: dict | None):
        F = self._field
        pivots = self.pivots
        if F is not None:
            add, mul, neg = F.add, F.mul, F.neg
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    break
                f = neg[row[c]]
                prow, pcombo = piv
                for j, y in prow.items():
                    s = add[row.get(j, 0)][mul[f][y]]
                    if s:
                        row[j] = s
                    else:
                        row.pop(j, None)
                if combo is not None:
                    for j, y in pcombo.items():
                        s = add[combo.get(j, 0)][mul[f][y]]
                        if s:
                            combo[j] = s
                        else:
                            combo.pop(j, None)
            return row, combo
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                break
            f = row[c]
            prow, pcombo = piv
            for j, y in prow.items():
                s = row.get(j, 0) - f * y if j in row else -(f * y)
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
            if combo is not None:
                for j, y in pcombo.items():
                    s = combo[j] - f * y if j in combo else -(f * y)
                    if s:
                        combo[j] = s
                    else:
                        combo.pop(j, None)
        return row, combo

    def _normalize(self, row: dict, combo: dict | None):
        c = min(row)
        F = self._field
        if F is not None:
            inv = F.inv[row[c]]
            mul = F.mul[inv]
            row = {j: mul[y] for j, y in row.items()}
            if combo is not None:
                combo = {j: mul[y] for j, y in combo.items()}
        else:
            x = row[c]
            inv = Fraction(1) / x if self._kind == "rational" else x.inverse()
            row = {j: y * inv for j, y in row.items()}
            if combo is not None:
                combo = {j: y * inv for j, y in combo.items()}
        return c, row, combo

    def _unit(self):
        if self._field is not None:
            return 1
        if self._kind == "rational":
            return Fraction(1)
        return self.ring.one

    # -- public
    def insert(self, vec: Mapping) -> bool:
        """Add a row; returns True when it enlarges the span."""
        row = self._encode(vec)
        idx = self.n_inserted
        self.n_inserted += 1
        combo = {idx: self._unit()} if self.track and row else ({} if self.track else None)
        row, combo = self._reduce(row, combo)
        if not row:
            return False
        c, row, combo = self._normalize(row, combo)
        self.pivots[c] = (row, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, vec: Mapping):
        """(member?, coordinates over inserted rows or None)."""
        for k in vec:
            if vec[k] and k not in self._colidx:
                return False, None
        row = self._encode(vec)
        combo = {} if self.track else None
        # reduce row; the accumulated combo is minus the needed coordinates
        row, combo = self._reduce(row, combo)
        if row:
            return False, None
        if combo is None:
            return True, None
        F = self._field
        coords = {}
        for j, y in combo.items():
            if F is not None:
                coords[j] = F.decode(F.neg[y])
            elif self._kind == "rational":
                coords[j] = -y
            else:
                coords[j] = -y
        return True, coords


def _rank_laurent(rows: list) -> int:
    """Rank over Q(v) by fraction-free (Bareiss) elimination on a dense copy."""
    cols: dict = {}
    for r in rows:
        for k, x in r.items():
            if x:
                cols.setdefault(k, len(cols))
    m, n = len(rows), len(cols)
    if not m or not n:
        return 0
    zero = LaurentPoly()
    M = [[zero] * n for _ in range(m)]
    for i, r in enumerate(rows):
        for k, x in r.items():
            if x:
                M[i][cols[k]] = x
    prev = LaurentPoly.const(1)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]).exact_div(prev)
            M[i][c] = zero
        prev = M[r][c]
        r += 1
        if r == m:
            break
    return r


def rank(rows, ring: RingSpec | None = None) -> int:
    """Exact rank of a family of sparse row vectors (or a :class:`SparseMatrix`)."""
    if isinstance(rows, SparseMatrix):
        rows = rows.rows
    rows = [r if isinstance(r, Mapping) else {j: x for j, x in enumerate(r) if x} for r in rows]
    x = _first_entry(rows)
    if x is None:
        return 0
    kind = _scalar_kind(x)
    if kind == "laurent":
        return _rank_laurent(rows)
    ech = Echelon(ring=ring)
    for r in rows:
        ech.insert(r)
    return ech.rank


def in_span(vec: Mapping, basis_rows: Sequence[Mapping], ring: RingSpec | None = None):
    """Whether ``vec`` lies in the span of ``basis_rows``.

    Returns ``(True, coords)`` with ``coords[i]`` the coefficient of
    ``basis_rows[i]`` (zeros omitted), or ``(False, None)``.
    """
    if not any(vec.values()):
        return True, {}
    ech = Echelon(ring=ring, track=True)
    for r in basis_rows:
        ech.insert(r)
    if ech._kind is None:
        return False, None
    ok, coords = ech.contains(vec)
    return ok, coords


def det(M: Sequence[Sequence]):
    """Exact determinant of a square matrix over Z, Q or a field k."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    x = M[0][0]
    if isinstance(x, int) and all(isinstance(y, int) for r in M for y in r):
        return _det_bareiss_int([list(r) for r in M])
    A = [list(r) for r in M]
    kind = _scalar_kind(x)
    if kind == "laurent":
        raise NotAFieldError("determinant over Laurent polynomials is not supported")
    one = x.ring.one if kind == "ring" else Fraction(1)
    d = one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return one * 0 if kind == "ring" else Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        p = A[c][c]
        d = d * p
        inv = p.inverse() if kind == "ring" else Fraction(1) / p
        for i in range(c + 1, n):
            f = A[i][c] * inv
            if f:
                for j in range(c, n):
                    A[i][j] = A[i][j] - f * A[c][j]
    return d


def _det_bareiss_int(A: list) -> int:
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def solve_unitriangular(order: Sequence[Hashable], leading: Mapping[Hashable, Mapping]) -> dict:
    """Invert a unitriangular change of basis.

    ``leading[X]`` expands a monomial M_X in a basis ``[Y]`` with coefficient
    1 on ``Y = X`` and otherwise only keys earlier in ``order``.  Returns
    ``inv`` with ``[X] = sum_Y inv[X][Y] * M_Y``.
    """
    pos = {k: i for i, k in enumerate(order)}
    inv: dict = {}
    for X in order:
        row = leading[X]
        if X not in row or not (row[X] == 1):
            raise UnitriangularError(f"diagonal coefficient at {X} is {row.get(X)!r}, not 1")
        one = row[X]
        out = {X: one}
        for Y, c in row.items():
            if Y == X or not c:
                continue
            if pos.get(Y, len(order)) >= pos[X]:
                raise UnitriangularError(f"{Y} appears in the expansion of {X} but is not earlier")
            for Z, d in inv[Y].items():
                s = out.get(Z, 0 * one) - c * d
                if s:
                    out[Z] = s
                else:
                    out.pop(Z, None)
        inv[X] = out
    return inv
