"""Quantum integers, Gaussian binomials and their specializations at a root of unity.

The generic coefficient ring is Z[v, v^-1], realized by :class:`LaurentPoly`.
Specialization targets are finite-degree fields k = F[x]/(f) containing a
primitive l'-th root of unity ``e`` (the image of ``x``); see :func:`make_ring`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "RingSpec",
    "RingElem",
    "quantum_int",
    "quantum_factorial",
    "gauss_binom",
    "gauss_binom_product",
    "make_ring",
    "eval_at_eps",
    "qbinom_at_eps",
    "classical_binom",
    "cyclotomic_poly",
]


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial in ``v`` with integer coefficients.

    Instances are immutable; zero coefficients are never stored, so two
    polynomials are equal iff their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls._raw({int(e): int(c)} if c else {})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls._raw({1: 1})

    # -- inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def items(self):
        """Terms as ``(exponent, coefficient)`` pairs, exponents descending."""
        return sorted(self._terms.items(), reverse=True)

    @property
    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def valuation(self) -> int | None:
        return min(self._terms) if self._terms else None

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic
    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly.monomial(e * k, c ** (-k))
            raise ValueError("negative power of a non-unit Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in Z[v, v^-1]; raises ValueError unless the division is exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return self
        # normalize to ordinary polynomials and long-divide from the top
        lo_a, lo_b = self.valuation, other.valuation
        a = _to_dense(self)
        b = _to_dense(other)
        q = _dense_divexact(a, b)
        if q is None:
            raise ValueError(f"{self} is not divisible by {other}")
        return _from_dense(q, lo_a - lo_b)

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def __call__(self, x):
        """Evaluate at ``x`` (any object supporting ``**`` with negative ints)."""
        total = 0
        for e, c in self._terms.items():
            total = total + c * x**e
        return total

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text form
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                body = str(abs(c))
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def from_text(cls, s: str) -> "LaurentPoly":
        """Parse the text form produced by ``str``."""
        s = s.strip()
        if s == "0":
            return cls()
        s = s.replace(" - ", " + -")
        terms: dict = {}
        for tok in s.split(" + "):
            tok = tok.strip()
            m = re.fullmatch(r"(-?)(?:(\d+)\*)?v(?:\^(-?\d+))?|(-?\d+)", tok)
            if not m:
                raise ValueError(f"bad term {tok!r}")
            if m.group(4) is not None:
                e, c = 0, int(m.group(4))
            else:
                c = int(m.group(2) or 1) * (-1 if m.group(1) else 1)
                e = int(m.group(3)) if m.group(3) is not None else 1
            terms[e] = terms.get(e, 0) + c
        return cls(terms)


def _to_dense(p: LaurentPoly) -> list:
    lo, hi = p.valuation, p.degree
    out = [0] * (hi - lo + 1)
    for e, c in p._terms.items():
        out[e - lo] = c
    return out


def _from_dense(coeffs: list, lo: int) -> LaurentPoly:
    return LaurentPoly._raw({lo + i: c for i, c in enumerate(coeffs) if c})


def _dense_divexact(a: list, b: list) -> list | None:
    """Exact quotient of integer polynomials given low->high, or None."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    lead = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + db]
        if c % lead:
            return None
        c //= lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(a):
        return None
    return q


# ---------------------------------------------------------------------------
# quantum integers and Gaussian binomials


@lru_cache(maxsize=None)
def quantum_int(i: int) -> LaurentPoly:
    """Balanced quantum integer [i] = (v^i - v^-i)/(v - v^-1)."""
    if i == 0:
        return LaurentPoly()
    sign = 1 if i > 0 else -1
    n = abs(i)
    return LaurentPoly._raw({e: sign for e in range(-(n - 1), n, 2)})


@lru_cache(maxsize=None)
def quantum_factorial(t: int) -> LaurentPoly:
    if t < 0:
        raise ValueError("factorial of a negative integer")
    out = LaurentPoly.const(1)
    for s in range(1, t + 1):
        out = out * quantum_int(s)
    return out


def gauss_binom_product(N: int, t: int) -> LaurentPoly:
    """[N over t] straight from the defining quotient of products.

    Slow; kept as the reference against which :func:`gauss_binom` is checked.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    num = LaurentPoly.const(1)
    for k in range(t):
        num = num * quantum_int(N - k)
    return num.exact_div(quantum_factorial(t))


@lru_cache(maxsize=None)
def _binom_nonneg(N: int, t: int) -> LaurentPoly:
    # 0 <= t <= N; Pascal rule [N,t] = v^t [N-1,t] + v^(t-N) [N-1,t-1]
    if t == 0 or t == N:
        return LaurentPoly.const(1)
    if 2 * t > N:
        return _binom_nonneg(N, N - t)
    return _binom_nonneg(N - 1, t).shift(t) + _binom_nonneg(N - 1, t - 1).shift(t - N)


def gauss_binom(N: int, t: int) -> LaurentPoly:
    """Gaussian binomial [N over t] for any integer N and t >= 0.

    Negative tops go through [-b over a] = (-1)^a [b+a-1 over a].
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if N < 0:
        b = _binom_nonneg(t - N - 1, t)
        return -b if t % 2 else b
    if t > N:
        return LaurentPoly()
    return _binom_nonneg(N, t)


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low -> high)


def _poly_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_p(a: list, b: list, p: int):
    """Division with remainder over F_p (p = 0 means over Q)."""
    a = list(a)
    _poly_trim(a)
    db = len(b) - 1
    if p:
        inv = pow(b[-1], -1, p)
    else:
        inv = Fraction(1, 1) / b[-1]
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        if p:
            c %= p
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
                if p:
                    a[k + j] %= p
    r = _poly_trim(a[:db]) if db > 0 else []
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (low -> high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod_p(num, list(cyclotomic_poly(d)), 0)
            assert not r
            num = [int(c) for c in q]
    return tuple(num)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _mult_order(p: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, p % n
    while x != 1:
        x = x * p % n
        k += 1
    return k


def _irreducible_cyclotomic_factor(lprime: int, p: int) -> tuple:
    """Lexicographically first monic factor of Phi_l' over F_p.

    Every irreducible factor has degree ord_l'(p), so any monic divisor of
    that degree is irreducible.
    """
    phi = [c % p for c in cyclotomic_poly(lprime)]
    d = _mult_order(p, lprime)
    for idx in range(p**d):
        low = []
        x = idx
        for _ in range(d):
            low.append(x % p)
            x //= p
        cand = low + [1]
        _, r = _poly_divmod_p(phi, cand, p)
        if not r:
            return tuple(cand)
    raise AssertionError("no factor found")  # unreachable for gcd(p, l') = 1


# ---------------------------------------------------------------------------
# specialization rings


class RingSpec:
    """The field k = F[e]/(modulus) with e a primitive l'-th root of unity.

    ``F`` is Q when ``p == 0`` and F_p otherwise.  Use :func:`make_ring`.
    """

    def __init__(self, lprime: int, p: int, h: int, modulus: tuple):
        self.lprime = lprime
        self.p = p
        self.h = h
        self.modulus = tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.l = lprime if lprime % 2 else lprime // 2
        ph = p ** (h - 1) if p else 1
        #: bound l p^(h-1) on off-diagonal entries and divided powers
        self.bound = self.l * ph
        #: period l' p^(h-1) of diagonal residues
        self.period = lprime * ph
        self._key = (lprime, p, h, self.modulus)
        d = self.degree
        # x^k mod f for d <= k <= 2d - 2
        self._red = {}
        cur = [0] * d + [1]
        for k in range(d, 2 * d - 1 if d > 1 else d + 1):
            _, r = _poly_divmod_p(cur, list(self.modulus), p)
            self._red[k] = self._norm_list(r)
            cur = [0] + cur
        self.zero = RingElem(self, self._norm_list([]))
        self.one = RingElem(self, self._norm_list([1]))
        gen = self._norm_list([0, 1]) if d > 1 else self._reduce([0, 1])
        self.eps = RingElem(self, gen)
        pows = [self.one]
        for _ in range(1, lprime):
            pows.append(pows[-1] * self.eps)
        self._eps_pows = pows
        self._binoms: dict = {}

    # -- raw tuple arithmetic
    def _norm_list(self, a) -> tuple:
        d = self.degree
        a = list(a) + [0] * (d - len(a))
        if self.p:
            return tuple(int(c) % self.p for c in a[:d])
        return tuple(Fraction(c) for c in a[:d])

    def _reduce(self, a: list) -> tuple:
        d = self.degree
        a = list(a)
        if len(a) > d:
            for k in range(len(a) - 1, d - 1, -1):
                c = a[k]
                if c:
                    red = self._red.get(k)
                    if red is None:  # only for degree-1 moduli
                        _, r = _poly_divmod_p([0] * k + [1], list(self.modulus), self.p)
                        red = self._norm_list(r)
                        self._red[k] = red
                    for j, rj in enumerate(red):
                        a[j] += c * rj
                a.pop()
        return self._norm_list(a)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        if self.degree == 1:
            c = a[0] * b[0]
            return ((c % self.p),) if self.p else (c,)
        return self._reduce(_poly_mul(list(a), list(b)))

    def _inv(self, a: tuple) -> tuple:
        # extended Euclid over F_p or Q
        p = self.p
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of zero in k")
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod_p(r0, r1, p)
            s = _poly_sub(s0, _poly_mul(q, s1), p)
            r0, r1 = r1, r
            s0, s1 = s1, s
        # r0 is a nonzero constant
        c = r0[0]
        ci = pow(c % p, -1, p) if p else Fraction(1) / c
        return self._reduce([x * ci for x in s0])

    # -- public helpers
    def __call__(self, c) -> "RingElem":
        if isinstance(c, RingElem):
            if c.ring is self:
                return c
            if (c.ring.p, c.ring.modulus) != (self.p, self.modulus):
                raise ValueError("element belongs to a different field")
            return RingElem(self, c.c)
        if isinstance(c, LaurentPoly):
            return eval_at_eps(c, self)
        return RingElem(self, self._norm_list([c]))

    def from_int(self, c: int) -> "RingElem":
        return RingElem(self, self._norm_list([c]))

    def eps_pow(self, k: int) -> "RingElem":
        return self._eps_pows[k % self.lprime]

    vpow = eps_pow

    def binom(self, N: int, t: int) -> "RingElem":
        """[N over t] at e, cached per ring."""
        key = (N, t)
        r = self._binoms.get(key)
        if r is None:
            r = eval_at_eps(gauss_binom(N, t), self)
            self._binoms[key] = r
        return r

    def convert(self, c) -> "RingElem":
        return self(c)

    @property
    def is_field(self) -> bool:
        return True

    @property
    def degenerate(self) -> bool:
        """e = +-1, where the root-of-unity bounds collapse."""
        return self.lprime <= 2

    @property
    def size(self) -> int | None:
        return self.p**self.degree if self.p else None

    def elements(self):
        """All elements of a finite k (p > 0), in code order."""
        if not self.p:
            raise ValueError("k is infinite in characteristic 0")
        for code in range(self.size):
            yield self.from_code(code)

    def from_code(self, code: int) -> "RingElem":
        cs = []
        for _ in range(self.degree):
            cs.append(code % self.p)
            code //= self.p
        return RingElem(self, tuple(cs))

    def modulus_text(self) -> str:
        return _poly_text(self.modulus, "e")

    def header(self) -> str:
        return f"k: lprime={self.lprime} p={self.p} modulus={self.modulus_text()}"

    def params(self) -> dict:
        return {"lprime": self.lprime, "p": self.p, "h": self.h, "modulus": list(map(int, self.modulus))}

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RingSpec(lprime={self.lprime}, p={self.p}, h={self.h}, modulus={self.modulus_text()})"


def _poly_sub(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    if p:
        out = [c % p for c in out]
    return _poly_trim(out)


def _poly_text(coeffs, var: str) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts) or "0"


class RingElem:
    """Element of a :class:`RingSpec` field, stored as a reduced residue."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: RingSpec, c: tuple):
        self.ring = ring
        self.c = c

    def _other(self, o):
        if isinstance(o, RingElem):
            return o.c
        if isinstance(o, int):
            return self.ring._norm_list([o])
        if isinstance(o, LaurentPoly):
            return eval_at_eps(o, self.ring).c
        return None

    def __add__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        p = self.ring.p
        if p:
            return RingElem(self.ring, tuple((x + y) % p for x, y in zip(self.c, oc)))
        return RingElem(self.ring, tuple(x + y for x, y in zip(self.c, oc)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p:
            return RingElem(self.ring, tuple((-x) % p for x in self.c))
        return RingElem(self.ring, tuple(-x for x in self.c))

    def __sub__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        p = self.ring.p
        if p:
            return RingElem(self.ring, tuple((x - y) % p for x, y in zip(self.c, oc)))
        return RingElem(self.ring, tuple(x - y for x, y in zip(self.c, oc)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return RingElem(self.ring, self.ring._mul(self.c, oc))

    __rmul__ = __mul__

    def inverse(self) -> "RingElem":
        return RingElem(self.ring, self.ring._inv(self.c))

    def __truediv__(self, o):
        if not isinstance(o, RingElem):
            o = self.ring(o)
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o):
        if isinstance(o, RingElem):
            return self.ring == o.ring and self.c == o.c
        if isinstance(o, int):
            return self.c == self.ring._norm_list([o])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    @property
    def code(self) -> int:
        """Integer code sum c_i p^i (finite fields only)."""
        p = self.ring.p
        if not p:
            raise ValueError("codes exist only in positive characteristic")
        out = 0
        for x in reversed(self.c):
            out = out * p + x
        return out

    def __str__(self):
        if self.ring.p:
            return _poly_text(list(self.c), "e")
        parts = []
        for e in range(len(self.c) - 1, -1, -1):
            c = self.c[e]
            if not c:
                continue
            mag = abs(c)
            mono = "" if e == 0 else ("e" if e == 1 else f"e^{e}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((body if c > 0 else "-" + body) if not parts else ((" + " if c > 0 else " - ") + body))
        return "".join(parts) or "0"

    def to_text(self, header: bool = True) -> str:
        body = str(self)
        return f"{self.ring.header()}\n{body}" if header else body

    def __repr__(self):
        return f"RingElem({self})"


def make_ring(lprime: int, p: int = 0, h: int = 1, mode: str | None = None) -> RingSpec:
    """Build the field k containing a primitive ``lprime``-th root of unity.

    ``mode`` is ``"char0"`` (Q adjoined e via the cyclotomic polynomial) or
    ``"charp"`` (F_p adjoined e via an irreducible factor of it mod p); by
    default it follows ``p``.
    """
    if lprime < 1:
        raise ValueError("lprime must be a positive integer")
    if h < 1:
        raise ValueError("h must be at least 1")
    if mode is None:
        mode = "charp" if p else "char0"
    if mode not in ("char0", "charp"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "char0" and p != 0:
        raise ValueError("char0 mode requires p = 0")
    if mode == "charp":
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not a prime")
        if math.gcd(p, lprime) != 1:
            raise ValueError(f"p = {p} divides lprime = {lprime}; no primitive root exists")
    if h >= 2 and p == 0:
        raise ValueError("h >= 2 needs positive characteristic")
    if mode == "char0":
        modulus = cyclotomic_poly(lprime)
    else:
        modulus = _irreducible_cyclotomic_factor(lprime, p)
    ring = RingSpec(lprime, p, h, modulus)
    e = ring.eps
    assert e**lprime == ring.one
    assert all(e**d != ring.one for d in range(1, lprime))
    if lprime % 2 == 0:
        assert e**ring.l == -ring.one
    return ring


def eval_at_eps(poly: LaurentPoly, ring: RingSpec) -> RingElem:
    """Image of ``poly`` under v -> e."""
    lp = ring.lprime
    acc = [0] * lp
    for e, c in poly._terms.items():
        acc[e % lp] += c
    out = ring.zero
    for k, c in enumerate(acc):
        if c:
            out = out + ring._eps_pows[k] * ring.from_int(c)
    return out


def classical_binom(m: int, s: int, ring: RingSpec) -> RingElem:
    """Ordinary binomial (m choose s) for any integer m, mapped into k."""
    return ring.from_int(_int_binom(m, s))


def _int_binom(m: int, s: int) -> int:
    if s < 0:
        raise ValueError("s must be nonnegative")
    if m >= 0:
        return math.comb(m, s)
    return (-1) ** s * math.comb(s - m - 1, s)


def qbinom_at_eps(N: int, t: int, ring: RingSpec, via: str = "direct") -> RingElem:
    """[N over t] at e.

    ``via="direct"`` specializes the generic binomial; ``via="ladic"`` uses the
    factorization through m = m0 + l m1, t = t0 + l t1 (needs 0 <= t <= N).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if via == "direct":
        return ring.binom(N, t)
    if via != "ladic":
        raise ValueError(f"unknown route {via!r}")
    if not 0 <= t <= N:
        raise ValueError("the l-adic route needs 0 <= t <= N")
    l = ring.l
    m0, m1 = N % l, N // l
    t0, t1 = t % l, t // l
    expo = l * (t1 * l - t1 * m0 - t * m1)
    return ring.eps_pow(expo) * ring.binom(m0, t0) * classical_binom(m1, t1, ring)
