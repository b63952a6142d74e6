"""Command line entry point: ``qgcli {qb, mult, decompose, verify}``.

Exit codes: 0 success / all checks passed, 1 a check failed, 2 usage or
parameter error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys

from . import indices as ix
from .blmcore import GENERIC, AlgebraCtx, AlgElem, CertificationError, WindowOverflow, _parse_coeff, decompose, monomial_for, mult_general
from .qring import gauss_binom, make_ring, qbinom_at_eps
from .verify import BASES_DEFAULT, GAUSS_PAIRS, ORACLE_DEFAULT, REALIZATION_DEFAULT, SCHUR_DEFAULT, SUITES, run_suite


class UsageError(Exception):
    pass


def _ints(s: str | None):
    if s is None:
        return None
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {s!r}")


# ---------------------------------------------------------------------------
# term parsing for ``mult``


def _split_top(s: str, sep: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


_UNIT = re.compile(r"^(\d*)E(\d)(\d)$")
_DIAG = re.compile(r"^diag\(([-\d,\s]+)\)$")


def parse_matrix(s: str, n: int):
    """One matrix: ``E12``, ``2E12``, ``diag(1,0)``, JSON ``[[0,1],[1,0]]`` or a bracketed sum of these."""
    s = s.strip()
    if s.startswith("[["):
        try:
            rows = json.loads(s)
        except json.JSONDecodeError as e:
            raise UsageError(f"bad matrix {s!r}: {e}")
        A = tuple(tuple(int(x) for x in r) for r in rows)
        if len(A) != n or any(len(r) != n for r in A):
            raise UsageError(f"matrix {s!r} is not {n}x{n}")
        return A
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    acc = [[0] * n for _ in range(n)]
    for piece in _split_top(s, "+"):
        m = _UNIT.match(piece)
        d = _DIAG.match(piece)
        if m:
            c = int(m.group(1) or 1)
            i, j = int(m.group(2)), int(m.group(3))
            if not (1 <= i <= n and 1 <= j <= n):
                raise UsageError(f"{piece} is out of range for n = {n}")
            acc[i - 1][j - 1] += c
        elif d:
            vals = [int(x) for x in d.group(1).split(",")]
            if len(vals) != n:
                raise UsageError(f"{piece} needs {n} entries")
            for i, x in enumerate(vals):
                acc[i][i] += x
        elif piece.startswith("[["):
            B = parse_matrix(piece, n)
            for i in range(n):
                for j in range(n):
                    acc[i][j] += B[i][j]
        else:
            raise UsageError(f"cannot parse matrix piece {piece!r}")
    return tuple(tuple(r) for r in acc)


def parse_element(s: str, ctx: AlgebraCtx) -> AlgElem:
    """``coeff*matrix + ...``; a bare matrix has coefficient 1, ``-`` negates."""
    terms = {}
    for piece in _split_top(s, "+"):
        if not piece:
            raise UsageError(f"empty term in {s!r}")
        sign = 1
        if piece.startswith("-"):
            sign, piece = -1, piece[1:].strip()
        parts = _split_top(piece, "*")
        if len(parts) == 1:
            coeff = _parse_coeff("1", ctx)
            mat = parts[0]
        elif len(parts) == 2:
            try:
                coeff = _parse_coeff(parts[0].strip("() "), ctx)
            except Exception:
                raise UsageError(f"cannot parse coefficient {parts[0]!r}")
            mat = parts[1]
        else:
            raise UsageError(f"cannot parse term {piece!r}")
        A = parse_matrix(mat, ctx.n)
        if ctx.kind == "quotient":
            A = ix.pr(A, ctx.period)
        c = coeff if sign > 0 else -coeff
        terms[A] = terms[A] + c if A in terms else c
    try:
        return AlgElem(ctx, terms)
    except ValueError as e:
        raise UsageError(str(e))


def _ring_from(args, required=False):
    if args.lprime is None:
        if required:
            raise UsageError("this context needs --lprime (and --p, --h)")
        return None
    try:
        return make_ring(args.lprime, args.p or 0, args.h or 1)
    except ValueError as e:
        raise UsageError(str(e))


def _build_ctx(args) -> AlgebraCtx:
    ring = _ring_from(args, required=args.ctx == "quotient")
    coeffs = ring if ring is not None else GENERIC
    if args.n is None or args.n < 1:
        raise UsageError("--n is required")
    if args.ctx == "kwindow":
        return AlgebraCtx.kwindow(args.n, coeffs)
    if args.ctx == "schur":
        if args.r is None:
            raise UsageError("--r is required for the schur context")
        return AlgebraCtx.schur(args.n, args.r, coeffs)
    return AlgebraCtx.quotient(args.n, ring)


# ---------------------------------------------------------------------------
# commands


def cmd_qb(args) -> int:
    if args.lprime is None:
        ring = None
    else:
        ring = _ring_from(args)
    ts = [args.t] if args.t is not None else list(range(0, max(args.N, 0) + 1))
    if any(t < 0 for t in ts):
        raise UsageError("t must be nonnegative")
    rows = []
    for t in ts:
        val = gauss_binom(args.N, t) if ring is None else qbinom_at_eps(args.N, t, ring)
        rows.append((t, str(val)))
    if args.json:
        out = {"N": args.N, "values": [{"t": t, "value": v} for t, v in rows]}
        if ring is not None:
            out["ring"] = ring.params()
        print(json.dumps(out))
    elif len(rows) == 1:
        print(rows[0][1])
    else:
        if ring is not None:
            print(ring.header())
        for t, v in rows:
            print(f"[{args.N} over {t}] = {v}")
    return 0


def cmd_mult(args) -> int:
    ctx = _build_ctx(args)
    x = parse_element(args.x, ctx)
    y = parse_element(args.y, ctx)
    try:
        z = mult_general(x, y)
    except WindowOverflow as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(z.to_json(), indent=2 if args.pretty else None))
    else:
        print(str(z))
    return 0


def cmd_decompose(args) -> int:
    ctx = _build_ctx(args)
    if ctx.kind == "quotient":
        raise UsageError("decompose works in the kwindow or schur context")
    A = parse_matrix(args.matrix, ctx.n)
    try:
        word, exp = monomial_for(ctx.normalize_key(A), ctx)
        dec = decompose(A, ctx)
    except (CertificationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({
            "matrix": [list(r) for r in A],
            "word": str(word),
            "ordering": word.ordering,
            "expansion": exp.to_json(),
            "decomposition": [{"matrix": [list(r) for r in B], "coeff": str(c)} for B, c in sorted(dec.items())],
        }))
    else:
        print(f"monomial: {word}")
        print(f"expansion: {exp}")
        parts = [f"({c})*M{[list(r) for r in B]}" for B, c in sorted(dec.items())]
        print("[A] = " + " + ".join(parts))
    return 0


def _ring_grid(args, default):
    if args.lprime is None and args.p is None and args.h is None:
        return list(default), []
    lps = _ints(args.lprime) or sorted({d[0] for d in default})
    ps = _ints(args.p) or sorted({d[1] for d in default})
    hs = _ints(args.h) or [1]
    good, skipped = [], []
    for lp, p, h in itertools.product(lps, ps, hs):
        try:
            make_ring(lp, p, h)
            good.append((lp, p, h))
        except ValueError as e:
            skipped.append(f"({lp},{p},{h}): {e}")
    if not good:
        raise UsageError("no valid (lprime, p, h) in the grid: " + "; ".join(skipped))
    return good, skipped


def cmd_verify(args) -> int:
    suite = args.suite
    kw = {}
    skipped = []
    n = _ints(args.n)
    if suite == "gauss":
        if args.lprime or args.p:
            lps = _ints(args.lprime) or sorted({a for a, _ in GAUSS_PAIRS})
            ps = _ints(args.p) or sorted({b for _, b in GAUSS_PAIRS})
            pairs = []
            for lp, p in itertools.product(lps, ps):
                try:
                    make_ring(lp, p, 1)
                    pairs.append((lp, p))
                except ValueError as e:
                    skipped.append(f"({lp},{p}): {e}")
            if not pairs:
                raise UsageError("no valid (lprime, p) pair in the grid")
            kw["pairs"] = pairs
        if args.h:
            kw["hs"] = tuple(_ints(args.h))
    elif suite == "relations":
        if n:
            kw["ns"] = tuple(n)
        if args.r:
            kw["rs"] = tuple(_ints(args.r))
    elif suite == "det":
        if args.max_m is not None:
            if not 1 <= args.max_m <= 12:
                raise UsageError("--max-m must be in 1..12")
            kw["max_m"] = args.max_m
    elif suite == "schur":
        if args.lprime or args.p:
            lp = (_ints(args.lprime) or [3])[0]
            p = (_ints(args.p) or [2])[0]
            try:
                make_ring(lp, p, 1)
            except ValueError as e:
                raise UsageError(str(e))
            kw["lp_p"] = (lp, p)
        if n or args.h or args.r:
            kw["grid"] = tuple(itertools.product(n or [2], _ints(args.h) or [1], _ints(args.r) or [1, 2, 3]))
    else:
        defaults = {
            "triangular": [(3, 2, 1)],
            "tau": [(3, 2, 1), (4, 3, 1)],
            "closure": [(3, 2, 1), (3, 2, 2)],
            "bases": [ra for ra, _ in BASES_DEFAULT],
            "realization": list(REALIZATION_DEFAULT),
            "oracle": list(ORACLE_DEFAULT),
        }[suite]
        rings, skipped = _ring_grid(args, defaults)
        if suite == "triangular":
            kw["ring_args"] = ((),) + tuple(rings)
        elif suite == "bases":
            if args.lprime or args.p or args.h:
                odd_kinds = ("N_h", "M0", "M", "B", "Bp", "reduced")
                even_kinds = ("B_h", "M0", "M", "B", "Bp")
                kw["grid"] = tuple((ra, odd_kinds if ra[0] % 2 else even_kinds) for ra in rings)
        else:
            kw["ring_args"] = tuple(rings)
        if n and suite != "triangular":
            kw["n"] = n[0]
    if suite == "tau" and args.cases:
        kw["cases"] = args.cases
    rep = run_suite(suite, jobs=args.jobs, seed=args.seed, **kw)
    rep.notes.extend(f"skipped {s}" for s in skipped)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.dumps(indent=2))
    if args.json:
        print(rep.dumps(indent=2))
    else:
        print(rep.summary())
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgcli", description="Exact computations in q-Schur algebras and Frobenius-Lusztig kernels.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("qb", help="Gaussian binomials, generic or at a root of unity")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--t", type=int)
    q.add_argument("--lprime", type=int)
    q.add_argument("--p", type=int, default=0)
    q.add_argument("--h", type=int, default=1)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_qb)

    for name, helptext in (("mult", "multiply two elements"), ("decompose", "certified monomial and triangular decomposition of [A]")):
        m = sub.add_parser(name, help=helptext)
        m.add_argument("--ctx", choices=("kwindow", "schur", "quotient"), default="kwindow")
        m.add_argument("--n", type=int, required=True)
        m.add_argument("--r", type=int)
        m.add_argument("--lprime", type=int)
        m.add_argument("--p", type=int, default=0)
        m.add_argument("--h", type=int, default=1)
        m.add_argument("--json", action="store_true")
        m.add_argument("--pretty", action="store_true")
        if name == "mult":
            m.add_argument("x")
            m.add_argument("y")
            m.set_defaults(func=cmd_mult)
        else:
            m.add_argument("matrix")
            m.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--lprime", help="comma separated")
    v.add_argument("--p", help="comma separated")
    v.add_argument("--h", help="comma separated")
    v.add_argument("--n", help="comma separated")
    v.add_argument("--r", help="comma separated")
    v.add_argument("--max-m", type=int, dest="max_m")
    v.add_argument("--cases", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
