"""Acceptance criteria A1-A10 at their stated grids and time limits.

Each test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  A6 asserts a closed form that is false (the sign matrix
is a Sylvester-Hadamard matrix) and is kept as a strict expected failure.
"""

import time

import pytest

from flkernels import indices as ix
from flkernels.qring import make_ring
from flkernels.schurmaps import infinitesimal_basis_report, little_schur_report
from flkernels.uqgroup import basis_report, sign_det
from flkernels.verify import run_suite

SCHUR_GRID = ((2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 2))


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _suite(record, cid, name, limit, **kw):
    rep, secs = _timed(lambda: run_suite(name, seed=0, **kw))
    ok = rep.passed and secs < limit
    n_ok = sum(c.passed for c in rep.checks)
    record(cid, ok, f"{name}: {n_ok}/{len(rep.checks)} checks, {secs:.2f} s (limit {limit} s)")
    assert rep.passed, rep.summary()
    assert secs < limit
    return rep


def test_a1_gauss(record):
    rep = _suite(record, "A1", "gauss", 30, hs=(1, 2))
    pts = {(c.params["lprime"], c.params["p"], c.params["h"]) for c in rep.checks}
    assert pts == {(lp, p, h) for lp, p in [(3, 2), (3, 5), (4, 3), (5, 2), (6, 5), (7, 2)] for h in (1, 2)}


def test_a2_relations(record):
    rep = _suite(record, "A2", "relations", 60, ns=(2, 3), rs=(1, 2, 3, 4))
    pts = {(c.params["n"], c.params["r"]) for c in rep.checks}
    assert pts == {(n, r) for n in (2, 3) for r in (1, 2, 3, 4)}


def test_a3_triangular(record):
    rep = _suite(record, "A3", "triangular", 60, ring_args=((), (3, 2, 1)))
    tested = sum(c.params.get("tested", 0) for c in rep.checks)
    full = sum(ix.count_theta_nr(2, r) for r in range(1, 5))
    assert tested == 2 * 2 * (full + 200)


def test_a4_kernel_structure(record):
    t0 = time.perf_counter()
    cases = [((3, 2, 1), "N_h", 81), ((3, 2, 2), "N_h", 1296), ((4, 3, 1), "B_h", 64)]
    got = []
    ok = True
    for ra, kind, dim in cases:
        rep = basis_report(kind, make_ring(*ra))
        good = rep.passed and rep.params["dim"] == dim and rep.params["rank"] == dim
        ok &= good
        got.append(f"{kind}{ra}: dim {rep.params['dim']} rank {rep.params['rank']}")
    secs = time.perf_counter() - t0
    ok &= secs < 180
    record("A4", ok, "; ".join(got) + f"; {secs:.2f} s (limit 180 s)")
    assert ok


def test_a5_well_definedness(record):
    rep = _suite(record, "A5", "tau", 60, ring_args=((3, 2, 1), (4, 3, 1)), cases=200)
    for name in ("tau_D(x y) = tau_D(x) tau_D(y)", "quotient product independent of lifts"):
        hits = [c for c in rep.checks if c.name == name]
        assert len(hits) == 2 and all(c.params["cases"] == 200 for c in hits)


@pytest.mark.xfail(strict=True, reason="det X_m = +-2^(m 2^(m-1)); neither (-2)^(2^m-1) nor (-2)^m holds for m >= 2")
def test_a6_determinant_as_stated(record):
    t0 = time.perf_counter()
    rows = [sign_det(m) for m in range(1, 5)]
    secs = time.perf_counter() - t0
    proof_ok = all(d["det"] == (-2) ** (2 ** d["m"] - 1) for d in rows)
    flag_ok = rows[1]["statement_matches"] is False
    detail = ", ".join(f"m={d['m']}: det={d['det']} proof={d['proof_value']}" for d in rows)
    record("A6", proof_ok and flag_ok and secs < 1, f"{detail} (criterion unattainable, see notes/decisions.md)")
    assert proof_ok and flag_ok


def test_a6_true_determinants():
    t0 = time.perf_counter()
    for m in range(1, 5):
        d = sign_det(m)
        assert d["det"] == (-2 if m == 1 else 2 ** (m * 2 ** (m - 1)))
        assert d["statement_matches"] == (m == 1)
        assert d["proof_matches"] == (m == 1)
    assert time.perf_counter() - t0 < 1


def test_a7_realization(record):
    rep = _suite(record, "A7", "realization", 180, ring_args=((3, 2, 1), (3, 2, 2), (4, 3, 1)))
    names = " ".join(c.name for c in rep.checks)
    assert "K1^3 - 1" in names


def _schur_grid(record, cid, fn):
    t0 = time.perf_counter()
    reps = []
    for n, h, r in SCHUR_GRID:
        reps.append(fn(n, make_ring(3, 2, h), r))
    secs = time.perf_counter() - t0
    ok = all(r.passed for r in reps) and secs < 180
    checks = sum(len(r.checks) for r in reps)
    record(cid, ok, f"{len(reps)} grid points, {checks} checks, {secs:.2f} s (limit 180 s)")
    for r in reps:
        assert r.passed, r.summary()
    assert secs < 180


def test_a8_little_schur(record):
    _schur_grid(record, "A8", little_schur_report)


def test_a9_infinitesimal_schur(record):
    _schur_grid(record, "A9", infinitesimal_basis_report)


def test_a10_oracle(record):
    _suite(record, "A10", "oracle", 120, ring_args=((3, 2, 1), (3, 2, 2), (4, 3, 1)))
