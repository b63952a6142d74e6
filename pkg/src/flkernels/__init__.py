"""Exact computations in q-Schur algebras and Frobenius-Lusztig kernels at roots of unity.

Submodules:
    qring      Laurent polynomials, Gaussian binomials, the coefficient field k
    indices    matrix index sets, orders, residue projection and lifting
    exactla    sparse exact elimination over k
    blmcore    multiplication engine for K_n, S(n, r) and W(n, h)
    uqgroup    generator images, PBW and A(delta, lam) families, basis checks
    schurmaps  maps to little and infinitesimal q-Schur algebras
    verify     named verification suites
    cli        the ``qgcli`` command
"""

from .blmcore import GENERIC, AlgebraCtx, AlgElem, decompose, monomial_for, mult_general
from .indices import cmp_order, enumerate_set, lift, pr
from .qring import LaurentPoly, RingSpec, gauss_binom, make_ring, qbinom_at_eps
from .reports import Check, Report
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "GENERIC",
    "AlgebraCtx",
    "AlgElem",
    "decompose",
    "monomial_for",
    "mult_general",
    "cmp_order",
    "enumerate_set",
    "lift",
    "pr",
    "LaurentPoly",
    "RingSpec",
    "gauss_binom",
    "make_ring",
    "qbinom_at_eps",
    "Check",
    "Report",
    "SUITES",
    "run_suite",
]
