"""Little and infinitesimal q-Schur algebras as images of the kernel algebra.

Run: python demos/05_schur_quotients.py
"""

from flkernels import indices as ix
from flkernels.blmcore import AlgebraCtx, double_bracket
from flkernels.qring import make_ring
from flkernels.schurmaps import RBracket, infinitesimal_basis_report, little_schur_report, zeta_image

k = make_ring(3, 2, 1)
W = AlgebraCtx.quotient(2, k)

# zeta_r lifts a double bracket to all representatives and keeps the ones in Theta(2, r).
x = double_bracket(ix.elem_mat(2, 1, 2), (1, 0), W)
for r in range(1, 7):
    print(f"r={r}: zeta({x}) = {zeta_image(x, r)}")
print("RBracket agrees:", RBracket(ix.elem_mat(2, 1, 2), (1, 0), 4).value(k) == zeta_image(x, 4))

for n, h, r in ((2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 2)):
    ring = make_ring(3, 2, h)
    a = little_schur_report(n, ring, r)
    b = infinitesimal_basis_report(n, ring, r)
    print(f"(n,h,r)=({n},{h},{r}): little q-Schur rank {a.params['rank']} pass {a.passed}; "
          f"infinitesimal |Theta(n,r)_h| = {b.params['theta_nr_h']} pass {b.passed}")
