"""The finite algebra W(n, h) that realizes the Frobenius-Lusztig kernel.

Run: python demos/03_kernel_algebra.py
"""

from flkernels import indices as ix
from flkernels.blmcore import AlgebraCtx, double_bracket, mult_general
from flkernels.qring import make_ring
from flkernels.uqgroup import GeneratorSym, basis_report, embed_generator, kernel_injectivity_report

k = make_ring(3, 2, 1)
W = AlgebraCtx.quotient(2, k)
print(k.header())
print("dim W(2,1) =", W.dim(), "(off-diagonal entries below", k.bound, ", diagonals mod", k.period, ")")

# Basis elements are double brackets: an off-diagonal part plus diagonal residues.
x = double_bracket(ix.elem_mat(2, 1, 2), (0, 0), W)
y = double_bracket(ix.elem_mat(2, 2, 1), (0, 0), W)
print("[[E12]] [[E21]] =", mult_general(x, y))

# Generator images.  K_1 has order l' p^(h-1); with l' odd, K_1^l = 1 too.
K1 = embed_generator(GeneratorSym("K", 1), W)
print("K1^3 == 1:", K1 ** 3 == W.one())

# Candidate bases: ranks are computed exactly over the field.
for kind in ("N_h", "M", "B", "Bp", "M0"):
    rep = basis_report(kind, k)
    print(f"  {kind:4s} family size {rep.params['family_size']:4d}  rank {rep.params['rank']:3d}  pass {rep.passed}")

# The even case uses the family B_h and an invertible change of basis.
rep = kernel_injectivity_report(2, make_ring(4, 3, 1))
print(rep.summary())
