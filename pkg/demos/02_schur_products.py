"""Structure constants in q-Schur algebras and the monomial basis.

Run: python demos/02_schur_products.py
"""

from flkernels import indices as ix
from flkernels.blmcore import AlgebraCtx, decompose, monomial_for, mult_general

E12 = ix.elem_mat(2, 1, 2)
E21 = ix.elem_mat(2, 2, 1)

# K_2 allows negative diagonal entries, so [E12][E21] keeps both terms.
K2 = AlgebraCtx.kwindow(2)
print("in K_2:     [E12][E21] =", mult_general(K2.basis(E12), K2.basis(E21)))

# In S(2, 1) the term with a negative diagonal is discarded.
S = AlgebraCtx.schur(2, 1)
print("in S(2,1):  [E12][E21] =", mult_general(S.basis(E12), S.basis(E21)))

# Each basis element [A] is the leading term of a divided-power monomial.
A = ix.mat([[0, 1], [1, 0]])
word, expansion = monomial_for(A, K2)
print("monomial for", [list(r) for r in A], "is", word)
print("  which expands to", expansion)

# Inverting the unitriangular relation writes [A] in monomials.
S33 = AlgebraCtx.schur(3, 3)
A = ix.mat([[0, 1, 1], [1, 0, 0], [0, 0, 0]])
coeffs = decompose(A, S33)
print(f"[A] for A = {[list(r) for r in A]} needs {len(coeffs)} monomials:")
for B, c in sorted(coeffs.items()):
    print("  ", c, "*", monomial_for(B, S33)[0])

# Sanity: the reassembled sum is [A] again.
acc = S33.zero()
for B, c in coeffs.items():
    acc = acc + monomial_for(B, S33)[1].scale(c)
print("reassembled equals [A]:", acc == S33.basis(A))
