"""The +-1 sign matrix behind the even-root-of-unity change of basis.

X_m has entries (-1)^(d.b) over d, b in {0,1}^m.  In lexicographic order it is
the Sylvester-Hadamard matrix, so X_m X_m^T = 2^m I and
det X_m = +-2^(m 2^(m-1)).  The two closed forms (-2)^m and (-2)^(2^m-1)
agree with this only at m = 1.

Run: python demos/04_sign_determinant.py
"""

from flkernels.uqgroup import sign_det, sign_matrix

for row in sign_matrix(2):
    print(" ".join(f"{x:+d}" for x in row))

print(f"{'m':>2} {'det X_m':>28} {'(-2)^m':>8} {'(-2)^(2^m-1)':>14}  method")
for m in range(1, 6):
    d = sign_det(m)
    print(f"{m:>2} {d['det']:>28} {d['statement_value']:>8} {d['proof_value']:>14}  {d['method']}")

# the step that goes wrong: det(-2 X) = (-2)^N det X for an N x N matrix X, not -2 det X
