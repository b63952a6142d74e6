"""Gaussian binomials, generic and at a root of unity.

Run: python demos/01_gaussian_binomials.py
"""

from flkernels.qring import gauss_binom, make_ring, qbinom_at_eps

# Generic coefficients are Laurent polynomials in v, bar-invariant and
# defined for negative top entries too.
print("[4 over 2] =", gauss_binom(4, 2))
print("[-3 over 2] =", gauss_binom(-3, 2))

# Specializing v to a primitive 3rd root of unity in characteristic 2.  The
# field is F_2[e]/(e^2 + e + 1), i.e. the field with four elements.
k = make_ring(3, 2, 1)
print(k.header())
for N in range(7):
    print("  row", N, [str(qbinom_at_eps(N, t, k)) for t in range(N + 1)])

# At level h = 2 the bound l p^(h-1) grows to 6 and the rows vanish in a
# wider band; the l-adic factorization gives the same values.
k2 = make_ring(3, 2, 2)
same = all(qbinom_at_eps(m, t, k2) == qbinom_at_eps(m, t, k2, via="ladic") for m in range(13) for t in range(m + 1))
print("level 2, l-adic route agrees with direct evaluation:", same)

# Shifting the top entry by l p^(h-1) multiplies by a power of e.
B = k2.bound
ok = all(qbinom_at_eps(b + B, a, k2) == k2.eps_pow(-a * B) * qbinom_at_eps(b, a, k2) for a in range(B) for b in range(-12, 13))
print("shift identity holds on the sample:", ok)
