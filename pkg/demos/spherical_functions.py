"""
Spherical functions of the Johnson scheme
=========================================

Functions on k-subsets of {1..n} that are invariant under S_k x S_{n-k} and
lie in one irreducible piece are determined up to scale. Built from a single
root by symmetrizing, their canonical-basis coefficients are nonnegative.
"""

from kroots import spherical_function, spherical_table
from kroots.monomials import format_rational
from kroots.spherical import certify

n, k = 6, 2
for j in range(k + 1):
    phi = spherical_function(n, k, j)
    print(f"Phi({n},{k},{j}): denominators divide {phi.denominator_bound}")
    for w, c in phi.coeffs.items():
        print("   ", w, format_rational(c))

# the values only depend on how far a subset is from {1..k}
for row in spherical_table(n, k):
    print(" ".join(format_rational(x).rjust(5) for x in row))

# each function passes the six defining checks
report = certify(spherical_function(4, 1, 1))
for name, result in report.items():
    print("PASS" if result.passed else "FAIL", name)
