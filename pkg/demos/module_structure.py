"""
The symmetric group acting on the canonical basis
=================================================

Permuting variables sends basis elements to combinations with integer
coefficients of one sign per column. Filtering by the number of plus
factors gives a chain of submodules, cut out by powers of the operator
d = sum of partial derivatives.
"""

import random

from kroots import Permutation, rep_matrix
from kroots.action import filtration_basis, lattice_count, verify_filtration
from kroots.monomials import format_rational

n, k = 5, 2
w = Permutation.from_cycles(n, [(1, 3, 5)])
rm = rep_matrix(w, n, k)
print("matrix of", w)
for label, row in zip(rm.labels, rm.matrix):
    print(label, " ".join(format_rational(x).rjust(2) for x in row))
print("integral:", rm.integral, "sign-coherent:", rm.sign_coherent)

# random permutations behave the same way
rng = random.Random(1)
assert all(rep_matrix(Permutation.random(7, rng), 7, 3).sign_coherent for _ in range(10))

# dimensions of the filtration and its quotients
for t in range(k + 1):
    print(f"dim V^({t}) =", filtration_basis(n, k, t).dimension, " quotient", lattice_count(n, k - t))
for name, ok in verify_filtration(n, k).items():
    print("PASS" if ok else "FAIL", name)
