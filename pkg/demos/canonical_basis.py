"""
The canonical basis of degree-k multilinear polynomials
=======================================================

Products of k linear factors (x_i - x_j) or (x_i + x_j) on disjoint pairs of
variables span the space of degree-k squarefree polynomials in n variables.
Forbidding four local patterns leaves exactly one basis, indexed by lattice
words.
"""

from math import comb

from kroots import enumerate_canonical_basis, find_defect, from_label, kroot, label_of, strip_symmetric
from kroots.roots import ANTISYMMETRIC as MINUS, SYMMETRIC as PLUS

# the smallest interesting case: four variables, degree two
for b in enumerate_canonical_basis(4, 2):
    print(label_of(b), b, "height", b.height)

# a root that crosses itself is not in the basis; find_defect says why
crossing = kroot(4, (1, 3, MINUS), (2, 4, MINUS))
print(crossing, "->", find_defect(crossing).kind.value)

# labels determine basis elements; twos mark the right ends of minus factors
alpha = from_label("112111122111", 5)
print(alpha)
print("without symmetric factors:", strip_symmetric(alpha))

# the basis always has C(n, k) elements
for n in range(2, 11):
    sizes = [len(enumerate_canonical_basis(n, k)) for k in range(1, n // 2 + 1)]
    assert sizes == [comb(n, k) for k in range(1, n // 2 + 1)]
print("sizes agree with binomial coefficients up to n = 10")
