"""
Rewriting a product of linear forms into the canonical basis
============================================================

Each defect has a three-term or two-term identity that replaces it by
roots lower in a fixed total order. Repeating until nothing is left to
rewrite gives the basis coordinates, which for a positive root are
nonnegative integers.
"""

from kroots import decompose_kroot, decompose_vector_oracle, expand, parse_kroot
from kroots.rewrite import apply_rule
from kroots.roots import find_defect

alpha = parse_kroot("(x1+x3)(x2+x4)", 4)
d = find_defect(alpha)
print(alpha, "has a", d.kind.value, "at", d.indices)

# one rewriting step; the pieces add back up to alpha
pieces = apply_rule(alpha, d)
print(" + ".join(map(str, pieces)))
total = expand(pieces[0])
for p in pieces[1:]:
    total = total + expand(p)
assert total == expand(alpha)

# the full decomposition, checked against plain linear algebra
coords = decompose_kroot(alpha)
print(coords.dumps())
assert coords == decompose_vector_oracle(expand(alpha))

# a negative sign after normalization just negates the coordinates
beta = parse_kroot("(x4-x1)(x2+x3)", 5)
print(beta, "=", decompose_kroot(beta).dumps())
