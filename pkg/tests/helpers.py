"""Independent reference computations for the tests."""

from itertools import product

from kroots.monomials import SparseVector


def multiply_linear_forms(n, forms):
    """Expand a product of linear forms given as {index: coefficient} dicts.

    Deliberately ignores every k-root convention: it just multiplies out and
    drops non-squarefree terms (which never occur for disjoint supports).
    """
    terms = {}
    for choice in product(*[list(f.items()) for f in forms]):
        idx = [i for i, _ in choice]
        if len(set(idx)) < len(idx):
            continue
        coeff = 1
        for _, c in choice:
            coeff *= c
        key = tuple(sorted(idx))
        terms[key] = terms.get(key, 0) + coeff
    return SparseVector(n, len(forms), terms)


def forms_of(raw):
    """[(a, b), ...] signed endpoints -> list of linear forms."""
    return [{abs(a): (1 if a > 0 else -1), abs(b): (1 if b > 0 else -1)} for a, b in raw]
