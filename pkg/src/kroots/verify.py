"""Machine checks of the structural properties at a single (n, k)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from kroots.action import (
    Permutation,
    adjacent_transpositions,
    annihilates_level,
    lattice_count,
    rep_matrix,
    verify_filtration,
)
from kroots.monomials import check_params, enumerate_monomials
from kroots.rewrite import (
    RULES,
    decompose_kroot,
    decompose_vector_oracle,
    monomial_decompose,
    monomial_label,
)
from kroots.roots import (
    KRoot,
    canonical_basis_by_scan,
    enumerate_canonical_basis,
    expand,
    from_label,
    is_reverse_lattice_word,
    label_of,
    positive_kroots,
    random_positive_kroot,
)
from kroots.spherical import certify, spherical_function

# above this many positive k-roots the rewrite/oracle comparison is sampled
EXHAUSTIVE_LIMIT = 3000


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def rule_soundness(n: int) -> bool:
    """Both sides of every reduction rule expand to the same vector for all i<j<r<s <= n."""
    for rule in RULES:
        width = 4 if len(rule.lhs) == 2 else 3
        for idx in combinations(range(1, n + 1), width):
            env = dict(zip("ijrs", idx))
            lhs = expand(KRoot(n, rule.bind(rule.lhs, env)))
            rhs = None
            for term in rule.rhs:
                v = expand(KRoot(n, rule.bind(term, env)))
                rhs = v if rhs is None else rhs + v
            if lhs != rhs:
                return False
    return True


def run_suite(n: int, k: int, seed: int = 0) -> list[Check]:
    check_params(n, k)
    rng = random.Random(seed)
    checks: list[Check] = []

    def add(name, ok, detail=""):
        checks.append(Check(name, bool(ok), detail))

    basis = enumerate_canonical_basis(n, k)
    add("|B| = C(n,k)", len(basis) == comb(n, k), f"{len(basis)} vs {comb(n, k)}")
    heights = [sum(1 for b in basis if b.height == h) for h in range(k + 1)]
    add("height counts = T(n, k-h)", heights == [lattice_count(n, k - h) for h in range(k + 1)],
        str(heights))
    add("defect scan agrees with labels",
        sorted(map(str, canonical_basis_by_scan(n, k))) == sorted(map(str, basis)))
    add("label round trip", all(from_label(label_of(b), k) == b for b in basis))
    add("reduction rules are identities", rule_soundness(n))

    roots = list(positive_kroots(n, k))
    if len(roots) > EXHAUSTIVE_LIMIT:
        roots = [random_positive_kroot(n, k, rng) for _ in range(200)]
    agree = positive = independent = True
    for a in roots:
        d = decompose_kroot(a)
        agree &= d == decompose_vector_oracle(expand(a))
        positive &= d.is_nonnegative() and d.is_integral()
        independent &= d == decompose_kroot(a, "largest")
    add("rewriting agrees with linear oracle", agree, f"{len(roots)} roots")
    add("positive roots are B-positive with integer coefficients", positive)
    add("unused-index choice does not matter", independent)
    add("basis elements are indecomposable",
        all(decompose_kroot(b).coeffs == {label_of(b): 1} for b in basis))

    for name, ok in verify_filtration(n, k).items():
        add(name, ok)
    for t in range(k + 1):
        a = n - k + t
        add(f"x_A with |A| = {a} does not kill V^({t})", not annihilates_level(range(1, a + 1), n, k, t))
        if a + 1 <= n:
            add(f"x_A with |A| = {a + 1} kills V^({t})", annihilates_level(range(1, a + 2), n, k, t))

    perms = adjacent_transpositions(n) + [Permutation.random(n, rng) for _ in range(10)]
    coherent = True
    for w in perms:
        rm = rep_matrix(w, n, k)
        coherent &= rm.integral and rm.sign_coherent
    add("representation matrices are integral and column sign-coherent", coherent,
        f"{len(perms)} permutations")

    phis = {j: spherical_function(n, k, j, certify_result=False) for j in range(k + 1)}
    for j, phi in phis.items():
        report = certify(phi, phis)
        failed = [name for name, res in report.items() if not res.passed]
        add(f"Phi({n},{k},{j}) certified", not failed, ", ".join(failed))

    ok = True
    for I in enumerate_monomials(n, k):
        if is_reverse_lattice_word(monomial_label(I, n)):
            d = monomial_decompose(I, n)
            ok &= d.is_nonnegative() and all((c * 2 ** k).denominator == 1 for _, c in d.items())
    add("reverse lattice monomials are B-positive", ok)
    return checks
