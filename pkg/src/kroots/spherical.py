"""Spherical functions of the Gelfand pair (S_n, S_k x S_{n-k}) built from k-roots.

The j-th spherical function is obtained by symmetrizing the root

    beta_j = (x_1 - x_{k+1}) ... (x_j - x_{k+j}) (x_{j+1} + x_{k+j+1}) ... (x_k + x_{2k})

over S_B (B = {j+1..n}) and then over S_A (A = {1..k}), and rescaling so
the coefficient of x_1...x_k is 1. Group sums are evaluated by
orbit-stabilizer bookkeeping; the literal double sum is kept as a
reference for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Optional

from kroots.action import (
    Permutation,
    act_on_kroot,
    act_on_vector,
    differential,
    young_symmetrizer_apply,
)
from kroots.monomials import ParameterError, SparseVector, check_params, inner_product
from kroots.rewrite import Decomposition, decompose_kroot
from kroots.roots import ANTISYMMETRIC, SYMMETRIC, Factor, KRoot, expand, perfect_matchings


def _check(n: int, k: int, j: int) -> None:
    check_params(n, k)
    if not 0 <= j <= k:
        raise ParameterError(f"need 0 <= j <= k, got j={j}, k={k}")


def beta(n: int, k: int, j: int) -> KRoot:
    _check(n, k, j)
    return KRoot(n, tuple(Factor(i, k + i, ANTISYMMETRIC if i <= j else SYMMETRIC)
                          for i in range(1, k + 1)))


def denominator_bound(n: int, k: int, j: int) -> int:
    """k!(n-k)! / ((k-j)!(n-2k)!), which clears every canonical-basis coefficient."""
    return factorial(k) * factorial(n - k) // (factorial(k - j) * factorial(n - 2 * k))


def normalizing_constant(n: int, k: int, j: int) -> Fraction:
    """Scale turning the full S_A x S_B group sum of beta_j into Phi(n, k, j).

    The stabilizer of beta_j in S_B has order 2^(k-j) (k-j)! (n-2k)!, the
    last factor coming from the unused indices 2k+1..n; dividing the group
    sum by it gives the sum over distinct images, whose x_1...x_k
    coefficient is k!(n-k)!/(n-2k)!.
    """
    return Fraction(1, factorial(k) * factorial(n - k) * 2 ** (k - j) * factorial(k - j))


def orbit_SB(n: int, k: int, j: int) -> list[KRoot]:
    """The distinct images of beta_j under the permutations of B = {j+1..n}.

    The indices 1..j are fixed, so an image is fixed by choosing distinct
    partners in B for the antisymmetric factors and then a perfect matching
    on 2(k-j) further indices of B for the symmetric ones.
    """
    _check(n, k, j)
    B = list(range(j + 1, n + 1))
    out = []
    for partners in permutations(B, j):
        anti = tuple(Factor(i, p, ANTISYMMETRIC) for i, p in zip(range(1, j + 1), partners))
        rest = [b for b in B if b not in partners]
        for support in combinations(rest, 2 * (k - j)):
            for matching in perfect_matchings(list(support)):
                sym = tuple(Factor(a, b, SYMMETRIC) for a, b in matching)
                out.append(KRoot(n, anti + sym))
    return out


def orbit_multiplier(n: int, k: int, j: int) -> int:
    """|S_B| divided by the orbit size, i.e. the stabilizer order of beta_j in S_B."""
    size = (factorial(n - j) // factorial(n - 2 * j) if j else 1) \
        * comb(n - 2 * j, 2 * (k - j)) * _double_factorial(2 * (k - j) - 1)
    total = factorial(n - j)
    assert total % size == 0
    return total // size


def _double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def orbit_sum_SB(n: int, k: int, j: int) -> SparseVector:
    """sum over w in S_B of w.beta_j, as a vector."""
    total = SparseVector.zero(n, k)
    for gamma in orbit_SB(n, k, j):
        total = total + expand(gamma)
    return total * orbit_multiplier(n, k, j)


def has_antisymmetric_factor_in(alpha: KRoot, A: set[int]) -> bool:
    return any(not f.symmetric and f.i in A and f.j in A for f in alpha.factors)


def symmetrized_roots(n: int, k: int, j: int) -> dict[KRoot, int]:
    """(sum_{v in S_A} v)(sum_{w in S_B} w) beta_j as a multiset of positive k-roots.

    Roots with an antisymmetric factor inside A are dropped, since S_A
    symmetrization kills them; every other image stays positive.
    """
    A = set(range(1, k + 1))
    mult = orbit_multiplier(n, k, j)
    counts: dict[KRoot, int] = {}
    perms = []
    for img in permutations(range(1, k + 1)):
        perms.append(Permutation(tuple(img) + tuple(range(k + 1, n + 1))))
    for gamma in orbit_SB(n, k, j):
        if has_antisymmetric_factor_in(gamma, A):
            continue
        for v in perms:
            image = act_on_kroot(v, gamma)
            if image.sign != 1:
                raise AssertionError(f"{v} sends {gamma} to a negative root")
            counts[image] = counts.get(image, 0) + mult
    return counts


@dataclass
class SphericalFunction:
    n: int
    k: int
    j: int
    vector: SparseVector
    coeffs: Decomposition
    denominator_bound: int

    @property
    def identity_coefficient(self) -> Fraction:
        return self.vector.coefficient(range(1, self.k + 1))


def spherical_function(n: int, k: int, j: int, certify_result: bool = True) -> SphericalFunction:
    """Phi(n, k, j) as a vector and in canonical-basis coordinates.

    The vector is computed in the monomial basis (S_B orbit sum, then the
    S_A symmetrizer); the coordinates come from rewriting the symmetrized
    roots. The two routes are compared during certification.
    """
    _check(n, k, j)
    const = normalizing_constant(n, k, j)
    vec = young_symmetrizer_apply(range(1, k + 1), orbit_sum_SB(n, k, j)) * const
    coeffs = Decomposition(n, k)
    for root, mult in symmetrized_roots(n, k, j).items():
        coeffs = coeffs + decompose_kroot(root) * mult
    phi = SphericalFunction(n, k, j, vec, coeffs * const, denominator_bound(n, k, j))
    if certify_result:
        report = certify(phi)
        failed = [name for name, res in report.items() if not res.passed]
        if failed:
            raise AssertionError(f"Phi({n},{k},{j}) failed certification: {failed}")
    return phi


def spherical_function_literal(n: int, k: int, j: int) -> SparseVector:
    """Reference construction by summing over every element of S_A x S_B."""
    _check(n, k, j)
    base = expand(beta(n, k, j))
    B = list(range(j + 1, n + 1))
    inner = SparseVector.zero(n, k)
    for img in permutations(B):
        w = Permutation(tuple(range(1, j + 1)) + img)
        inner = inner + act_on_vector(w, base)
    total = SparseVector.zero(n, k)
    for img in permutations(range(1, k + 1)):
        total = total + act_on_vector(Permutation(img + tuple(range(k + 1, n + 1))), inner)
    return total * normalizing_constant(n, k, j)


# -- certification ------------------------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> dict:
        out: dict = {"pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _k_generators(n: int, k: int) -> list[Permutation]:
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n) if i != k]


def certify(phi: SphericalFunction, others: Optional[dict[int, SphericalFunction]] = None
            ) -> dict[str, CheckResult]:
    """Named pass/fail checks of the defining properties of a spherical function."""
    n, k, j = phi.n, phi.k, phi.j
    vec = phi.vector
    report: dict[str, CheckResult] = {}

    bad = next((str(s) for s in _k_generators(n, k) if act_on_vector(s, vec) != vec), None)
    report["K-invariant"] = CheckResult(bad is None, bad and f"moved by {bad}")

    ident = phi.identity_coefficient
    report["value 1 at identity coset"] = CheckResult(ident == 1, None if ident == 1 else str(ident))

    w = vec
    for _ in range(k - j + 1):
        if w.k == 0:
            w = SparseVector.zero(n, 0)  # d of a constant
            break
        w = differential(w)
    in_level = not w and phi.coeffs.max_height() <= k - j
    report[f"in V^({k - j}) = ker d^{k - j + 1}"] = CheckResult(
        in_level, None if in_level else f"max height {phi.coeffs.max_height()}")

    if others is None:
        others = {jj: spherical_function(n, k, jj, certify_result=False)
                  for jj in range(k + 1) if jj != j}
    nonzero = [jj for jj, other in others.items()
               if jj != j and inner_product(vec, other.vector) != 0]
    self_pos = inner_product(vec, vec) > 0
    report["orthogonal to other spherical functions"] = CheckResult(
        not nonzero and self_pos, None if not nonzero else f"not orthogonal to j={nonzero}")

    N = phi.denominator_bound
    positive = phi.coeffs.is_nonnegative()
    divides = all((c * N).denominator == 1 for _, c in phi.coeffs.items())
    rebuilt = phi.coeffs.vector() == vec
    witness = None
    if not positive:
        witness = "negative coefficient"
    elif not divides:
        witness = f"denominator does not divide {N}"
    elif not rebuilt:
        witness = "coefficients do not reconstruct the vector"
    report["B-positive with denominators dividing N"] = CheckResult(witness is None, witness)

    values: dict[int, Fraction] = {}
    clash = None
    A = set(range(1, k + 1))
    for I in combinations(range(1, n + 1), k):
        c = vec.coefficient(I)
        m = k - len(A.intersection(I))
        if values.setdefault(m, c) != c:
            clash = f"distance {m}"
            break
    report["constant on K-orbits"] = CheckResult(clash is None, clash)
    return report


def spherical_table(n: int, k: int) -> list[list[Fraction]]:
    """Entry (j, m): value of Phi(n, k, j) on monomials at distance m from x_1...x_k."""
    check_params(n, k)
    table = []
    for j in range(k + 1):
        vec = spherical_function(n, k, j, certify_result=False).vector
        row = []
        for m in range(k + 1):
            I = tuple(range(1, k - m + 1)) + tuple(range(k + 1, k + m + 1))
            row.append(vec.coefficient(I))
        table.append(row)
    return table


def distance_class_size(n: int, k: int, m: int) -> int:
    """Number of k-subsets meeting {1..k} in exactly k - m elements."""
    return comb(k, m) * comb(n - k, m)
