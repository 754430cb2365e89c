"""The S_n-module structure of V_{n,k} seen through the canonical basis."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from kroots import linalg
from kroots.monomials import (
    ParameterError,
    SparseVector,
    check_params,
    enumerate_monomials,
)
from kroots.rewrite import decompose_kroot
from kroots.roots import KRoot, basis_labels, enumerate_canonical_basis, expand, normalize


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation: ``images[i-1] = w(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ParameterError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(self * other)(i) == self(other(i))``."""
        if self.n != other.n:
            raise ParameterError("permutations of different degrees")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, wi in enumerate(self.images, start=1):
            inv[wi - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n or a in seen:
                    raise ParameterError(f"bad cycle entry {a} for n = {n}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def random(cls, n: int, rng) -> "Permutation":
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


def parse_permutation(text: str, n: int) -> Permutation:
    """Accepts one-line notation ("2 1 3") or cycle notation ("(1 2)(4 5)")."""
    text = text.strip()
    if "(" in text:
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
            raise ParameterError(f"cannot parse cycle notation {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", body.strip())]
                  for body in re.findall(r"\(([^)]*)\)", text)]
        return Permutation.from_cycles(n, cycles)
    try:
        images = tuple(int(x) for x in re.split(r"[\s,]+", text) if x)
    except ValueError:
        raise ParameterError(f"cannot parse permutation {text!r}") from None
    if len(images) != n:
        raise ParameterError(f"one-line permutation {text!r} does not have length {n}")
    return Permutation(images)


def adjacent_transpositions(n: int) -> list[Permutation]:
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n)]


def act_on_kroot(w: Permutation, alpha: KRoot) -> KRoot:
    raw = [(w(f.i), f.sign * w(f.j)) for f in alpha.factors]
    out = normalize(raw, alpha.n)
    return out if alpha.sign == 1 else -out


def act_on_vector(w: Permutation, v: SparseVector) -> SparseVector:
    return SparseVector(v.n, v.k, {tuple(sorted(w(i) for i in I)): c for I, c in v.items()},
                        check=False)


@dataclass
class RepMatrix:
    """Matrix of a permutation in the canonical basis (rows and columns by label)."""

    labels: tuple[str, ...]
    matrix: linalg.Matrix
    integral: bool
    sign_coherent: bool


def column_sign_coherent(matrix: Sequence[Sequence]) -> bool:
    for col in zip(*matrix):
        signs = {x > 0 for x in col if x}
        if len(signs) > 1:
            return False
    return True


def rep_matrix(w: Permutation, n: int, k: int) -> RepMatrix:
    check_params(n, k)
    if w.n != n:
        raise ParameterError(f"permutation of degree {w.n} acting on V_({n},{k})")
    labels = basis_labels(n, k)
    index = {lab: r for r, lab in enumerate(labels)}
    matrix = [[Fraction(0)] * len(labels) for _ in labels]
    for col, beta in enumerate(enumerate_canonical_basis(n, k)):
        for lab, c in decompose_kroot(act_on_kroot(w, beta)).coeffs.items():
            matrix[index[lab]][col] = c
    integral = all(x.denominator == 1 for row in matrix for x in row)
    return RepMatrix(labels, matrix, integral, column_sign_coherent(matrix))


# -- the differential d = sum of partial derivatives --------------------------

def differential(v: SparseVector) -> SparseVector:
    """Apply d = sum_i d/dx_i, landing in V_{n,k-1}."""
    if v.k < 1:
        raise ParameterError("the differential needs degree k >= 1")
    terms: dict = {}
    for I, c in v.items():
        for pos in range(len(I)):
            J = I[:pos] + I[pos + 1:]
            terms[J] = terms.get(J, 0) + c
    return SparseVector(v.n, v.k - 1, terms, check=False)


def differential_kroot(alpha: KRoot) -> dict[KRoot, int]:
    """d(alpha) as a combination of (k-1)-roots: 2 times each symmetric factor deleted."""
    out: dict[KRoot, int] = {}
    for f in alpha.factors:
        if f.symmetric:
            rest = KRoot(alpha.n, tuple(g for g in alpha.factors if g != f), alpha.sign)
            out[rest] = out.get(rest, 0) + 2
    return out


def d_matrix(n: int, k: int) -> linalg.Matrix:
    """Matrix of d from B_{n,k} to B_{n,k-1} (rows: labels of degree k-1)."""
    check_params(n, k)
    rows = basis_labels(n, k - 1)
    index = {lab: r for r, lab in enumerate(rows)}
    basis = enumerate_canonical_basis(n, k)
    matrix = [[Fraction(0)] * len(basis) for _ in rows]
    for col, beta in enumerate(basis):
        for root, mult in differential_kroot(beta).items():
            for lab, c in decompose_kroot(root).coeffs.items():
                matrix[index[lab]][col] += mult * c
    return matrix


def d_power_matrix(n: int, k: int, power: int) -> linalg.Matrix:
    """Matrix of d^power on V_{n,k} in canonical bases.

    Past degree 0 the target is the zero space, represented by a single zero row.
    """
    size = len(basis_labels(n, k))
    if power > k:
        return [[Fraction(0)] * size]  # maps into the zero space
    result = linalg.identity(size)
    for deg in range(k, k - power, -1):
        result = linalg.matmul(d_matrix(n, deg), result)
    return result


# -- the height filtration ----------------------------------------------------

@dataclass
class FiltrationLevel:
    t: int
    basis: list[KRoot]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def filtration_basis(n: int, k: int, t: int) -> FiltrationLevel:
    """Canonical basis elements of height at most t (they span V^(t))."""
    check_params(n, k)
    if not -1 <= t <= k:
        raise ParameterError(f"filtration level must lie in [-1, {k}], got {t}")
    return FiltrationLevel(t, [b for b in enumerate_canonical_basis(n, k) if b.height <= t])


def lattice_count(n: int, twos: int) -> int:
    """Number of lattice words of length n with exactly ``twos`` twos."""
    if twos < 0:
        return 0
    return comb(n, twos) - (comb(n, twos - 1) if twos >= 1 else 0)


def verify_filtration(n: int, k: int) -> dict[str, bool]:
    """Check every level of the height filtration; one entry per property."""
    check_params(n, k)
    report: dict[str, bool] = {}
    gens = adjacent_transpositions(n)
    basis = enumerate_canonical_basis(n, k)
    for t in range(0, k + 1):
        level = filtration_basis(n, k, t)
        stable = all(
            decompose_kroot(act_on_kroot(s, b)).max_height() <= t for s in gens for b in level.basis)
        report[f"V^({t}) is S_n-stable"] = stable

        d_pow = d_power_matrix(n, k, t + 1)
        kernel_dim = len(basis) - linalg.rank(d_pow, len(basis))
        contained = all(
            not any(d_pow[r][c] for r in range(len(d_pow)))
            for c, b in enumerate(basis) if b.height <= t)
        report[f"V^({t}) = ker d^{t + 1}"] = contained and kernel_dim == level.dimension

        below = filtration_basis(n, k, t - 1).dimension
        report[f"dim V^({t})/V^({t - 1}) = T(n, {k - t})"] = (
            level.dimension - below == lattice_count(n, k - t))
    for deg in range(1, k + 1):
        entries = [x for row in d_matrix(n, deg) for x in row]
        report[f"d on V_(n,{deg}) has even nonnegative entries"] = all(
            x >= 0 and x.denominator == 1 and x.numerator % 2 == 0 for x in entries)
    return report


# -- Young symmetrizers ---------------------------------------------------------

def young_symmetrizer_apply(A: Iterable[int], v: SparseVector) -> SparseVector:
    """sum over w in S_A of w.v, aggregated over orbits of monomials.

    For a monomial x_I meeting A in c indices, every c-subset S of A arises
    as the image of I & A under exactly c!(|A|-c)! permutations of A.
    """
    A = sorted(set(A))
    a = len(A)
    terms: dict = {}
    for I, coeff in v.items():
        outside = [i for i in I if i not in A]
        c = v.k - len(outside)
        mult = coeff * factorial(c) * factorial(a - c)
        for S in combinations(A, c):
            J = tuple(sorted(outside + list(S)))
            terms[J] = terms.get(J, 0) + mult
    return SparseVector(v.n, v.k, terms, check=False)


def young_symmetrizer_literal(A: Iterable[int], v: SparseVector) -> SparseVector:
    """Reference version summing over all |A|! permutations."""
    A = sorted(set(A))
    total = SparseVector.zero(v.n, v.k)
    for img in permutations(A):
        images = list(range(1, v.n + 1))
        for src, dst in zip(A, img):
            images[src - 1] = dst
        total = total + act_on_vector(Permutation(tuple(images)), v)
    return total


def annihilates_level(A: Iterable[int], n: int, k: int, t: int) -> bool:
    """Whether x_A kills every basis vector of V^(t)."""
    A = list(A)
    return all(not young_symmetrizer_apply(A, expand(b)) for b in filtration_basis(n, k, t).basis)


# -- signed transpositions --------------------------------------------------------

@dataclass(frozen=True)
class SignedTransposition:
    """(i j), or with ``signed`` the map x_i -> -x_j, x_j -> -x_i."""

    i: int
    j: int
    signed: bool

    def apply(self, v: SparseVector) -> SparseVector:
        terms = {}
        for I, c in v.items():
            has_i, has_j = self.i in I, self.j in I
            if has_i == has_j:
                terms[I] = c
                continue
            old, new = (self.i, self.j) if has_i else (self.j, self.i)
            J = tuple(sorted(new if x == old else x for x in I))
            terms[J] = -c if self.signed else c
        return SparseVector(v.n, v.k, terms, check=False)

    def __str__(self) -> str:
        return f"{'signed ' if self.signed else ''}({self.i} {self.j})"


def signed_transpositions(alpha: KRoot) -> list[SignedTransposition]:
    return [SignedTransposition(f.i, f.j, f.symmetric) for f in alpha.factors]


def joint_minus_one_eigenspace(ts: Sequence[SignedTransposition], n: int, k: int) -> linalg.Matrix:
    """Basis (monomial coordinates) of the common -1 eigenspace of ``ts`` on V_{n,k}."""
    monos = enumerate_monomials(n, k)
    index = {I: c for c, I in enumerate(monos)}
    rows: linalg.Matrix = []
    for t in ts:
        block = [[Fraction(0)] * len(monos) for _ in monos]
        for col, I in enumerate(monos):
            block[col][col] += 1
            for J, c in t.apply(SparseVector.monomial(n, I)).items():
                block[index[J]][col] += c
        rows.extend(block)
    return linalg.nullspace(rows, len(monos))


def verify_signed_transpositions(alpha: KRoot) -> dict[str, bool]:
    n, k = alpha.n, alpha.k
    vec = expand(alpha)
    ts = signed_transpositions(alpha)
    report = {f"{t} negates the root": t.apply(vec) == -vec for t in ts}
    space = joint_minus_one_eigenspace(ts, n, k)
    report["joint -1 eigenspace is one-dimensional"] = len(space) == 1
    if len(space) == 1:
        monos = enumerate_monomials(n, k)
        spanned = SparseVector(n, k, dict(zip(monos, space[0])))
        lead = spanned.coefficient(vec.lead)
        report["eigenspace is spanned by the root"] = (
            lead != 0 and spanned * (vec.coefficient(vec.lead) / lead) == vec)
    return report
