"""k-roots: factored products of (x_i +/- x_j) over disjoint index pairs.

A positive k-root in normal form is a product of factors ``(x_i + s x_j)``
with ``i < j`` and ``s`` in {+1, -1}; ``s = -1`` is antisymmetric and
``s = +1`` symmetric. Every k-root is ``+1`` or ``-1`` times such a product.
Canonical basis elements are the defect-free positive k-roots, and they are
in bijection with lattice words over {1, 2} (their labels).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from kroots.monomials import (
    ContractError,
    ParameterError,
    SparseVector,
    check_params,
)

SYMMETRIC = 1
ANTISYMMETRIC = -1


class NotAKRootError(ValueError):
    """Raised when a product of linear factors is not a k-root."""


class InvalidLabelError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Factor:
    """The linear factor ``x_i + sign * x_j`` with ``i < j``."""

    i: int
    j: int
    sign: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise NotAKRootError(f"factor endpoints must satisfy 1 <= i < j, got ({self.i}, {self.j})")
        if self.sign not in (SYMMETRIC, ANTISYMMETRIC):
            raise NotAKRootError(f"factor sign must be +1 or -1, got {self.sign}")

    @property
    def symmetric(self) -> bool:
        return self.sign == SYMMETRIC

    def __str__(self) -> str:
        return f"(x{self.i}{'+' if self.symmetric else '-'}x{self.j})"


@dataclass(frozen=True)
class KRoot:
    """``sign`` times the product of ``factors``, as a vector in V_{n,k}.

    Factors are kept sorted by left endpoint, so structural equality is
    equality of k-roots. The empty product (k = 0) is allowed; it expands
    to the unit of the rank-one space V_{n,0}.
    """

    n: int
    factors: tuple[Factor, ...]
    sign: int = 1

    def __post_init__(self):
        factors = tuple(sorted(self.factors))
        object.__setattr__(self, "factors", factors)
        if self.sign not in (1, -1):
            raise NotAKRootError(f"sign must be +1 or -1, got {self.sign}")
        seen = set()
        for f in factors:
            if f.j > self.n:
                raise NotAKRootError(f"index {f.j} exceeds n = {self.n}")
            if f.i in seen or f.j in seen:
                raise NotAKRootError(f"repeated index in {''.join(map(str, factors))}")
            seen.update((f.i, f.j))

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def height(self) -> int:
        """Number of symmetric factors."""
        return sum(1 for f in self.factors if f.symmetric)

    @property
    def positive(self) -> bool:
        return self.sign == 1

    def used(self) -> set[int]:
        return {x for f in self.factors for x in (f.i, f.j)}

    def unused(self) -> list[int]:
        used = self.used()
        return [x for x in range(1, self.n + 1) if x not in used]

    def __neg__(self) -> "KRoot":
        return KRoot(self.n, self.factors, -self.sign)

    def __abs__(self) -> "KRoot":
        return self if self.sign == 1 else -self

    def __str__(self) -> str:
        if not self.factors:
            return "1" if self.sign == 1 else "-1"
        body = "".join(map(str, self.factors))
        return body if self.sign == 1 else "-" + body

    def expression(self) -> str:
        """Text that parses back to this root (a negative sign is pushed into the first factor)."""
        if not self.factors:
            return "1"
        first, rest = self.factors[0], self.factors[1:]
        if self.sign == 1:
            head = str(first)
        else:
            head = f"(-x{first.i}{'-' if first.symmetric else '+'}x{first.j})"
        return head + "".join(map(str, rest))


def kroot(n: int, *factors: tuple[int, int, int], sign: int = 1) -> KRoot:
    """Shorthand: ``kroot(4, (1, 4, +1), (2, 3, -1))`` is (x1+x4)(x2-x3)."""
    return KRoot(n, tuple(Factor(*f) for f in factors), sign)


def normalize(raw: Iterable[tuple[int, int]], n: int) -> KRoot:
    """Normal form of a product of factors given as signed endpoints.

    Each pair ``(a, b)`` stands for ``sgn(a) x_|a| + sgn(b) x_|b|``; for example
    ``[(-2, 1), (3, 4)]`` is (-x2 + x1)(x3 + x4). The returned root carries
    the sign that makes it equal to the input product.
    """
    sign = 1
    factors = []
    for a, b in raw:
        if a == 0 or b == 0:
            raise NotAKRootError("variable indices start at 1")
        p, q = abs(a), abs(b)
        if p == q:
            raise NotAKRootError(f"factor uses x{p} twice")
        cp, cq = (1 if a > 0 else -1), (1 if b > 0 else -1)
        if p > q:
            p, q, cp, cq = q, p, cq, cp
        sign *= cp
        factors.append(Factor(p, q, cp * cq))
    return KRoot(n, tuple(factors), sign)


def expand(alpha: KRoot) -> SparseVector:
    """The 2^k-term multilinear expansion of ``alpha``."""
    terms = {}
    for choice in product((0, 1), repeat=alpha.k):
        coeff = alpha.sign
        idx = []
        for f, c in zip(alpha.factors, choice):
            if c:
                idx.append(f.j)
                coeff *= f.sign
            else:
                idx.append(f.i)
        terms[tuple(sorted(idx))] = coeff
    return SparseVector(alpha.n, alpha.k, terms, check=False)


# -- defects ----------------------------------------------------------------

class DefectKind(enum.Enum):
    CROSSING = "crossing"
    NESTED_SYMMETRIC = "nested symmetric factor"
    NESTED_UNUSED = "nested unused index"
    OBSTRUCTED_SYMMETRIC = "obstructed symmetric factor"


@dataclass(frozen=True)
class Defect:
    """A defect together with its witness.

    ``indices`` is the pattern ``(i, j, r, s)`` for crossings and nested
    symmetric factors, and ``(i, j, r)`` for the two unused-index kinds;
    always strictly increasing. ``factors`` lists the factors involved in
    the order they appear on the left side of the matching reduction rule.
    """

    kind: DefectKind
    indices: tuple[int, ...]
    factors: tuple[Factor, ...]
    unused: int | None = None


UNUSED_POLICIES = ("smallest", "largest")


def find_defect(alpha: KRoot, unused_policy: str = "smallest") -> Defect | None:
    """First defect of a positive normal-form root, or None if it is canonical.

    Kinds are tried in the order crossing, nested symmetric factor, nested
    unused index, obstructed symmetric factor, and the witness with the
    lexicographically least index tuple is returned. ``unused_policy``
    chooses which admissible unused index accompanies the chosen factor for
    the last two kinds.
    """
    if not isinstance(alpha, KRoot) or alpha.sign != 1:
        raise ContractError("find_defect needs a positive k-root in normal form")
    if unused_policy not in UNUSED_POLICIES:
        raise ValueError(f"unknown unused-index policy {unused_policy!r}")
    fs = alpha.factors

    best = None
    for f, g in combinations(fs, 2):
        # f.i < g.i since factors are sorted
        if f.i < g.i < f.j < g.j:
            w = (f.i, g.i, f.j, g.j)
            if best is None or w < best[0]:
                best = (w, (f, g))
    if best:
        return Defect(DefectKind.CROSSING, best[0], best[1])

    for f in fs:
        for g in fs:
            if g.symmetric and f.i < g.i and g.j < f.j:
                w = (f.i, g.i, g.j, f.j)
                if best is None or w < best[0]:
                    best = (w, (f, g))
    if best:
        return Defect(DefectKind.NESTED_SYMMETRIC, best[0], best[1])

    unused = alpha.unused()
    pick = min if unused_policy == "smallest" else max
    for f in fs:  # sorted by left endpoint, so the first hit is lex-minimal
        inside = [u for u in unused if f.i < u < f.j]
        if inside:
            u = pick(inside)
            return Defect(DefectKind.NESTED_UNUSED, (f.i, u, f.j), (f,), u)

    for f in fs:
        if f.symmetric:
            after = [u for u in unused if u > f.j]
            if after:
                u = pick(after)
                return Defect(DefectKind.OBSTRUCTED_SYMMETRIC, (f.i, f.j, u), (f,), u)
    return None


def is_canonical(alpha: KRoot) -> bool:
    return alpha.sign == 1 and find_defect(alpha) is None


# -- labels -----------------------------------------------------------------

class WordClass(enum.Enum):
    LATTICE = "lattice"
    REVERSE_LATTICE = "reverse lattice"
    BOTH = "both"
    NEITHER = "neither"


def _check_word(w: str) -> str:
    if not isinstance(w, str) or set(w) - {"1", "2"}:
        raise InvalidLabelError(f"label must be a word over {{1, 2}}, got {w!r}")
    return w


def is_lattice_word(w: str) -> bool:
    balance = 0
    for ch in _check_word(w):
        balance += 1 if ch == "1" else -1
        if balance < 0:
            return False
    return True


def is_reverse_lattice_word(w: str) -> bool:
    return is_lattice_word(w[::-1])


def word_class(w: str) -> WordClass:
    fwd, rev = is_lattice_word(w), is_reverse_lattice_word(w)
    if fwd and rev:
        return WordClass.BOTH
    if fwd:
        return WordClass.LATTICE
    if rev:
        return WordClass.REVERSE_LATTICE
    return WordClass.NEITHER


def label_height(w: str, k: int) -> int:
    """Height of the canonical basis element with label ``w``."""
    return k - w.count("2")


def label_of(alpha: KRoot) -> str:
    if find_defect(alpha) is not None:
        raise ContractError(f"{alpha} has a defect and carries no label")
    word = ["1"] * alpha.n
    for f in alpha.factors:
        if not f.symmetric:
            word[f.j - 1] = "2"
    return "".join(word)


def strip_symmetric(alpha: KRoot) -> KRoot:
    """Delete the symmetric factors of a canonical basis element."""
    if find_defect(alpha) is not None:
        raise ContractError(f"{alpha} has a defect")
    return KRoot(alpha.n, tuple(f for f in alpha.factors if not f.symmetric))


def from_label(w: str, k: int) -> KRoot:
    """The canonical basis element of B_{n,k} whose label is ``w`` (n = len(w))."""
    _check_word(w)
    n = len(w)
    check_params(n, k, allow_zero=True)
    m = w.count("2")
    if m > k:
        raise InvalidLabelError(f"label {w} has {m} twos but k = {k}")
    factors = []
    openers: list[int] = []
    for pos, ch in enumerate(w, start=1):
        if ch == "1":
            openers.append(pos)
        elif not openers:
            raise InvalidLabelError(f"{w} is not a lattice word")
        else:
            factors.append(Factor(openers.pop(), pos, ANTISYMMETRIC))
    used = {x for f in factors for x in (f.i, f.j)}
    free = [x for x in range(1, n + 1) if x not in used]
    h = k - m
    tail = free[len(free) - 2 * h:] if h else []
    factors.extend(Factor(a, b, SYMMETRIC) for a, b in zip(tail[::2], tail[1::2]))
    return KRoot(n, tuple(factors))


def lattice_words(n: int, k: int) -> list[str]:
    """Lattice words of length n with at most k twos, in lexicographic order."""
    out: list[str] = []

    def grow(prefix: str, ones: int, twos: int) -> None:
        if len(prefix) == n:
            out.append(prefix)
            return
        grow(prefix + "1", ones + 1, twos)
        if twos < k and twos < ones:
            grow(prefix + "2", ones, twos + 1)

    grow("", 0, 0)
    return out


@lru_cache(maxsize=None)
def _basis(n: int, k: int) -> tuple[KRoot, ...]:
    return tuple(from_label(w, k) for w in lattice_words(n, k))


def enumerate_canonical_basis(n: int, k: int) -> list[KRoot]:
    """B_{n,k} ordered by label."""
    check_params(n, k, allow_zero=True)
    return list(_basis(n, k))


@lru_cache(maxsize=None)
def basis_labels(n: int, k: int) -> tuple[str, ...]:
    check_params(n, k, allow_zero=True)
    return tuple(lattice_words(n, k))


# -- brute force ------------------------------------------------------------

def perfect_matchings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for m in perfect_matchings(remaining):
            yield [(first, partner)] + m


def positive_kroots(n: int, k: int) -> Iterator[KRoot]:
    """Every positive k-root of V_{n,k}, in normal form."""
    check_params(n, k, allow_zero=True)
    for support in combinations(range(1, n + 1), 2 * k):
        for matching in perfect_matchings(list(support)):
            for signs in product((ANTISYMMETRIC, SYMMETRIC), repeat=k):
                yield KRoot(n, tuple(Factor(a, b, s) for (a, b), s in zip(matching, signs)))


def canonical_basis_by_scan(n: int, k: int) -> list[KRoot]:
    """B_{n,k} found by testing every positive k-root for defects."""
    return [a for a in positive_kroots(n, k) if find_defect(a) is None]


def random_positive_kroot(n: int, k: int, rng) -> KRoot:
    check_params(n, k, allow_zero=True)
    pts = rng.sample(range(1, n + 1), 2 * k)
    factors = []
    for a, b in zip(pts[::2], pts[1::2]):
        factors.append(Factor(min(a, b), max(a, b), rng.choice((SYMMETRIC, ANTISYMMETRIC))))
    return KRoot(n, tuple(factors))
