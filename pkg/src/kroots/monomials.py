"""Exact rational vectors over the squarefree monomial basis of V_{n,k}.

A monomial x_I is stored as the sorted tuple ``I`` of its 1-based indices.
For sorted tuples of equal length, Python's tuple order coincides with the
lexicographic monomial order (the smaller monomial is the one owning the
least element of the symmetric difference), which is what makes the
total order on vectors cheap to evaluate.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Monomial = Tuple[int, ...]


class ParameterError(ValueError):
    """Invalid (n, k) or mismatched spaces."""


class ContractError(ValueError):
    """An operation was called on an input violating its precondition."""


def check_params(n: int, k: int, allow_zero: bool = False) -> None:
    if not isinstance(n, int) or not isinstance(k, int):
        raise ParameterError(f"n and k must be integers, got n={n!r}, k={k!r}")
    if n < 2:
        raise ParameterError(f"need n >= 2, got n={n}")
    if k < (0 if allow_zero else 1):
        raise ParameterError(f"need k >= 1, got k={k}")
    if 2 * k > n:
        raise ParameterError(f"need 2k <= n, got n={n}, k={k}")


def check_monomial(I: Iterable[int], n: int, k: int) -> Monomial:
    I = tuple(I)
    if len(I) != k:
        raise ParameterError(f"monomial {I} does not have degree {k}")
    if any(a >= b for a, b in zip(I, I[1:])):
        raise ParameterError(f"monomial indices {I} are not strictly increasing")
    if I and (I[0] < 1 or I[-1] > n):
        raise ParameterError(f"monomial {I} has an index outside [1, {n}]")
    return I


def enumerate_monomials(n: int, k: int) -> list[Monomial]:
    """All C(n, k) monomials of V_{n,k}, in ascending lexicographic order."""
    check_params(n, k)
    return list(combinations(range(1, n + 1), k))


def lex_compare(I: Monomial, J: Monomial) -> int:
    """Compare two monomials: -1 if x_I precedes x_J, 0 if equal, 1 otherwise.

    Implemented literally from the definition (least element of the
    symmetric difference), independent of tuple ordering.
    """
    if len(I) != len(J):
        raise ParameterError(f"monomials {I} and {J} have different degrees")
    diff = set(I) ^ set(J)
    if not diff:
        return 0
    return -1 if min(diff) in I else 1


def monomial_name(I: Monomial) -> str:
    if not I:
        return "1"
    return "*".join(f"x{i}" for i in I)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class VectorSign(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1
    ZERO = 0


class SparseVector:
    """A finitely supported map from monomials of V_{n,k} to rationals.

    Instances are treated as immutable. Zero coefficients are never stored.
    ``k = 0`` is allowed and denotes the rank-one space spanned by the empty
    monomial ``()``, which is the codomain of the differential on V_{n,1}.
    """

    __slots__ = ("n", "k", "_terms", "_lead")

    def __init__(self, n: int, k: int, terms: Mapping[Monomial, object] | None = None,
                 check: bool = True):
        self.n = n
        self.k = k
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for I, c in terms.items():
                c = Fraction(c)
                if c:
                    if check:
                        I = check_monomial(I, n, k)
                    clean[I] = c
        self._terms = clean
        self._lead = min(clean) if clean else None

    @classmethod
    def _from_clean(cls, n: int, k: int, terms: Dict[Monomial, Fraction]) -> "SparseVector":
        v = cls.__new__(cls)
        v.n, v.k = n, k
        v._terms = terms
        v._lead = min(terms) if terms else None
        return v

    @classmethod
    def monomial(cls, n: int, I: Iterable[int], coeff=1) -> "SparseVector":
        I = tuple(I)
        return cls(n, len(I), {I: coeff})

    @classmethod
    def zero(cls, n: int, k: int) -> "SparseVector":
        return cls._from_clean(n, k, {})

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self._terms))

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """(monomial, coefficient) pairs in lexicographic monomial order."""
        return sorted(self._terms.items())

    def coefficient(self, I: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(I), Fraction(0))

    __getitem__ = coefficient

    @property
    def support(self) -> list[Monomial]:
        return sorted(self._terms)

    @property
    def lead(self) -> Monomial | None:
        """The lexicographically minimal monomial in the support."""
        return self._lead

    # -- arithmetic ---------------------------------------------------------
    def _check_same(self, other: "SparseVector") -> None:
        if not isinstance(other, SparseVector):
            raise TypeError(f"expected SparseVector, got {type(other).__name__}")
        if (self.n, self.k) != (other.n, other.k):
            raise ParameterError(
                f"vectors live in different spaces: V_({self.n},{self.k}) and V_({other.n},{other.k})")

    def __add__(self, other: "SparseVector") -> "SparseVector":
        self._check_same(other)
        terms = dict(self._terms)
        for I, c in other._terms.items():
            s = terms.get(I, 0) + c
            if s:
                terms[I] = s
            else:
                terms.pop(I, None)
        return SparseVector._from_clean(self.n, self.k, terms)

    def __neg__(self) -> "SparseVector":
        return SparseVector._from_clean(self.n, self.k, {I: -c for I, c in self._terms.items()})

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __mul__(self, scalar) -> "SparseVector":
        scalar = Fraction(scalar)
        if not scalar:
            return SparseVector.zero(self.n, self.k)
        return SparseVector._from_clean(self.n, self.k, {I: c * scalar for I, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SparseVector":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SparseVector(n={self.n}, k={self.k}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for I, c in self.items():
            name = monomial_name(I)
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            else:
                sign = "-" if c < 0 else "+"
                parts.append(f"{sign} {format_rational(abs(c))}*{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict[str, str]:
        """JSON-ready mapping such as ``{"x1*x3": "-1/3"}``."""
        return {monomial_name(I): format_rational(c) for I, c in self.items()}

    @classmethod
    def from_dict(cls, n: int, data: Mapping[str, str], k: int | None = None) -> "SparseVector":
        terms: Dict[Monomial, Fraction] = {}
        for key, value in data.items():
            key = key.strip()
            if key == "1":
                I: Monomial = ()
            else:
                try:
                    I = tuple(int(part.strip()[1:]) for part in key.split("*")
                              if part.strip().startswith("x"))
                except ValueError:
                    raise ParameterError(f"bad monomial key {key!r}") from None
                if len(I) != len(key.split("*")):
                    raise ParameterError(f"bad monomial key {key!r}")
            if k is None:
                k = len(I)
            terms[I] = parse_rational(value)
        if k is None:
            raise ParameterError("cannot infer degree of an empty vector; pass k")
        return cls(n, k, terms)


def vector_sign(v: SparseVector) -> VectorSign:
    """Sign of ``v`` in the lexicographic total order on V_{n,k}."""
    if v.lead is None:
        return VectorSign.ZERO
    return VectorSign.POSITIVE if v.coefficient(v.lead) > 0 else VectorSign.NEGATIVE


def inner_product(v: SparseVector, w: SparseVector) -> Fraction:
    """The form in which the monomial basis is orthonormal."""
    v._check_same(w)
    if len(w) < len(v):
        v, w = w, v
    return sum((c * w.coefficient(I) for I, c in v._terms.items()), Fraction(0))
