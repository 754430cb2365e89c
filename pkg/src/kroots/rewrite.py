"""The nine reduction rules, canonical-basis decompositions, and the linear oracle."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping

from kroots import linalg
from kroots.monomials import (
    ContractError,
    Monomial,
    SparseVector,
    check_monomial,
    check_params,
    enumerate_monomials,
    format_rational,
    parse_rational,
)
from kroots.roots import (
    ANTISYMMETRIC,
    SYMMETRIC,
    Defect,
    DefectKind,
    Factor,
    KRoot,
    basis_labels,
    enumerate_canonical_basis,
    expand,
    find_defect,
    from_label,
    is_reverse_lattice_word,
    label_height,
    label_of,
)

# Factor templates are (left letter, right letter, sign).
_M, _P = ANTISYMMETRIC, SYMMETRIC


@dataclass(frozen=True)
class RewriteRule:
    id: int
    kind: DefectKind
    lhs: tuple
    rhs: tuple

    def bind(self, template, env: Mapping[str, int]) -> tuple[Factor, ...]:
        return tuple(Factor(env[a], env[b], s) for a, b, s in template)


RULES: tuple[RewriteRule, ...] = (
    RewriteRule(1, DefectKind.CROSSING, (("i", "r", _M), ("j", "s", _M)),
                ((("i", "j", _M), ("r", "s", _M)), (("i", "s", _M), ("j", "r", _M)))),
    RewriteRule(2, DefectKind.CROSSING, (("i", "r", _P), ("j", "s", _M)),
                ((("i", "j", _P), ("r", "s", _M)), (("i", "s", _P), ("j", "r", _M)))),
    RewriteRule(3, DefectKind.CROSSING, (("i", "r", _M), ("j", "s", _P)),
                ((("i", "j", _M), ("r", "s", _P)), (("i", "s", _P), ("j", "r", _M)))),
    RewriteRule(4, DefectKind.CROSSING, (("i", "r", _P), ("j", "s", _P)),
                ((("i", "j", _P), ("r", "s", _P)), (("i", "s", _M), ("j", "r", _M)))),
    RewriteRule(5, DefectKind.NESTED_SYMMETRIC, (("i", "s", _M), ("j", "r", _P)),
                ((("i", "j", _M), ("r", "s", _P)), (("i", "j", _P), ("r", "s", _M)),
                 (("i", "s", _P), ("j", "r", _M)))),
    RewriteRule(6, DefectKind.NESTED_SYMMETRIC, (("i", "s", _P), ("j", "r", _P)),
                ((("i", "j", _M), ("r", "s", _M)), (("i", "j", _P), ("r", "s", _P)),
                 (("i", "s", _M), ("j", "r", _M)))),
    RewriteRule(7, DefectKind.NESTED_UNUSED, (("i", "r", _M),),
                ((("i", "j", _M),), (("j", "r", _M),))),
    RewriteRule(8, DefectKind.NESTED_UNUSED, (("i", "r", _P),),
                ((("i", "j", _M),), (("j", "r", _P),))),
    RewriteRule(9, DefectKind.OBSTRUCTED_SYMMETRIC, (("i", "j", _P),),
                ((("i", "j", _M),), (("j", "r", _M),), (("j", "r", _P),))),
)

_LETTERS = "ijrs"


def rule_for(defect: Defect) -> tuple[RewriteRule, dict[str, int]]:
    env = dict(zip(_LETTERS, defect.indices))
    for rule in RULES:
        if rule.kind is defect.kind and rule.bind(rule.lhs, env) == defect.factors:
            return rule, env
    raise ContractError(f"no reduction rule matches {defect}")


def apply_rule(alpha: KRoot, defect: Defect) -> list[KRoot]:
    """Rewrite ``alpha`` at ``defect``; the results sum to ``alpha``."""
    if alpha.sign != 1:
        raise ContractError("apply_rule needs a positive k-root")
    rule, env = rule_for(defect)
    lhs = rule.bind(rule.lhs, env)
    if any(f not in alpha.factors for f in lhs):
        raise ContractError(f"{alpha} does not contain the factors of {defect}")
    if defect.unused is not None and defect.unused in alpha.used():
        raise ContractError(f"index {defect.unused} is not unused in {alpha}")
    rest = tuple(f for f in alpha.factors if f not in lhs)
    return [KRoot(alpha.n, rest + rule.bind(term, env)) for term in rule.rhs]


# -- decompositions ---------------------------------------------------------

@dataclass
class Decomposition:
    """Coordinates of a vector in the canonical basis, keyed by label."""

    n: int
    k: int
    coeffs: Dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {w: Fraction(c) for w, c in self.coeffs.items() if c}

    def __getitem__(self, label: str) -> Fraction:
        return self.coeffs.get(label, Fraction(0))

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self) -> list[tuple[str, Fraction]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return (self.n, self.k, self.coeffs) == (other.n, other.k, other.coeffs)

    def __add__(self, other: "Decomposition") -> "Decomposition":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return Decomposition(self.n, self.k, out)

    def __mul__(self, scalar) -> "Decomposition":
        return Decomposition(self.n, self.k, {w: c * scalar for w, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "Decomposition":
        return self * -1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.coeffs.values())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def max_height(self) -> int:
        return max((label_height(w, self.k) for w in self.coeffs), default=-1)

    def vector(self) -> SparseVector:
        """Expand back into the monomial basis."""
        total = SparseVector.zero(self.n, self.k)
        for w, c in self.coeffs.items():
            total = total + expand(from_label(w, self.k)) * c
        return total

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "coeffs": {w: format_rational(c) for w, c in self.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Decomposition":
        return cls(data["n"], data["k"], {w: parse_rational(c) for w, c in data["coeffs"].items()})

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "numerator", "denominator"])
        for w, c in self.items():
            writer.writerow([w, c.numerator, c.denominator])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# One memo per (n, policy); entries are only ever inserted, never changed.
_MEMO: dict[tuple[int, str], dict[KRoot, dict[str, int]]] = {}


def decompose_kroot(alpha: KRoot, unused_policy: str = "smallest") -> Decomposition:
    """Canonical-basis coordinates of ``alpha`` by exhaustive rewriting.

    Positive roots always come out with nonnegative integer coefficients.
    """
    positive = abs(alpha)
    memo = _MEMO.setdefault((alpha.n, unused_policy), {})
    children: dict[KRoot, list[KRoot]] = {}
    stack = [positive]
    while stack:
        a = stack[-1]
        if a in memo:
            stack.pop()
            continue
        kids = children.get(a)
        if kids is None:
            d = find_defect(a, unused_policy)
            if d is None:
                memo[a] = {label_of(a): 1}
                stack.pop()
                continue
            kids = children[a] = apply_rule(a, d)
        pending = [c for c in kids if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        acc: dict[str, int] = {}
        for c in kids:
            for w, m in memo[c].items():
                acc[w] = acc.get(w, 0) + m
        memo[a] = acc
        stack.pop()
    result = Decomposition(alpha.n, alpha.k, memo[positive])
    return result if alpha.sign == 1 else -result


def decompose_combination(terms: Mapping[KRoot, object], n: int, k: int) -> Decomposition:
    """Decompose a rational combination of k-roots by rewriting each one."""
    total = Decomposition(n, k)
    for root, c in terms.items():
        total = total + decompose_kroot(root) * Fraction(c)
    return total


# -- oracle -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _monomial_coordinates(n: int, k: int) -> dict[Monomial, dict[str, Fraction]]:
    """Coordinates of every monomial, from an exact inverse of the expansion matrix."""
    monos = enumerate_monomials(n, k) if k else [()]
    index = {I: r for r, I in enumerate(monos)}
    basis = enumerate_canonical_basis(n, k)
    labels = basis_labels(n, k)
    if len(basis) != len(monos):
        raise AssertionError(f"|B_({n},{k})| = {len(basis)} differs from dim V = {len(monos)}")
    matrix = [[Fraction(0)] * len(basis) for _ in monos]
    for col, beta in enumerate(basis):
        for I, c in expand(beta).items():
            matrix[index[I]][col] = c
    try:
        inv = linalg.inverse(matrix)
    except linalg.SingularMatrixError:
        raise AssertionError(f"canonical basis of V_({n},{k}) is linearly dependent") from None
    return {I: {labels[r]: inv[r][c] for r in range(len(basis)) if inv[r][c]}
            for I, c in index.items()}


def decompose_vector_oracle(v: SparseVector) -> Decomposition:
    """Canonical-basis coordinates of ``v`` by exact linear solve."""
    check_params(v.n, v.k, allow_zero=True)
    coords = _monomial_coordinates(v.n, v.k)
    acc: dict[str, Fraction] = {}
    for I, c in v.items():
        for w, x in coords[I].items():
            acc[w] = acc.get(w, 0) + c * x
    return Decomposition(v.n, v.k, acc)


# -- monomials --------------------------------------------------------------

def monomial_label(I: Monomial, n: int) -> str:
    """The word with 2 at the positions of ``I`` and 1 elsewhere."""
    chosen = set(I)
    return "".join("2" if p in chosen else "1" for p in range(1, n + 1))


def reverse_lattice_partners(I: Monomial, n: int) -> dict[int, int] | None:
    """An injection sending each index of ``I`` to a larger index outside ``I``.

    Scanning right to left, each index of ``I`` takes the nearest free
    position to its right. Returns None when the label of ``x_I`` is not a
    reverse lattice word, in which case no such injection exists.
    """
    chosen = set(I)
    free: list[int] = []
    partner = {}
    for p in range(n, 0, -1):
        if p in chosen:
            if not free:
                return None
            partner[p] = free.pop()
        else:
            free.append(p)
    return partner


def monomial_decompose(I: Monomial, n: int) -> Decomposition:
    """Canonical-basis coordinates of the monomial ``x_I``.

    When the monomial's label is a reverse lattice word, ``2^k x_I`` is
    split into 2^k positive k-roots which are rewritten; the result is
    nonnegative with denominators dividing 2^k. Otherwise the linear
    oracle is used.
    """
    I = tuple(I)
    k = len(I)
    check_params(n, k)
    check_monomial(I, n, k)
    partner = reverse_lattice_partners(I, n)
    if partner is None:
        return decompose_vector_oracle(SparseVector.monomial(n, I))
    acc: dict[str, int] = {}
    for mask in range(2 ** k):
        factors = tuple(Factor(i, partner[i], SYMMETRIC if mask >> b & 1 else ANTISYMMETRIC)
                        for b, i in enumerate(I))
        for w, c in decompose_kroot(KRoot(n, factors)).coeffs.items():
            acc[w] = acc.get(w, 0) + c
    return Decomposition(n, k, {w: Fraction(c, 2 ** k) for w, c in acc.items()})


def is_b_positive_monomial(I: Monomial, n: int) -> bool:
    return decompose_vector_oracle(SparseVector.monomial(n, I)).is_nonnegative()


def change_of_basis(n: int, k: int) -> tuple[linalg.Matrix, linalg.Matrix]:
    """``(m_to_b, b_to_m)``: coordinate-change matrices between the two bases.

    Rows and columns follow label order for B_{n,k} and lexicographic order
    for monomials. Column ``I`` of ``m_to_b`` holds the coordinates of x_I;
    column ``beta`` of ``b_to_m`` holds the expansion of beta.
    """
    check_params(n, k)
    monos = enumerate_monomials(n, k)
    labels = basis_labels(n, k)
    b_to_m = [[Fraction(0)] * len(labels) for _ in monos]
    for col, w in enumerate(labels):
        vec = expand(from_label(w, k))
        for row, I in enumerate(monos):
            b_to_m[row][col] = vec.coefficient(I)
    m_to_b = [[Fraction(0)] * len(monos) for _ in labels]
    for col, I in enumerate(monos):
        dec = monomial_decompose(I, n)
        for row, w in enumerate(labels):
            m_to_b[row][col] = dec[w]
    return m_to_b, b_to_m


__all__ = [
    "RULES", "RewriteRule", "Decomposition", "apply_rule", "rule_for", "decompose_kroot",
    "decompose_combination", "decompose_vector_oracle", "monomial_label",
    "reverse_lattice_partners", "monomial_decompose", "is_b_positive_monomial",
    "change_of_basis",
]
