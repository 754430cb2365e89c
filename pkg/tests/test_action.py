import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kroots import linalg
from kroots.action import (
    Permutation,
    SignedTransposition,
    act_on_kroot,
    act_on_vector,
    adjacent_transpositions,
    annihilates_level,
    column_sign_coherent,
    d_matrix,
    differential,
    differential_kroot,
    filtration_basis,
    joint_minus_one_eigenspace,
    parse_permutation,
    rep_matrix,
    signed_transpositions,
    verify_filtration,
    verify_signed_transpositions,
    young_symmetrizer_apply,
    young_symmetrizer_literal,
)
from kroots.monomials import ParameterError, SparseVector, enumerate_monomials
from kroots.rewrite import decompose_kroot
from kroots.roots import (
    ANTISYMMETRIC,
    SYMMETRIC,
    enumerate_canonical_basis,
    expand,
    kroot,
    positive_kroots,
)

M, P = ANTISYMMETRIC, SYMMETRIC


def det(matrix):
    """Exact determinant by elimination (reference for unimodularity)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    size, sign, out = len(a), 1, Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for r in range(c + 1, size):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * out


# -- permutations ------------------------------------------------------------------

def test_parse_permutation_notations():
    assert parse_permutation("2 1 3 5 4", 5) == Permutation((2, 1, 3, 5, 4))
    assert parse_permutation("(1 2)(4 5)", 5) == Permutation((2, 1, 3, 5, 4))
    assert parse_permutation("(1 3 2)", 3) == Permutation((3, 1, 2))


@pytest.mark.parametrize("text", ["2 2 1", "1 2", "(1 4)", "(1 x)", "a b c"])
def test_parse_permutation_rejects(text):
    with pytest.raises(ParameterError):
        parse_permutation(text, 3)


def test_composition_convention():
    a, b = Permutation((2, 1, 3)), Permutation((1, 3, 2))
    assert (a * b)(2) == a(b(2))
    assert a * a.inverse() == Permutation.identity(3)


# -- the action ---------------------------------------------------------------------

def test_identity_and_self_transposition():
    a = kroot(5, (1, 4, P), (2, 3, M))
    assert act_on_kroot(Permutation.identity(5), a) == a
    r = act_on_kroot(Permutation.transposition(2, 1, 2), kroot(2, (1, 2, M)))
    assert r.sign == -1 and r.factors == kroot(2, (1, 2, M)).factors


@pytest.mark.parametrize("n", range(2, 7))
def test_action_commutes_with_expansion(n):
    perms = [Permutation(p) for p in permutations(range(1, n + 1))]
    if n == 6:
        perms = perms[::7]
    for k in range(1, n // 2 + 1):
        for a in positive_kroots(n, k):
            for w in perms[:40]:
                assert expand(act_on_kroot(w, a)) == act_on_vector(w, expand(a))


def test_stays_positive_when_no_antisymmetric_factor_is_inverted():
    rng = random.Random(5)
    for _ in range(300):
        w = Permutation.random(7, rng)
        for a in [kroot(7, (1, 4, P), (2, 3, M), (5, 6, P)), kroot(7, (1, 7, M), (2, 5, M))]:
            if all(w(f.i) < w(f.j) for f in a.factors if not f.symmetric):
                assert act_on_kroot(w, a).sign == 1


def test_rep_matrix_identity():
    rm = rep_matrix(Permutation.identity(5), 5, 2)
    assert rm.matrix == linalg.identity(len(rm.labels))


def test_transpositions_on_b42_are_unimodular_and_coherent():
    for i in range(1, 5):
        for j in range(i + 1, 5):
            rm = rep_matrix(Permutation.transposition(4, i, j), 4, 2)
            assert rm.integral and rm.sign_coherent
            assert det(rm.matrix) in (1, -1)


@pytest.mark.parametrize("n", range(2, 7))
def test_all_transpositions_sign_coherent(n):
    for k in range(1, n // 2 + 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                rm = rep_matrix(Permutation.transposition(n, i, j), n, k)
                assert rm.integral and rm.sign_coherent


def test_random_permutations_n7_k3():
    rng = random.Random(2024)
    for _ in range(50):
        rm = rep_matrix(Permutation.random(7, rng), 7, 3)
        assert rm.integral and rm.sign_coherent


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)), st.integers(1, 2))
def test_rep_matrix_is_a_homomorphism(p, q, k):
    w1, w2 = Permutation(tuple(p)), Permutation(tuple(q))
    m1, m2 = rep_matrix(w1, 5, k).matrix, rep_matrix(w2, 5, k).matrix
    assert rep_matrix(w1 * w2, 5, k).matrix == linalg.matmul(m1, m2)
    assert linalg.matmul(m1, rep_matrix(w1.inverse(), 5, k).matrix) == linalg.identity(len(m1))


def test_column_sign_coherent():
    assert column_sign_coherent([[1, 0], [2, -1]])
    assert not column_sign_coherent([[1, 0], [-2, 1]])


# -- differential -----------------------------------------------------------------

def test_differential_examples():
    assert not differential(expand(kroot(4, (1, 2, M), (3, 4, M))))
    assert differential(expand(kroot(4, (1, 2, M), (3, 4, P)))) == expand(kroot(4, (1, 2, M))) * 2
    assert differential(SparseVector.monomial(4, (1, 2))) == SparseVector(4, 1, {(1,): 1, (2,): 1})


@pytest.mark.parametrize("n", range(2, 8))
def test_differential_on_roots(n):
    for k in range(1, min(3, n // 2) + 1):
        for a in positive_kroots(n, k):
            via_roots = SparseVector.zero(n, k - 1)
            for r, m in differential_kroot(a).items():
                via_roots = via_roots + expand(r) * m
            assert differential(expand(a)) == via_roots


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(1, min(3, n // 2) + 1)])
def test_d_matrix_even_nonnegative(n, k):
    mat = d_matrix(n, k)
    for c, b in enumerate(enumerate_canonical_basis(n, k)):
        col = [row[c] for row in mat]
        assert all(x >= 0 and x.denominator == 1 and x.numerator % 2 == 0 for x in col)
        if b.height == 0:
            assert not any(col)


# -- filtration ------------------------------------------------------------------

def test_filtration_extremes():
    assert filtration_basis(5, 2, 2).dimension == 10
    assert filtration_basis(5, 2, -1).dimension == 0
    with pytest.raises(ParameterError):
        filtration_basis(5, 2, 3)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(1, min(3, n // 2) + 1)])
def test_filtration_structure(n, k):
    report = verify_filtration(n, k)
    assert report and all(report.values()), report


def test_filtration_levels_stable_under_all_transpositions_n5():
    n, k = 5, 2
    for t in range(k + 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                w = Permutation.transposition(n, i, j)
                for b in filtration_basis(n, k, t).basis:
                    assert decompose_kroot(act_on_kroot(w, b)).max_height() <= t


# -- Young symmetrizers ----------------------------------------------------------

def test_young_symmetrizer_examples():
    v = expand(kroot(4, (1, 2, M), (3, 4, P)))
    assert not young_symmetrizer_apply({1, 2}, v)
    assert young_symmetrizer_apply({1}, v) == v


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 6), min_size=1, max_size=5),
       st.dictionaries(st.sampled_from(enumerate_monomials(6, 2)), st.integers(-3, 3), max_size=5))
def test_orbit_symmetrizer_matches_literal(A, terms):
    v = SparseVector(6, 2, terms)
    assert young_symmetrizer_apply(A, v) == young_symmetrizer_literal(A, v)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(1, min(3, n // 2) + 1)])
def test_annihilation_boundary(n, k):
    for t in range(k + 1):
        a = n - k + t
        assert not annihilates_level(range(1, a + 1), n, k, t)
        if a < n:
            assert annihilates_level(range(1, a + 2), n, k, t)


# -- signed transpositions -------------------------------------------------------

def test_signed_transposition_examples():
    (t,) = signed_transpositions(kroot(2, (1, 2, M)))
    assert not t.signed and t.apply(expand(kroot(2, (1, 2, M)))) == -expand(kroot(2, (1, 2, M)))
    (s,) = signed_transpositions(kroot(4, (3, 4, P)))
    assert s == SignedTransposition(3, 4, True)
    v = expand(kroot(4, (3, 4, P)))
    assert s.apply(v) == -v


def test_joint_eigenspace_n4():
    a = kroot(4, (1, 4, P), (2, 3, M))
    space = joint_minus_one_eigenspace(signed_transpositions(a), 4, 2)
    assert len(space) == 1
    vec = SparseVector(4, 2, dict(zip(enumerate_monomials(4, 2), space[0])))
    target = expand(a)
    assert vec * (target.coefficient(target.lead) / vec.coefficient(target.lead)) == target


@pytest.mark.parametrize("n", range(2, 7))
def test_signed_transpositions_pin_down_each_root(n):
    for k in range(1, n // 2 + 1):
        for a in list(positive_kroots(n, k))[:60]:
            report = verify_signed_transpositions(a)
            assert all(report.values()), (str(a), report)


def test_adjacent_transpositions_generate():
    gens = adjacent_transpositions(4)
    seen = {Permutation.identity(4)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g * p
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    assert len(seen) == 24
