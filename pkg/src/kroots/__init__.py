"""k-roots and the canonical basis of the coset space of (S_n, S_k x S_{n-k}).

Everything is exact: scalars are ``fractions.Fraction``.
"""

from kroots.action import (
    FiltrationLevel,
    Permutation,
    RepMatrix,
    SignedTransposition,
    act_on_kroot,
    act_on_vector,
    d_matrix,
    differential,
    filtration_basis,
    parse_permutation,
    rep_matrix,
    signed_transpositions,
    verify_filtration,
    young_symmetrizer_apply,
)
from kroots.monomials import (
    ContractError,
    ParameterError,
    SparseVector,
    VectorSign,
    enumerate_monomials,
    inner_product,
    lex_compare,
    vector_sign,
)
from kroots.parsing import parse_expression, parse_kroot, parse_monomial
from kroots.rewrite import (
    RULES,
    Decomposition,
    apply_rule,
    change_of_basis,
    decompose_kroot,
    decompose_vector_oracle,
    monomial_decompose,
)
from kroots.roots import (
    Defect,
    DefectKind,
    Factor,
    KRoot,
    WordClass,
    enumerate_canonical_basis,
    expand,
    find_defect,
    from_label,
    kroot,
    label_of,
    normalize,
    strip_symmetric,
    word_class,
)
from kroots.spherical import (
    SphericalFunction,
    beta,
    certify,
    orbit_sum_SB,
    spherical_function,
    spherical_table,
)

__version__ = "0.1.0"
