"""Graded polynomial identities and central polynomials of matrix algebras.

The package decides whether a graded polynomial is an identity or a central
polynomial of the n-by-n matrix algebra under an elementary grading, using an
exact generic-matrix model over integer polynomial rings.  On top of the
decision procedure it implements the constructive machinery: rewriting of
monomials modulo the commutation rules with replayable proofs, enumeration of
monomial identities, and construction plus verification of the known
identity and central-polynomial generator families.
"""

from .grading import (
    ElementaryGrading,
    GradingError,
    GradingStructure,
    MU_ZERO,
    complete_sequence_unit_witness,
    cyclic_group,
    enumerate_complete_sequences,
    group_from_table,
    integers,
    is_complete_sequence,
    matrix_unit_semigroup,
    parse_grading_spec,
)
from .freealg import (
    Monomial,
    MonomialClass,
    ONE,
    Polynomial,
    PolynomialSyntaxError,
    TwinBlocks,
    Var,
    apply_substitution,
    classify,
    format_monomial,
    format_polynomial,
    multihomogeneous_components,
    parse_monomial,
    parse_polynomial,
    strip_neutral,
    twin_block_threshold,
)
from .genericmodel import (
    GenericMatrix,
    PolyMatrix,
    SparsePoly,
    centrality_witness,
    entry_match,
    evaluate,
    identity_witness,
    is_central,
    is_identity,
    make_generic,
    matrix_unit_oracle,
    monomial_product,
    naive_monomial_product,
    units_of_degree,
)
from .rewrite import (
    CongruenceProof,
    RuleError,
    Step,
    apply_rule,
    find_congruence,
    follows_from_kill,
    proof_from_json,
    proof_to_json,
    replay,
)
from .bases import (
    BasisInstances,
    GeneratorInstance,
    basis_report,
    build_basis,
    cyclic_symmetrization,
    enumerate_monomial_identities,
    factor_complete,
    reduce_central_monomial,
    verify_instance,
)

__version__ = "0.1.0"
