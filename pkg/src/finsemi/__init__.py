"""Finite semigroups, the pseudovariety DA and its R_m / L_m hierarchy."""

from .bands import band_canon, band_equal, free_band, g_word, i_word, phi, phi_identity
from .errors import (
    BudgetExceeded,
    InputError,
    NotACongruence,
    SemigroupError,
    TermSyntaxError,
)
from .hierarchy import (
    AgreementReport,
    CorpusItem,
    HierarchyReport,
    classify,
    in_da,
    in_lm,
    in_lm_by_identity,
    in_rm,
    in_rm_by_identity,
    quotient_chain,
)
from .languages import (
    Dfa,
    ProductExpression,
    classify_language,
    concat_product,
    is_codeterministic_product,
    is_deterministic_product,
    is_unambiguous_product,
    minimize,
    syntactic_monoid,
)
from .malcev import MalcevSide, least_v_quotient_oracle, malcev_member, sim_d, sim_k
from .semigroup import (
    Congruence,
    FiniteSemigroup,
    Transformation,
    from_transformations,
    quotient,
    validate,
)
from .terms import parse_identity, parse_term, render, satisfies, satisfies_witness

__version__ = "0.1.0"
