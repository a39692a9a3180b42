"""Pure braids, free groups and their Lie algebras, with the cabling embedding of Milnor's F[S^1]."""

__version__ = "0.1.0"

from .braid import (
    NotPure,
    PureBraid,
    SigmaBraid,
    a_generator,
    artin_action,
    braid_is_trivial,
    braids_equal,
    delete_strand,
    double_strand,
    is_brunnian,
    is_qbrunnian,
    linking_matrix,
    theta,
)
from .freelie import Alphabet, LieElement, lie_bracket, lie_normal_form, lyndon_basis, witt_rank
from .homology import AbelianInvariants, IntegerChainComplex, e1_report, homology, lie_degree_complex
from .kohno import (
    BudgetExceeded,
    KohnoElement,
    delta_example_check,
    derivation_rep,
    gr_theta,
    gr_theta_matrix,
    kohno_bracket,
    kohno_generator,
    kohno_rank,
    presentation_oracle,
    relations_check,
)
from .linalg import smith_normal_form
from .parsing import ParseError, parse_braid, parse_kohno, parse_lie, parse_word
from .simplicial import (
    instance_ap,
    instance_fs1,
    is_moore_cycle,
    theta_simplicial_check,
    verify_simplicial_identities,
)
from .words import FreeWord, GroupHom, commutator, gr_leading_term, lcs_degree, magnus_expand
