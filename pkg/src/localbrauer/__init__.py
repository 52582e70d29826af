"""Exact arithmetic for local fields Q_p and the Laurent field Q_p((t)):
Hilbert symbols two ways, norms in quadratic towers and unramified
cyclotomic extensions, Brauer invariants, and certificate-producing
verifiers for cyclicity and noncyclicity of division classes.
"""

from . import brauer, cli, extensions, padic, symbols, verifier
from .brauer import (
    BrauerInv,
    CandidateSubfield,
    QuadraticCharacter,
    UnramifiedCharacter,
    WittClass,
    char_extendable,
    inv_pairing,
    local_index,
    quaternion_cor,
    restrict_inv,
    restrict_witt,
    trivial_character,
    witt_index,
)
from .extensions import (
    RootOfUnityElt,
    TowerElement,
    cyclotomic_degree,
    eta_minpoly,
    eta_norm,
    full_norm,
    is_eisenstein,
    is_square_in_quadratic,
    quad_norm,
    reduction_step_check,
    tower_norm,
    unram_norm,
)
from .padic import (
    DEFAULT_PRECISION,
    PadicNumber,
    SquareClass,
    from_int,
    from_rational,
    is_square,
    is_square_rational,
    sqrt,
    square_class,
    square_class_of_rational,
    square_class_reps,
    teichmuller,
)
from .symbols import (
    SymbolValue,
    albert_extendable_deg4,
    cyclic_quartic_test,
    hilbert,
    hilbert_oracle,
    is_norm_quadratic,
)
from .verifier import (
    Certificate,
    TameConstruction,
    TwoAdicConstruction,
    cyclic_construct_2adic,
    cyclic_construct_tame,
    cyclic_length_table,
    eta_splitting_check,
    mu_split_check,
    noncyclic_certificate_deg4,
    noncyclic_reduction_deg8,
)

__version__ = "0.1.0"
