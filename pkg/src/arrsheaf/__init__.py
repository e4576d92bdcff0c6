"""Exact invariants of rank-one local systems on hyperplane-arrangement complements."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Edge,
    EdgePoset,
    PreconditionError,
    decompose,
    decone,
    dense_edges,
    essentialize,
    intersection_poset,
    load_arrangement,
    localize,
    parse_arrangement,
    poincare_polynomial,
    proj_euler_char,
    triple,
)
from .charic import (
    CharCycle,
    IHBetti,
    cc_ic_dim2,
    cc_ic_dim3_equal,
    cc_pushforward,
    ih_dim2,
    ih_dim3_equal,
    ps_report,
)
from .exactmath import (
    CycloElement,
    IntPolynomial,
    cyclotomic_embed,
    divide_exact,
    rank_exact,
)
from .length import (
    Factor,
    LengthReport,
    constant_length,
    exact_length,
    is_length_one,
    is_length_two,
    length_Wcirc,
    lower_bound,
)
from .localcohom import (
    LocalDim,
    MilnorData,
    Strategy,
    beta3,
    chiF_over_r,
    delta_polynomials,
    eigenspace_dims,
    local_top_dim,
)
from .localsys import (
    LocalSystem,
    edge_product,
    in_W,
    in_W_circ,
    induce_edge,
    restrict_edge,
)
from .salvetti import coned_cohomology, face_structure, twisted_betti

__version__ = "0.1.0"
