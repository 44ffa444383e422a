"""Dehn-surgery obstructions for spliced torus-knot manifolds.

Exact-arithmetic tools deciding whether the graph manifolds obtained by
splicing two torus knot exteriors (meridian glued to Seifert fiber, both
ways) can arise from Dehn surgery on a knot in the 3-sphere: linking-form
residue tests, the half-integral toroidal surgery pattern for Eudave-Munoz
knots, SU(2)-cyclic surgery classifications for iterated torus knots, and
Greene's changemaker lattice-embedding obstruction driven by Goeritz forms
of alternating diagrams.
"""

__version__ = "0.1.0"

from .goeritz import (
    CheckerboardGraph,
    builtin_diagrams,
    det_h1_order,
    family_2odd_2odd,
    fig3_black_graph,
    goeritz_matrix,
    l35_white_graph,
    parse_graph_text,
)
from .lattice import (
    Changemaker,
    Embedding,
    GramMatrix,
    changemaker_max_norm,
    changemaker_obstruction,
    embed_in_complement,
    enumerate_changemakers,
    genus_from_changemaker,
    is_changemaker,
    iter_embeddings,
    parse_gram_text,
)
from .manifolds import (
    EMKnot,
    IteratedTorusKnot,
    Splice,
    TorusKnot,
    cable_su2_cyclic_slopes,
    census_2odd,
    em_slope,
    em_splice_form,
    em_su2_cyclic,
    h1_order,
    integral_obstruction,
    linking_self,
    nonintegral_classification,
    not_surgery_verdict,
    slope_distance,
    torus_knot_surgery,
    twisted_torus_braid,
)
from .numtheory import (
    Factorization,
    PrimeSearchCapExceeded,
    ResidueSet,
    chi_8m,
    density,
    factor,
    in_S,
    in_Sprime,
    is_prime,
    is_square_mod,
    legendre,
    product_bound,
    square_root_mod,
)
from .repvar import (
    IrrepWitness,
    irrep_witness,
    small_sfs_su2_abelian,
    x1_singular_orders,
)

__all__ = [
    "CheckerboardGraph",
    "Changemaker",
    "EMKnot",
    "Embedding",
    "Factorization",
    "GramMatrix",
    "IrrepWitness",
    "IteratedTorusKnot",
    "PrimeSearchCapExceeded",
    "ResidueSet",
    "Splice",
    "TorusKnot",
    "builtin_diagrams",
    "cable_su2_cyclic_slopes",
    "census_2odd",
    "changemaker_max_norm",
    "changemaker_obstruction",
    "chi_8m",
    "density",
    "det_h1_order",
    "em_slope",
    "em_splice_form",
    "em_su2_cyclic",
    "embed_in_complement",
    "enumerate_changemakers",
    "factor",
    "family_2odd_2odd",
    "fig3_black_graph",
    "genus_from_changemaker",
    "goeritz_matrix",
    "h1_order",
    "in_S",
    "in_Sprime",
    "integral_obstruction",
    "irrep_witness",
    "is_changemaker",
    "is_prime",
    "is_square_mod",
    "iter_embeddings",
    "l35_white_graph",
    "legendre",
    "linking_self",
    "nonintegral_classification",
    "not_surgery_verdict",
    "parse_gram_text",
    "parse_graph_text",
    "product_bound",
    "slope_distance",
    "small_sfs_su2_abelian",
    "square_root_mod",
    "torus_knot_surgery",
    "twisted_torus_braid",
    "x1_singular_orders",
]
