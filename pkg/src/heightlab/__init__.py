"""Exact and certified toolkit for Weil heights of algebraic numbers."""

from .errors import (
    BadPrimeError,
    HeightlabError,
    InconclusiveError,
    IndecisionError,
    NotSquarefreeError,
    ReducibleError,
    ZeroPolynomialError,
)
from .exactpoly import (
    IntPoly,
    cyclotomic,
    degree_pattern_mod_p,
    discriminant,
    irreducible_witness,
    is_root_of_unity,
    parse_poly,
    power_polynomial,
    power_sums,
    ratio_polynomial,
    resultant,
    sturm_count,
)
from .galois import (
    QuadFactorization,
    QuinticVerdict,
    alternating_group,
    centralizer,
    classify_quintic_galois,
    fixed_cosets,
    gather_evidence,
    generate,
    is_simple,
    quadratic_field_factor,
    ratio_contains_i,
    symmetric_group,
)
from .height import (
    SCHINZEL,
    BoundCert,
    EmbeddingStats,
    Enclosure,
    HeightReport,
    eq1_chain_check,
    embedding_stats,
    garza_bound,
    height_report,
    mahler_measure,
    schinzel_gap_check,
    theorem_constant,
    weil_height,
)
from .perms import GroupTable, Perm
from .roots import (
    CircleVerdict,
    RootBag,
    all_on_unit_circle,
    conjugation_pairing,
    isolate_roots,
    real_imag_polys,
)

__version__ = "0.1.0"
