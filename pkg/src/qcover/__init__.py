"""q-covering designs C_2(n,k,r): subspaces of F_2^n, rank-metric codes,
upper-bound constructions, a bounds table and an exhaustive verifier."""

from .bounds import (
    BoundCell,
    BoundTable,
    best_bounds,
    build_witness,
    covering_lower,
    de_caen_lower,
    density,
    eisfeld_metsch_lower,
    metsch_upper,
    schonheim_lower,
)
from .constructions import (
    all_subspaces,
    cmrd_chain,
    cor_15_size,
    cover_7_3_2,
    cover_7_5_3,
    cover_8_4_3,
    cover_10_5_3,
    hyperplane_cover,
    improved_cmrd,
    improved_cmrd_r3,
    point_cover,
    recursive_construction,
    simple_cmrd,
)
from .design import CoveringDesign, DesignError, merge, structural_counts
from .field import FieldTower, LinearizedPoly, tower
from .qcd import QcdError, qcd_read, qcd_write
from .rankmetric import RankMatrix, gabidulin_codewords, lift, lifted_mrd, rank_distance
from .spreads import field_spread, lengthen, normal_spread_cover, parallelism_g2_4_2
from .subspace import Subspace, enum_grassmannian, gaussian, rank, rref, span, unrank
from .verify import (
    CoverageReport,
    multiplicity_histogram,
    naive_verify_cover,
    packing_check,
    require_cover,
    verify_cover,
)

__version__ = "0.1.0"
