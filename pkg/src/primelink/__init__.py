"""Linking numbers of prime sets and FM(n) deciders over F_p.

For an odd prime p and primes q = 1 mod p (but not 1 mod p^2), this
package computes the pairwise linking numbers, decides whether every
n-dimensional representation of the associated linking algebra is trivial
(property FM(n)), verifies each verdict with an independent brute-force
matrix enumeration, constructs circular prime sets, and batch-scans all
triples up to a bound.
"""

from .circular import (
    LinkPattern,
    extend_with_pattern,
    find_circular_ordering,
    is_circular_ordering,
    mild_fm_cover,
)
from .errors import Infeasible, RouteDisagreement
from .fmcheck import (
    FmVerdict,
    fm3_conditions,
    fm3_congruence_criterion,
    fm3_failure_criterion,
    fm_small,
)
from .lieoracle import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    HomWitness,
    check_hom,
    commutator_congruence_check,
    cycle_system,
    find_nontrivial_hom,
    is_nilpotent,
    lemma_bb_exhaustive,
    normalized_failure_system,
    normalized_failure_witness,
    triangular_lemma_checks,
)
from .linkdata import (
    LinkingData,
    RelationSystem,
    as_relation_system,
    build_linking_data,
    m_matrix,
    rescale_columns,
)
from .modarith import (
    PrimeRecord,
    eligible_primes,
    is_prime,
    iter_eligible_q,
    linking_number,
    make_prime_record,
    pth_power_residue,
    smallest_primitive_root,
)
from .scanstats import ScanReport, export_report, full_linking_data, scan_triples

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "FmVerdict",
    "HomWitness",
    "Infeasible",
    "LinkPattern",
    "LinkingData",
    "PrimeRecord",
    "RelationSystem",
    "RouteDisagreement",
    "ScanReport",
    "as_relation_system",
    "build_linking_data",
    "check_hom",
    "commutator_congruence_check",
    "cycle_system",
    "eligible_primes",
    "export_report",
    "extend_with_pattern",
    "find_circular_ordering",
    "find_nontrivial_hom",
    "fm3_conditions",
    "fm3_congruence_criterion",
    "fm3_failure_criterion",
    "fm_small",
    "full_linking_data",
    "is_circular_ordering",
    "is_nilpotent",
    "is_prime",
    "iter_eligible_q",
    "lemma_bb_exhaustive",
    "linking_number",
    "m_matrix",
    "make_prime_record",
    "mild_fm_cover",
    "normalized_failure_system",
    "normalized_failure_witness",
    "pth_power_residue",
    "rescale_columns",
    "scan_triples",
    "smallest_primitive_root",
    "triangular_lemma_checks",
]
