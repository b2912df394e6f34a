"""Exact computation and verification for trace-Sperner set families.

A family over [n] is l-trace k-Sperner when every trace onto an l-element
window is free of (k+1)-chains.  The package decides that property,
builds the banded extremal constructions, runs the maximal-chain census
and its verification battery, and searches small ground sets exhaustively
for the true optimum with relabelling-complete witness certificates.
"""

from .census import (
    CensusInequalityReport,
    CensusResult,
    ChargeRow,
    KChain,
    LymReport,
    MultiplicityReport,
    OverlapReport,
    ShiftedCopy,
    c_plus_from_chains,
    census_direct,
    census_ie,
    chain_charge_multiplicities,
    chain_contains_all,
    chain_extension_count,
    chain_meet_count,
    charged_chain_count_formula,
    charged_chains,
    enumerate_k_chains,
    is_charged,
    maximal_chains_containing,
    shifted_chain_count_formula,
    shifted_copies,
    shifted_copies_jump,
    shifted_copies_tight,
    verify_census_inequality,
    verify_chain_set_overlap,
    verify_charge_multiplicity,
    verify_lym_bound,
)
from .constructions import (
    band_family,
    erdos_family,
    layer_family,
    middle_band_family,
    middle_band_family_low,
    pairwise_size_gap_below,
    sum_largest_binomials,
)
from .families import (
    CapacityError,
    Family,
    PreconditionError,
    canonical_form,
    complement_family,
    dump_family,
    elements_of,
    family_from_jsonable,
    family_to_jsonable,
    full_mask,
    load_family,
    mask_of,
    relabel_family,
    relabel_mask,
    trace_family,
    trace_set,
)
from .sampling import random_antichain, random_subfamily, random_trace_sperner_family
from .search import (
    ConjecturePoint,
    DualReadingReport,
    SearchCertificate,
    SearchConfig,
    UniquenessReport,
    conjecture_report,
    dual_reading_values,
    f_exact,
    f_exact_oracle,
    uniqueness_report,
)
from .sperner import (
    TraceSpernerState,
    TraceViolation,
    is_k_sperner,
    is_l_trace_k_sperner,
    longest_chain,
    lym_sum,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CensusInequalityReport",
    "CensusResult",
    "ChargeRow",
    "ConjecturePoint",
    "DualReadingReport",
    "Family",
    "KChain",
    "LymReport",
    "MultiplicityReport",
    "OverlapReport",
    "PreconditionError",
    "SearchCertificate",
    "SearchConfig",
    "ShiftedCopy",
    "TraceSpernerState",
    "TraceViolation",
    "UniquenessReport",
    "band_family",
    "c_plus_from_chains",
    "canonical_form",
    "census_direct",
    "census_ie",
    "chain_charge_multiplicities",
    "chain_contains_all",
    "chain_extension_count",
    "chain_meet_count",
    "charged_chain_count_formula",
    "charged_chains",
    "complement_family",
    "conjecture_report",
    "dual_reading_values",
    "dump_family",
    "elements_of",
    "enumerate_k_chains",
    "erdos_family",
    "f_exact",
    "f_exact_oracle",
    "family_from_jsonable",
    "family_to_jsonable",
    "full_mask",
    "is_charged",
    "is_k_sperner",
    "is_l_trace_k_sperner",
    "layer_family",
    "load_family",
    "longest_chain",
    "lym_sum",
    "mask_of",
    "maximal_chains_containing",
    "middle_band_family",
    "middle_band_family_low",
    "pairwise_size_gap_below",
    "random_antichain",
    "random_subfamily",
    "random_trace_sperner_family",
    "relabel_family",
    "relabel_mask",
    "shifted_chain_count_formula",
    "shifted_copies",
    "shifted_copies_jump",
    "shifted_copies_tight",
    "sum_largest_binomials",
    "trace_family",
    "trace_set",
    "uniqueness_report",
    "verify_census_inequality",
    "verify_chain_set_overlap",
    "verify_charge_multiplicity",
    "verify_lym_bound",
]
