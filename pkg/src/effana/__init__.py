"""Finite effect algebras, measures on them, and the variation.

The package builds dense-table effect algebras (powersets, discrete scales,
set families, a six-element counterexample), validates the four axioms,
decides the Riesz decomposition property, generates and validates vector
measures, computes the variation by dynamic programming with an independent
enumeration oracle, checks the structure theorems relating the two, and
carries one decidable symbolic infinite carrier built from prime-power sets
together with its finite restrictions.  The `effana` command line exposes
all of it for batch use.
"""

from .core import (
    AxiomViolationError,
    DEFAULT_MAX_SIZE,
    DerivedLawReport,
    EffectAlgebra,
    EffectAlgebraError,
    MalformedTableError,
    SizeGuardError,
    UNDEFINED,
    ValidationReport,
    Violation,
    derived_law_report,
    orthogonal_multisets,
    validate_axioms,
)
from .constructions import (
    SetFamilySpec,
    atomic_basis,
    atomic_decompose,
    powerset_algebra,
    quadrant_algebra,
    scale_algebra,
    set_family_algebra,
)
from .io import (
    InputFormatError,
    dump_algebra,
    dump_measure,
    load_algebra,
    load_measure,
    loads_algebra,
    loads_measure,
    save_algebra,
    save_measure,
)
from .rdp import RdpReport, check_rdp, rdp_decompose
from .measures import (
    AtomicBoundReport,
    DEFAULT_TOLERANCE,
    InvalidMeasureError,
    Measure,
    MeasureFamily,
    MeasureGenerationError,
    MeasureReport,
    Pick,
    UnboundednessWitness,
    atomic_bound_check,
    pointwise_bound,
    random_measure,
    sup_norm,
    unboundedness_witness_search,
    uniform_bound,
    validate_measure,
)
from .variation import (
    Decomposition,
    TheoremCheck,
    TheoremReport,
    VariationResult,
    check_variation_theorems,
    enumerate_decompositions,
    variation,
    variation_bruteforce,
    variation_table,
)
from .symbolic import (
    DisjointnessAnswer,
    EMPTY,
    FULL,
    OrthogonalityCertificate,
    SpikeBoundTable,
    SymbolicSet,
    additivity_violations,
    block,
    bound_table,
    coblock,
    disjoint,
    finite_restriction,
    index_measure,
    intersection_family,
    member,
    nth_prime,
    orthogonal_pairs_certificate,
    prime_index,
    prime_power_split,
    restricted_index_measure,
    restriction_block_count,
    spike_family,
    spike_measure,
    sym_oplus,
    sym_orthosum,
    symbolic_universe,
)
from .properties import SuiteReport, run_property_suite

__version__ = "0.1.0"
