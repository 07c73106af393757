"""nilclean: finite-ring constructions, classification and decomposition
certificates for the clean/nil-clean hierarchy, with brute-force oracles
cross-checked against fast polynomial criteria."""

__version__ = "0.1.0"

from .core import FiniteRing, ValidationReport, validate_ring
from .constructions import (
    RingEndomorphism,
    enumerate_unital_endomorphisms,
    matrix_ring,
    poly_quotient,
    product,
    skew_triangular,
    swap_endomorphism,
    trivial_extension,
    upper_triangular,
    zn,
)
from .classify import (
    NilpotenceWitness,
    center,
    idempotents,
    is_idempotent,
    is_strongly_pi_regular,
    is_unit,
    jacobson_radical,
    nilpotence,
    nilpotents,
    units,
)
from .decompose import (
    Certificate,
    ClassificationReport,
    ClassVerdict,
    classification_report,
    criterion_s2nc,
    criterion_wsnc,
    find_certificate,
    find_s2nc_certificate,
    find_snc_certificate,
    find_swnc_certificate,
    find_wsnc_certificate,
    is_class,
    lemma2nil_variants,
    verify_certificate,
)
from .structure import (
    Corner,
    IdealSet,
    MajWitness,
    Quotient,
    central_idempotents,
    corner_ring,
    ideal_generated,
    is_nil_ideal,
    iso_to_zm,
    maj_decomposition,
    quotient_ring,
    run_lemma_suite,
    split_by_central_idempotent,
)
from .ringspec import eval_expr, load_catalog, parse, predicted_size, print_expr
