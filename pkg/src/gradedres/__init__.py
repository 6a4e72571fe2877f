"""Graded free resolutions, Betti numbers and rate invariants over F_p."""

from .field import PrimeField, DEFAULT_PRIME
from .order import DEGLEX, DEGREVLEX, LEX, ORDERS, MonomialOrder
from .poly import PolyRing, Polynomial, parse_poly, parse_polys
from .groebner import (
    GroebnerBasis,
    ModuleGB,
    QuotientRing,
    buchberger,
    colon,
    ideal_contains,
    ideal_equal,
    ideal_groebner,
    minimal_generators_mod,
    minimalize_generators,
    normal_form,
    quotient_ring,
)
from .modules import (
    FreeModule,
    GradedMatrix,
    Presentation,
    augment_relations,
    cyclic_presentation,
    free_presentation,
    presentation_from_rows,
    residue_field_presentation,
)
from .resolution import (
    BettiTable,
    Resolution,
    SubmoduleData,
    betti,
    resolve,
    submodule_presentation,
    syzygy,
    trim,
)
from .hilbert import HilbertSeries, hilbert_series, multiplicity
from .invariants import (
    AnnihilatorReport,
    ChangeOfRingsReport,
    RateCertificate,
    RateReport,
    RegularityReport,
    artinian_rate_bound,
    backelin_rate,
    check_change_of_rings,
    is_koszul_up_to,
    linear_annihilator,
    maximal_ideal_presentation,
    rate,
    regularity,
)
from .lexsegment import (
    hf_is_admissible,
    lex_ideal,
    lex_segment,
    macaulay_bound,
    macaulay_rep,
    stretched_algebra,
    stretched_hilbert_function,
)
from .filtration import (
    FiltrationCertificate,
    FiltrationReport,
    Witness,
    classify_linear_annihilator,
    lift_filtration,
    quotient_by_linear,
    rate_bound_from_filtration,
    truncation_filtration,
    verify_filtration,
)
from .tensorprod import (
    TensorReport,
    TensorRing,
    convolve_betti,
    tensor_modules,
    tensor_rings,
    verify_tensor_bounds,
)
from .oracle import oracle_betti, module_dimensions, ring_dimensions
from .script import Session, run_script
from . import errors

__version__ = "0.1.0"
