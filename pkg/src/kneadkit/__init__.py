"""Kneading theory on signed graphs: word orders, tuning, certified
constructions and Markov spectra."""
from ._backend import BACKEND
from .classify import (
    ClassificationReport,
    admissible_words,
    classify,
    enumerate_Wn,
    is_admissible_word,
    is_dominant,
    is_extremal,
    is_irreducible,
    is_periodic,
    next_word,
    prev_word,
)
from .construct import CertifiedWord, PSRS, compute_psrs, concat_admissible, concat_bridge, make_dominant
from .errors import (
    CertificationFailure,
    ConvergenceFailure,
    DegenerateKernel,
    InvalidGraph,
    KneadError,
    PreconditionViolation,
    SearchExhausted,
)
from .experiments import PersistenceResult, TeapotCloud, run_persistence, teapot_sweep
from .polys import IntPoly
from .spectral import (
    IncidenceMatrix,
    MarkovPartition,
    MatchReport,
    Spectrum,
    char_poly,
    elimination_polys,
    entropy,
    incidence_matrix,
    kneading_poly,
    markov_partition,
    match_off_circle,
    minimal_sequence,
    spectrum,
    zeta_denominator,
)
from .tuning import TuningPair, base_decomposition, check_tunable, detect_renormalization, find_tuning_pair, tune
from .words import (
    FOUR_VERTEX,
    SYSTEMS,
    TREE,
    UNIMODAL,
    Comparison,
    EPSeq,
    SignedGraph,
    Word,
    compare_periodic,
    compare_words,
    load_system,
)

__version__ = "0.1.0"


__all__ = [
    "BACKEND",
    "CertificationFailure",
    "CertifiedWord",
    "ClassificationReport",
    "Comparison",
    "ConvergenceFailure",
    "DegenerateKernel",
    "EPSeq",
    "FOUR_VERTEX",
    "IncidenceMatrix",
    "IntPoly",
    "InvalidGraph",
    "KneadError",
    "MarkovPartition",
    "MatchReport",
    "PSRS",
    "PersistenceResult",
    "PreconditionViolation",
    "SYSTEMS",
    "SearchExhausted",
    "SignedGraph",
    "Spectrum",
    "TREE",
    "TeapotCloud",
    "TuningPair",
    "UNIMODAL",
    "Word",
    "admissible_words",
    "base_decomposition",
    "char_poly",
    "check_tunable",
    "classify",
    "compare_periodic",
    "compare_words",
    "compute_psrs",
    "concat_admissible",
    "concat_bridge",
    "detect_renormalization",
    "elimination_polys",
    "entropy",
    "enumerate_Wn",
    "find_tuning_pair",
    "incidence_matrix",
    "is_admissible_word",
    "is_dominant",
    "is_extremal",
    "is_irreducible",
    "is_periodic",
    "kneading_poly",
    "load_system",
    "make_dominant",
    "markov_partition",
    "match_off_circle",
    "minimal_sequence",
    "next_word",
    "prev_word",
    "run_persistence",
    "spectrum",
    "teapot_sweep",
    "tune",
    "zeta_denominator",
]
