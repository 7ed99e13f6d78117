"""Ring corpora, verification suites and example reproductions."""

from .corpus import CorpusSpec, generate_corpus, radical_rings
from .examples import reproduce_example_m2t, reproduce_example_m3
from .suites import (
    SUITES,
    SuiteResult,
    probe_questions,
    run_suite,
    verify_axioms,
    verify_circle,
    verify_corollaries,
    verify_index2_lemmas,
    verify_main_equivalences,
    verify_quotient_theorems,
    verify_semiprime_lemmas,
    verify_snc,
)

__all__ = [
    "CorpusSpec", "SUITES", "SuiteResult", "generate_corpus", "probe_questions",
    "radical_rings", "reproduce_example_m2t", "reproduce_example_m3", "run_suite",
    "verify_axioms", "verify_circle", "verify_corollaries", "verify_index2_lemmas",
    "verify_main_equivalences", "verify_quotient_theorems", "verify_semiprime_lemmas",
    "verify_snc",
]
