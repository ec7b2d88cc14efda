"""Outcome analysis for ending-partizan subtraction games."""

from epsnim._core import (
    ValueSequence,
    __version__,
    check_normal_transfer,
    check_psym,
    check_structure,
    classify_set,
    classify_tail,
    detect_period,
    is_p_symmetric,
    mirrored_adjacency_probe,
    normal_play,
    options,
    oracle_crosscheck,
    oracle_outcome,
    outcomes,
    parse_set,
    run_survey,
    set_from_mask,
    survey_set_count,
    verify_certificate,
)

__all__ = [
    "ValueSequence",
    "__version__",
    "check_normal_transfer",
    "check_psym",
    "check_structure",
    "classify_set",
    "classify_tail",
    "detect_period",
    "is_p_symmetric",
    "mirrored_adjacency_probe",
    "normal_play",
    "options",
    "oracle_crosscheck",
    "oracle_outcome",
    "outcomes",
    "parse_set",
    "run_survey",
    "set_from_mask",
    "survey_set_count",
    "verify_certificate",
]
