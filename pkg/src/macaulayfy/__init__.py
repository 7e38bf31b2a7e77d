"""Groebner-basis engine for Cohen-Macaulay tests and blowup certification
over prime fields."""

from .blowup import ChartPresentation, adjoin_fractions, blowup_charts, rees_presentation
from .groebner import Ideal, ModuleElement, ResourceLimitError, Submodule, groebner_basis, normal_form, syzygies
from .homology import cm_certificate, depth, depth_at_irrelevant, free_resolution, localized_cm_certificate, noncm_data
from .ideals import (
    RingPresentation,
    eliminate,
    ideal_equal,
    ideal_intersect,
    ideal_quotient,
    krull_dimension,
    saturate,
)
from .macaulay import (
    PipelineConfig,
    center_ideal,
    certify_blowup,
    ideal_transform_center,
    macaulayfy,
    select_parameters,
)
from .poly import FieldSpec, MonomialOrder, Polynomial, PolyRing
from .sequences import (
    is_d_sequence,
    is_usd_sequence_bounded,
    verify_colon_lemma,
    verify_transform_identity,
)

__all__ = [
    "ChartPresentation", "adjoin_fractions", "blowup_charts", "rees_presentation",
    "Ideal", "ModuleElement", "ResourceLimitError", "Submodule", "groebner_basis", "normal_form", "syzygies",
    "cm_certificate", "depth", "depth_at_irrelevant", "free_resolution", "localized_cm_certificate", "noncm_data",
    "RingPresentation", "eliminate", "ideal_equal", "ideal_intersect", "ideal_quotient", "krull_dimension",
    "saturate", "PipelineConfig", "center_ideal", "certify_blowup", "ideal_transform_center", "macaulayfy",
    "select_parameters", "FieldSpec", "MonomialOrder", "Polynomial", "PolyRing", "is_d_sequence",
    "is_usd_sequence_bounded", "verify_colon_lemma", "verify_transform_identity",
]

__version__ = "0.1.0"
