"""Group ranking of plans whose attributes mix reals, intervals and linguistic terms under grey uncertainty."""
from .core import (
    GeneralizedValue,
    GreyFuzzyCell,
    GreyInterval,
    LinguisticScale,
    distance,
    grey_product,
    scale_lookup,
    to_generalized,
)
from .document import DecisionDocument, paper_example, parse_document
from .pipeline import PipelineConfig, Report, emit_report, run_pipeline

__all__ = [
    "DecisionDocument",
    "GeneralizedValue",
    "GreyFuzzyCell",
    "GreyInterval",
    "LinguisticScale",
    "PipelineConfig",
    "Report",
    "distance",
    "emit_report",
    "grey_product",
    "paper_example",
    "parse_document",
    "run_pipeline",
    "scale_lookup",
    "to_generalized",
]
__version__ = "0.1.0"
