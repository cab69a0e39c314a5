"""Per-token sentiment attribution extractor."""

from .explainer import ExplainerFailure, explain_sentence
from .models import ModelLoadError, StubModel, load_model
from .runner import (
    ATTRIBUTION_HEADER, ExtractionJob, ExtractionSummary, extract_attributions,
)

__version__ = "0.1.0"

__all__ = [
    "ATTRIBUTION_HEADER", "ExplainerFailure", "ExtractionJob",
    "ExtractionSummary", "ModelLoadError", "StubModel", "explain_sentence",
    "extract_attributions", "load_model", "__version__",
]
