"""Transformer fine-tuning and score-file export for tweet relevance."""

from .errors import ScorerError
from .presets import PRESETS, FinetunePreset, resolve_preset

__version__ = "0.1.0"

__all__ = ["ScorerError", "PRESETS", "FinetunePreset", "resolve_preset", "__version__"]
