"""Flood-relevance tweet classification via score-file late fusion.

Pipeline stages: corpus loading -> text normalization -> per-model
posterior scores (in-tree baseline or external score files) -> additive
fusion -> precision/recall/F1 reports.
"""

from .errors import DataError

__all__ = ["DataError"]
__version__ = "0.1.0"
