"""Contrastive language-code pretraining on heterogeneous-image code encodings."""

__version__ = "0.1.0"
