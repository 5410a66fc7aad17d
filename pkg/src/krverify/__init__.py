"""Exact verifier for the prepolarization conditions behind KR crystal pseudobases."""

__version__ = "0.1.0"
