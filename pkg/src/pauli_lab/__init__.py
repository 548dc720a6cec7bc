"""Density thresholds, counterexample constructions, and verification for
sampled phase retrieval in the Gaussian decay class."""

__version__ = "0.1.0"
