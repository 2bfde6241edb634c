"""Certified bound-and-reduce pipeline for Tribonacci-Lucas numbers that are
palindromic concatenations of two distinct repdigits."""

from .certified import CertifiedReal, PrecisionExhausted
from .palindrome import PatternParams, PatternSolution, compose, recognize, search_low_range
from .pipeline import PipelineConfig, VerificationReport, run_full
from .recurrence import DominantRoot, dominant_root, trib_lucas
from .sweep import HAVE_EXTENSION

__version__ = "0.1.0"

__all__ = [
    "CertifiedReal",
    "DominantRoot",
    "HAVE_EXTENSION",
    "PatternParams",
    "PatternSolution",
    "PipelineConfig",
    "PrecisionExhausted",
    "VerificationReport",
    "compose",
    "dominant_root",
    "recognize",
    "run_full",
    "search_low_range",
    "trib_lucas",
]
