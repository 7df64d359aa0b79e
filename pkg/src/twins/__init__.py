"""Twins in words: exact solvers, enumeration, constructions, models, bounds."""

from .core import (
    Alphabet,
    BudgetExceededError,
    InvalidIndexError,
    LetterCounts,
    TwinWitness,
    TwinsError,
    VerifyResult,
    WitnessDefect,
    WitnessInvalidError,
    Word,
    induced_subword,
    letter_counts,
    verify_twins,
)
from .solver import (
    SolveResult,
    fast_length,
    has_twins_of_length,
    longest_twins_fast,
    longest_twins_oracle,
)

__all__ = [
    "Alphabet",
    "BudgetExceededError",
    "InvalidIndexError",
    "LetterCounts",
    "SolveResult",
    "TwinWitness",
    "TwinsError",
    "VerifyResult",
    "WitnessDefect",
    "WitnessInvalidError",
    "Word",
    "fast_length",
    "has_twins_of_length",
    "induced_subword",
    "letter_counts",
    "longest_twins_fast",
    "longest_twins_oracle",
    "verify_twins",
]
