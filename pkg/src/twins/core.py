"""Words over finite alphabets and witnesses for r disjoint identical subsequences.

Positions are 1-based in every external format (witness JSON, text reports);
internally letters are canonical integers 0..k-1. All types here are frozen
values; every operation is a pure function.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence


class TwinsError(Exception):
    """Base class for errors raised by this package."""


class InvalidIndexError(TwinsError):
    """Position sequence is out of range or not strictly increasing."""


class WitnessInvalidError(TwinsError):
    """A witness required to be valid failed verification."""


class BudgetExceededError(TwinsError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


_LETTER_DISPLAY = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Alphabet:
    """A k-letter alphabet; letters are 0..k-1, displayed a,b,c,... for k <= 26."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.size}")

    def letter_name(self, letter: int) -> str:
        if not 0 <= letter < self.size:
            raise ValueError(f"letter {letter} not in alphabet of size {self.size}")
        if self.size <= 26:
            return _LETTER_DISPLAY[letter]
        return str(letter)


@dataclass(frozen=True)
class Word:
    """An immutable word: a sequence of letter indices over a fixed alphabet."""

    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self):
        for c in self.letters:
            if not 0 <= c < self.alphabet.size:
                raise ValueError(f"letter {c} outside alphabet of size {self.alphabet.size}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.to_text()

    @property
    def k(self) -> int:
        return self.alphabet.size

    @classmethod
    def from_letters(cls, letters: Iterable[int], k: int) -> "Word":
        return cls(Alphabet(k), tuple(int(c) for c in letters))

    @classmethod
    def from_text(cls, text: str, k: Optional[int] = None) -> "Word":
        """Parse a word from its text form.

        Lowercase letters a,b,c,... map to 0,1,2,...; alternatively a
        comma-separated list of integers is accepted (required for k > 26).
        When k is omitted it is inferred as 1 + the largest letter seen
        (minimum 1).
        """
        text = text.strip()
        if text == "":
            letters: tuple[int, ...] = ()
        elif "," in text or text.isdigit():
            letters = tuple(int(part) for part in text.split(","))
        else:
            if not all(ch in _LETTER_DISPLAY for ch in text):
                raise ValueError(f"cannot parse word text {text!r}")
            letters = tuple(_LETTER_DISPLAY.index(ch) for ch in text)
        if any(c < 0 for c in letters):
            raise ValueError("negative letter index")
        inferred = max(letters) + 1 if letters else 1
        if k is None:
            k = inferred
        elif k < inferred:
            raise ValueError(f"alphabet size {k} too small for letters in {text!r}")
        return cls(Alphabet(k), letters)

    def to_text(self) -> str:
        if self.alphabet.size <= 26:
            return "".join(_LETTER_DISPLAY[c] for c in self.letters)
        return ",".join(str(c) for c in self.letters)

    def reversed(self) -> "Word":
        return Word(self.alphabet, self.letters[::-1])

    def relabeled(self, perm: Sequence[int]) -> "Word":
        """Apply a letter permutation (perm[old] = new)."""
        if sorted(perm) != list(range(self.alphabet.size)):
            raise ValueError("not a permutation of the alphabet")
        return Word(self.alphabet, tuple(perm[c] for c in self.letters))

    def restricted(self, k_sub: int) -> "Word":
        """Delete every letter >= k_sub, shrinking the alphabet to k_sub letters."""
        if not 1 <= k_sub <= self.alphabet.size:
            raise ValueError(f"k_sub must be in 1..{self.alphabet.size}")
        return Word(Alphabet(k_sub), tuple(c for c in self.letters if c < k_sub))


@dataclass(frozen=True)
class LetterCounts:
    """Occurrence counts per letter; counts[i] is the multiplicity of letter i."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("letter counts must be nonnegative")

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)


def letter_counts(word: Word) -> LetterCounts:
    """Count occurrences of each letter of the word's alphabet."""
    counts = [0] * word.alphabet.size
    for c in word.letters:
        counts[c] += 1
    return LetterCounts(tuple(counts))


def induced_subword(word: Word, indices: Sequence[int]) -> Word:
    """Extract the subword at the given strictly increasing 1-based positions."""
    n = len(word)
    prev = 0
    for i in indices:
        if not 1 <= i <= n:
            raise InvalidIndexError(f"position {i} outside 1..{n}")
        if i <= prev:
            raise InvalidIndexError(f"positions not strictly increasing at {i}")
        prev = i
    return Word(word.alphabet, tuple(word.letters[i - 1] for i in indices))


class WitnessDefect(Enum):
    """Why a witness failed verification."""

    OVERLAP = "overlap"
    UNEQUAL_WORDS = "unequal-words"
    BAD_INDICES = "bad-indices"


@dataclass(frozen=True)
class TwinWitness:
    """r pairwise-disjoint strictly increasing 1-based position sequences.

    A witness certifies r-twins of length t when all sequences have length t,
    are pairwise disjoint, and induce the same subword.
    """

    index_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.index_sets) < 2:
            raise ValueError("a witness needs r >= 2 index sets")

    @property
    def r(self) -> int:
        return len(self.index_sets)

    @property
    def length(self) -> int:
        return len(self.index_sets[0])

    def shifted(self, offset: int) -> "TwinWitness":
        return TwinWitness(tuple(tuple(i + offset for i in s) for s in self.index_sets))

    def to_json_obj(self) -> dict:
        return {"r": self.r, "indexSets": [list(s) for s in self.index_sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TwinWitness":
        if not isinstance(obj, dict) or "r" not in obj or "indexSets" not in obj:
            raise ValueError("witness JSON must have keys 'r' and 'indexSets'")
        sets = obj["indexSets"]
        if not isinstance(sets, list) or any(not isinstance(s, list) for s in sets):
            raise ValueError("'indexSets' must be a list of lists")
        if obj["r"] != len(sets):
            raise ValueError("'r' does not match the number of index sets")
        if any(not isinstance(i, int) or isinstance(i, bool) for s in sets for i in s):
            raise ValueError("witness positions must be integers")
        return cls(tuple(tuple(s) for s in sets))

    @classmethod
    def from_json(cls, text: str) -> "TwinWitness":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def empty(cls, r: int) -> "TwinWitness":
        """The length-0 witness: r empty index sets."""
        return cls(tuple(() for _ in range(r)))


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    length: int = 0
    defect: Optional[WitnessDefect] = None


def verify_twins(word: Word, witness: TwinWitness) -> VerifyResult:
    """Check a witness against a word, from the definition.

    Checks run in a fixed order and the first failure is reported:
    bad-indices (range / monotonicity), then overlap (disjointness), then
    unequal-words (length mismatch or differing induced subwords).
    """
    n = len(word)
    for s in witness.index_sets:
        prev = 0
        for i in s:
            if not 1 <= i <= n or i <= prev:
                return VerifyResult(False, defect=WitnessDefect.BAD_INDICES)
            prev = i
    seen: set[int] = set()
    for s in witness.index_sets:
        for i in s:
            if i in seen:
                return VerifyResult(False, defect=WitnessDefect.OVERLAP)
            seen.add(i)
    t = len(witness.index_sets[0])
    if any(len(s) != t for s in witness.index_sets[1:]):
        return VerifyResult(False, defect=WitnessDefect.UNEQUAL_WORDS)
    first = tuple(word.letters[i - 1] for i in witness.index_sets[0])
    for s in witness.index_sets[1:]:
        if tuple(word.letters[i - 1] for i in s) != first:
            return VerifyResult(False, defect=WitnessDefect.UNEQUAL_WORDS)
    return VerifyResult(True, length=t)
