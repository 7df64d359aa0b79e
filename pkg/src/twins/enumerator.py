"""Exhaustive distribution of longest-2-twin lengths over all k^s words.

lambda[t] counts words of length s whose longest pair of disjoint identical
subsequences has length exactly t; lambda[0] is reported explicitly so that
sum(lambda) == k^s is visible in every output. rho is the derived exact
per-letter yield sum(t * lambda[t]) / (s * k^s).

Enumeration walks words as base-k integers in lexicographic order, sharded
into contiguous chunks. Orbit reduction solves only words minimal under
letter permutations x reversal (longest-twin length is invariant under both)
and weights them by orbit size; tallies are identical with or without it and
for any worker count.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import BudgetExceededError, Word

DEFAULT_WORD_BUDGET = 100_000
EXTENDED_WORD_BUDGET = 200_000_000
CHUNK_WORDS = 1 << 16


@dataclass(frozen=True)
class LambdaTable:
    k: int
    s: int
    lam: tuple[int, ...]  # index t = 0 .. s // 2
    method: str  # "full" | "symmetry-reduced"

    def __post_init__(self):
        if len(self.lam) != self.s // 2 + 1:
            raise ValueError("lambda table must cover t = 0 .. s//2")
        if sum(self.lam) != self.k**self.s:
            raise ValueError("lambda tallies must sum to k^s")
        if any(v < 0 for v in self.lam):
            raise ValueError("lambda tallies must be nonnegative")

    def lam_of(self, t: int) -> int:
        return self.lam[t] if 0 <= t < len(self.lam) else 0


@dataclass(frozen=True)
class RhoValue:
    s: int
    numerator: int  # sum of t * lambda[t]
    denominator: int  # s * k^s

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        v = self.value
        return f"{v.numerator}/{v.denominator} = {float(v):.6f}"


def rho(table: LambdaTable) -> RhoValue:
    """Exact expected twin length per letter under the table's distribution."""
    num = sum(t * lam for t, lam in enumerate(table.lam))
    return RhoValue(table.s, num, table.s * table.k**table.s)


def _letter_perms(k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(k))), dtype=np.int64)


def canonical_orbit_size(word: Word) -> int:
    """Size of the word's orbit under letter permutations and reversal."""
    images = set()
    for perm in itertools.permutations(range(word.k)):
        relabeled = tuple(perm[c] for c in word.letters)
        images.add(relabeled)
        images.add(relabeled[::-1])
    return len(images)


def _scan_chunk(k: int, s: int, start: int, end: int, use_sym: bool) -> list[int]:
    from .kernels import lambda_scan

    perms = _letter_perms(k)
    return lambda_scan(k, s, start, end, use_sym, perms).tolist()


@dataclass(frozen=True)
class Checkpoint:
    k: int
    s: int
    next_word_index: int
    partial: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "nextWordIndex": self.next_word_index,
            "partial": list(self.partial),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Checkpoint":
        return cls(obj["k"], obj["s"], obj["nextWordIndex"], tuple(obj["partial"]))


def _load_checkpoint(path: str, k: int, s: int) -> Optional[Checkpoint]:
    if not path or not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        cp = Checkpoint.from_json_obj(json.load(fh))
    if cp.k != k or cp.s != s:
        raise ValueError(f"checkpoint {path} is for k={cp.k}, s={cp.s}")
    return cp


def _save_checkpoint(path: str, cp: Checkpoint) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(cp.to_json_obj(), fh)
    os.replace(tmp, path)


def lambda_table(
    k: int,
    s: int,
    *,
    symmetry_reduction: bool = True,
    workers: int = 1,
    extended: bool = False,
    checkpoint_path: Optional[str] = None,
) -> LambdaTable:
    """Tally lambda[t] for all k^s words by exhaustive (sharded) enumeration.

    Refuses instances beyond the word budget unless extended is set. With a
    checkpoint path, progress is saved after each completed prefix of chunks
    and picked up on rerun (same k, s and options expected).
    """
    if s < 1 or k < 1:
        raise ValueError("need k >= 1 and s >= 1")
    total_words = k**s
    budget = EXTENDED_WORD_BUDGET if extended else DEFAULT_WORD_BUDGET
    if total_words > budget:
        raise BudgetExceededError(
            f"enumerating {total_words} words exceeds the budget {budget}"
            + ("" if extended else " (pass extended to allow larger runs)"),
            required=total_words,
            budget=budget,
        )
    half = s // 2
    lam = np.zeros(half + 1, dtype=np.int64)
    first = 0
    cp = _load_checkpoint(checkpoint_path, k, s) if checkpoint_path else None
    if cp is not None:
        lam += np.array(cp.partial, dtype=np.int64)
        first = cp.next_word_index
    chunks = [(a, min(a + CHUNK_WORDS, total_words)) for a in range(first, total_words, CHUNK_WORDS)]
    if chunks:
        from . import kernels

        kernels.warmup()  # compile before forking workers
    if workers <= 1 or len(chunks) <= 1:
        for a, b in chunks:
            lam += np.array(_scan_chunk(k, s, a, b, symmetry_reduction), dtype=np.int64)
            if checkpoint_path:
                _save_checkpoint(checkpoint_path, Checkpoint(k, s, b, tuple(int(x) for x in lam)))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan_chunk, k, s, a, b, symmetry_reduction) for a, b in chunks]
            for (a, b), fut in zip(chunks, futures):
                lam += np.array(fut.result(), dtype=np.int64)
                if checkpoint_path:
                    _save_checkpoint(checkpoint_path, Checkpoint(k, s, b, tuple(int(x) for x in lam)))
    method = "symmetry-reduced" if symmetry_reduction else "full"
    return LambdaTable(k, s, tuple(int(x) for x in lam), method)


def table_to_csv(table: LambdaTable) -> str:
    """CSV rows, one per t including t = 0."""
    lines = ["k,s,t,lambda"]
    for t, lam in enumerate(table.lam):
        lines.append(f"{table.k},{table.s},{t},{lam}")
    return "\n".join(lines) + "\n"


def format_rho(rv: RhoValue) -> str:
    return f"rho({rv.s}) = {rv}"
