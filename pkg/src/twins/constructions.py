"""Constructive lower-bound devices for twins in words.

Three constructions, each returning a verifiable witness:

* segment concatenation -- solve each length-s segment exactly and chain the
  per-segment pairs; the trailing n mod s positions are discarded.
* interlacing -- for r >= k, build r twins that cycle through the letters in
  shifted rounds of segments, consuming the per-segment quota mu from each.
* boosting -- given twins on a word over k letters and the same word with a
  (k+1)-th letter sprinkled in, extend each twin by the new-letter runs that
  sit immediately to the right of corresponding twin elements.

Boost steps compose: the pipeline strips the highest letters down to a start
alphabet, builds base twins there, and re-inserts the removed letters one at
a time (ascending), boosting after each insertion.

All multiplier arithmetic is exact rational; floats appear only in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .core import Alphabet, TwinWitness, WitnessInvalidError, Word, verify_twins
from .solver import SolveResult, longest_twins_fast, longest_twins_oracle

BaseSolver = Union[str, Callable[[Word], TwinWitness]]


@dataclass(frozen=True)
class SegmentPlan:
    segment_length: int
    segment_count: int
    per_segment: tuple[SolveResult, ...]

    @property
    def total_length(self) -> int:
        return sum(res.length for res in self.per_segment)


def _solve(word: Word, solver: str) -> SolveResult:
    if solver in ("fast",):
        return longest_twins_fast(word, 2)
    if solver in ("oracle", "exact"):
        return longest_twins_oracle(word, 2)
    raise ValueError(f"unknown solver {solver!r}")


def segment_plan(word: Word, s: int, solver: str = "fast") -> SegmentPlan:
    """Solve each of the floor(n/s) disjoint length-s segments exactly."""
    if s < 2:
        raise ValueError("segment length must be >= 2")
    m = len(word) // s
    results = []
    for j in range(m):
        seg = Word(word.alphabet, word.letters[j * s:(j + 1) * s])
        results.append(_solve(seg, solver))
    return SegmentPlan(s, m, tuple(results))


def segment_concat(word: Word, s: int, solver: str = "fast") -> TwinWitness:
    """Chain per-segment longest pairs into one pair of twins.

    The result has length equal to the sum of the per-segment exact lengths;
    with s > n there are no segments and the witness is empty.
    """
    plan = segment_plan(word, s, solver)
    first: list[int] = []
    second: list[int] = []
    for j, res in enumerate(plan.per_segment):
        if res.length == 0:
            continue
        shifted = res.witness.shifted(j * s)
        first.extend(shifted.index_sets[0])
        second.extend(shifted.index_sets[1])
    return TwinWitness((tuple(first), tuple(second)))


@dataclass(frozen=True)
class InterlaceResult:
    witness: TwinWitness
    covered: int
    mu: int
    blocks: int


def interlace(word: Word, r: int, m: int) -> InterlaceResult:
    """Round-robin construction of r twins from per-segment letter quotas.

    The word is cut into m segments of length floor(n/m). With mu the minimum
    per-segment count of any letter, twin j takes mu copies of letter 0 from
    segment j, mu of letter 1 from segment j+1, ..., mu of letter k-1, then
    jumps r segments ahead of its previous round and repeats while every twin
    can still complete the block. Together the twins cover at least
    (m-r+1)*k*mu positions.
    """
    k = word.k
    if not r >= k >= 2:
        raise ValueError("need r >= k >= 2")
    if m < r:
        raise ValueError("need m >= r segments")
    seg_len = len(word) // m
    if seg_len == 0:
        return InterlaceResult(TwinWitness.empty(r), 0, 0, 0)
    by_letter: list[list[list[int]]] = []  # segment -> letter -> 1-based positions
    for j in range(m):
        buckets: list[list[int]] = [[] for _ in range(k)]
        for p in range(j * seg_len, (j + 1) * seg_len):
            buckets[word.letters[p]].append(p + 1)
        by_letter.append(buckets)
    mu = min(len(bucket) for seg in by_letter for bucket in seg)
    if mu == 0:
        return InterlaceResult(TwinWitness.empty(r), 0, 0, 0)

    def block_segment(j: int, b: int) -> int:
        # twin j (1-based), block b (0-based): segment hosting the block
        return j + r * (b // k) + (b % k)

    blocks = 0
    while block_segment(r, blocks) <= m:
        blocks += 1
    sets = []
    for j in range(1, r + 1):
        indices: list[int] = []
        for b in range(blocks):
            seg = block_segment(j, b) - 1
            letter = b % k
            indices.extend(by_letter[seg][letter][:mu])
        sets.append(tuple(indices))
    witness = TwinWitness(tuple(sets))
    covered = r * blocks * mu
    assert covered >= (m - r + 1) * k * mu
    return InterlaceResult(witness, covered, mu, blocks)


@dataclass(frozen=True)
class ProviderProfile:
    """Per twin-index bin tuples for a word extended by one letter.

    For each position index l of the base twins, bins[l] lists the r base-word
    positions whose right-hand gaps form the l-th bin tuple, ball_counts[l]
    the number of inserted letters in each of those gaps, and s_values[l]
    their minimum -- the length every twin can be extended by at index l.
    """

    bins: tuple[tuple[int, ...], ...]
    ball_counts: tuple[tuple[int, ...], ...]
    s_values: tuple[int, ...]

    @property
    def total_extension(self) -> int:
        return sum(self.s_values)


def _split_extension(extended: Word):
    """Map an extended word back to its base: positions and gap ball counts.

    Returns (base_word, ext_pos, balls_after): ext_pos[q] is the 1-based
    position in the extended word of base position q+1; balls_after[q] counts
    inserted letters between base positions q and q+1 (q = 0 .. n_base, gap 0
    preceding the first base letter).
    """
    new_letter = extended.k - 1
    if extended.k < 2:
        raise ValueError("extended word needs at least 2 letters in its alphabet")
    base_letters: list[int] = []
    ext_pos: list[int] = []
    balls_after = [0]
    for p, c in enumerate(extended.letters, start=1):
        if c == new_letter:
            balls_after[-1] += 1
        else:
            base_letters.append(c)
            ext_pos.append(p)
            balls_after.append(0)
    base = Word(Alphabet(extended.k - 1), tuple(base_letters))
    return base, ext_pos, balls_after


def provider_profile(extended: Word, base_witness: TwinWitness) -> ProviderProfile:
    """Locate the bin tuples to the right of each twin element.

    The base witness must be valid on the word obtained by deleting every
    occurrence of the extended word's highest letter.
    """
    base, _, balls_after = _split_extension(extended)
    check = verify_twins(base, base_witness)
    if not check.valid:
        raise WitnessInvalidError(
            f"base witness invalid on the restriction: {check.defect.value}"
        )
    bins = []
    counts = []
    s_values = []
    for l in range(base_witness.length):
        tuple_bins = tuple(s[l] for s in base_witness.index_sets)
        tuple_counts = tuple(balls_after[q] for q in tuple_bins)
        bins.append(tuple_bins)
        counts.append(tuple_counts)
        s_values.append(min(tuple_counts))
    return ProviderProfile(tuple(bins), tuple(counts), tuple(s_values))


def boost(extended: Word, base_witness: TwinWitness) -> TwinWitness:
    """Extend base twins by the inserted-letter runs after their elements.

    Output length is len(base) + sum of the per-index minimum ball counts,
    exactly; with no inserted letters the base witness is returned re-indexed.
    """
    base, ext_pos, balls_after = _split_extension(extended)
    check = verify_twins(base, base_witness)
    if not check.valid:
        raise WitnessInvalidError(
            f"base witness invalid on the restriction: {check.defect.value}"
        )
    s_values = [
        min(balls_after[s[l]] for s in base_witness.index_sets)
        for l in range(base_witness.length)
    ]
    sets = []
    for class_positions in base_witness.index_sets:
        out: list[int] = []
        for l, q in enumerate(class_positions):
            e = ext_pos[q - 1]
            out.append(e)
            out.extend(range(e + 1, e + 1 + s_values[l]))
        sets.append(tuple(out))
    return TwinWitness(tuple(sets))


def _base_solver_fn(base_solver: BaseSolver, r: int, params: dict) -> Callable[[Word], TwinWitness]:
    if callable(base_solver):
        return base_solver
    if base_solver == "segment_concat":
        if r != 2:
            raise ValueError("segment_concat builds pairs only (r = 2)")
        s = params.get("s", 14)
        solver = params.get("solver", "fast")
        return lambda w: segment_concat(w, s, solver)
    if base_solver == "interlace":
        m = params.get("m")

        def run(w: Word) -> TwinWitness:
            mm = m if m is not None else max(r, len(w) // max(1, params.get("segment_length", 100)))
            return interlace(w, r, mm).witness

        return run
    raise ValueError(f"unknown base solver {base_solver!r}")


def boost_pipeline(
    word: Word,
    k_prime: int,
    r: int,
    base_solver: BaseSolver = "segment_concat",
    **params,
) -> TwinWitness:
    """Strip to the k_prime lowest letters, build base twins, boost back up.

    Letters k_prime..k-1 are deleted for the base stage and re-inserted in
    ascending order, boosting after each insertion. With k_prime equal to the
    word's alphabet size the pipeline is just the base solver.
    """
    k = word.k
    if not 2 <= k_prime <= k:
        raise ValueError("need 2 <= k_prime <= alphabet size")
    if r < 2:
        raise ValueError("r must be >= 2")
    solver_fn = _base_solver_fn(base_solver, r, params)
    witness = solver_fn(word.restricted(k_prime))
    for j in range(k_prime, k):
        witness = boost(word.restricted(j + 1), witness)
    return witness


def theoretical_boost_factor(k: int, r: int, variant: str = "exact") -> Fraction:
    """Per-step multiplier for one boost from k to k+1 letters.

    exact: (1 + 1/((k+1)^r - 1)) * k/(k+1); weak drops the -1 in the
    denominator (simpler proof, slightly smaller factor).
    """
    if k < 2 or r < 2:
        raise ValueError("need k >= 2 and r >= 2")
    if variant == "exact":
        gain = 1 + Fraction(1, (k + 1) ** r - 1)
    elif variant == "weak":
        gain = 1 + Fraction(1, (k + 1) ** r)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return gain * Fraction(k, k + 1)


def iterated_boost_coefficient(
    k_start: int,
    k_end: int,
    r: int,
    start: Fraction,
    variant: str = "exact",
) -> Fraction:
    """Coefficient of n after boosting from k_start letters up to k_end."""
    if k_end < k_start:
        raise ValueError("k_end must be >= k_start")
    coeff = Fraction(start)
    for j in range(k_start, k_end):
        coeff *= theoretical_boost_factor(j, r, variant)
    return coeff
