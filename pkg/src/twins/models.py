"""Random-word models, two-phase generation, and Monte Carlo experiments.

Randomness comes from Philox (a counter-based, keyed generator): a stream is
the pair (seed, streamIndex), used verbatim as the 128-bit Philox key, so any
number of streams can be drawn independently and reproduced exactly. No
global RNG state exists anywhere in the package; experiment trial i always
uses substream i of the experiment's stream, which makes summaries
bit-identical no matter how trials are scheduled.

Two word models: the binomial word (each position independently uniform over
k letters) and the fixed-letter-count word (uniform multiset permutation of a
prescribed count vector). The latter can be generated in two phases -- first
a fixed-count word on the lowest k letters, then the highest letter's copies
dropped uniformly into the gaps -- which is what the boosting construction
exploits.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .core import Alphabet, LetterCounts, TwinsError, Word, letter_counts

_MASK64 = (1 << 64) - 1

# Every statistical tolerance used by tests lives here so flakiness has one
# audit point.
STAT_THRESHOLDS = {
    "chi_square_significance": 0.001,
    "uniform_pair_tolerance": 0.01,
    "concentration_failure_fraction": 0.01,
}


@dataclass(frozen=True)
class RandomStream:
    """A reproducible random source identified by (seed, stream_index)."""

    seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed & _MASK64, self.stream_index & _MASK64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, offset: int) -> "RandomStream":
        return RandomStream(self.seed, (self.stream_index + offset) & _MASK64)


@dataclass(frozen=True)
class ModelSpec:
    """A random-word distribution: binomial or fixed letter counts."""

    variant: str  # "binomial" | "fixed-counts"
    n: int = 0
    k: int = 0
    counts: Optional[LetterCounts] = None

    @classmethod
    def binomial(cls, n: int, k: int) -> "ModelSpec":
        if n < 0 or k < 1:
            raise ValueError("binomial model needs n >= 0 and k >= 1")
        return cls("binomial", n=n, k=k)

    @classmethod
    def fixed(cls, counts: Sequence[int]) -> "ModelSpec":
        lc = counts if isinstance(counts, LetterCounts) else LetterCounts(tuple(counts))
        return cls("fixed-counts", n=lc.n, k=lc.k, counts=lc)

    def sample(self, stream: RandomStream) -> Word:
        if self.variant == "binomial":
            return sample_binomial(self.n, self.k, stream)
        return sample_fixed_counts(self.counts, stream)

    def to_json_obj(self) -> dict:
        if self.variant == "binomial":
            return {"variant": "binomial", "n": self.n, "k": self.k}
        return {"variant": "fixed-counts", "counts": list(self.counts.counts)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ModelSpec":
        if obj.get("variant") == "binomial":
            return cls.binomial(obj["n"], obj["k"])
        if obj.get("variant") == "fixed-counts":
            return cls.fixed(obj["counts"])
        raise ValueError(f"unknown model variant {obj.get('variant')!r}")


def sample_binomial(n: int, k: int, stream: RandomStream) -> Word:
    """n independent uniform letters from a k-letter alphabet."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n == 0:
        return Word(Alphabet(k), ())
    gen = stream.generator()
    return Word(Alphabet(k), tuple(int(c) for c in gen.integers(0, k, size=n)))


def sample_fixed_counts(counts: LetterCounts, stream: RandomStream) -> Word:
    """Uniform multiset permutation with the prescribed letter counts."""
    expanded = np.repeat(np.arange(counts.k, dtype=np.int64), counts.counts)
    if expanded.size == 0:
        return Word(Alphabet(counts.k), ())
    gen = stream.generator()
    return Word(Alphabet(counts.k), tuple(int(c) for c in gen.permutation(expanded)))


def place_new_letter(base: Word, positions: Sequence[int]) -> Word:
    """Deterministic core of phase 2: put the new letter at the given
    0-based positions of the final word, base letters in order elsewhere."""
    n = len(base)
    m = len(positions)
    total = n + m
    chosen = set(positions)
    if len(chosen) != m or any(not 0 <= p < total for p in chosen):
        raise ValueError("positions must be distinct and within the final word")
    letters = []
    it = iter(base.letters)
    new_letter = base.k
    for p in range(total):
        letters.append(new_letter if p in chosen else next(it))
    return Word(Alphabet(base.k + 1), tuple(letters))


def insert_letter_phase2(base: Word, m: int, stream: RandomStream) -> Word:
    """Insert m copies of a new letter uniformly into the n+1 gaps.

    Dropping balls into gaps is in bijection with choosing which m of the
    n+m final positions hold the new letter, so a uniform m-subset is exactly
    uniform over placements. Deleting the new letter recovers base.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Word(Alphabet(base.k + 1), base.letters)
    gen = stream.generator()
    positions = gen.choice(len(base) + m, size=m, replace=False)
    return place_new_letter(base, [int(p) for p in positions])


class ExperimentError(TwinsError):
    def __init__(self, trial: int, cause: Exception):
        super().__init__(f"statistic failed at trial {trial}: {cause!r}")
        self.trial = trial
        self.cause = cause


@dataclass(frozen=True)
class ExperimentSummary:
    statistic: str
    trials: int
    mean: float
    std: float
    min: float
    max: float
    histogram: tuple[tuple[float, float, int], ...]  # (lo, hi, count)

    def to_json_obj(self) -> dict:
        return {
            "statistic": self.statistic,
            "trials": self.trials,
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "max": self.max,
            "histogram": [[lo, hi, c] for lo, hi, c in self.histogram],
        }


_HISTOGRAM_BUCKETS = 20


def summarize(statistic: str, values: Sequence[float]) -> ExperimentSummary:
    """Deterministic aggregation of per-trial values (in trial order)."""
    trials = len(values)
    if trials < 1:
        raise ValueError("need at least one trial")
    mean = sum(values) / trials
    if trials > 1:
        var = sum((v - mean) ** 2 for v in values) / (trials - 1)
    else:
        var = 0.0
    lo, hi = min(values), max(values)
    if lo == hi:
        histogram = ((lo, hi, trials),)
    else:
        edges = np.linspace(lo, hi, _HISTOGRAM_BUCKETS + 1)
        counts, _ = np.histogram(np.array(values), bins=edges)
        histogram = tuple(
            (float(edges[i]), float(edges[i + 1]), int(counts[i]))
            for i in range(_HISTOGRAM_BUCKETS)
        )
    return ExperimentSummary(statistic, trials, mean, math.sqrt(var), lo, hi, histogram)


def _segment_concat_ratio(params: dict) -> Callable[[Word], float]:
    from .constructions import segment_plan

    s = int(params.get("s", 14))
    solver = params.get("solver", "fast")

    def run(word: Word) -> float:
        if len(word) == 0:
            return 0.0
        plan = segment_plan(word, s, solver)
        return plan.total_length / len(word)

    return run


def _boost_pipeline_ratio(params: dict) -> Callable[[Word], float]:
    from .constructions import boost_pipeline

    k_prime = int(params.get("k_prime", 2))
    r = int(params.get("r", 2))
    base = dict(params.get("base", {"name": "segment_concat", "s": 14}))
    name = base.pop("name", "segment_concat")

    def run(word: Word) -> float:
        if len(word) == 0:
            return 0.0
        witness = boost_pipeline(word, k_prime, r, name, **base)
        return witness.length / len(word)

    return run


def _fast_length(params: dict) -> Callable[[Word], float]:
    from .solver import fast_length

    r = int(params.get("r", 2))
    truncate = params.get("truncate")

    def run(word: Word) -> float:
        if truncate is not None:
            word = Word(word.alphabet, word.letters[: int(truncate)])
        return float(fast_length(word, r))

    return run


def _fast_length_ratio(params: dict) -> Callable[[Word], float]:
    inner = _fast_length(params)
    truncate = params.get("truncate")

    def run(word: Word) -> float:
        n = min(len(word), int(truncate)) if truncate is not None else len(word)
        if n == 0:
            return 0.0
        return inner(word) / n

    return run


def _interlace_covered_ratio(params: dict) -> Callable[[Word], float]:
    from .constructions import interlace

    r = int(params.get("r", 2))
    m = int(params.get("m", 10))

    def run(word: Word) -> float:
        if len(word) == 0:
            return 0.0
        return interlace(word, r, m).covered / len(word)

    return run


STATISTICS: dict[str, Callable[[dict], Callable[[Word], float]]] = {
    "segment_concat_ratio": _segment_concat_ratio,
    "boost_pipeline_ratio": _boost_pipeline_ratio,
    "fast_length": _fast_length,
    "fast_length_ratio": _fast_length_ratio,
    "interlace_covered_ratio": _interlace_covered_ratio,
}


def make_statistic(spec: dict) -> tuple[str, Callable[[Word], float]]:
    name = spec.get("name")
    if name not in STATISTICS:
        raise ValueError(f"unknown statistic {name!r}")
    params = {key: val for key, val in spec.items() if key != "name"}
    return name, STATISTICS[name](params)


def _run_trial(model_obj: dict, statistic_spec: dict, seed: int, stream_index: int, trial: int) -> float:
    model = ModelSpec.from_json_obj(model_obj)
    _, fn = make_statistic(statistic_spec)
    word = model.sample(RandomStream(seed, stream_index).substream(trial))
    return fn(word)


def run_experiment(
    model: ModelSpec,
    statistic: Union[dict, tuple[str, Callable[[Word], float]]],
    trials: int,
    stream: RandomStream,
    workers: int = 1,
) -> ExperimentSummary:
    """Apply a statistic to independent model samples; trial i always draws
    from substream i, so the summary depends only on (seed, streamIndex)."""
    if trials < 1:
        raise ValueError("need trials >= 1")
    if isinstance(statistic, dict):
        name, fn = make_statistic(statistic)
        spec = statistic
    else:
        name, fn = statistic
        spec = None
    values: list[float] = []
    if workers > 1 and spec is not None and trials > 1:
        model_obj = model.to_json_obj()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_trial, model_obj, spec, stream.seed, stream.stream_index, i)
                for i in range(trials)
            ]
            for i, fut in enumerate(futures):
                try:
                    values.append(fut.result())
                except TwinsError:
                    raise
                except Exception as exc:  # noqa: BLE001
                    raise ExperimentError(i, exc) from exc
    else:
        for i in range(trials):
            word = model.sample(stream.substream(i))
            try:
                values.append(fn(word))
            except Exception as exc:  # noqa: BLE001
                raise ExperimentError(i, exc) from exc
    return summarize(name, values)


@dataclass(frozen=True)
class ConcentrationReport:
    k: int
    n: int
    m: int
    trials: int
    epsilon: float
    threshold: float
    failures: int

    @property
    def failure_fraction(self) -> float:
        return self.failures / self.trials


def concentration_check(k: int, n: int, m: int, stream: RandomStream, trials: int) -> ConcentrationReport:
    """Empirical check that every per-segment letter count clears (1-eps)N/k.

    Splits each sampled word into m segments of length N = n/m and counts the
    fraction of trials in which some segment is short of some letter, with
    eps = k * n^(-1/3) * sqrt(2 ln n). No claim is asserted here; callers
    compare the reported fraction against their own bar.
    """
    if m < 1 or n % m != 0:
        raise ValueError("m must divide n")
    if trials < 1:
        raise ValueError("need trials >= 1")
    seg = n // m
    eps = k * n ** (-1 / 3) * math.sqrt(2 * math.log(n)) if n > 1 else 0.0
    threshold = (1 - eps) * seg / k
    failures = 0
    for i in range(trials):
        gen = stream.substream(i).generator()
        letters = gen.integers(0, k, size=n).reshape(m, seg)
        ok = True
        for j in range(m):
            counts = np.bincount(letters[j], minlength=k)
            if counts.min() < threshold:
                ok = False
                break
        if not ok:
            failures += 1
    return ConcentrationReport(k, n, m, trials, eps, threshold, failures)


def chi_square_pvalue(observed: Sequence[int], expected: Sequence[float]) -> float:
    """Goodness-of-fit p-value (scipy)."""
    from scipy.stats import chisquare

    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    exp = exp * obs.sum() / exp.sum()
    return float(chisquare(obs, exp).pvalue)
