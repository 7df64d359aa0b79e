"""Exact longest r-twin computation.

Two independent routes:

* ``longest_twins_oracle`` -- the definitional search. For t descending from
  floor(n/r) it enumerates every rt-subset of positions and every balanced
  partition of the subset into r classes, accepting the first t at which some
  partition induces r equal subwords. Exhaustion at t+1 certifies maximality.
* ``longest_twins_fast`` -- a pruned dynamic program over "catch-up" states
  (all r copies are prefixes of the final common subword, so a state is the
  part of that subword already placed but not yet completed by every copy,
  plus how far each copy has got through it). Dominance memoization keeps the
  best completed length per state.

The two must agree everywhere the oracle can run; the test suite enforces it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

import numpy as np

from .core import BudgetExceededError, TwinWitness, Word

DEFAULT_NODE_BUDGET = 10**9

_CHUNK_CELLS = 2_000_000  # cap on subset-chunk x partition x rt work array cells
_KERNEL_STATE_CAP = 2_200_000


@dataclass(frozen=True)
class SolveResult:
    length: int
    witness: TwinWitness
    nodes_explored: int


@lru_cache(maxsize=64)
def _partition_templates(r: int, t: int) -> np.ndarray:
    """All partitions of slots 0..rt-1 into r ordered classes of size t.

    Classes are canonical: each class holds the smallest slot not used by
    earlier classes, which kills the r!-fold relabeling symmetry. Returned
    shape is (P, r, t) with classes internally ascending.
    """
    out: list[tuple[int, ...]] = []

    def rec(remaining: tuple[int, ...], acc: tuple[int, ...]):
        if len(remaining) == t:
            out.append(acc + remaining)
            return
        first = remaining[0]
        rest = remaining[1:]
        for combo in itertools.combinations(rest, t - 1):
            chosen = set(combo)
            left = tuple(x for x in rest if x not in chosen)
            rec(left, acc + (first,) + combo)

    if t == 0:
        return np.zeros((1, r, 0), dtype=np.int64)
    rec(tuple(range(r * t)), ())
    arr = np.array(out, dtype=np.int64)
    return arr.reshape(-1, r, t)


def partition_count(r: int, t: int) -> int:
    """Number of canonical balanced partitions of rt slots into r classes."""
    if t == 0:
        return 1
    total = 1
    left = r * t
    for _ in range(r):
        total *= comb(left - 1, t - 1)
        left -= t
    return total


def oracle_node_estimate(n: int, r: int) -> int:
    """Worst-case partition checks for a full oracle run."""
    total = 0
    for t in range(1, n // r + 1):
        total += comb(n, r * t) * partition_count(r, t)
    return total


def _subset_chunks(n: int, size: int, chunk: int):
    it = itertools.combinations(range(n), size)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _scan_t(arr: np.ndarray, t: int, r: int, find_min: bool):
    """Search all subsets x partitions at one t.

    Returns (nodes, best) where best is None or the lexicographically
    smallest valid concatenated index row (class 1 then class 2, ...).
    With find_min False, returns on the first hit.
    """
    n = arr.shape[0]
    tmpl = _partition_templates(r, t)
    nparts = tmpl.shape[0]
    chunk = max(1, _CHUNK_CELLS // max(1, nparts * r * t))
    nodes = 0
    best: Optional[tuple[int, ...]] = None
    for subsets in _subset_chunks(n, r * t, chunk):
        positions = subsets[:, tmpl]
        letters = arr[positions]
        ok = (letters == letters[:, :, :1, :]).all(axis=3).all(axis=2)
        nodes += ok.shape[0] * ok.shape[1]
        if not ok.any():
            continue
        rows = positions.reshape(positions.shape[0], nparts, r * t)[ok]
        if not find_min:
            return nodes, tuple(rows[0])
        order = np.lexsort(rows.T[::-1])
        cand = tuple(rows[order[0]])
        if best is None or cand < best:
            best = cand
    return nodes, best


def longest_twins_oracle(word: Word, r: int = 2, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Reference exhaustive solver; exact by construction.

    Raises BudgetExceededError upfront when the worst-case number of partition
    checks exceeds node_budget. Among maximum-length witnesses, returns the
    one whose concatenated index sets are lexicographically smallest.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    n = len(word)
    estimate = oracle_node_estimate(n, r)
    if estimate > node_budget:
        raise BudgetExceededError(
            f"oracle needs up to {estimate} partition checks (budget {node_budget})",
            required=estimate,
            budget=node_budget,
        )
    arr = np.array(word.letters, dtype=np.int64)
    nodes = 0
    for t in range(n // r, 0, -1):
        hit_nodes, hit = _scan_t(arr, t, r, find_min=False)
        nodes += hit_nodes
        if hit is None:
            continue
        min_nodes, best = _scan_t(arr, t, r, find_min=True)
        nodes += min_nodes
        sets = tuple(tuple(int(p) + 1 for p in best[i * t:(i + 1) * t]) for i in range(r))
        return SolveResult(t, TwinWitness(sets), nodes)
    return SolveResult(0, TwinWitness.empty(r), nodes)


# ---------------------------------------------------------------------------
# fast solver


def _fast_forward(letters, k, r, threshold=None, keep_snapshots=False):
    """Forward DP over catch-up states.

    A state is (pending, offsets): pending is the tuple of common-subword
    letters placed by the most advanced copy but not yet matched by all, and
    offsets (sorted, min 0, max len(pending)) say how far each copy has read
    into it. The value is the completed common length. Appending to a copy at
    offset o either matches pending[o] or, at the top, extends pending.

    Returns (best, snapshots, nodes) -- snapshots is the per-position list of
    state maps when keep_snapshots, else None. In threshold mode returns early
    with best >= threshold as soon as any state completes that length.
    """
    n = len(letters)
    cap = n // r
    zero = (0,) * r
    start = ((), zero)
    cur = {start: 0}
    snapshots = [dict(cur)] if keep_snapshots else None
    best = 0
    nodes = 0
    target = threshold if threshold is not None else None
    for i in range(n):
        c = letters[i]
        rem = n - i - 1
        nxt = {}
        floor_keep = target - 1 if target is not None else best
        for key, m in cur.items():
            pending, off = key
            # carry by skipping; drop states that can no longer beat the bar
            if m + (rem + 1 + sum(off)) // r >= floor_keep:
                nxt[key] = m
        for key, m in cur.items():
            pending, off = key
            lp = len(pending)
            nodes += 1
            prev_o = -1
            for j in range(r):
                o = off[j]
                if o == prev_o:
                    continue  # copies at equal offsets are interchangeable
                prev_o = o
                if o < lp:
                    if pending[o] != c:
                        continue
                    pend2 = pending
                else:
                    # extend the common subword; useless if it can never be
                    # completed by every copy with the letters remaining
                    if m + lp + 1 > cap:
                        continue
                    if (lp + 1) * r - (sum(off) + 1) > rem:
                        continue
                    pend2 = pending + (c,)
                off2 = list(off)
                off2[j] = o + 1
                jj = j
                while jj + 1 < r and off2[jj] > off2[jj + 1]:
                    off2[jj], off2[jj + 1] = off2[jj + 1], off2[jj]
                    jj += 1
                m2 = m
                if off2[0] > 0:
                    pend2 = pend2[1:]
                    off2 = [x - 1 for x in off2]
                    m2 = m + 1
                if target is not None and m2 >= target:
                    return m2, snapshots, nodes
                ub = m2 + (rem + sum(off2)) // r
                if target is not None:
                    if ub < target:
                        continue
                elif ub < best:
                    continue
                key2 = (pend2, tuple(off2))
                old = nxt.get(key2, -1)
                if m2 > old:
                    nxt[key2] = m2
                    if m2 > best:
                        best = m2
        cur = nxt
        if keep_snapshots:
            snapshots.append(dict(cur))
        if not cur:
            break
    if keep_snapshots and len(snapshots) < n + 1:
        snapshots.extend({} for _ in range(n + 1 - len(snapshots)))
    return best, snapshots, nodes


def _fast_reconstruct(letters, r, snapshots, t):
    """Walk the snapshots backwards and replay a realizing assignment."""
    n = len(letters)
    zero = (0,) * r
    state = ((), zero)
    m = t
    moves: list[Optional[int]] = []  # per position, offset appended at (None = skip)
    for i in range(n, 0, -1):
        c = letters[i - 1]
        pending, off = state
        lp = len(pending)
        prev = snapshots[i - 1]
        chosen = None
        # completed a level here: undo the shift
        if m >= 1:
            pend_p = (c,) + pending
            off_p = tuple(sorted([0] + [x + 1 for x in off[1:]]))
            if prev.get((pend_p, off_p)) == m - 1:
                chosen = (0, (pend_p, off_p), m - 1)
        if chosen is None:
            # interior move: some copy advanced o-1 -> o over pending[o-1]
            seen = set()
            for o in off:
                if o in seen or o < 1:
                    continue
                seen.add(o)
                if pending[o - 1] != c:
                    continue
                if o == lp and sum(1 for x in off if x == o) < 2:
                    continue  # predecessor would lose its top marker
                off_p = list(off)
                off_p.remove(o)
                off_p.append(o - 1)
                off_p = tuple(sorted(off_p))
                if prev.get((pending, off_p)) == m:
                    chosen = (o - 1, (pending, off_p), m)
                    break
        if chosen is None and lp >= 1 and pending[-1] == c and sum(1 for x in off if x == lp) == 1:
            off_p = list(off)
            off_p.remove(lp)
            off_p.append(lp - 1)
            off_p = tuple(sorted(off_p))
            if prev.get((pending[:-1], off_p)) == m:
                chosen = (lp - 1, (pending[:-1], off_p), m)
        if chosen is None:
            if prev.get(state) != m:
                raise AssertionError("twin reconstruction lost its path")
            moves.append(None)
            continue
        o_from, state, m = chosen
        moves.append(o_from)
    moves.reverse()
    # replay forward, handing each append to the lowest copy at that offset
    offsets = [0] * r
    sets: list[list[int]] = [[] for _ in range(r)]
    for i, mv in enumerate(moves):
        if mv is None:
            continue
        cls = min((j for j in range(r) if offsets[j] == mv), default=None)
        if cls is None:
            raise AssertionError("twin reconstruction replay diverged")
        sets[cls].append(i + 1)
        offsets[cls] += 1
        if min(offsets) > 0:
            offsets = [x - 1 for x in offsets]
    sets.sort(key=lambda s: (s[0] if s else 0))
    return TwinWitness(tuple(tuple(s) for s in sets))


def _fast_kernel_ok(n: int, k: int) -> bool:
    from .kernels import surplus_table_size

    return surplus_table_size(k, n // 2) <= _KERNEL_STATE_CAP


def fast_length(word: Word, r: int) -> int:
    """Exact r-twin length by the fast route, without a witness."""
    if r < 2:
        raise ValueError("r must be >= 2")
    n = len(word)
    if n < r:
        return 0
    if r == 2 and _fast_kernel_ok(n, word.k):
        from .kernels import twin2_length

        return int(twin2_length(np.array(word.letters, dtype=np.int64), word.k))
    best, _, _ = _fast_forward(word.letters, word.k, r)
    return best


def longest_twins_fast(word: Word, r: int = 2) -> SolveResult:
    """Exact solver built to run where the oracle cannot.

    Same length as the oracle on every input (tested exhaustively and on
    random words); the witness is valid and deterministic but not required to
    match the oracle's tie-breaking choice.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    n = len(word)
    if n < r:
        return SolveResult(0, TwinWitness.empty(r), 0)
    if r == 2 and _fast_kernel_ok(n, word.k):
        from .kernels import twin2_assignment

        t, assign = twin2_assignment(np.array(word.letters, dtype=np.int64), word.k)
        first = tuple(i + 1 for i in range(n) if assign[i] == 1)
        second = tuple(i + 1 for i in range(n) if assign[i] == 2)
        if t == 0:
            return SolveResult(0, TwinWitness.empty(2), n)
        sets = (first, second) if first[0] < second[0] else (second, first)
        return SolveResult(int(t), TwinWitness(sets), n)
    best, snapshots, nodes = _fast_forward(word.letters, word.k, r, keep_snapshots=True)
    if best == 0:
        return SolveResult(0, TwinWitness.empty(r), nodes)
    witness = _fast_reconstruct(word.letters, r, snapshots, best)
    return SolveResult(best, witness, nodes)


def has_twins_of_length(word: Word, t: int, r: int = 2) -> bool:
    """Decide whether r disjoint identical subsequences of length t exist.

    Length exactly t is the same as length at least t: any longer witness
    truncates. Decided by the fast route with an early exit at t.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if r < 2:
        raise ValueError("r must be >= 2")
    if t == 0:
        return True
    n = len(word)
    if r * t > n:
        return False
    if r == 2 and _fast_kernel_ok(n, word.k):
        return fast_length(word, 2) >= t
    best, _, _ = _fast_forward(word.letters, word.k, r, threshold=t)
    return best >= t
