"""Compiled inner loops: exact 2-twin length of short words and bulk enumeration.

The 2-twin search runs over "surplus" states: scanning the word left to right
and assigning each position to one of {unused, first copy, second copy}, both
copies are at all times prefixes of the common subword, so the only state that
matters is the string by which the longer copy is ahead. A surplus of length l
over k letters is packed into the integer  offset[l] + sum(s_i * k^i)  with the
next-to-consume letter in the lowest digit. Values stay small: for a word of
length n at most (k^(n/2+1)-1)/(k-1) states exist, which is what makes these
dense int8 tables practical for n <= ~32.

Kernels are deterministic and allocation-light; callers reuse them across
millions of words.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def surplus_table_size(k: int, max_len: int) -> int:
    """Number of packed surplus states with length <= max_len."""
    total = 0
    p = 1
    for _ in range(max_len + 1):
        total += p
        p *= k
    return total


@njit(cache=True)
def _fill_tables(k, L, offsets, powers):
    offsets[0] = 0
    p = np.int64(1)
    for l in range(L + 1):
        offsets[l + 1] = offsets[l] + p
        powers[l] = p
        p *= k


@njit(cache=True)
def _twin2_scan(w, k, L, offsets, powers, cur, nxt):
    """One full forward pass; returns the exact 2-twin length of w.

    cur/nxt are scratch int8 arrays of size offsets[L+1]; contents clobbered.
    """
    n = w.shape[0]
    total = offsets[L + 1]
    for j in range(total):
        cur[j] = -1
    cur[0] = 0
    for i in range(n):
        c = w[i]
        rem = n - i - 1
        live = i if i < L else L
        # states longer than the live bound are unreachable; copy only what
        # exists and wipe the one band growth can reach (the swap leaves
        # stale bytes there)
        hi = offsets[live + 1]
        for j in range(hi):
            nxt[j] = cur[j]
        if live < L:
            for j in range(hi, offsets[live + 2]):
                nxt[j] = -1
        for l in range(live + 1):
            base = offsets[l]
            size = offsets[l + 1] - base
            for v in range(size):
                m = cur[base + v]
                if m < 0:
                    continue
                # grow the surplus (ahead copy takes this position); pointless
                # unless the behind copy can still consume the new slot
                l2 = l + 1
                if l2 <= L and l2 <= rem:
                    idx2 = offsets[l2] + v + c * powers[l]
                    if nxt[idx2] < m:
                        nxt[idx2] = m
                # behind copy consumes the surplus head
                if l >= 1 and v % k == c:
                    idx2 = offsets[l - 1] + v // k
                    if nxt[idx2] < m + 1:
                        nxt[idx2] = m + 1
        tmp = cur
        cur = nxt
        nxt = tmp
    return int(cur[0])


@njit(cache=True)
def twin2_length(w, k):
    """Exact 2-twin length of a word given as an int array of letters."""
    n = w.shape[0]
    L = n // 2
    offsets = np.empty(L + 2, np.int64)
    powers = np.empty(L + 1, np.int64)
    _fill_tables(k, L, offsets, powers)
    total = offsets[L + 1]
    cur = np.full(total, -1, np.int8)
    nxt = np.empty(total, np.int8)
    return _twin2_scan(w, k, L, offsets, powers, cur, nxt)


@njit(cache=True)
def twin2_assignment(w, k):
    """Exact 2-twin length plus a realizing assignment of positions.

    Returns (t, assign) where assign[i] is 0 for unused positions, 1 for the
    copy that writes new letters of the common subword, 2 for the copy that
    matches them. Reconstruction walks a stored snapshot of every forward step,
    so memory is (n+1) * #states bytes.
    """
    n = w.shape[0]
    L = n // 2
    offsets = np.empty(L + 2, np.int64)
    powers = np.empty(L + 1, np.int64)
    _fill_tables(k, L, offsets, powers)
    total = offsets[L + 1]
    snap = np.full((n + 1, total), -1, np.int8)
    snap[0, 0] = 0
    for i in range(n):
        c = w[i]
        rem = n - i - 1
        live = i if i < L else L
        cur = snap[i]
        nxt = snap[i + 1]
        hi = offsets[live + 1]
        for j in range(hi):
            nxt[j] = cur[j]
        for l in range(live + 1):
            base = offsets[l]
            size = offsets[l + 1] - base
            for v in range(size):
                m = cur[base + v]
                if m < 0:
                    continue
                l2 = l + 1
                if l2 <= L and l2 <= rem:
                    idx2 = offsets[l2] + v + c * powers[l]
                    if nxt[idx2] < m:
                        nxt[idx2] = m
                if l >= 1 and v % k == c:
                    idx2 = offsets[l - 1] + v // k
                    if nxt[idx2] < m + 1:
                        nxt[idx2] = m + 1
    t = int(snap[n, 0])
    assign = np.zeros(n, np.int8)
    # walk back from the empty surplus; every maximal length is realized there
    l = 0
    v = np.int64(0)
    m = t
    for i in range(n, 0, -1):
        c = w[i - 1]
        placed = False
        # behind copy consumed c here: predecessor surplus was c + v shifted up
        if m >= 1 and l + 1 <= L:
            vp = v * k + c
            if snap[i - 1, offsets[l + 1] + vp] == m - 1:
                assign[i - 1] = 2
                l = l + 1
                v = vp
                m = m - 1
                placed = True
        # ahead copy appended c here: strip the top surplus digit
        if not placed and l >= 1:
            top = v // powers[l - 1]
            if top == c:
                vp = v - c * powers[l - 1]
                if snap[i - 1, offsets[l - 1] + vp] == m:
                    assign[i - 1] = 1
                    l = l - 1
                    v = vp
                    placed = True
        if not placed:
            # position unused on this optimal path
            assign[i - 1] = 0
    return t, assign


@njit(cache=True)
def lambda_scan(k, s, start, end, use_sym, perms):
    """Tally exact longest-2-twin lengths over words start <= index < end.

    Words of length s over k letters are identified with base-k integers,
    first letter most significant. With use_sym, only orbit-minimal words
    under letter permutations x reversal are solved, each weighted by its
    orbit size; the returned tallies are identical either way.
    perms: (P, k) array of letter bijections (must include the identity).
    """
    half = s // 2
    lam = np.zeros(half + 1, np.int64)
    offsets = np.empty(half + 2, np.int64)
    powers = np.empty(half + 1, np.int64)
    _fill_tables(k, half, offsets, powers)
    total = offsets[half + 1]
    cur = np.empty(total, np.int8)
    nxt = np.empty(total, np.int8)
    digits = np.empty(s, np.int64)
    nperm = perms.shape[0]
    images = np.empty(2 * nperm, np.int64)
    for idx in range(start, end):
        x = idx
        for pos in range(s - 1, -1, -1):
            digits[pos] = x % k
            x //= k
        weight = 1
        if use_sym:
            canonical = True
            nim = 0
            for p in range(nperm):
                for rev in range(2):
                    img = np.int64(0)
                    if rev == 0:
                        for pos in range(s):
                            img = img * k + perms[p, digits[pos]]
                    else:
                        for pos in range(s - 1, -1, -1):
                            img = img * k + perms[p, digits[pos]]
                    if img < idx:
                        canonical = False
                        break
                    images[nim] = img
                    nim += 1
                if not canonical:
                    break
            if not canonical:
                continue
            weight = 0
            for a in range(nim):
                dup = False
                for b in range(a):
                    if images[b] == images[a]:
                        dup = True
                        break
                if not dup:
                    weight += 1
        t = _twin2_scan(digits, k, half, offsets, powers, cur, nxt)
        lam[t] += weight
    return lam


def warmup():
    """Force JIT compilation of all kernels on a trivial input."""
    w = np.array([0, 0, 1, 1], np.int64)
    twin2_length(w, 2)
    twin2_assignment(w, 2)
    perms = np.array([[0, 1], [1, 0]], np.int64)
    lambda_scan(2, 4, 0, 4, True, perms)
    lambda_scan(2, 4, 0, 4, False, perms)
