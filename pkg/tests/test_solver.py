import itertools

import pytest
from hypothesis import given, settings, strategies as st

from twins import (
    BudgetExceededError,
    Word,
    fast_length,
    has_twins_of_length,
    longest_twins_fast,
    longest_twins_oracle,
    verify_twins,
)
from twins.models import RandomStream
from twins.solver import oracle_node_estimate, partition_count


def brute_reference(letters, r):
    """Independent reference: try every subset and balanced partition."""
    n = len(letters)

    def parts(rem, t):
        if len(rem) == t:
            yield (rem,)
            return
        first, rest = rem[0], rem[1:]
        for combo in itertools.combinations(rest, t - 1):
            chosen = set(combo)
            left = tuple(x for x in rest if x not in chosen)
            for tail in parts(left, t):
                yield ((first,) + combo,) + tail

    for t in range(n // r, 0, -1):
        for subset in itertools.combinations(range(n), r * t):
            for p in parts(subset, t):
                words = [tuple(letters[i] for i in cls) for cls in p]
                if all(wrd == words[0] for wrd in words[1:]):
                    return t
    return 0


def random_word(seed, n, k):
    gen = RandomStream(seed, 0).generator()
    return Word.from_letters([int(c) for c in gen.integers(0, k, size=n)], k)


class TestOracle:
    def test_all_equal_letters(self):
        assert longest_twins_oracle(Word.from_text("aaaa"), 2).length == 2

    def test_all_distinct(self):
        res = longest_twins_oracle(Word.from_text("abc"), 2)
        assert res.length == 0 and res.witness.index_sets == ((), ())

    def test_interleaved_pair(self):
        res = longest_twins_oracle(Word.from_text("aabb"), 2)
        assert res.length == 2
        assert res.witness.index_sets == ((1, 3), (2, 4))

    def test_tie_break_is_lexicographic(self):
        res = longest_twins_oracle(Word.from_text("aaaa"), 2)
        assert res.witness.index_sets == ((1, 2), (3, 4))

    def test_witness_always_verifies(self):
        for seed in range(30):
            w = random_word(seed, 9, 3)
            res = longest_twins_oracle(w, 2)
            check = verify_twins(w, res.witness)
            assert check.valid and check.length == res.length

    def test_budget_error(self, example_word):
        with pytest.raises(BudgetExceededError):
            longest_twins_oracle(example_word, 3)

    def test_node_estimate_matches_partition_count(self):
        # r=2, t pairs: C(2t, t)/2 canonical partitions
        assert partition_count(2, 3) == 10
        assert partition_count(3, 2) == 15
        assert oracle_node_estimate(4, 2) == 6 * 1 + 1 * 3  # t=1: C(4,2)*1, t=2: C(4,4)*3


class TestDecision:
    def test_trivial_cases(self):
        assert has_twins_of_length(Word.from_text("aaaa"), 2, 2)
        assert has_twins_of_length(Word.from_text("abcabc"), 3, 2)
        assert not has_twins_of_length(Word.from_text("abc"), 1, 2)
        assert has_twins_of_length(Word.from_text("abc"), 0, 2)

    def test_length_budget(self):
        assert not has_twins_of_length(Word.from_text("aaaa"), 3, 2)

    def test_exact_count_over_all_length6_ternary_words(self):
        # words of length 6 with a disjoint identical pair of length 3
        count = sum(
            has_twins_of_length(Word.from_letters(ls, 3), 3, 2)
            for ls in itertools.product(range(3), repeat=6)
        )
        assert count == 93

    def test_monotone_in_t_and_r(self):
        for seed in range(10):
            w = random_word(seed, 10, 2)
            for r in (2, 3):
                values = [has_twins_of_length(w, t, r) for t in range(0, 6)]
                assert values == sorted(values, reverse=True)
            for t in range(0, 4):
                assert has_twins_of_length(w, t, 3) <= has_twins_of_length(w, t, 2)


class TestFastSolver:
    def test_constant_word(self):
        assert longest_twins_fast(Word.from_text("a" * 14), 2).length == 7

    def test_example_word_triplets(self, example_word):
        res = longest_twins_fast(example_word, 3)
        assert res.length >= 5
        check = verify_twins(example_word, res.witness)
        assert check.valid and check.length == res.length

    def test_agrees_with_oracle_exhaustively_n6(self):
        for ls in itertools.product(range(3), repeat=6):
            w = Word.from_letters(ls, 3)
            assert longest_twins_fast(w, 2).length == longest_twins_oracle(w, 2).length

    def test_agrees_with_brute_reference(self):
        for seed in range(60):
            n = 4 + seed % 7
            k = 2 + seed % 2
            r = 2 + seed % 2
            w = random_word(seed, n, k)
            ref = brute_reference(w.letters, r)
            res = longest_twins_fast(w, r)
            assert res.length == ref
            if ref:
                check = verify_twins(w, res.witness)
                assert check.valid and check.length == ref

    def test_fast_length_matches_full_solver(self):
        for seed in range(20):
            w = random_word(seed, 12, 3)
            for r in (2, 3):
                assert fast_length(w, r) == longest_twins_fast(w, r).length

    def test_pure_python_path_matches_kernel(self):
        from twins.solver import _fast_forward

        for seed in range(40):
            w = random_word(seed, 11, 3)
            best, _, _ = _fast_forward(w.letters, w.k, 2)
            assert best == fast_length(w, 2)

    def test_short_word_edge(self):
        assert longest_twins_fast(Word.from_text("a"), 2).length == 0
        assert longest_twins_fast(Word.from_text(""), 2).length == 0

    def test_r_validation(self):
        with pytest.raises(ValueError):
            longest_twins_fast(Word.from_text("aa"), 1)


class TestInvariantProperties:
    @given(st.lists(st.integers(0, 2), min_size=0, max_size=9))
    @settings(max_examples=60, deadline=None)
    def test_reversal_invariance(self, letters):
        w = Word.from_letters(letters, 3)
        assert fast_length(w, 2) == fast_length(w.reversed(), 2)

    @given(st.lists(st.integers(0, 2), min_size=0, max_size=9), st.permutations(range(3)))
    @settings(max_examples=60, deadline=None)
    def test_letter_permutation_invariance(self, letters, perm):
        w = Word.from_letters(letters, 3)
        assert fast_length(w, 2) == fast_length(w.relabeled(list(perm)), 2)

    @given(st.lists(st.integers(0, 2), min_size=0, max_size=8), st.integers(0, 2))
    @settings(max_examples=60, deadline=None)
    def test_appending_never_decreases(self, letters, extra):
        w = Word.from_letters(letters, 3)
        w2 = Word.from_letters(list(letters) + [extra], 3)
        assert fast_length(w2, 2) >= fast_length(w, 2)

    @given(st.lists(st.integers(0, 2), min_size=0, max_size=10))
    @settings(max_examples=60, deadline=None)
    def test_length_bound(self, letters):
        w = Word.from_letters(letters, 3)
        for r in (2, 3):
            assert 0 <= fast_length(w, r) <= len(w) // r
