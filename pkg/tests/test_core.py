import json

import pytest
from hypothesis import given, strategies as st

from twins import (
    Alphabet,
    InvalidIndexError,
    LetterCounts,
    TwinWitness,
    Word,
    WitnessDefect,
    induced_subword,
    letter_counts,
    verify_twins,
)


def small_words(max_n=10, max_k=3):
    return st.integers(1, max_k).flatmap(
        lambda k: st.lists(st.integers(0, k - 1), max_size=max_n).map(
            lambda ls: Word.from_letters(ls, k)
        )
    )


class TestWordFormats:
    def test_text_round_trip(self):
        w = Word.from_text("abca", k=3)
        assert w.letters == (0, 1, 2, 0)
        assert w.to_text() == "abca"

    def test_infers_alphabet(self):
        assert Word.from_text("cab").k == 3

    def test_large_alphabet_uses_integers(self):
        w = Word.from_letters([0, 29, 5], 30)
        assert w.to_text() == "0,29,5"
        assert Word.from_text("0,29,5", k=30) == w

    def test_empty(self):
        w = Word.from_text("")
        assert len(w) == 0 and w.k == 1

    def test_rejects_letters_outside_alphabet(self):
        with pytest.raises(ValueError):
            Word.from_letters([0, 3], 3)
        with pytest.raises(ValueError):
            Word.from_text("abcd", k=3)

    def test_alphabet_must_be_positive(self):
        with pytest.raises(ValueError):
            Alphabet(0)

    def test_restricted_drops_high_letters(self):
        w = Word.from_text("abcabc", k=3)
        assert w.restricted(2).to_text() == "abab"
        assert w.restricted(3) == w


class TestInducedSubword:
    def test_direct_read_off(self):
        assert induced_subword(Word.from_text("abba"), (1, 4)).to_text() == "aa"

    def test_empty_indices(self):
        assert len(induced_subword(Word.from_text("abba"), ())) == 0

    def test_example_word_positions(self, example_word):
        assert induced_subword(example_word, (2, 3, 8, 11, 19)).to_text() == "aabcc"

    def test_identity(self):
        w = Word.from_text("bacab")
        assert induced_subword(w, tuple(range(1, 6))) == w

    @pytest.mark.parametrize("indices", [(0,), (5,), (2, 2), (3, 1)])
    def test_bad_indices_raise(self, indices):
        with pytest.raises(InvalidIndexError):
            induced_subword(Word.from_text("abca"), indices)


class TestLetterCounts:
    def test_direct_count(self):
        assert letter_counts(Word.from_text("aabc", k=3)).counts == (2, 1, 1)

    def test_empty_word(self):
        assert letter_counts(Word.from_text("", k=3)).counts == (0, 0, 0)

    def test_example_word_counts(self, example_word):
        lc = letter_counts(example_word)
        assert lc.n == 27
        # counted off the printed word
        assert lc.counts == (9, 9, 9)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            LetterCounts((1, -1))


class TestVerifyTwins:
    def test_two_equal_letters(self):
        res = verify_twins(Word.from_text("aa"), TwinWitness(((1,), (2,))))
        assert res.valid and res.length == 1

    def test_example_word_witness(self, example_word, example_witness):
        res = verify_twins(example_word, example_witness)
        assert res.valid and res.length == 5

    def test_overlap(self):
        res = verify_twins(Word.from_text("ab"), TwinWitness(((1,), (1,))))
        assert not res.valid and res.defect is WitnessDefect.OVERLAP

    def test_unequal_words(self):
        res = verify_twins(Word.from_text("ab"), TwinWitness(((1,), (2,))))
        assert not res.valid and res.defect is WitnessDefect.UNEQUAL_WORDS

    def test_unequal_lengths(self):
        res = verify_twins(Word.from_text("aaaa"), TwinWitness(((1, 2), (3,))))
        assert not res.valid and res.defect is WitnessDefect.UNEQUAL_WORDS

    def test_bad_indices(self):
        res = verify_twins(Word.from_text("ab"), TwinWitness(((0,), (2,))))
        assert not res.valid and res.defect is WitnessDefect.BAD_INDICES
        res = verify_twins(Word.from_text("abab"), TwinWitness(((3, 1), (2, 4))))
        assert not res.valid and res.defect is WitnessDefect.BAD_INDICES

    def test_zero_length_witness_is_valid(self):
        res = verify_twins(Word.from_text("abc"), TwinWitness.empty(3))
        assert res.valid and res.length == 0

    def test_needs_at_least_two_sets(self):
        with pytest.raises(ValueError):
            TwinWitness(((1,),))

    @given(small_words())
    def test_index_set_permutation_invariance(self, word):
        n = len(word)
        if n < 4:
            return
        wit = TwinWitness(((1, 3), (2, 4)))
        swapped = TwinWitness(((2, 4), (1, 3)))
        assert verify_twins(word, wit).valid == verify_twins(word, swapped).valid

    @given(small_words(max_k=3), st.permutations(range(3)))
    def test_letter_relabel_invariance(self, word, perm):
        if word.k != 3 or len(word) < 4:
            return
        wit = TwinWitness(((1, 2), (3, 4)))
        relabeled = word.relabeled(list(perm))
        assert verify_twins(word, wit) == verify_twins(relabeled, wit)

    def test_valid_witness_obeys_rt_bound(self, example_word, example_witness):
        res = verify_twins(example_word, example_witness)
        assert example_witness.r * res.length <= len(example_word)


class TestWitnessJson:
    def test_round_trip(self, example_witness):
        data = example_witness.to_json()
        assert TwinWitness.from_json(data) == example_witness
        obj = json.loads(data)
        assert obj["r"] == 3 and len(obj["indexSets"]) == 3

    @pytest.mark.parametrize(
        "payload",
        [
            {"indexSets": [[1], [2]]},
            {"r": 3, "indexSets": [[1], [2]]},
            {"r": 2, "indexSets": [[1], "x"]},
            {"r": 2, "indexSets": [[1], [2.5]]},
        ],
    )
    def test_malformed_rejected(self, payload):
        with pytest.raises(ValueError):
            TwinWitness.from_json_obj(payload)
