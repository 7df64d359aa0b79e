import pytest

from twins import Word, TwinWitness


# 27-letter ternary word with documented 3-twins of length 5 (each reading
# "aabcc"); reused across core, solver and construction tests.
EXAMPLE_WORD_TEXT = "baacacbbabcacacabbcbacccbab"
EXAMPLE_WITNESS = TwinWitness(
    (
        (2, 3, 8, 11, 19),
        (5, 9, 10, 13, 23),
        (12, 16, 20, 22, 24),
    )
)


@pytest.fixture(scope="session")
def example_word() -> Word:
    return Word.from_text(EXAMPLE_WORD_TEXT, k=3)


@pytest.fixture(scope="session")
def example_witness() -> TwinWitness:
    return EXAMPLE_WITNESS


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    from twins import kernels

    kernels.warmup()
