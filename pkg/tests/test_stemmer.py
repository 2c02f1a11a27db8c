from pathlib import Path

import pytest

from verdictpipe.stemmer import stem

REFERENCE = Path(__file__).parent / "data" / "porter_reference.tsv"


def reference_pairs():
    with open(REFERENCE, encoding="utf-8") as fh:
        return [tuple(line.rstrip("\n").split("\t")) for line in fh if line.strip()]


@pytest.mark.parametrize(
    "word, expected",
    [("caresses", "caress"), ("relational", "relat"), ("sky", "sky"), ("dismissed", "dismiss"), ("costs", "cost")],
)
def test_known_stems(word, expected):
    assert stem(word) == expected


def test_reference_vocabulary_size():
    assert len(reference_pairs()) >= 1000


def test_reference_vocabulary_agrees():
    wrong = [(w, s, stem(w)) for w, s in reference_pairs() if stem(w) != s]
    assert wrong == []


@pytest.mark.parametrize("word", ["a", "is", "as"])
def test_short_words_unchanged(word):
    assert stem(word) == word
