import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verdictpipe.errors import ConfigError
from verdictpipe.textprep import PrepConfig, default_stopwords, ngrams, normalize

RAW = PrepConfig(stemmer="none")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("The appeal is DISMISSED with costs of Rs. 5000.", ["appeal", "dismiss", "cost"]),
        ("", []),
        ("a an 42 .", []),
        ("rs5000", []),
        ("well-founded claim's", ["well", "found", "claim"]),
    ],
)
def test_normalize_examples(text, expected):
    assert normalize(text) == expected


def test_stopword_list_has_179_lowercase_entries():
    words = default_stopwords()
    assert len(words) == 179
    assert all(w == w.lower() and not any(c.isdigit() for c in w) for w in words)


def test_stopwords_removed_before_stemming():
    # "doing" is a stopword; stemming first would give "do", which is too short anyway,
    # but "having" -> "have" would survive a post-stem check.
    assert normalize("having doing", RAW) == []


@given(st.text())
@settings(max_examples=300)
def test_token_invariants_on_arbitrary_text(text):
    cfg = PrepConfig()
    for tok in normalize(text, cfg):
        assert len(tok) >= cfg.min_token_len
        assert set(tok) <= set(string.ascii_lowercase)
        assert tok not in cfg.stopwords


@given(st.text())
@settings(max_examples=200)
def test_renormalizing_unstemmed_output_is_identity(text):
    toks = normalize(text, RAW)
    assert normalize(" ".join(toks), RAW) == toks


@given(st.text())
@settings(max_examples=200)
def test_renormalizing_stemmed_output_stays_clean(text):
    again = normalize(" ".join(normalize(text)))
    assert all(set(t) <= set(string.ascii_lowercase) for t in again)


def test_ngrams_example():
    bag = ngrams(["appeal", "allow", "cost"], 4)
    assert bag == {
        "appeal": 1,
        "allow": 1,
        "cost": 1,
        "appeal_allow": 1,
        "allow_cost": 1,
        "appeal_allow_cost": 1,
    }


def test_ngrams_empty_and_bigram_count():
    assert ngrams([], 4) == {}
    assert sum(ngrams(list("abcde"), 2).values()) == 9


@pytest.mark.parametrize("n_max", [1, 2, 3, 4])
@pytest.mark.parametrize("T", range(0, 51))
def test_ngram_occurrence_formula(T, n_max):
    toks = [f"w{i % 7}" for i in range(T)]
    expected = sum(T - n + 1 for n in range(1, min(n_max, T) + 1))
    assert sum(ngrams(toks, n_max).values()) == expected


def test_ngram_duplicates_accumulate():
    assert ngrams(["x", "x", "x"], 2) == {"x": 3, "x_x": 2}


@pytest.mark.parametrize("kwargs", [{"ngram_max": 0}, {"ngram_max": 5}, {"min_token_len": 0}, {"stemmer": "lancaster"}])
def test_invalid_config_rejected(kwargs):
    with pytest.raises((ConfigError, ValueError)):
        PrepConfig(**kwargs)


def test_config_round_trip():
    cfg = PrepConfig(min_token_len=4, ngram_max=2, stemmer="none")
    assert PrepConfig.from_dict(cfg.to_dict()) == cfg
    assert PrepConfig().to_dict()["stopwords"] == "default"
