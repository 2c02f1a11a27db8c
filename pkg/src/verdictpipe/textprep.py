"""Text normalization and n-gram generation."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import ConfigError
from .stemmer import stem

__all__ = [
    "PrepConfig",
    "default_stopwords",
    "load_stopwords",
    "normalize",
    "ngrams",
    "stem",
]

STEMMERS = ("porter", "none")

_NON_ALNUM = re.compile(r"[^0-9a-z]", re.UNICODE)
_DIGITS = re.compile(r"[0-9]")


def load_stopwords(path) -> frozenset[str]:
    """Read a one-word-per-line stopword file; blank lines and ``#`` comments skipped."""
    with open(path, encoding="utf-8") as fh:
        return _parse_stopwords(fh.read())


def _parse_stopwords(text: str) -> frozenset[str]:
    words = (ln.strip().lower() for ln in text.splitlines())
    return frozenset(w for w in words if w and not w.startswith("#"))


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("verdictpipe").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return _parse_stopwords(text)


@dataclass(frozen=True)
class PrepConfig:
    min_token_len: int = 3
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    ngram_max: int = 4
    stemmer: str = "porter"

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ConfigError(f"min_token_len must be >= 1, got {self.min_token_len}")
        if self.ngram_max not in (1, 2, 3, 4):
            raise ConfigError(f"ngram_max must be in 1..4, got {self.ngram_max}")
        if self.stemmer not in STEMMERS:
            raise ConfigError(f"stemmer must be one of {STEMMERS}, got {self.stemmer!r}")
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        for w in self.stopwords:
            if w != w.lower() or _DIGITS.search(w):
                raise ConfigError(f"stopword {w!r} must be lowercase and digit-free")

    def to_dict(self) -> dict:
        # the bundled list is stored by reference to keep bundles small
        sw = "default" if self.stopwords == default_stopwords() else sorted(self.stopwords)
        return {
            "min_token_len": self.min_token_len,
            "stopwords": sw,
            "ngram_max": self.ngram_max,
            "stemmer": self.stemmer,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PrepConfig":
        unknown = set(d) - {"min_token_len", "stopwords", "ngram_max", "stemmer"}
        if unknown:
            raise ConfigError(f"unknown prep_config keys: {sorted(unknown)}")
        kw = dict(d)
        sw = kw.pop("stopwords", "default")
        stopwords = default_stopwords() if sw == "default" else frozenset(sw)
        return cls(stopwords=stopwords, **kw)


def normalize(raw_text: str, cfg: PrepConfig | None = None) -> list[str]:
    """Lowercase, strip punctuation and digits, split, filter and stem.

    Steps run in a fixed order: lowercase, non-alphanumerics to spaces,
    digit deletion, whitespace split, short-token filter, stopword filter
    (on the unstemmed word), stemming. Stems that come out shorter than
    ``min_token_len`` are dropped as well.

    >>> normalize("The appeal is DISMISSED with costs of Rs. 5000.")
    ['appeal', 'dismiss', 'cost']
    """
    cfg = cfg or PrepConfig()
    text = raw_text.lower()
    # str.lower can emit non-ASCII letters; anything outside [0-9a-z] is punctuation here
    text = _NON_ALNUM.sub(" ", text)
    text = _DIGITS.sub("", text)
    out = []
    for tok in text.split():
        if len(tok) < cfg.min_token_len or tok in cfg.stopwords:
            continue
        if cfg.stemmer == "porter":
            tok = stem(tok)
            # stemming can shorten a word below the minimum ("ties" -> "ti")
            if len(tok) < cfg.min_token_len:
                continue
        out.append(tok)
    return out


def ngrams(tokens: list[str], ngram_max: int = 4) -> Counter:
    """Count contiguous 1..ngram_max-grams, keyed by tokens joined with ``_``."""
    if not 1 <= ngram_max <= 4:
        raise ValueError(f"ngram_max must be in 1..4, got {ngram_max}")
    bag: Counter = Counter()
    T = len(tokens)
    for n in range(1, min(ngram_max, T) + 1):
        for i in range(T - n + 1):
            bag["_".join(tokens[i : i + n])] += 1
    return bag
