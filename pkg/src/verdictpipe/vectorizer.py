"""Document-frequency-pruned n-gram vocabulary and TF-IDF vectors."""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyCorpus, EmptyDataset, EmptyVocabulary, IoFailure
from .labeler import Disposition


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    df: np.ndarray  # int64, aligned with terms
    idf: np.ndarray  # float64, aligned with terms
    corpus_size: int
    min_df_ratio: float = 0.10
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def to_dict(self) -> dict:
        return {
            "terms": list(self.terms),
            "df": [int(x) for x in self.df],
            "idf": [float(x) for x in self.idf],
            "min_df_ratio": self.min_df_ratio,
            "corpus_size": self.corpus_size,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Vocabulary":
        return cls(
            terms=tuple(d["terms"]),
            df=np.asarray(d["df"], dtype=np.int64),
            idf=np.asarray(d["idf"], dtype=np.float64),
            corpus_size=int(d["corpus_size"]),
            min_df_ratio=float(d["min_df_ratio"]),
        )


def smoothed_idf(df, n_docs: int):
    """ln((1 + N) / (1 + df)) + 1."""
    return np.log((1.0 + n_docs) / (1.0 + np.asarray(df, dtype=np.float64))) + 1.0


def min_df_count(min_df_ratio: float, n_docs: int) -> int:
    # guard float noise such as 0.1 * 30 = 3.0000000000000004
    return math.ceil(round(min_df_ratio * n_docs, 9))


def build_vocabulary(bags: Sequence[Counter], min_df_ratio: float = 0.10) -> Vocabulary:
    """Keep n-grams present in at least ceil(min_df_ratio * N) documents."""
    if not bags:
        raise EmptyCorpus("cannot build a vocabulary from zero documents")
    if not 0.0 < min_df_ratio <= 1.0:
        raise ValueError(f"min_df_ratio must be in (0, 1], got {min_df_ratio}")
    n = len(bags)
    df: Counter = Counter()
    for bag in bags:
        df.update(bag.keys())
    threshold = min_df_count(min_df_ratio, n)
    terms = tuple(sorted(t for t, c in df.items() if c >= threshold))
    if not terms:
        raise EmptyVocabulary(
            f"no term reaches df >= {threshold} of {n} documents; lower min_df_ratio"
        )
    dfs = np.array([df[t] for t in terms], dtype=np.int64)
    return Vocabulary(terms, dfs, smoothed_idf(dfs, n), n, min_df_ratio)


@dataclass(frozen=True)
class FeatureVector:
    """Sparse L2-normalized TF-IDF vector; ``indices`` ascending."""

    indices: np.ndarray
    values: np.ndarray
    l2_norm: float = 0.0  # norm before normalization

    def __len__(self) -> int:
        return len(self.indices)

    def as_dict(self) -> dict[int, float]:
        return {int(i): float(v) for i, v in zip(self.indices, self.values)}

    def dense(self, n_features: int) -> np.ndarray:
        x = np.zeros(n_features)
        x[self.indices] = self.values
        return x

    @classmethod
    def from_dense(cls, x) -> "FeatureVector":
        x = np.asarray(x, dtype=np.float64)
        idx = np.flatnonzero(x)
        return cls(idx.astype(np.int64), x[idx].copy(), float(np.linalg.norm(x)))


def vectorize(bag: Counter, vocab: Vocabulary) -> FeatureVector:
    """count * idf for in-vocabulary terms, then L2-normalize."""
    hits = sorted((vocab.index[t], c) for t, c in bag.items() if t in vocab.index)
    if not hits:
        return FeatureVector(np.zeros(0, np.int64), np.zeros(0), 0.0)
    idx = np.fromiter((i for i, _ in hits), dtype=np.int64, count=len(hits))
    tf = np.fromiter((c for _, c in hits), dtype=np.float64, count=len(hits))
    w = tf * vocab.idf[idx]
    norm = float(np.sqrt(np.dot(w, w)))
    return FeatureVector(idx, w / norm, norm)


@dataclass
class Dataset:
    vectors: list[FeatureVector]
    labels: list[Disposition]
    feature_names: tuple[str, ...]
    doc_ids: list[str]

    def __post_init__(self):
        if not (len(self.vectors) == len(self.labels) == len(self.doc_ids)):
            raise ValueError("vectors, labels and doc_ids must have equal length")
        self.labels = [Disposition(y) for y in self.labels]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def X(self) -> np.ndarray:
        """Dense (n_samples, n_features) design matrix."""
        out = np.zeros((len(self), self.n_features))
        for r, v in enumerate(self.vectors):
            out[r, v.indices] = v.values
        return out

    def y(self) -> np.ndarray:
        return np.array([int(lab) for lab in self.labels], dtype=np.int64)

    def subset(self, rows: Iterable[int]) -> "Dataset":
        rows = list(rows)
        return Dataset(
            [self.vectors[r] for r in rows],
            [self.labels[r] for r in rows],
            self.feature_names,
            [self.doc_ids[r] for r in rows],
        )


def _fmt(x: float) -> str:
    return "0" if x == 0 else f"{x:.6g}"


def export_csv(ds: Dataset, path) -> None:
    """Dense CSV: feature columns then ``label``; weights at 6 significant digits."""
    if len(ds) == 0:
        raise EmptyDataset("nothing to export")
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([*ds.feature_names, "label"])
            for v, lab in zip(ds.vectors, ds.labels):
                row = ["0"] * ds.n_features
                for i, val in zip(v.indices, v.values):
                    row[i] = _fmt(float(val))
                row.append(lab.label)
                w.writerow(row)
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def read_csv(path) -> tuple[tuple[str, ...], np.ndarray, list[Disposition]]:
    """Parse an exported CSV into (feature_names, dense X, labels)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    if not rows or rows[0][-1] != "label":
        raise IoFailure(f"{path}: missing header ending in 'label'")
    names = tuple(rows[0][:-1])
    X = np.array([[float(c) for c in r[:-1]] for r in rows[1:]], dtype=np.float64)
    X = X.reshape(len(rows) - 1, len(names))
    labels = [Disposition.parse(r[-1]) for r in rows[1:]]
    return names, X, labels
