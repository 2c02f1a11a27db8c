"""Glue between ingestion, featurization and training."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .bundle import ModelBundle
from .corpus import CaseDocument
from .errors import EmptyDataset
from .labeler import LabelerConfig, feature_text
from .learners import LearnerSpec, train
from .textprep import PrepConfig, ngrams, normalize
from .vectorizer import Dataset, Vocabulary, build_vocabulary, vectorize


def bag_of(text: str, prep: PrepConfig, labeler: LabelerConfig) -> Counter:
    return ngrams(normalize(feature_text(text, labeler), prep), prep.ngram_max)


def labeled_only(docs: Sequence[CaseDocument]) -> list[CaseDocument]:
    return [d for d in docs if d.label is not None]


def fit_vocabulary(docs, prep, labeler, min_df_ratio) -> Vocabulary:
    return build_vocabulary([bag_of(d.raw_text, prep, labeler) for d in docs], min_df_ratio)


def make_dataset(docs: Sequence[CaseDocument], vocab: Vocabulary, prep, labeler) -> Dataset:
    docs = labeled_only(docs)
    if not docs:
        raise EmptyDataset("no labeled documents")
    vectors = [vectorize(bag_of(d.raw_text, prep, labeler), vocab) for d in docs]
    return Dataset(vectors, [d.label for d in docs], vocab.terms, [d.doc_id for d in docs])


def build_dataset(
    docs: Sequence[CaseDocument],
    prep: PrepConfig | None = None,
    labeler: LabelerConfig | None = None,
    min_df_ratio: float = 0.10,
) -> tuple[Dataset, Vocabulary]:
    """Fit a vocabulary on the labeled documents and vectorize them."""
    prep = prep or PrepConfig()
    labeler = labeler or LabelerConfig()
    docs = labeled_only(docs)
    if not docs:
        raise EmptyDataset("no labeled documents")
    vocab = fit_vocabulary(docs, prep, labeler, min_df_ratio)
    return make_dataset(docs, vocab, prep, labeler), vocab


def fit_bundle(
    docs: Sequence[CaseDocument],
    spec: LearnerSpec | None = None,
    prep: PrepConfig | None = None,
    labeler: LabelerConfig | None = None,
    min_df_ratio: float = 0.10,
) -> ModelBundle:
    prep = prep or PrepConfig()
    labeler = labeler or LabelerConfig()
    ds, vocab = build_dataset(docs, prep, labeler, min_df_ratio)
    return ModelBundle(prep, labeler, vocab, train(ds, spec))
