"""Classifier training, prediction and persistence."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyDataset, SingleClassDataset, UnknownHyperparameter
from ..vectorizer import Dataset, FeatureVector
from . import forest, gbt, mlp, svm
from .base import N_CLASSES, TrainedModel, softmax
from .forest import ForestModel
from .gbt import GbtModel
from .mlp import MlpModel
from .svm import LinearSvmModel

KINDS = {
    "gbt": (gbt, GbtModel),
    "rf": (forest, ForestModel),
    "svm": (svm, LinearSvmModel),
    "mlp": (mlp, MlpModel),
}

# accepted spellings of the four kinds
_ALIASES = {
    "gbt": "gbt", "xgboost": "gbt", "gradient_boosting": "gbt",
    "rf": "rf", "randomforest": "rf", "random_forest": "rf",
    "svm": "svm", "linearsvm": "svm", "linear_svm": "svm",
    "mlp": "mlp", "nn": "mlp", "neural_network": "mlp",
}

DEFAULT_SEED = 20211001


@dataclass(frozen=True)
class LearnerSpec:
    kind: str = "gbt"
    hyper: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        kind = _ALIASES.get(str(self.kind).lower())
        if kind is None:
            raise ValueError(f"unknown learner kind {self.kind!r}; choose from {sorted(KINDS)}")
        defaults = KINDS[kind][0].DEFAULTS
        unknown = set(self.hyper) - set(defaults)
        if unknown:
            raise UnknownHyperparameter(
                f"unknown {kind} hyperparameters {sorted(unknown)}; known: {sorted(defaults)}"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "hyper", {**defaults, **self.hyper})
        object.__setattr__(self, "seed", int(self.seed))


def _canonical_order(ds: Dataset) -> list[int]:
    # training sees rows sorted by doc_id, so row order in ds never matters
    return sorted(range(len(ds)), key=lambda r: ds.doc_ids[r])


def train(ds: Dataset, spec: LearnerSpec | None = None) -> TrainedModel:
    """Fit one classifier of ``spec.kind`` on ``ds``."""
    spec = spec or LearnerSpec()
    if len(ds) == 0:
        raise EmptyDataset("cannot train on an empty dataset")
    if ds.n_features == 0:
        raise EmptyDataset("dataset has no features")
    ordered = ds.subset(_canonical_order(ds))
    X, y = ordered.X(), ordered.y()
    if np.unique(y).size < 2 and spec.kind in ("svm", "mlp"):
        raise SingleClassDataset(f"{spec.kind} needs at least two classes in the training data")
    module = KINDS[spec.kind][0]
    model = module.fit(X, y, spec.hyper, spec.seed)
    model.training_meta["seed"] = spec.seed
    model.training_meta["hyper"] = dict(spec.hyper)
    model.training_meta["n_samples"] = len(ds)
    return model


def as_matrix(v, n_features: int) -> np.ndarray:
    if isinstance(v, FeatureVector):
        return v.dense(n_features)[None, :]
    return np.atleast_2d(np.asarray(v, dtype=np.float64))


def predict_proba(model: TrainedModel, v) -> np.ndarray:
    """Class probabilities for a FeatureVector (shape (3,)) or a dense matrix (n, 3)."""
    p = model.predict_proba(as_matrix(v, model.n_features))
    return p[0] if isinstance(v, FeatureVector) else p


def model_from_dict(d: dict) -> TrainedModel:
    kind = d["kind"]
    if kind not in KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    cls = KINDS[kind][1]
    model = cls.from_parameters(int(d["n_features"]), d["parameters"], dict(d["training_meta"]))
    if tuple(d["class_names"]) != model.class_names:
        raise ValueError(f"class_names {d['class_names']} do not match {model.class_names}")
    return model


__all__ = [
    "DEFAULT_SEED",
    "ForestModel",
    "GbtModel",
    "KINDS",
    "LearnerSpec",
    "LinearSvmModel",
    "MlpModel",
    "N_CLASSES",
    "TrainedModel",
    "model_from_dict",
    "predict_proba",
    "softmax",
    "train",
]
