from __future__ import annotations

import numpy as np

from ..labeler import CLASS_NAMES

N_CLASSES = len(CLASS_NAMES)


def softmax(z: np.ndarray) -> np.ndarray:
    z = np.atleast_2d(z)
    e = np.exp(z - z.max(axis=1, keepdims=True))
    return e / e.sum(axis=1, keepdims=True)


def log_loss(proba: np.ndarray, y: np.ndarray) -> float:
    p = np.clip(proba[np.arange(len(y)), y], 1e-300, None)
    return float(-np.mean(np.log(p)))


def stream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for the stream identified by (seed, *key)."""
    ss = np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, *key])
    return np.random.Generator(np.random.Philox(ss))


class TrainedModel:
    """Interface shared by the four classifier families.

    Subclasses hold their parameters as numpy arrays and implement
    ``predict_proba`` on a dense (n_samples, n_features) matrix,
    ``contributions`` for one dense sample and a given class, and the
    ``parameters`` / ``from_parameters`` pair used by bundle files.
    """

    kind: str = ""
    class_names: tuple[str, ...] = CLASS_NAMES

    def __init__(self, n_features: int, training_meta: dict | None = None):
        self.n_features = n_features
        self.training_meta = dict(training_meta or {})

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)

    def contributions(self, x: np.ndarray, cls: int) -> np.ndarray:
        raise NotImplementedError

    def parameters(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_parameters(cls, n_features: int, params: dict, training_meta: dict):
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "class_names": list(self.class_names),
            "n_features": self.n_features,
            "parameters": self.parameters(),
            "training_meta": self.training_meta,
        }
