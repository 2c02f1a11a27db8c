"""One-vs-rest linear SVM trained with Pegasos stochastic subgradient steps.

Probabilities are a softmax over the three margins. They are ranking
scores, not calibrated probabilities.
"""

from __future__ import annotations

import numpy as np

from ..errors import NonFiniteLoss
from .base import N_CLASSES, TrainedModel, softmax, stream

DEFAULTS = {"lambda": 1e-4, "epochs": 50, "projection": True}


class LinearSvmModel(TrainedModel):
    kind = "svm"

    def __init__(self, n_features, weights, bias, training_meta=None):
        super().__init__(n_features, training_meta)
        self.weights = np.asarray(weights, dtype=np.float64)  # (n_classes, n_features)
        self.bias = np.asarray(bias, dtype=np.float64)

    def decision_function(self, X):
        return np.atleast_2d(X) @ self.weights.T + self.bias

    def predict_proba(self, X):
        return softmax(self.decision_function(X))

    def contributions(self, x, cls):
        return self.weights[cls] * x

    def parameters(self):
        return {
            "weights": [[float(v) for v in row] for row in self.weights],
            "bias": [float(b) for b in self.bias],
        }

    @classmethod
    def from_parameters(cls, n_features, params, training_meta):
        w = np.asarray(params["weights"], dtype=np.float64).reshape(N_CLASSES, n_features)
        return cls(n_features, w, params["bias"], training_meta)


def _hinge_objective(w, Xa, s, lam):
    margins = s * (Xa @ w)
    return 0.5 * lam * float(w @ w) + float(np.mean(np.maximum(0.0, 1.0 - margins)))


def fit(X: np.ndarray, y: np.ndarray, hyper: dict, seed: int) -> LinearSvmModel:
    n, d = X.shape
    lam = float(hyper["lambda"])
    epochs = int(hyper["epochs"])
    # constant column carries the (regularized) bias
    Xa = np.hstack([X, np.ones((n, 1))])
    orders = [stream(seed, 2, e).permutation(n) for e in range(epochs)]
    radius = 1.0 / np.sqrt(lam)
    W = np.zeros((N_CLASSES, d + 1))
    objectives = []
    for k in range(N_CLASSES):
        s = np.where(y == k, 1.0, -1.0)
        w = np.zeros(d + 1)
        t = 0
        for order in orders:
            for i in order:
                t += 1
                eta = 1.0 / (lam * t)
                violated = s[i] * (w @ Xa[i]) < 1.0
                w *= 1.0 - eta * lam
                if violated:
                    w += (eta * s[i]) * Xa[i]
                if hyper["projection"]:
                    norm = np.sqrt(w @ w)
                    if norm > radius:
                        w *= radius / norm
        obj = _hinge_objective(w, Xa, s, lam)
        if not np.isfinite(obj):
            raise NonFiniteLoss(f"svm objective for class {k} became {obj}")
        objectives.append(obj)
        W[k] = w
    meta = {"rounds": epochs, "final_loss": float(np.mean(objectives)), "class_objectives": objectives}
    return LinearSvmModel(d, W[:, :d], W[:, d], meta)
