"""One-hidden-layer ReLU network with a softmax output."""

from __future__ import annotations

import numpy as np

from ..errors import NonFiniteLoss
from .base import N_CLASSES, TrainedModel, softmax, stream

DEFAULTS = {"hidden": 64, "learning_rate": 0.05, "epochs": 200, "batch_size": 32}

PARAM_NAMES = ("W1", "b1", "W2", "b2")


def forward(params: dict, X: np.ndarray):
    H_pre = X @ params["W1"] + params["b1"]
    H = np.maximum(H_pre, 0.0)
    logits = H @ params["W2"] + params["b2"]
    return H_pre, H, logits


def loss_and_grad(params: dict, X: np.ndarray, y: np.ndarray) -> tuple[float, dict]:
    """Mean cross-entropy and its exact gradient for every parameter array."""
    n = X.shape[0]
    H_pre, H, logits = forward(params, X)
    z = logits - logits.max(axis=1, keepdims=True)
    log_p = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
    loss = float(-log_p[np.arange(n), y].mean())
    d_logits = np.exp(log_p)
    d_logits[np.arange(n), y] -= 1.0
    d_logits /= n
    dH = d_logits @ params["W2"].T
    dH_pre = dH * (H_pre > 0)
    grads = {
        "W2": H.T @ d_logits,
        "b2": d_logits.sum(axis=0),
        "W1": X.T @ dH_pre,
        "b1": dH_pre.sum(axis=0),
    }
    return loss, grads


def init_params(n_features: int, hidden: int, rng: np.random.Generator) -> dict:
    """Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases."""
    a1 = 1.0 / np.sqrt(n_features)
    a2 = 1.0 / np.sqrt(hidden)
    return {
        "W1": rng.uniform(-a1, a1, (n_features, hidden)),
        "b1": rng.uniform(-a1, a1, hidden),
        "W2": rng.uniform(-a2, a2, (hidden, N_CLASSES)),
        "b2": rng.uniform(-a2, a2, N_CLASSES),
    }


class MlpModel(TrainedModel):
    kind = "mlp"

    def __init__(self, n_features, params, training_meta=None):
        super().__init__(n_features, training_meta)
        self.params = {k: np.asarray(params[k], dtype=np.float64) for k in PARAM_NAMES}

    def predict_proba(self, X):
        return softmax(forward(self.params, np.atleast_2d(X))[2])

    def contributions(self, x, cls):
        """Gradient of the class-``cls`` logit with respect to the input, times the input."""
        H_pre = x @ self.params["W1"] + self.params["b1"]
        grad = self.params["W1"] @ (self.params["W2"][:, cls] * (H_pre > 0))
        return grad * x

    def parameters(self):
        return {k: self.params[k].tolist() for k in PARAM_NAMES}

    @classmethod
    def from_parameters(cls, n_features, params, training_meta):
        p = {k: np.asarray(params[k], dtype=np.float64) for k in PARAM_NAMES}
        if p["W1"].shape[0] != n_features:
            raise ValueError("W1 does not match the vocabulary size")
        return cls(n_features, p, training_meta)


def fit(X: np.ndarray, y: np.ndarray, hyper: dict, seed: int) -> MlpModel:
    n, d = X.shape
    params = init_params(d, int(hyper["hidden"]), stream(seed, 3, 0))
    lr = float(hyper["learning_rate"])
    bs = int(hyper["batch_size"])
    history = []
    for epoch in range(int(hyper["epochs"])):
        order = stream(seed, 3, epoch + 1).permutation(n)
        for start in range(0, n, bs):
            rows = order[start : start + bs]
            _, grads = loss_and_grad(params, X[rows], y[rows])
            for k in PARAM_NAMES:
                params[k] -= lr * grads[k]
        loss, _ = loss_and_grad(params, X, y)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"mlp loss became {loss} at epoch {epoch}")
        history.append(loss)
    meta = {"rounds": len(history), "final_loss": history[-1] if history else None}
    return MlpModel(d, params, meta)
