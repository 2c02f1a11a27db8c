"""Multiclass gradient boosting on the softmax log-loss."""

from __future__ import annotations

import numpy as np

from ..errors import NonFiniteLoss
from .base import N_CLASSES, TrainedModel, log_loss, softmax
from .tree import Tree, build_regression_tree, presort

DEFAULTS = {
    "n_rounds": 100,
    "learning_rate": 0.1,
    "max_depth": 6,
    "min_child_weight": 1.0,
    "reg_lambda": 1.0,
}

_PRIOR_FLOOR = 1e-6


class GbtModel(TrainedModel):
    kind = "gbt"

    def __init__(self, n_features, base_score, trees, constant_class=None, training_meta=None):
        super().__init__(n_features, training_meta)
        self.base_score = np.asarray(base_score, dtype=np.float64)
        # trees[r][k]: round r, class k
        self.trees: list[list[Tree]] = trees
        self.constant_class = constant_class

    def raw_scores(self, X: np.ndarray) -> np.ndarray:
        F = np.tile(self.base_score, (X.shape[0], 1))
        for round_trees in self.trees:
            for k, tree in enumerate(round_trees):
                F[:, k] += tree.value[tree.apply(X)]
        return F

    def predict_proba(self, X):
        X = np.atleast_2d(X)
        if self.constant_class is not None:
            out = np.zeros((X.shape[0], N_CLASSES))
            out[:, self.constant_class] = 1.0
            return out
        return softmax(self.raw_scores(X))

    def contributions(self, x, cls):
        """Path attribution on the class-``cls`` raw score.

        Each split on the path credits its feature with the change in node
        value from parent to child, summed over all rounds.
        """
        out = np.zeros(self.n_features)
        for round_trees in self.trees:
            tree = round_trees[cls]
            path = tree.path(x)
            for parent, child in zip(path[:-1], path[1:]):
                out[tree.feature[parent]] += tree.value[child] - tree.value[parent]
        return out

    def parameters(self):
        return {
            "base_score": [float(v) for v in self.base_score],
            "constant_class": self.constant_class,
            "trees": [[t.to_dict() for t in rt] for rt in self.trees],
        }

    @classmethod
    def from_parameters(cls, n_features, params, training_meta):
        trees = [[Tree.from_dict(t) for t in rt] for rt in params["trees"]]
        for rt in trees:
            for t in rt:
                t.validate(n_features)
        return cls(n_features, params["base_score"], trees, params["constant_class"], training_meta)


def fit(X: np.ndarray, y: np.ndarray, hyper: dict, seed: int) -> GbtModel:
    n, d = X.shape
    present = np.unique(y)
    if present.size == 1:
        base = np.zeros(N_CLASSES)
        return GbtModel(d, base, [], int(present[0]), {"rounds": 0, "loss_history": [0.0]})

    prior = np.bincount(y, minlength=N_CLASSES) / n
    base = np.log(np.maximum(prior, _PRIOR_FLOOR))
    Y = np.eye(N_CLASSES)[y]
    F = np.tile(base, (n, 1))
    history = [log_loss(softmax(F), y)]
    rounds = []
    sorted_cols = presort(X)
    for _ in range(int(hyper["n_rounds"])):
        P = softmax(F)
        grad = P - Y
        hess = np.maximum(P * (1.0 - P), 1e-16)
        round_trees = []
        for k in range(N_CLASSES):
            tree = build_regression_tree(
                X,
                grad[:, k],
                hess[:, k],
                max_depth=int(hyper["max_depth"]),
                min_child_weight=float(hyper["min_child_weight"]),
                reg_lambda=float(hyper["reg_lambda"]),
                learning_rate=float(hyper["learning_rate"]),
                presorted=sorted_cols,
            )
            round_trees.append(tree)
        # all K trees fit the same gradient snapshot before scores move
        for k, tree in enumerate(round_trees):
            F[:, k] += tree.value[tree.apply(X)]
        loss = log_loss(softmax(F), y)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"gbt training loss became {loss}")
        history.append(loss)
        rounds.append(round_trees)
    meta = {"rounds": len(rounds), "final_loss": history[-1], "loss_history": history}
    return GbtModel(d, base, rounds, None, meta)
