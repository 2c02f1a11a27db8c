"""Random forest of Gini trees with bootstrap and sqrt feature subsampling."""

from __future__ import annotations

import math

import numpy as np

from .base import N_CLASSES, TrainedModel, stream
from .tree import Tree, build_gini_tree

DEFAULTS = {
    "n_trees": 200,
    "max_depth": None,
    "max_features": "sqrt",
    "bootstrap": True,
    "min_samples_leaf": 1,
}


def _n_features_per_node(spec, d: int) -> int:
    if spec == "sqrt":
        return max(1, int(math.sqrt(d)))
    if spec in (None, "all"):
        return d
    if isinstance(spec, float):
        return max(1, int(spec * d))
    return max(1, min(d, int(spec)))


class ForestModel(TrainedModel):
    kind = "rf"

    def __init__(self, n_features, trees, training_meta=None):
        super().__init__(n_features, training_meta)
        self.trees: list[Tree] = trees

    def _votes(self, X):
        votes = np.zeros((X.shape[0], N_CLASSES))
        rows = np.arange(X.shape[0])
        for tree in self.trees:
            # argmax takes the lowest class index on tied leaf counts
            winner = np.argmax(tree.value[tree.apply(X)], axis=1)
            votes[rows, winner] += 1.0
        return votes

    def predict_proba(self, X):
        X = np.atleast_2d(X)
        return self._votes(X) / len(self.trees)

    def contributions(self, x, cls):
        """Path attribution on the class-``cls`` node fraction, averaged over trees."""
        out = np.zeros(self.n_features)
        for tree in self.trees:
            frac = tree.value[:, cls] / tree.value.sum(axis=1)
            path = tree.path(x)
            for parent, child in zip(path[:-1], path[1:]):
                out[tree.feature[parent]] += frac[child] - frac[parent]
        return out / len(self.trees)

    def parameters(self):
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def from_parameters(cls, n_features, params, training_meta):
        trees = [Tree.from_dict(t) for t in params["trees"]]
        for t in trees:
            t.validate(n_features)
        return cls(n_features, trees, training_meta)


def fit(X: np.ndarray, y: np.ndarray, hyper: dict, seed: int) -> ForestModel:
    n, d = X.shape
    k = _n_features_per_node(hyper["max_features"], d)
    trees = []
    for t in range(int(hyper["n_trees"])):
        rng = stream(seed, 1, t)
        rows = rng.integers(0, n, n) if hyper["bootstrap"] else np.arange(n)
        rows = np.sort(rows)
        trees.append(
            build_gini_tree(
                X[rows],
                y[rows],
                N_CLASSES,
                rng,
                max_features=k,
                max_depth=hyper["max_depth"],
                min_samples_leaf=int(hyper["min_samples_leaf"]),
            )
        )
    depths = [tr.depth() for tr in trees]
    meta = {"rounds": len(trees), "max_tree_depth": max(depths), "final_loss": None}
    return ForestModel(d, trees, meta)
