"""Binary decision trees stored as flat node arrays.

A node ``i`` is a leaf when ``feature[i] == -1``. Internal nodes send a
sample left when ``x[feature] <= threshold``. Thresholds are midpoints
between distinct observed values, and feature values are non-negative, so
absent (zero) features always take the left branch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LEAF = -1


@dataclass(frozen=True)
class Tree:
    feature: np.ndarray  # int64
    threshold: np.ndarray  # float64
    left: np.ndarray  # int64
    right: np.ndarray  # int64
    value: np.ndarray  # (n_nodes,) for regression, (n_nodes, n_classes) for class counts

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by each row of X."""
        node = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        active = self.feature[node] != LEAF
        while active.any():
            r = rows[active]
            nd = node[r]
            go_left = X[r, self.feature[nd]] <= self.threshold[nd]
            node[r] = np.where(go_left, self.left[nd], self.right[nd])
            active[r] = self.feature[node[r]] != LEAF
        return node

    def path(self, x: np.ndarray) -> list[int]:
        """Node ids visited by a single dense sample, root first."""
        out = [0]
        n = 0
        while self.feature[n] != LEAF:
            n = self.left[n] if x[self.feature[n]] <= self.threshold[n] else self.right[n]
            out.append(int(n))
        return out

    def depth(self) -> int:
        best, stack = 0, [(0, 0)]
        while stack:
            n, d = stack.pop()
            best = max(best, d)
            if self.feature[n] != LEAF:
                stack.append((self.left[n], d + 1))
                stack.append((self.right[n], d + 1))
        return best

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": [float(t) for t in self.threshold],
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        t = cls(
            np.asarray(d["feature"], dtype=np.int64),
            np.asarray(d["threshold"], dtype=np.float64),
            np.asarray(d["left"], dtype=np.int64),
            np.asarray(d["right"], dtype=np.int64),
            np.asarray(d["value"], dtype=np.float64),
        )
        t.validate()
        return t

    def validate(self, n_features: int | None = None) -> None:
        n = self.n_nodes
        if n == 0:
            raise ValueError("empty tree")
        if not (len(self.threshold) == len(self.left) == len(self.right) == len(self.value) == n):
            raise ValueError("node arrays differ in length")
        internal = self.feature != LEAF
        kids = np.concatenate([self.left[internal], self.right[internal]])
        # children always come after their parent, which rules out cycles
        parents = np.concatenate([np.flatnonzero(internal)] * 2)
        if kids.size and (kids.max() >= n or np.any(kids <= parents)):
            raise ValueError("invalid child index")
        if np.unique(kids).size != kids.size:
            raise ValueError("node with two parents")
        if n_features is not None and internal.any() and self.feature[internal].max() >= n_features:
            raise ValueError("feature index out of range")


class _Builder:
    def __init__(self):
        self.feature, self.threshold, self.left, self.right, self.value = [], [], [], [], []

    def add(self, value) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.value.append(value)
        return len(self.feature) - 1

    def split(self, node, feature, threshold, left, right):
        self.feature[node] = feature
        self.threshold[node] = threshold
        self.left[node] = left
        self.right[node] = right

    def finish(self) -> Tree:
        return Tree(
            np.asarray(self.feature, dtype=np.int64),
            np.asarray(self.threshold, dtype=np.float64),
            np.asarray(self.left, dtype=np.int64),
            np.asarray(self.right, dtype=np.int64),
            np.asarray(self.value, dtype=np.float64),
        )


def _sorted_columns(Xn: np.ndarray, cols: np.ndarray):
    sub = Xn[:, cols]
    order = np.argsort(sub, axis=0, kind="stable")
    return order, np.take_along_axis(sub, order, axis=0)


def _nonconstant(Xn: np.ndarray, cols: np.ndarray) -> np.ndarray:
    if cols.size == 0:
        return cols
    sub = Xn[:, cols]
    return cols[sub.max(axis=0) > sub.min(axis=0)]


def presort(X: np.ndarray):
    """Sparse column index for :func:`build_regression_tree`.

    Returns ``(cols, rows, vals, colid)``: the varying columns, and for each
    of them its nonzero entries sorted ascending by value (ties by row),
    concatenated column after column.
    """
    if X.size and X.min() < 0:
        raise ValueError("tree learners expect non-negative features")
    cols = np.flatnonzero(X.max(axis=0) > X.min(axis=0))
    order, sv = _sorted_columns(X, cols)
    oT, sT = order.T, sv.T
    nz = sT != 0
    return cols, oT[nz], sT[nz], np.nonzero(nz)[0]


def build_regression_tree(
    X: np.ndarray,
    grad: np.ndarray,
    hess: np.ndarray,
    *,
    max_depth: int,
    min_child_weight: float,
    reg_lambda: float,
    learning_rate: float,
    presorted=None,
) -> Tree:
    """Exact-greedy second-order tree over sparse columns.

    Candidate thresholds sit between the zero block and the smallest
    nonzero value of a column, and between consecutive distinct nonzero
    values. Every node (internal ones too) stores ``-lr * G / (H + lambda)``
    so path attributions can be read off value differences. ``presorted``
    is :func:`presort` of ``X`` and may be shared across trees.
    """
    b = _Builder()
    cols, rows0, vals0, colid0 = presorted if presorted is not None else presort(X)
    k = cols.size
    n = X.shape[0]

    def newton(G, H):
        return -learning_rate * G / (H + reg_lambda)

    root = b.add(newton(grad.sum(), hess.sum()))
    stack = [(root, np.arange(n), rows0, vals0, colid0, 0)]
    while stack:
        node, idx, rows, vals, colid, depth = stack.pop()
        m = idx.size
        if depth >= max_depth or m < 2 or rows.size == 0:
            continue
        g, h = grad[rows], hess[rows]
        Gt, Ht = grad[idx].sum(), hess[idx].sum()
        nnz = np.bincount(colid, minlength=k)
        Gz = Gt - np.bincount(colid, g, minlength=k)
        Hz = Ht - np.bincount(colid, h, minlength=k)
        seg = np.concatenate(([0], np.cumsum(nnz)[:-1]))
        cg, ch = np.cumsum(g), np.cumsum(h)
        base_g = np.concatenate(([0.0], cg))[seg]
        base_h = np.concatenate(([0.0], ch))[seg]

        # zero block | first nonzero
        ca = np.flatnonzero((nnz > 0) & (nnz < m))
        # between consecutive distinct nonzeros of one column
        ib = np.flatnonzero((colid[:-1] == colid[1:]) & (vals[:-1] < vals[1:]))
        cb = colid[ib]
        c_all = np.concatenate((ca, cb))
        if c_all.size == 0:
            continue
        GL = np.concatenate((Gz[ca], Gz[cb] + cg[ib] - base_g[cb]))
        HL = np.concatenate((Hz[ca], Hz[cb] + ch[ib] - base_h[cb]))
        thr = np.concatenate((0.5 * vals[seg[ca]], 0.5 * (vals[ib] + vals[ib + 1])))
        rank = np.concatenate((np.zeros(ca.size, np.int64), ib - seg[cb] + 1))
        GR, HR = Gt - GL, Ht - HL
        gain = GL**2 / (HL + reg_lambda) + GR**2 / (HR + reg_lambda) - Gt**2 / (Ht + reg_lambda)
        gain[(HL < min_child_weight) | (HR < min_child_weight)] = -np.inf
        top = gain.max()
        if not top > 0.0:
            continue
        # ties: lowest feature index, then lowest threshold
        tied = np.flatnonzero(gain == top)
        best = tied[np.lexsort((rank[tied], c_all[tied]))[0]]
        c, t = int(c_all[best]), float(thr[best])
        go_left = X[idx, cols[c]] <= t
        li, ri = idx[go_left], idx[~go_left]
        member = np.zeros(n, dtype=bool)
        member[li] = True
        keep = member[rows]
        lnode = b.add(newton(grad[li].sum(), hess[li].sum()))
        rnode = b.add(newton(grad[ri].sum(), hess[ri].sum()))
        b.split(node, int(cols[c]), t, lnode, rnode)
        stack.append((rnode, ri, rows[~keep], vals[~keep], colid[~keep], depth + 1))
        stack.append((lnode, li, rows[keep], vals[keep], colid[keep], depth + 1))
    return b.finish()


def _gini_scores(counts_left: np.ndarray, total: np.ndarray) -> np.ndarray:
    """Weighted child impurity n_L*gini_L + n_R*gini_R for every candidate."""
    counts_right = total - counts_left
    nl = counts_left.sum(axis=-1)
    nr = counts_right.sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        gl = nl - np.where(nl > 0, (counts_left**2).sum(axis=-1) / nl, 0.0)
        gr = nr - np.where(nr > 0, (counts_right**2).sum(axis=-1) / nr, 0.0)
    return gl + gr


def build_gini_tree(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    rng: np.random.Generator,
    *,
    max_features: int,
    max_depth: int | None = None,
    min_samples_leaf: int = 1,
) -> Tree:
    """CART classification tree with per-node feature subsampling.

    A node is split whenever it is impure and some feature can separate it;
    if none of the sampled features is usable, further features are drawn
    until one is (or the pool is exhausted).
    """
    b = _Builder()
    d = X.shape[1]
    onehot = np.eye(n_classes)[y]
    root_idx = np.arange(X.shape[0])
    root = b.add(onehot.sum(axis=0))
    stack = [(root, root_idx, 0)]
    while stack:
        node, idx, depth = stack.pop()
        counts = b.value[node]
        if (counts > 0).sum() <= 1 or idx.size < 2 * min_samples_leaf:
            continue
        if max_depth is not None and depth >= max_depth:
            continue
        Xn = X[idx]
        perm = rng.permutation(d)
        best = None
        for start in range(0, d, max_features):
            cols = np.sort(_nonconstant(Xn, np.sort(perm[start : start + max_features])))
            if cols.size:
                cand = _best_gini_split(Xn, onehot[idx], cols, min_samples_leaf)
                if cand is not None and (best is None or cand < best):
                    best = cand
            if best is not None:
                break
        if best is None:
            continue
        _, feat, thr = best
        go_left = Xn[:, feat] <= thr
        li, ri = idx[go_left], idx[~go_left]
        lnode = b.add(onehot[li].sum(axis=0))
        rnode = b.add(onehot[ri].sum(axis=0))
        b.split(node, int(feat), float(thr), lnode, rnode)
        stack.append((rnode, ri, depth + 1))
        stack.append((lnode, li, depth + 1))
    return b.finish()


def _best_gini_split(Xn, Yn, cols, min_samples_leaf):
    order, sv = _sorted_columns(Xn, cols)
    # (m, k, n_classes) cumulative class counts in sorted order
    cum = np.cumsum(Yn[order], axis=0)
    total = cum[-1]
    left = cum[:-1]
    m = Xn.shape[0]
    pos_n = np.arange(1, m)[:, None]
    ok = (sv[:-1] < sv[1:]) & (pos_n >= min_samples_leaf) & (m - pos_n >= min_samples_leaf)
    if not ok.any():
        return None
    score = np.where(ok, _gini_scores(left, total[None, :, :]), np.inf)
    flat = int(np.argmin(score.T))
    c, pos = divmod(flat, score.shape[0])
    thr = 0.5 * (sv[pos, c] + sv[pos + 1, c])
    return (float(score[pos, c]), int(cols[c]), float(thr))
