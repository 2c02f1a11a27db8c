"""Stratified splitting, classification reports and confusion matrices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClassTooSmall, EmptyInput, LengthMismatch
from .labeler import CLASS_NAMES, Disposition
from .learners.base import stream
from .synth import SynthConfig, generate_synthetic_corpus
from .vectorizer import Dataset

N = len(CLASS_NAMES)


@dataclass(frozen=True)
class SplitConfig:
    test_ratio: float = 0.20
    seed: int = 42

    def __post_init__(self):
        if not 0.0 < self.test_ratio < 1.0:
            raise ValueError(f"test_ratio must be in (0, 1), got {self.test_ratio}")


def test_count(n_c: int, ratio: float) -> int:
    """round-half-up(ratio * n_c), at least 1 and leaving at least 1 for training."""
    k = math.floor(round(ratio * n_c, 9) + 0.5)
    return min(max(1, k), n_c - 1)


test_count.__test__ = False  # not a pytest test despite the name


def split_indices(labels: Sequence, doc_ids: Sequence[str], cfg: SplitConfig | None = None):
    """Row indices (train, test) of a stratified split, each sorted ascending.

    Within each class the rows are ordered by doc_id and then permuted by a
    generator keyed on (seed, class), so the partition depends only on the
    doc_ids and labels, never on row positions.
    """
    cfg = cfg or SplitConfig()
    if len(labels) != len(doc_ids):
        raise LengthMismatch("labels and doc_ids differ in length")
    labels = [int(lab) for lab in labels]
    train, test = [], []
    for c in range(N):
        rows = sorted((r for r, lab in enumerate(labels) if lab == c), key=lambda r: doc_ids[r])
        if not rows:
            continue
        if len(rows) < 2:
            raise ClassTooSmall(f"class {CLASS_NAMES[c]!r} has {len(rows)} sample(s); need >= 2")
        perm = stream(cfg.seed, 4, c).permutation(len(rows))
        k = test_count(len(rows), cfg.test_ratio)
        test.extend(rows[i] for i in perm[:k])
        train.extend(rows[i] for i in perm[k:])
    return sorted(train), sorted(test)


def stratified_split(ds: Dataset, cfg: SplitConfig | None = None) -> tuple[Dataset, Dataset]:
    tr, te = split_indices(ds.labels, ds.doc_ids, cfg)
    return ds.subset(tr), ds.subset(te)


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: np.ndarray  # (3, 3) int, rows = true, cols = predicted

    @property
    def support(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def normalized(self) -> np.ndarray:
        sup = self.support[:, None].astype(np.float64)
        return np.divide(self.counts, sup, out=np.zeros((N, N)), where=sup > 0)

    def to_csv(self, normalized: bool = True) -> str:
        m = self.normalized if normalized else self.counts
        lines = ["true\\pred," + ",".join(CLASS_NAMES)]
        for name, row in zip(CLASS_NAMES, m):
            cells = (f"{v:.6f}" for v in row) if normalized else (str(int(v)) for v in row)
            lines.append(name + "," + ",".join(cells))
        return "\n".join(lines) + "\n"


def _as_int_labels(y) -> np.ndarray:
    return np.array([int(v) for v in y], dtype=np.int64)


def confusion(y_true, y_pred) -> ConfusionMatrix:
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    t, p = _as_int_labels(y_true), _as_int_labels(y_pred)
    counts = np.zeros((N, N), dtype=np.int64)
    np.add.at(counts, (t, p), 1)
    return ConfusionMatrix(counts)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    per_class: tuple[ClassMetrics, ...]
    accuracy: float
    macro_avg: tuple[float, float, float]
    weighted_avg: tuple[float, float, float]
    confusion: ConfusionMatrix

    @property
    def total(self) -> int:
        return int(sum(m.support for m in self.per_class))

    def render(self, digits: int = 2) -> str:
        """Aligned plain-text table: three class rows, accuracy, macro and weighted averages."""
        names = [*CLASS_NAMES, "accuracy", "macro avg", "weighted avg"]
        w = max(len(n) for n in names)
        f = lambda v: f"{v:.{digits}f}"  # noqa: E731
        head = " " * w + "  " + "  ".join(h.rjust(9) for h in ("precision", "recall", "f1-score", "support"))
        lines = [head, ""]
        for name, m in zip(CLASS_NAMES, self.per_class):
            cells = (f(m.precision), f(m.recall), f(m.f1), str(m.support))
            lines.append(name.rjust(w) + "  " + "  ".join(c.rjust(9) for c in cells))
        lines.append("")
        blank = " " * 9
        lines.append(
            "accuracy".rjust(w) + "  " + "  ".join([blank, blank, f(self.accuracy).rjust(9), str(self.total).rjust(9)])
        )
        for name, avg in (("macro avg", self.macro_avg), ("weighted avg", self.weighted_avg)):
            cells = (*(f(v) for v in avg), str(self.total))
            lines.append(name.rjust(w) + "  " + "  ".join(c.rjust(9) for c in cells))
        return "\n".join(lines) + "\n"

    def rounded(self, digits: int = 2) -> dict:
        """Every reported cell rounded as rendered, keyed by row name."""
        r = lambda v: float(f"{v:.{digits}f}")  # noqa: E731
        out = {
            name: (r(m.precision), r(m.recall), r(m.f1))
            for name, m in zip(CLASS_NAMES, self.per_class)
        }
        out["accuracy"] = r(self.accuracy)
        out["macro avg"] = tuple(r(v) for v in self.macro_avg)
        out["weighted avg"] = tuple(r(v) for v in self.weighted_avg)
        return out

    def to_dict(self) -> dict:
        return {
            "per_class": {
                name: {"precision": m.precision, "recall": m.recall, "f1": m.f1, "support": m.support}
                for name, m in zip(CLASS_NAMES, self.per_class)
            },
            "accuracy": self.accuracy,
            "macro_avg": dict(zip(("precision", "recall", "f1"), self.macro_avg)),
            "weighted_avg": dict(zip(("precision", "recall", "f1"), self.weighted_avg)),
            "confusion": self.confusion.counts.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _f1(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def report_from_confusion(cm: ConfusionMatrix) -> ClassificationReport:
    counts = cm.counts
    total = int(counts.sum())
    if total == 0:
        raise EmptyInput("classification report needs at least one sample")
    tp = np.diag(counts)
    pred = counts.sum(axis=0)
    sup = counts.sum(axis=1)
    per = []
    for c in range(N):
        p = tp[c] / pred[c] if pred[c] else 0.0
        r = tp[c] / sup[c] if sup[c] else 0.0
        per.append(ClassMetrics(float(p), float(r), float(_f1(p, r)), int(sup[c])))
    cols = np.array([[m.precision, m.recall, m.f1] for m in per])
    # macro over classes seen in truth or predictions; a class absent from both has no score
    present = (sup + pred) > 0
    macro = tuple(float(v) for v in cols[present].mean(axis=0))
    weighted = tuple(float(v) for v in (cols * sup[:, None]).sum(axis=0) / total)
    return ClassificationReport(tuple(per), float(tp.sum() / total), macro, weighted, cm)


def classification_report(y_true, y_pred) -> ClassificationReport:
    """Per-class precision/recall/F1, accuracy, macro and support-weighted averages.

    The macro average runs over the classes that occur in ``y_true`` or
    ``y_pred``; all three rows are still reported.
    """
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    if len(y_true) == 0:
        raise EmptyInput("classification report needs at least one sample")
    return report_from_confusion(confusion(y_true, y_pred))


__all__ = [
    "ClassMetrics",
    "ClassificationReport",
    "ConfusionMatrix",
    "Disposition",
    "SplitConfig",
    "SynthConfig",
    "classification_report",
    "confusion",
    "generate_synthetic_corpus",
    "report_from_confusion",
    "split_indices",
    "stratified_split",
    "test_count",
]
