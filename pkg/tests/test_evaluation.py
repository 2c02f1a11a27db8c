import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hand_report
from verdictpipe.errors import ClassTooSmall, EmptyInput, LengthMismatch
from verdictpipe.evaluation import (
    ConfusionMatrix,
    SplitConfig,
    classification_report,
    confusion,
    report_from_confusion,
    split_indices,
    stratified_split,
    test_count,
)
from verdictpipe.labeler import Disposition
from verdictpipe.synth import generate_synthetic_corpus
from verdictpipe.vectorizer import Dataset, FeatureVector

A, B, C = Disposition.ALLOW, Disposition.DISMISS, Disposition.DISPOSE

# Published tables in class order, then accuracy, macro and weighted rows.
# Each matrix was found by exhaustive search over small integer confusion
# matrices whose 2-decimal report matches the table.
PUBLISHED_TABLES = {
    "gbt": (
        [[70, 6, 9], [12, 39, 0], [9, 8, 27]],
        [(0.77, 0.82, 0.80), (0.74, 0.76, 0.75), (0.75, 0.61, 0.67)],
        0.76, (0.75, 0.73, 0.74), (0.76, 0.76, 0.75),
    ),
    "nn": (
        [[7, 0, 0], [1, 0, 0], [2, 0, 0]],
        [(0.70, 1.00, 0.82), (0.0, 0.0, 0.0), (0.0, 0.0, 0.0)],
        0.70, (0.23, 0.33, 0.27), (0.49, 0.70, 0.58),
    ),
    "svm": (
        [[9, 0, 0], [3, 4, 2], [1, 1, 0]],
        [(0.69, 1.00, 0.82), (0.80, 0.44, 0.57), (0.0, 0.0, 0.0)],
        0.65, (0.50, 0.48, 0.46), (0.67, 0.65, 0.63),
    ),
    "rf": (
        [[11, 0, 0], [5, 0, 0], [3, 0, 1]],
        [(0.58, 1.00, 0.73), (0.0, 0.0, 0.0), (1.00, 0.25, 0.40)],
        0.60, (0.53, 0.42, 0.38), (0.52, 0.60, 0.48),
    ),
}


def all_majority(n_allow=70, n_dismiss=21, n_dispose=9):
    y_true = [A] * n_allow + [B] * n_dismiss + [C] * n_dispose
    return y_true, [A] * len(y_true)


def test_all_majority_table():
    rep = classification_report(*all_majority()).rounded()
    assert rep["allow"] == (0.70, 1.00, 0.82)
    assert rep["dismiss"] == rep["dispose"] == (0.0, 0.0, 0.0)
    assert rep["accuracy"] == 0.70
    assert rep["macro avg"] == (0.23, 0.33, 0.27)
    assert rep["weighted avg"] == (0.49, 0.70, 0.58)


@pytest.mark.parametrize("n_dismiss", range(0, 31))
def test_all_majority_table_for_any_minority_split(n_dismiss):
    y_true, y_pred = all_majority(70, n_dismiss, 30 - n_dismiss)
    rep = classification_report(y_true, y_pred)
    assert rep.accuracy == 0.70
    assert rep.rounded()["allow"] == (0.70, 1.00, 0.82)
    assert rep.rounded()["weighted avg"] == (0.49, 0.70, 0.58)


@pytest.mark.parametrize("name", sorted(PUBLISHED_TABLES))
def test_published_tables_reproduced(name):
    counts, rows, acc, macro, weighted = PUBLISHED_TABLES[name]
    rep = report_from_confusion(ConfusionMatrix(np.array(counts))).rounded()
    assert [rep[n] for n in ("allow", "dismiss", "dispose")] == rows
    assert rep["accuracy"] == acc
    assert rep["macro avg"] == macro
    assert rep["weighted avg"] == weighted


def test_two_class_example():
    rep = classification_report([A, A, B, B], [A, B, B, B])
    assert rep.per_class[0].precision == 1.0 and rep.per_class[0].recall == 0.5
    assert rep.per_class[0].f1 == pytest.approx(2 / 3, abs=1e-12)
    assert rep.per_class[1].precision == pytest.approx(2 / 3, abs=1e-12)
    assert rep.per_class[1].recall == 1.0 and rep.per_class[1].f1 == pytest.approx(0.8, abs=1e-12)
    assert rep.accuracy == 0.75
    assert rep.macro_avg == pytest.approx((5 / 6, 0.75, 11 / 15), abs=1e-12)
    assert confusion([A, A, B, B], [A, B, B, B]).counts.tolist() == [[1, 1, 0], [0, 2, 0], [0, 0, 0]]


def test_perfect_predictions():
    y = [A, B, C, C, B]
    rep = classification_report(y, y)
    assert all((m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0) for m in rep.per_class)
    assert rep.accuracy == 1.0
    np.testing.assert_array_equal(confusion(y, y).normalized, np.eye(3))


def test_single_class_truth_has_one_nonzero_row():
    cm = confusion([B] * 5, [A, B, B, C, B])
    assert (cm.counts.sum(axis=1) > 0).tolist() == [False, True, False]
    assert cm.normalized[1].sum() == pytest.approx(1.0)
    assert cm.normalized[0].tolist() == [0.0, 0.0, 0.0]


def test_errors():
    with pytest.raises(LengthMismatch):
        classification_report([A], [A, B])
    with pytest.raises(LengthMismatch):
        confusion([A], [])
    with pytest.raises(EmptyInput):
        classification_report([], [])


pairs = st.integers(1, 60).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 2), min_size=n, max_size=n), st.lists(st.integers(0, 2), min_size=n, max_size=n))
)


@given(pairs)
@settings(max_examples=300)
def test_report_matches_hand_count(pair):
    y_true, y_pred = pair
    rep = classification_report(y_true, y_pred)
    want, acc = hand_report(y_true, y_pred)
    for c, m in enumerate(rep.per_class):
        assert (m.precision, m.recall, m.f1, m.support) == pytest.approx(want[c], abs=1e-12)
    assert rep.accuracy == pytest.approx(acc, abs=1e-15)
    assert rep.accuracy == pytest.approx(np.trace(rep.confusion.counts) / len(y_true), abs=1e-15)
    cm = rep.confusion
    assert cm.counts.sum(axis=1).tolist() == [m.support for m in rep.per_class]
    for row, sup in zip(cm.normalized, cm.support):
        if sup:
            assert abs(row.sum() - 1.0) < 1e-9


def test_weighted_recall_equals_accuracy_on_10k_cases():
    rng = random.Random(20211001)
    for _ in range(10_000):
        n = rng.randint(1, 50)
        y_true = [rng.randrange(3) for _ in range(n)]
        y_pred = [rng.randrange(3) for _ in range(n)]
        rep = classification_report(y_true, y_pred)
        assert abs(rep.weighted_avg[1] - rep.accuracy) <= 1e-12


@given(pairs)
@settings(max_examples=300)
def test_macro_f1_between_extreme_class_f1(pair):
    rep = classification_report(*pair)
    present = [m.f1 for m, s in zip(rep.per_class, rep.confusion.counts.sum(axis=0) + rep.confusion.support) if s]
    assert min(present) - 1e-12 <= rep.macro_avg[2] <= max(present) + 1e-12


@given(st.lists(st.integers(0, 2), min_size=1, max_size=80), st.integers(0, 2))
@settings(max_examples=200)
def test_all_majority_accuracy_is_prevalence(y_true, cls):
    rep = classification_report(y_true, [cls] * len(y_true))
    assert rep.accuracy == y_true.count(cls) / len(y_true)


def test_render_shape():
    text = classification_report(*all_majority()).render()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    assert len(lines) == 7
    assert lines[0].split() == ["precision", "recall", "f1-score", "support"]
    assert [ln.split()[0] for ln in lines[1:4]] == ["allow", "dismiss", "dispose"]
    assert lines[1].split() == ["allow", "0.70", "1.00", "0.82", "70"]
    assert lines[4].split() == ["accuracy", "0.70", "100"]
    assert lines[5].split() == ["macro", "avg", "0.23", "0.33", "0.27", "100"]
    assert lines[6].split() == ["weighted", "avg", "0.49", "0.70", "0.58", "100"]


def test_json_and_csv_outputs():
    rep = classification_report([A, A, B, B], [A, B, B, B])
    d = json.loads(rep.to_json())
    assert d["accuracy"] == 0.75 and d["confusion"][0] == [1, 1, 0]
    csv = rep.confusion.to_csv().splitlines()
    assert csv[0] == "true\\pred,allow,dismiss,dispose"
    assert csv[1] == "allow,0.500000,0.500000,0.000000"
    assert rep.confusion.to_csv(normalized=False).splitlines()[2] == "dismiss,0,2,0"


@pytest.mark.parametrize("n, ratio, k", [(5, 0.2, 1), (10, 0.2, 2), (2, 0.2, 1), (2, 0.9, 1), (7, 0.5, 4), (25, 0.2, 5), (12, 0.25, 3)])
def test_test_count(n, ratio, k):
    assert test_count(n, ratio) == k


def dataset_with_counts(counts):
    labels = [c for c, n in enumerate(counts) for _ in range(n)]
    vecs = [FeatureVector.from_dense([1.0])] * len(labels)
    return Dataset(vecs, labels, ("t",), [f"doc{i:05d}" for i in range(len(labels))])


def test_split_example():
    train, test = stratified_split(dataset_with_counts([5, 5, 0]))
    assert sorted(np.bincount(test.y(), minlength=3)) == [0, 1, 1]
    assert np.bincount(train.y(), minlength=3).tolist() == [4, 4, 0]


def test_split_deterministic_and_seeded():
    ds = dataset_with_counts([40, 30, 20])
    a = stratified_split(ds, SplitConfig(seed=5))[1].doc_ids
    assert a == stratified_split(ds, SplitConfig(seed=5))[1].doc_ids
    assert a != stratified_split(ds, SplitConfig(seed=6))[1].doc_ids


def test_split_independent_of_row_order():
    ds = dataset_with_counts([20, 15, 10])
    perm = list(range(len(ds)))
    random.Random(3).shuffle(perm)
    assert sorted(stratified_split(ds)[1].doc_ids) == sorted(stratified_split(ds.subset(perm))[1].doc_ids)


def test_class_too_small():
    with pytest.raises(ClassTooSmall):
        stratified_split(dataset_with_counts([5, 1, 4]))


@given(st.integers(1, 3070), st.integers(1, 3070))
@settings(max_examples=300)
def test_3072_documents_give_614_or_615_test_rows(a, b):
    cuts = sorted((a, b))
    counts = [cuts[0], cuts[1] - cuts[0], 3072 - cuts[1]]
    if min(counts) < 2:
        return
    total = sum(test_count(n, 0.2) for n in counts)
    assert total in (614, 615)


@given(st.lists(st.integers(2, 60), min_size=3, max_size=3), st.sampled_from([0.1, 0.2, 0.25, 0.3, 0.5]))
@settings(max_examples=200, deadline=None)
def test_split_partition_properties(counts, ratio):
    ds = dataset_with_counts(counts)
    tr, te = split_indices(ds.labels, ds.doc_ids, SplitConfig(ratio))
    assert sorted(tr + te) == list(range(len(ds)))
    assert not set(tr) & set(te)
    per = np.bincount([int(ds.labels[r]) for r in te], minlength=3)
    for c, n in enumerate(counts):
        assert abs(per[c] - round(ratio * n)) <= 1
        assert 1 <= per[c] <= n - 1


def test_synthetic_generator_contract():
    corpus = generate_synthetic_corpus(300, seed=4)
    assert [y for _, y in corpus].count(A) == 100
    assert [y for _, y in corpus][:6] == [A, B, C, A, B, C]
    assert corpus == generate_synthetic_corpus(300, seed=4)
    assert corpus != generate_synthetic_corpus(300, seed=5)
    with pytest.raises(ValueError):
        generate_synthetic_corpus(29)
