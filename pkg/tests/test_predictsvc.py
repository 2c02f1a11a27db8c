import shlex
import sys
import threading
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

from conftest import make_bundle
from verdictpipe.corpus import ConverterConfig
from verdictpipe.errors import EmptyDocument, EmptyVectorWarning
from verdictpipe.labeler import Disposition
from verdictpipe.learners.gbt import GbtModel
from verdictpipe.learners.svm import LinearSvmModel
from verdictpipe.learners.tree import Tree
from verdictpipe.predictsvc import LEDGER_NAME, WatchConfig, Watcher, explain, predict_document
from verdictpipe.synth import generate_synthetic_corpus
from verdictpipe.vectorizer import FeatureVector

PDF2TEXT = Path(__file__).parent / "data" / "pdf2text.py"
CONVERTER = ConverterConfig(f"{shlex.quote(sys.executable)} {shlex.quote(str(PDF2TEXT))} {{input}}", timeout=60)


def stump(feature, threshold, root, left, right):
    return Tree(
        np.array([feature, -1, -1]),
        np.array([threshold, 0.0, 0.0]),
        np.array([1, -1, -1]),
        np.array([2, -1, -1]),
        np.array([root, left, right]),
    )


def leaf(value=0.0):
    return Tree(np.array([-1]), np.array([0.0]), np.array([-1]), np.array([-1]), np.array([value]))


def test_stump_explanation_is_the_leaf_delta():
    model = GbtModel(3, np.zeros(3), [[stump(1, 0.5, 0.02, -0.1, 0.3), leaf(), leaf()]])
    v = FeatureVector.from_dense([0.4, 0.9, 0.2])
    assert explain(model, v, 10, ["a", "b", "c"]) == [("b", pytest.approx(0.28))]
    assert explain(model, FeatureVector.from_dense([0.4, 0.1, 0.2]), 10, ["a", "b", "c"], cls=0) == [("b", pytest.approx(-0.12))]


def test_linear_explanation_by_hand():
    W = np.array([[0.5, -2.0, 1.0], [0.0, 1.0, 0.0], [0.1, 0.1, 0.1]])
    model = LinearSvmModel(3, W, np.array([0.2, 0.0, -0.1]))
    v = FeatureVector.from_dense([0.6, 0.0, 0.8])
    # allow score 0.5*0.6 + 1.0*0.8 + 0.2 = 1.3 beats dismiss 0.0 and dispose 0.04
    got = explain(model, v, 10, ["x", "y", "z"])
    assert got == [("z", pytest.approx(0.8)), ("x", pytest.approx(0.3))]
    assert sum(c for _, c in got) == pytest.approx(model.decision_function(v.dense(3))[0, 0] - 0.2, abs=1e-9)


def test_k_larger_than_nonzero_contributions():
    model = LinearSvmModel(3, np.eye(3), np.zeros(3))
    assert len(explain(model, FeatureVector.from_dense([0.0, 1.0, 0.0]), 10)) == 1
    with pytest.raises(ValueError):
        explain(model, FeatureVector.from_dense([1.0, 0, 0]), 0)


def test_ties_break_on_term():
    model = LinearSvmModel(3, np.ones((3, 3)), np.zeros(3))
    got = explain(model, FeatureVector.from_dense([0.5, 0.5, 0.5]), 10, ["b", "c", "a"])
    assert [t for t, _ in got] == ["a", "b", "c"]


@pytest.mark.parametrize("seed", range(5))
def test_linear_completeness(seed, synth_docs):
    bundle = make_bundle(synth_docs[:60], "svm", {"epochs": 5}, seed=seed)
    text = synth_docs[100 + seed].raw_text
    pred = predict_document(bundle, text, k=10_000)
    m = bundle.model
    from verdictpipe.pipeline import bag_of
    from verdictpipe.vectorizer import vectorize

    x = vectorize(bag_of(text, bundle.prep_config, bundle.labeler_config), bundle.vocabulary).dense(m.n_features)
    cls = int(pred.predicted)
    assert sum(c for _, c in pred.explanation) == pytest.approx(m.decision_function(x)[0, cls] - m.bias[cls], abs=1e-9)


def test_explanations_sorted_by_magnitude(small_bundle, synth_docs):
    pred = predict_document(small_bundle, synth_docs[150].raw_text)
    mags = [abs(c) for _, c in pred.explanation]
    assert mags == sorted(mags, reverse=True)
    assert 0 < len(pred.explanation) <= 10
    assert sum(pred.probabilities) == pytest.approx(1.0, abs=1e-9)


def test_held_out_synthetic_documents_predicted_correctly(small_bundle):
    held_out = generate_synthetic_corpus(30, seed=99)
    hits = sum(predict_document(small_bundle, t).predicted == y for t, y in held_out)
    assert hits >= 27


def test_stopword_document_warns_and_uses_base_rate(small_bundle):
    with pytest.warns(EmptyVectorWarning):
        pred = predict_document(small_bundle, "the and of it was were being have")
    assert pred.empty_vector and pred.explanation == []
    base = small_bundle.model.predict_proba(np.zeros((1, small_bundle.model.n_features)))[0]
    assert pred.probabilities == tuple(base)
    assert "EmptyVectorWarning" in pred.render()


def test_empty_document(small_bundle):
    with pytest.raises(EmptyDocument):
        predict_document(small_bundle, "  \n ")


def test_identical_text_identical_prediction(small_bundle, synth_docs):
    a = predict_document(small_bundle, synth_docs[7].raw_text, "x")
    b = predict_document(small_bundle, synth_docs[7].raw_text, "x")
    assert a == b
    assert a.render("t") == b.render("t")


def test_render_format(small_bundle, synth_docs):
    lines = predict_document(small_bundle, synth_docs[0].raw_text, "case_a").render("2026-01-01T00:00:00+00:00").splitlines()
    assert lines[0] == "doc_id: case_a"
    assert lines[1].startswith("predicted: ")
    assert [ln.split("=")[0] for ln in lines[2:5]] == ["p(allow)", "p(dismiss)", "p(dispose)"]
    assert lines[5] == "top features:"
    assert lines[-2].startswith("pipeline: ") and lines[-1].startswith("generated: ")


def test_watch_config_rejects_same_directory(tmp_path):
    with pytest.raises(ValueError):
        WatchConfig(tmp_path, tmp_path)


class FakeClock:
    def __init__(self):
        self.t = 0.0

    def __call__(self):
        return self.t


def test_file_processed_only_after_stability_window(small_bundle, tmp_path):
    src, out = tmp_path / "in", tmp_path / "out"
    src.mkdir(), out.mkdir()
    clock = FakeClock()
    w = Watcher(small_bundle, WatchConfig(src, out, stability_window=2.0), clock)
    f = src / "doc.txt"
    f.write_text("The appeal concerns a lease.")
    assert w.poll_once() == []
    clock.t = 1.0
    with open(f, "a") as fh:
        fh.write(" More text arrives later.")
    assert w.poll_once() == []  # size changed, window restarts
    clock.t = 2.5
    assert w.poll_once() == []
    clock.t = 3.1
    assert [p.name for p in w.poll_once()] == ["doc.prediction.txt"]
    clock.t = 10.0
    assert w.poll_once() == []


def test_watch_loop_timing_errors_and_restart(small_bundle, tmp_path):
    src, out = tmp_path / "in", tmp_path / "out"
    src.mkdir(), out.mkdir()
    cfg = WatchConfig(src, out, poll_interval=0.1, stability_window=0.3, converter=CONVERTER)
    stop = threading.Event()
    t = threading.Thread(target=Watcher(small_bundle, cfg).run, args=(stop,))
    t.start()
    try:
        start = time.monotonic()
        (src / "good.txt").write_text(generate_synthetic_corpus(30, seed=1)[0][0])
        (src / "broken.pdf").write_bytes(b"%PDF-1.4 not really")
        (src / "ignored.md").write_text("not a candidate")
        deadline = start + cfg.poll_interval + cfg.stability_window + 1.0
        while time.monotonic() < deadline and len(list(out.glob("*.txt"))) < 2:
            time.sleep(0.02)
        assert (out / "good.prediction.txt").exists()
        err = (out / "broken.error.txt").read_text()
        assert err.startswith("error: ConverterFailed\nmessage: ")
    finally:
        stop.set()
        t.join()
    assert (out / LEDGER_NAME).read_text().split() == ["broken", "good"]
    before = {p.name: p.stat().st_mtime_ns for p in out.iterdir()}
    again = Watcher(small_bundle, cfg)
    again.run(max_polls=1)
    time.sleep(cfg.stability_window + 0.05)
    again.run(max_polls=1)
    assert {p.name: p.stat().st_mtime_ns for p in out.iterdir()} == before


def test_prediction_file_deterministic_apart_from_timestamp(small_bundle, synth_docs, tmp_path):
    bodies = []
    for run in range(2):
        src, out = tmp_path / f"in{run}", tmp_path / f"out{run}"
        src.mkdir(), out.mkdir()
        (src / "case.txt").write_text(synth_docs[42].raw_text)
        clock = FakeClock()
        w = Watcher(small_bundle, WatchConfig(src, out), clock)
        w.poll_once()
        clock.t = 5.0
        w.poll_once()
        lines = (out / "case.prediction.txt").read_text().splitlines()
        bodies.append([ln for ln in lines if not ln.startswith("generated:")])
    assert bodies[0] == bodies[1]


def test_missing_directory_is_fatal(small_bundle, tmp_path):
    out = tmp_path / "out"
    out.mkdir()
    with pytest.raises(FileNotFoundError):
        Watcher(small_bundle, WatchConfig(tmp_path / "absent", out))


def test_quiescence_every_file_has_one_output(small_bundle, tmp_path):
    src, out = tmp_path / "in", tmp_path / "out"
    src.mkdir(), out.mkdir()
    texts = generate_synthetic_corpus(30, seed=2)[:6]
    for i, (text, _) in enumerate(texts):
        (src / f"d{i}.txt").write_text(text)
    (src / "empty.txt").write_text("")
    clock = FakeClock()
    w = Watcher(small_bundle, WatchConfig(src, out), clock)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for step in range(4):
            clock.t = 3.0 * step
            w.poll_once()
    for p in src.iterdir():
        outputs = list(out.glob(f"{p.stem}.*.txt"))
        assert len(outputs) == 1
    assert (out / "empty.error.txt").read_text().startswith("error: EmptyDocument")
    labels = {(out / f"d{i}.prediction.txt").read_text().splitlines()[1] for i in range(6)}
    assert labels <= {f"predicted: {d.label}" for d in Disposition}
