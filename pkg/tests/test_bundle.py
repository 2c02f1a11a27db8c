import json

import numpy as np
import pytest

from conftest import make_bundle
from verdictpipe.bundle import FORMAT_VERSION, ModelBundle, load, save
from verdictpipe.errors import CorruptBundle, IoFailure, SchemaVersionMismatch

FAST = {"gbt": {"n_rounds": 10}, "rf": {"n_trees": 15}, "svm": {"epochs": 10}, "mlp": {"epochs": 30}}


def random_vectors(n_features, n=50, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.uniform(0, 1, (n, n_features)) * (rng.uniform(0, 1, (n, n_features)) < 0.2)
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    return np.divide(X, norms, out=np.zeros_like(X), where=norms > 0)


@pytest.mark.parametrize("kind", sorted(FAST))
def test_round_trip_is_bit_identical(kind, synth_docs, tmp_path):
    bundle = make_bundle(synth_docs[:60], kind, FAST[kind])
    save(bundle, tmp_path / "b.json")
    again = load(tmp_path / "b.json")
    X = random_vectors(len(bundle.vocabulary))
    before, after = bundle.model.predict_proba(X), again.model.predict_proba(X)
    assert before.tobytes() == after.tobytes()
    assert again.fingerprint == bundle.fingerprint
    assert again.to_json() == bundle.to_json()


def test_top_level_schema(small_bundle):
    d = json.loads(small_bundle.to_json())
    assert set(d) == {"format_version", "prep_config", "labeler_config", "vocabulary", "model"}
    assert set(d["vocabulary"]) == {"terms", "df", "idf", "min_df_ratio", "corpus_size"}
    assert {"kind", "class_names", "parameters", "training_meta"} <= set(d["model"])
    assert d["model"]["class_names"] == ["allow", "dismiss", "dispose"]
    assert d["labeler_config"]["exclude_from_features"] is True


def test_truncated_file(small_bundle, tmp_path):
    save(small_bundle, tmp_path / "b.json")
    text = (tmp_path / "b.json").read_text()
    (tmp_path / "t.json").write_text(text[: len(text) // 2])
    with pytest.raises(CorruptBundle):
        load(tmp_path / "t.json")


def test_future_version(small_bundle, tmp_path):
    d = small_bundle.to_dict()
    d["format_version"] = FORMAT_VERSION + 1
    (tmp_path / "f.json").write_text(json.dumps(d))
    with pytest.raises(SchemaVersionMismatch):
        load(tmp_path / "f.json")


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("vocabulary"),
        lambda d: d["model"].update(kind="knn"),
        lambda d: d["model"].update(n_features=3),
        lambda d: d["model"]["parameters"]["trees"][0][0].update(left=[0]),
        lambda d: d["prep_config"].update(colour="blue"),
    ],
)
def test_structurally_broken_bundles(small_bundle, tmp_path, mutate):
    d = small_bundle.to_dict()
    mutate(d)
    (tmp_path / "x.json").write_text(json.dumps(d))
    with pytest.raises(CorruptBundle):
        load(tmp_path / "x.json")


def test_not_an_object(tmp_path):
    (tmp_path / "x.json").write_text("[1, 2]")
    with pytest.raises(CorruptBundle):
        load(tmp_path / "x.json")


def test_missing_file(tmp_path):
    with pytest.raises(IoFailure):
        load(tmp_path / "absent.json")


def test_fingerprint_tracks_content(synth_docs):
    a = make_bundle(synth_docs[:60], "svm", FAST["svm"], seed=1)
    b = make_bundle(synth_docs[:60], "svm", FAST["svm"], seed=2)
    assert a.fingerprint == make_bundle(synth_docs[:60], "svm", FAST["svm"], seed=1).fingerprint
    assert a.fingerprint != b.fingerprint
    assert len(a.fingerprint) == 16
    assert isinstance(ModelBundle.from_dict(a.to_dict()), ModelBundle)
