import numpy as np
import pytest

from verdictpipe.corpus import CaseDocument
from verdictpipe.labeler import Disposition, extract_disposition
from verdictpipe.synth import generate_synthetic_corpus
from verdictpipe.vectorizer import Dataset, FeatureVector


def synthetic_documents(n=300, seed=7):
    out = []
    for i, (text, truth) in enumerate(generate_synthetic_corpus(n, seed)):
        lab = extract_disposition(text)
        out.append(CaseDocument(f"case_{i:05d}", text, f"<synth {i}>", lab if isinstance(lab, Disposition) else None))
    return out


@pytest.fixture(scope="session")
def synth_docs():
    return synthetic_documents()


def separable_dataset(n=40, n_features=5, seed=0):
    """Feature ``y`` is 0.8 exactly on class ``y`` rows; the rest is low-level noise."""
    rng = np.random.default_rng(seed)
    labels = [i % 3 for i in range(n)]
    vectors = []
    for y in labels:
        x = rng.uniform(0.0, 0.1, n_features)
        x[:3] = 0.0
        x[y] = 0.8
        vectors.append(FeatureVector.from_dense(x))
    names = tuple(f"t{j}" for j in range(n_features))
    return Dataset(vectors, labels, names, [f"d{i:03d}" for i in range(n)])


@pytest.fixture
def separable():
    return separable_dataset()


def make_bundle(docs, kind="gbt", hyper=None, exclude=True, seed=3):
    from verdictpipe.labeler import LabelerConfig
    from verdictpipe.learners import LearnerSpec
    from verdictpipe.pipeline import fit_bundle

    spec = LearnerSpec(kind, hyper or {}, seed)
    return fit_bundle(docs, spec, labeler=LabelerConfig(exclude_from_features=exclude))


@pytest.fixture(scope="session")
def small_bundle(synth_docs):
    return make_bundle(synth_docs[:90], "gbt", {"n_rounds": 15})
