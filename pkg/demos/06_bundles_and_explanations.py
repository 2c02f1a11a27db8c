"""
Saving a pipeline and explaining its predictions
================================================

"""

import tempfile
from pathlib import Path

from verdictpipe.bundle import load, save
from verdictpipe.corpus import CaseDocument
from verdictpipe.labeler import LabelerConfig, extract_disposition
from verdictpipe.learners import LearnerSpec
from verdictpipe.pipeline import fit_bundle
from verdictpipe.predictsvc import predict_document
from verdictpipe.synth import generate_synthetic_corpus

corpus = generate_synthetic_corpus(120, seed=3)
docs = [CaseDocument(f"case_{i:04d}", t, "synthetic", extract_disposition(t)) for i, (t, _) in enumerate(corpus)]
bundle = fit_bundle(docs, LearnerSpec("svm"), labeler=LabelerConfig(exclude_from_features=True))

# one JSON file holds the text settings, vocabulary and model
path = Path(tempfile.mkdtemp()) / "bundle.json"
save(bundle, path)
restored = load(path)
print(path.stat().st_size, "bytes, fingerprint", restored.fingerprint)

# a new judgment, with the terms that pushed it towards the predicted class
text, truth = generate_synthetic_corpus(30, seed=41)[1]
pred = predict_document(restored, text, doc_id="new_case", k=5)
print(pred.render())
print("generator said:", truth.label)
