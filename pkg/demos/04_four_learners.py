"""
Four classifiers on a synthetic corpus
======================================

"""

import numpy as np

from verdictpipe.corpus import CaseDocument
from verdictpipe.evaluation import stratified_split
from verdictpipe.labeler import LabelerConfig, extract_disposition
from verdictpipe.learners import LearnerSpec, train
from verdictpipe.pipeline import build_dataset
from verdictpipe.synth import generate_synthetic_corpus

corpus = generate_synthetic_corpus(150, seed=7)
docs = [CaseDocument(f"case_{i:04d}", t, "synthetic", extract_disposition(t)) for i, (t, _) in enumerate(corpus)]

# features without the operative-order sentences
ds, vocab = build_dataset(docs, labeler=LabelerConfig(exclude_from_features=True))
print(len(ds), "documents,", len(vocab), "features")

train_ds, test_ds = stratified_split(ds)
specs = [
    LearnerSpec("gbt", {"n_rounds": 50}),
    LearnerSpec("rf", {"n_trees": 100}),
    LearnerSpec("svm"),
    LearnerSpec("mlp"),
]
for spec in specs:
    model = train(train_ds, spec)
    acc = np.mean(model.predict(test_ds.X()) == test_ds.y())
    print(f"{spec.kind:4s} holdout accuracy {acc:.3f}")

# boosting reports its training loss after every round
gbt = train(train_ds, LearnerSpec("gbt", {"n_rounds": 20}))
print(np.round(gbt.training_meta["loss_history"], 4))
