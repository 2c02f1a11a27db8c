"""
Vocabulary pruning and TF-IDF vectors
=====================================

"""

import numpy as np

from verdictpipe.textprep import ngrams, normalize
from verdictpipe.vectorizer import build_vocabulary, vectorize

texts = [
    "The appeal against the tax assessment is allowed.",
    "The tax tribunal dismissed the appeal on limitation.",
    "Bail was refused and the appeal is dismissed.",
    "The lease dispute was remanded; the appeal is disposed of.",
]
bags = [ngrams(normalize(t)) for t in texts]

# keep n-grams found in at least ceil(0.5 * 4) = 2 documents
vocab = build_vocabulary(bags, min_df_ratio=0.5)
for term, df, idf in zip(vocab.terms, vocab.df, vocab.idf):
    print(f"{term:12s} df={df}  idf={idf:.4f}")

# smoothed idf: ln((1 + N) / (1 + df)) + 1, so a term in every document scores 1
print(np.log(5 / 5) + 1, np.log(5 / 3) + 1)

# each vector is count * idf, scaled to unit length
X = np.array([vectorize(b, vocab).dense(len(vocab)) for b in bags])
print(X.round(3))
print(np.linalg.norm(X, axis=1))
