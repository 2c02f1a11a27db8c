"""
Turning judgment text into n-gram counts
========================================

"""

from verdictpipe.textprep import PrepConfig, ngrams, normalize
from verdictpipe.stemmer import stem

# lowercase, punctuation and digits out, short words and stopwords dropped, then stemmed
raw = "The appeal is DISMISSED with costs of Rs. 5000."
tokens = normalize(raw)
print(tokens)

# the stemmer on its own
for word in ["caresses", "relational", "allowed", "judgments", "sky"]:
    print(f"{word:12s} -> {stem(word)}")

# contiguous 1- to 4-grams, joined with "_"
bag = ngrams(["appeal", "allow", "cost"], ngram_max=4)
for gram, count in sorted(bag.items()):
    print(gram, count)

# with the stemmer switched off, normalization is idempotent
plain = PrepConfig(stemmer="none")
once = normalize("Respondent-State's 2nd counter affidavit, filed late!", plain)
print(once, normalize(" ".join(once), plain) == once)
