"""Court-judgment disposition prediction: ingestion, TF-IDF n-grams, four learners, a drop-directory service."""

from .bundle import ModelBundle, load, save
from .corpus import CaseDocument, ConverterConfig, extract_text, ingest_directory
from .evaluation import (
    SplitConfig,
    classification_report,
    confusion,
    generate_synthetic_corpus,
    stratified_split,
)
from .labeler import Disposition, LabelerConfig, Unlabeled, extract_disposition
from .learners import LearnerSpec, predict_proba, train
from .textprep import PrepConfig, ngrams, normalize, stem
from .vectorizer import Dataset, FeatureVector, Vocabulary, build_vocabulary, export_csv, vectorize

__version__ = "0.1.0"
