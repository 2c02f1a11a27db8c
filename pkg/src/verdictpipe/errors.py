"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`VerdictError`; the
class name doubles as the machine-readable error name written to
``<doc_id>.error.txt`` by the watch service.
"""


class VerdictError(Exception):
    """Base class for all toolkit errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


# corpus
class MissingFile(VerdictError):
    pass


class UnsupportedExtension(VerdictError):
    pass


class ConverterFailed(VerdictError):
    pass


class EmptyDocument(VerdictError):
    pass


class EmptyDirectory(VerdictError):
    pass


# vectorizer
class EmptyCorpus(VerdictError):
    pass


class EmptyVocabulary(VerdictError):
    pass


class IoFailure(VerdictError):
    pass


# learners
class EmptyDataset(VerdictError):
    pass


class SingleClassDataset(VerdictError):
    pass


class NonFiniteLoss(VerdictError):
    pass


class SchemaVersionMismatch(VerdictError):
    pass


class CorruptBundle(VerdictError):
    pass


class UnknownHyperparameter(VerdictError, ValueError):
    pass


# evaluation
class ClassTooSmall(VerdictError):
    pass


class LengthMismatch(VerdictError, ValueError):
    pass


class EmptyInput(VerdictError, ValueError):
    pass


# configuration
class ConfigError(VerdictError, ValueError):
    pass


class EmptyVectorWarning(UserWarning):
    """Every token of a document fell outside the model vocabulary."""
