"""ModelBundle: frozen pipeline config + vocabulary + one trained classifier."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import CorruptBundle, IoFailure, SchemaVersionMismatch
from .labeler import LabelerConfig
from .learners import TrainedModel, model_from_dict
from .textprep import PrepConfig
from .vectorizer import Vocabulary

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelBundle:
    prep_config: PrepConfig
    labeler_config: LabelerConfig
    vocabulary: Vocabulary
    model: TrainedModel
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "prep_config": self.prep_config.to_dict(),
            "labeler_config": self.labeler_config.to_dict(),
            "vocabulary": self.vocabulary.to_dict(),
            "model": self.model.to_dict(),
        }

    def to_json(self) -> str:
        # json writes floats with repr(), which round-trips float64 exactly
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()[:16]

    @classmethod
    def from_dict(cls, d: dict) -> "ModelBundle":
        if not isinstance(d, dict) or "format_version" not in d:
            raise CorruptBundle("bundle has no format_version")
        version = d["format_version"]
        if version != FORMAT_VERSION:
            raise SchemaVersionMismatch(
                f"bundle format_version {version!r}; this build reads {FORMAT_VERSION}"
            )
        try:
            vocab = Vocabulary.from_dict(d["vocabulary"])
            model = model_from_dict(d["model"])
            if model.n_features != len(vocab):
                raise ValueError("model and vocabulary sizes differ")
            return cls(
                PrepConfig.from_dict(d["prep_config"]),
                LabelerConfig.from_dict(d["labeler_config"]),
                vocab,
                model,
                version,
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise CorruptBundle(f"malformed bundle: {exc!r}") from exc


def save(bundle: ModelBundle, path) -> None:
    try:
        Path(path).write_text(bundle.to_json() + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def load(path) -> ModelBundle:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptBundle(f"{path}: not valid JSON ({exc})") from exc
    return ModelBundle.from_dict(d)
