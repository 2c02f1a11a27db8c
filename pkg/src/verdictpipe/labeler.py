"""Disposition extraction from a judgment's operative order."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .errors import ConfigError


class Disposition(enum.IntEnum):
    """Outcome class; the integer value fixes report and matrix order."""

    ALLOW = 0
    DISMISS = 1
    DISPOSE = 2

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, s: str) -> "Disposition":
        try:
            return cls[s.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown disposition {s!r}") from None


CLASS_NAMES = tuple(d.label for d in Disposition)


@dataclass(frozen=True)
class Unlabeled:
    reason: str  # "NoMatch" or "Empty"


DEFAULT_PATTERNS: tuple[tuple[str, Disposition], ...] = (
    (r"appeal(s)? (is|are|stand(s)?) allowed", Disposition.ALLOW),
    (r"appeal(s)? allowed", Disposition.ALLOW),
    (r"appeal(s)? (is|are|stand(s)?) dismissed", Disposition.DISMISS),
    (r"appeal(s)? dismissed", Disposition.DISMISS),
    (r"petition(s)? (is|are) dismissed", Disposition.DISMISS),
    (r"disposed of", Disposition.DISPOSE),
    (r"stand(s)? disposed", Disposition.DISPOSE),
)


@dataclass(frozen=True)
class LabelerConfig:
    tail_sentences: int = 20
    patterns: tuple[tuple[str, Disposition], ...] = DEFAULT_PATTERNS
    # drop every sentence matching a pattern before featurization (label-leakage guard)
    exclude_from_features: bool = False
    _compiled: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.tail_sentences < 1:
            raise ConfigError("tail_sentences must be >= 1")
        pats = tuple((p, Disposition(d)) for p, d in self.patterns)
        if not pats:
            raise ConfigError("labeler needs at least one pattern")
        missing = set(Disposition) - {d for _, d in pats}
        if missing:
            raise ConfigError(f"no pattern for {sorted(m.label for m in missing)}")
        try:
            compiled = tuple((re.compile(p), d) for p, d in pats)
        except re.error as exc:
            raise ConfigError(f"bad labeler pattern: {exc}") from exc
        object.__setattr__(self, "patterns", pats)
        object.__setattr__(self, "_compiled", compiled)

    def to_dict(self) -> dict:
        return {
            "tail_sentences": self.tail_sentences,
            "patterns": [[d.label, p] for p, d in self.patterns],
            "exclude_from_features": self.exclude_from_features,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LabelerConfig":
        unknown = set(d) - {"tail_sentences", "patterns", "exclude_from_features"}
        if unknown:
            raise ConfigError(f"unknown labeler_config keys: {sorted(unknown)}")
        kw = dict(d)
        if "patterns" in kw:
            kw["patterns"] = tuple((p, Disposition.parse(lab)) for lab, p in kw["patterns"])
        return cls(**kw)


def load_patterns(path) -> tuple[tuple[str, Disposition], ...]:
    """Read a ``label<TAB>pattern`` file; order is significant."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            label, sep, pattern = line.partition("\t")
            if not sep or not pattern:
                raise ConfigError(f"{path}:{lineno}: expected label<TAB>pattern")
            out.append((pattern, Disposition.parse(label)))
    return tuple(out)


_SENTENCE_END = re.compile(r"(?<=[.?!;])\s+")
_WS = re.compile(r"\s+")


def split_sentences(text: str) -> list[str]:
    return [s for s in _SENTENCE_END.split(text.strip()) if s]


def _match(sentence: str, cfg: LabelerConfig):
    s = _WS.sub(" ", sentence.lower())
    for rx, disp in cfg._compiled:
        if rx.search(s):
            return disp
    return None


def extract_disposition(raw_text: str, cfg: LabelerConfig | None = None):
    """Label a judgment from its trailing sentences.

    The last matching sentence among the final ``tail_sentences`` decides;
    within a sentence the first pattern in config order wins. Returns a
    :class:`Disposition` or an :class:`Unlabeled` value.
    """
    cfg = cfg or LabelerConfig()
    if not raw_text.strip():
        return Unlabeled("Empty")
    for sentence in reversed(split_sentences(raw_text)[-cfg.tail_sentences :]):
        disp = _match(sentence, cfg)
        if disp is not None:
            return disp
    return Unlabeled("NoMatch")


def strip_disposition_sentences(raw_text: str, cfg: LabelerConfig | None = None) -> str:
    """Remove every sentence that matches a disposition pattern."""
    cfg = cfg or LabelerConfig()
    return " ".join(s for s in split_sentences(raw_text) if _match(s, cfg) is None)


def feature_text(raw_text: str, cfg: LabelerConfig) -> str:
    """Text that feeds the vectorizer under ``cfg``."""
    if cfg.exclude_from_features:
        return strip_disposition_sentences(raw_text, cfg)
    return raw_text
