"""Single-document prediction with explanations, and the drop-directory watcher."""

from __future__ import annotations

import datetime as _dt
import logging
import os
import threading
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bundle import ModelBundle
from .corpus import ACCEPTED_EXTENSIONS, ConverterConfig, doc_id_for, extract_text
from .errors import EmptyDocument, EmptyVectorWarning, VerdictError
from .labeler import CLASS_NAMES, Disposition, feature_text
from .learners import TrainedModel
from .textprep import ngrams, normalize
from .vectorizer import FeatureVector, vectorize

log = logging.getLogger(__name__)

LEDGER_NAME = "processed.list"


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    predicted: Disposition
    probabilities: tuple[float, float, float]
    explanation: list[tuple[str, float]]
    pipeline_fingerprint: str
    empty_vector: bool = False

    def render(self, timestamp: str | None = None) -> str:
        lines = [f"doc_id: {self.doc_id}", f"predicted: {self.predicted.label}"]
        lines += [f"p({name})={p:.6f}" for name, p in zip(CLASS_NAMES, self.probabilities)]
        if self.empty_vector:
            lines.append("warning: EmptyVectorWarning (no in-vocabulary terms; base-rate prediction)")
        lines.append("top features:")
        lines += [f"  {term}\t{score:+.6f}" for term, score in self.explanation]
        lines.append(f"pipeline: {self.pipeline_fingerprint}")
        if timestamp is not None:
            lines.append(f"generated: {timestamp}")
        return "\n".join(lines) + "\n"


def explain(model: TrainedModel, v: FeatureVector, k: int = 10, terms=None, cls: int | None = None):
    """Top-``k`` (term, contribution) pairs toward class ``cls`` (default: the predicted one).

    Trees use per-feature path attribution, the linear model weight x value,
    the network input-gradient x value. Zero contributions are omitted;
    ordering is by |contribution| descending, then term.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    x = v.dense(model.n_features)
    if cls is None:
        cls = int(np.argmax(model.predict_proba(x[None, :])[0]))
    contrib = model.contributions(x, cls)
    names = terms if terms is not None else [f"f{i}" for i in range(model.n_features)]
    nz = np.flatnonzero(contrib)
    pairs = sorted(((names[i], float(contrib[i])) for i in nz), key=lambda p: (-abs(p[1]), p[0]))
    return pairs[:k]


def predict_document(bundle: ModelBundle, raw_text: str, doc_id: str = "input", k: int = 10) -> Prediction:
    """Run the frozen pipeline of ``bundle`` on one document."""
    if not raw_text.strip():
        raise EmptyDocument(f"{doc_id}: no text")
    text = feature_text(raw_text, bundle.labeler_config)
    bag = ngrams(normalize(text, bundle.prep_config), bundle.prep_config.ngram_max)
    v = vectorize(bag, bundle.vocabulary)
    x = v.dense(bundle.model.n_features)[None, :]
    proba = bundle.model.predict_proba(x)[0]
    cls = int(np.argmax(proba))
    empty = len(v) == 0
    if empty:
        warnings.warn(f"{doc_id}: no in-vocabulary terms", EmptyVectorWarning, stacklevel=2)
        explanation = []
    else:
        explanation = explain(bundle.model, v, k, bundle.vocabulary.terms, cls)
    return Prediction(
        doc_id,
        Disposition(cls),
        tuple(float(p) for p in proba),
        explanation,
        bundle.fingerprint,
        empty,
    )


@dataclass(frozen=True)
class WatchConfig:
    in_dir: Path
    out_dir: Path
    poll_interval: float = 1.0
    stability_window: float = 2.0
    extensions: tuple[str, ...] = ACCEPTED_EXTENSIONS
    converter: ConverterConfig = field(default_factory=ConverterConfig)
    top_k: int = 10

    def __post_init__(self):
        object.__setattr__(self, "in_dir", Path(self.in_dir))
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        if self.in_dir.resolve() == self.out_dir.resolve():
            raise ValueError("in_dir and out_dir must differ")


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(f".{path.name}.tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class Watcher:
    """Polls ``in_dir``; each stable new file yields one prediction or error file.

    Processed doc_ids are appended to ``out_dir/processed.list`` so a
    restarted watcher skips them.
    """

    def __init__(self, bundle: ModelBundle, cfg: WatchConfig, clock=time.monotonic):
        self.bundle = bundle
        self.cfg = cfg
        self.clock = clock
        for d in (cfg.in_dir, cfg.out_dir):
            if not d.is_dir():
                raise FileNotFoundError(f"{d}: not a directory")
        self.ledger = cfg.out_dir / LEDGER_NAME
        self.processed: set[str] = set()
        if self.ledger.exists():
            self.processed = {ln.strip() for ln in self.ledger.read_text("utf-8").splitlines() if ln.strip()}
        # name -> ((size, mtime_ns), first time that signature was seen)
        self._pending: dict[str, tuple[tuple[int, int], float]] = {}

    def _candidates(self):
        for p in sorted(self.cfg.in_dir.iterdir()):
            if p.is_file() and not p.name.startswith(".") and p.suffix.lower() in self.cfg.extensions:
                yield p

    def poll_once(self) -> list[Path]:
        """One scan of ``in_dir``; returns the output files written."""
        now = self.clock()
        written = []
        present = set()
        for path in self._candidates():
            doc_id = doc_id_for(path)
            if doc_id in self.processed:
                continue
            present.add(path.name)
            try:
                st = path.stat()
            except FileNotFoundError:
                continue
            sig = (st.st_size, st.st_mtime_ns)
            seen = self._pending.get(path.name)
            if seen is None or seen[0] != sig:
                self._pending[path.name] = (sig, now)
                continue
            if now - seen[1] < self.cfg.stability_window:
                continue
            written.append(self.process(path, doc_id))
            del self._pending[path.name]
        for name in set(self._pending) - present:
            del self._pending[name]
        return written

    def process(self, path: Path, doc_id: str) -> Path:
        out = self.cfg.out_dir
        try:
            text = extract_text(path, self.cfg.converter)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", EmptyVectorWarning)
                pred = predict_document(self.bundle, text, doc_id, self.cfg.top_k)
            target = out / f"{doc_id}.prediction.txt"
            _write_atomic(target, pred.render(_now()))
            log.info("%s -> %s (%s)", path.name, target.name, pred.predicted.label)
        except VerdictError as exc:
            target = out / f"{doc_id}.error.txt"
            _write_atomic(target, f"error: {exc.name}\nmessage: {exc}\nsource: {path}\ngenerated: {_now()}\n")
            log.warning("%s failed: %s: %s", path.name, exc.name, exc)
        self.processed.add(doc_id)
        with open(self.ledger, "a", encoding="utf-8") as fh:
            fh.write(doc_id + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        return target

    def run(self, stop: threading.Event | None = None, max_polls: int | None = None) -> None:
        stop = stop or threading.Event()
        polls = 0
        while not stop.is_set():
            if not self.cfg.in_dir.is_dir():
                raise FileNotFoundError(f"{self.cfg.in_dir}: input directory vanished")
            self.poll_once()
            polls += 1
            if max_polls is not None and polls >= max_polls:
                break
            stop.wait(self.cfg.poll_interval)


def watch(bundle: ModelBundle, cfg: WatchConfig, stop: threading.Event | None = None) -> None:
    """Serve predictions for files dropped into ``cfg.in_dir`` until ``stop`` is set."""
    Watcher(bundle, cfg).run(stop)
