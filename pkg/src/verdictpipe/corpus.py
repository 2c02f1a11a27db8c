"""Local-directory ingestion of judgment documents."""

from __future__ import annotations

import datetime as _dt
import re
import shlex
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ConverterFailed,
    EmptyDirectory,
    EmptyDocument,
    MissingFile,
    UnsupportedExtension,
    VerdictError,
)
from .labeler import Disposition, LabelerConfig, Unlabeled, extract_disposition

ACCEPTED_EXTENSIONS = (".txt", ".pdf")


@dataclass(frozen=True)
class ConverterConfig:
    """External PDF-to-text command; ``{input}`` is replaced by the file path.

    The command must write the extracted text to standard output.
    """

    command: str = "pdftotext -layout -enc UTF-8 {input} -"
    timeout: float = 120.0

    @property
    def converter_id(self) -> str:
        return self.command


@dataclass
class CaseDocument:
    doc_id: str
    raw_text: str
    source_path: Path
    label: Disposition | None = None
    unlabeled_reason: str | None = None

    @property
    def char_count(self) -> int:
        return len(self.raw_text)


@dataclass(frozen=True)
class IngestError:
    doc_id: str
    source_path: Path
    error: str
    message: str


@dataclass
class CorpusManifest:
    documents: list[CaseDocument]
    errors: list[IngestError] = field(default_factory=list)
    created_at: str = ""
    converter_id: str = ""

    @property
    def labeled(self) -> list[CaseDocument]:
        return [d for d in self.documents if d.label is not None]

    def to_text(self) -> str:
        """Manifest file body.

        ``#`` header lines carry metadata; then one
        ``doc_id<TAB>label-or-?<TAB>char_count<TAB>source_path`` line per
        document; per-file failures follow as ``#!error`` lines.
        """
        lines = [f"# created_at\t{self.created_at}", f"# converter\t{self.converter_id}"]
        for d in self.documents:
            lab = d.label.label if d.label is not None else "?"
            lines.append(f"{d.doc_id}\t{lab}\t{d.char_count}\t{d.source_path}")
        for e in self.errors:
            msg = e.message.replace("\t", " ").replace("\n", " ")
            lines.append(f"#!error\t{e.doc_id}\t{e.error}\t{e.source_path}\t{msg}")
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


def _clean(text: str) -> str:
    return text.replace("\x00", "")


def extract_text(path, converter: ConverterConfig | None = None) -> str:
    """Read a .txt file or run the configured converter on a .pdf."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"{path}: no such file")
    ext = path.suffix.lower()
    if ext == ".txt":
        text = path.read_bytes().decode("utf-8", errors="replace")
    elif ext == ".pdf":
        text = _run_converter(path, converter or ConverterConfig())
    else:
        raise UnsupportedExtension(f"{path}: extension {ext!r} not in {ACCEPTED_EXTENSIONS}")
    text = _clean(text)
    if not text.strip():
        raise EmptyDocument(f"{path}: no text")
    return text


def _run_converter(path: Path, converter: ConverterConfig) -> str:
    if "{input}" not in converter.command:
        raise ConverterFailed(f"converter command lacks {{input}}: {converter.command!r}")
    argv = [a.replace("{input}", str(path)) for a in shlex.split(converter.command)]
    try:
        proc = subprocess.run(argv, capture_output=True, timeout=converter.timeout)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise ConverterFailed(f"{path}: {exc}") from exc
    if proc.returncode != 0:
        err = proc.stderr.decode("utf-8", errors="replace").strip().splitlines()
        tail = err[-1] if err else ""
        raise ConverterFailed(f"{path}: converter exited {proc.returncode}: {tail}")
    text = proc.stdout.decode("utf-8", errors="replace")
    if not text.strip():
        raise ConverterFailed(f"{path}: converter produced no output")
    return text


_ID_BAD = re.compile(r"[^a-z0-9_-]+")


def sanitize_id(stem: str) -> str:
    s = _ID_BAD.sub("_", stem.lower()).strip("_")
    return s or "doc"


def assign_ids(paths) -> list[tuple[str, Path]]:
    """Map sorted paths to unique sanitized ids; collisions get ``-2``, ``-3``..."""
    taken: set[str] = set()
    out = []
    for p in sorted(paths, key=lambda p: p.name):
        base = sanitize_id(p.stem)
        doc_id, k = base, 1
        while doc_id in taken:
            k += 1
            doc_id = f"{base}-{k}"
        taken.add(doc_id)
        out.append((doc_id, p))
    return out


def candidate_files(directory) -> list[Path]:
    d = Path(directory)
    return [
        p for p in d.iterdir()
        if p.is_file() and p.suffix.lower() in ACCEPTED_EXTENSIONS
    ]


def read_document(doc_id, path, converter=None, labeler_cfg=None) -> CaseDocument:
    text = extract_text(path, converter)
    label = extract_disposition(text, labeler_cfg)
    doc = CaseDocument(doc_id=doc_id, raw_text=text, source_path=Path(path))
    if isinstance(label, Unlabeled):
        doc.unlabeled_reason = label.reason
    else:
        doc.label = label
    return doc


def ingest_directory(
    directory,
    converter: ConverterConfig | None = None,
    labeler_cfg: LabelerConfig | None = None,
) -> CorpusManifest:
    """Read and label every .txt/.pdf file directly inside ``directory``.

    Per-file failures are recorded in ``manifest.errors`` rather than raised.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFile(f"{directory}: not a directory")
    files = candidate_files(directory)
    if not files:
        raise EmptyDirectory(f"{directory}: no .txt or .pdf files")
    converter = converter or ConverterConfig()
    docs, errors = [], []
    for doc_id, path in assign_ids(files):
        try:
            docs.append(read_document(doc_id, path, converter, labeler_cfg))
        except VerdictError as exc:
            errors.append(IngestError(doc_id, path, exc.name, str(exc)))
    docs.sort(key=lambda d: d.doc_id)
    now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return CorpusManifest(docs, errors, created_at=now, converter_id=converter.converter_id)


def write_corpus(texts, out_dir, prefix: str = "case") -> list[Path]:
    """Write raw texts as ``<prefix>_00000.txt`` files; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    width = max(5, len(str(len(texts))))
    paths = []
    for i, text in enumerate(texts):
        p = out / f"{prefix}_{i:0{width}d}.txt"
        p.write_text(text, encoding="utf-8")
        paths.append(p)
    return paths


def doc_id_for(path) -> str:
    return sanitize_id(Path(path).stem)


__all__ = [
    "ACCEPTED_EXTENSIONS",
    "CaseDocument",
    "ConverterConfig",
    "CorpusManifest",
    "IngestError",
    "candidate_files",
    "doc_id_for",
    "extract_text",
    "ingest_directory",
    "read_document",
    "write_corpus",
]
