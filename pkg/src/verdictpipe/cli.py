"""``verdictpipe`` command line: ingest, dataset, train, evaluate, predict, watch, synth.

Exit status is 0 on success, 1 on usage or configuration errors and 2 on
runtime errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import threading
import warnings
from pathlib import Path

from . import bundle as bundle_io
from .bundle import ModelBundle
from .config import CliConfig, layered
from .corpus import ingest_directory, read_document, write_corpus, doc_id_for
from .errors import ConfigError, EmptyDataset, EmptyVectorWarning, IoFailure, VerdictError
from .evaluation import classification_report, generate_synthetic_corpus, split_indices
from .learners import train
from .pipeline import fit_vocabulary, labeled_only, make_dataset
from .predictsvc import WatchConfig, Watcher, predict_document
from .textprep import PrepConfig
from .labeler import LabelerConfig
from .vectorizer import Dataset, FeatureVector, Vocabulary, export_csv, read_csv

log = logging.getLogger("verdictpipe")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration (flags override --config, which overrides defaults)")
    g.add_argument("--config", help="JSON config file (default: $VERDICTPIPE_CONFIG)")
    g.add_argument("--min-token-len", type=int)
    g.add_argument("--stopwords", dest="stopwords_file", help="stopword file, one word per line")
    g.add_argument("--ngram-max", type=int)
    g.add_argument("--stemmer", choices=["porter", "none"])
    g.add_argument("--tail-sentences", type=int)
    g.add_argument("--patterns", dest="patterns_file", help="label<TAB>pattern file")
    ex = g.add_mutually_exclusive_group()
    ex.add_argument("--exclude-dispositions", dest="exclude", action="store_const", const=True,
                    help="drop operative-order sentences from the features")
    ex.add_argument("--include-dispositions", dest="exclude", action="store_const", const=False)
    g.add_argument("--min-df", type=float, dest="min_df_ratio")
    g.add_argument("--model", dest="kind", help="gbt | rf | svm | mlp")
    g.add_argument("--seed", type=int, help="learner seed")
    g.add_argument("--hyper", action="append", default=[], metavar="KEY=VALUE",
                   help="learner hyperparameter override (repeatable)")
    g.add_argument("--test-ratio", type=float)
    g.add_argument("--split-seed", type=int)
    g.add_argument("--converter", help="PDF converter command with an {input} placeholder")
    g.add_argument("--top-k", type=int)


def _hyper_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _flags(a: argparse.Namespace) -> dict:
    hyper = {}
    for item in a.hyper:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--hyper expects KEY=VALUE, got {item!r}")
        hyper[key] = _hyper_value(val)
    get = lambda name: getattr(a, name, None)  # noqa: E731
    return {
        "prep": {"min_token_len": a.min_token_len, "stopwords_file": a.stopwords_file,
                 "ngram_max": a.ngram_max, "stemmer": a.stemmer},
        "labeler": {"tail_sentences": a.tail_sentences, "patterns_file": a.patterns_file,
                    "exclude_disposition_sentences": a.exclude},
        "vectorizer": {"min_df_ratio": a.min_df_ratio},
        "learner": {"kind": a.kind, "seed": a.seed, "hyper": hyper or None},
        "split": {"test_ratio": a.test_ratio, "seed": a.split_seed},
        "watch": {"poll_interval": get("poll_interval"), "stability_window": get("stability_window"),
                  "top_k": a.top_k},
        "converter": {"command": a.converter},
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verdictpipe", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("ingest", help="read a directory and print its manifest")
    s.add_argument("dir")
    s.add_argument("--out", help="write the manifest here instead of stdout")
    _common(s)

    s = sub.add_parser("dataset", help="normalize, label and vectorize a directory to CSV")
    s.add_argument("dir")
    s.add_argument("--out", required=True, help="CSV path; the vocabulary goes to <out>.vocab.json")
    _common(s)

    s = sub.add_parser("train", help="train one model and save a bundle")
    s.add_argument("source", help="document directory, or a CSV written by `dataset`")
    s.add_argument("--out", required=True, help="bundle path")
    _common(s)

    s = sub.add_parser("evaluate", help="stratified holdout evaluation with a report")
    s.add_argument("dir")
    s.add_argument("--json", dest="json_out", help="also write the report as JSON here")
    s.add_argument("--confusion-out", help="also write the normalized confusion matrix CSV here")
    _common(s)

    s = sub.add_parser("predict", help="predict one document with a saved bundle")
    s.add_argument("file")
    s.add_argument("--bundle", required=True)
    _common(s)

    s = sub.add_parser("watch", help="serve predictions for files dropped into a directory")
    s.add_argument("--bundle", required=True)
    s.add_argument("--in", dest="in_dir", required=True)
    s.add_argument("--out", dest="out_dir", required=True)
    s.add_argument("--poll-interval", type=float)
    s.add_argument("--stability-window", type=float)
    _common(s)

    s = sub.add_parser("synth", help="write a synthetic labeled corpus")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    return p


def _vocab_sidecar(csv_path) -> Path:
    return Path(str(csv_path) + ".vocab.json")


def _labeled_docs(directory, cfg: CliConfig):
    manifest = ingest_directory(directory, cfg.converter, cfg.labeler)
    for e in manifest.errors:
        log.warning("skipped %s: %s: %s", e.source_path, e.error, e.message)
    docs = labeled_only(manifest.documents)
    if not docs:
        raise EmptyDataset(f"{directory}: no labeled documents")
    return docs


def cmd_ingest(a, cfg: CliConfig) -> int:
    manifest = ingest_directory(a.dir, cfg.converter, cfg.labeler)
    if a.out:
        manifest.write(a.out)
    else:
        sys.stdout.write(manifest.to_text())
    return 0


def cmd_dataset(a, cfg: CliConfig) -> int:
    docs = _labeled_docs(a.dir, cfg)
    vocab = fit_vocabulary(docs, cfg.prep, cfg.labeler, cfg.min_df_ratio)
    ds = make_dataset(docs, vocab, cfg.prep, cfg.labeler)
    export_csv(ds, a.out)
    side = {
        "prep_config": cfg.prep.to_dict(),
        "labeler_config": cfg.labeler.to_dict(),
        "vocabulary": vocab.to_dict(),
        "doc_ids": ds.doc_ids,
    }
    _vocab_sidecar(a.out).write_text(json.dumps(side, sort_keys=True) + "\n", encoding="utf-8")
    print(f"{len(ds)} documents x {ds.n_features} features -> {a.out}")
    return 0


def _dataset_from_csv(path):
    side_path = _vocab_sidecar(path)
    if not side_path.exists():
        raise IoFailure(f"{side_path}: vocabulary sidecar missing (written by `dataset`)")
    side = json.loads(side_path.read_text(encoding="utf-8"))
    vocab = Vocabulary.from_dict(side["vocabulary"])
    names, X, labels = read_csv(path)
    if tuple(names) != vocab.terms:
        raise IoFailure(f"{path}: header does not match {side_path}")
    doc_ids = side.get("doc_ids") or [f"row{i:06d}" for i in range(len(labels))]
    ds = Dataset([FeatureVector.from_dense(x) for x in X], labels, vocab.terms, doc_ids)
    prep = PrepConfig.from_dict(side["prep_config"])
    labeler = LabelerConfig.from_dict(side["labeler_config"])
    return ds, vocab, prep, labeler


def cmd_train(a, cfg: CliConfig) -> int:
    src = Path(a.source)
    if src.is_dir():
        docs = _labeled_docs(src, cfg)
        prep, labeler = cfg.prep, cfg.labeler
        vocab = fit_vocabulary(docs, prep, labeler, cfg.min_df_ratio)
        ds = make_dataset(docs, vocab, prep, labeler)
    else:
        ds, vocab, prep, labeler = _dataset_from_csv(src)
    model = train(ds, cfg.learner)
    b = ModelBundle(prep, labeler, vocab, model)
    bundle_io.save(b, a.out)
    print(f"trained {cfg.learner.kind} on {len(ds)} documents, {len(vocab)} features -> {a.out}")
    return 0


def evaluate_directory(directory, cfg: CliConfig):
    """Split documents, fit the vocabulary and model on the training part, report on the rest."""
    docs = _labeled_docs(directory, cfg)
    tr, te = split_indices([d.label for d in docs], [d.doc_id for d in docs], cfg.split)
    train_docs = [docs[i] for i in tr]
    test_docs = [docs[i] for i in te]
    vocab = fit_vocabulary(train_docs, cfg.prep, cfg.labeler, cfg.min_df_ratio)
    ds_tr = make_dataset(train_docs, vocab, cfg.prep, cfg.labeler)
    ds_te = make_dataset(test_docs, vocab, cfg.prep, cfg.labeler)
    model = train(ds_tr, cfg.learner)
    pred = model.predict(ds_te.X())
    return classification_report(ds_te.y(), pred), ModelBundle(cfg.prep, cfg.labeler, vocab, model)


def cmd_evaluate(a, cfg: CliConfig) -> int:
    report, _ = evaluate_directory(a.dir, cfg)
    sys.stdout.write(f"{cfg.learner.kind} classifier:\n\n")
    sys.stdout.write(report.render())
    sys.stdout.write("\nnormalized confusion matrix (rows = true):\n")
    sys.stdout.write(report.confusion.to_csv())
    if a.json_out:
        Path(a.json_out).write_text(report.to_json(), encoding="utf-8")
    if a.confusion_out:
        Path(a.confusion_out).write_text(report.confusion.to_csv(), encoding="utf-8")
    return 0


def cmd_predict(a, cfg: CliConfig) -> int:
    b = bundle_io.load(a.bundle)
    doc = read_document(doc_id_for(a.file), a.file, cfg.converter, b.labeler_config)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyVectorWarning)
        pred = predict_document(b, doc.raw_text, doc.doc_id, int(cfg.watch["top_k"]))
    sys.stdout.write(pred.render())
    return 0


def cmd_watch(a, cfg: CliConfig) -> int:
    b = bundle_io.load(a.bundle)
    wc = WatchConfig(
        a.in_dir,
        a.out_dir,
        poll_interval=float(cfg.watch["poll_interval"]),
        stability_window=float(cfg.watch["stability_window"]),
        converter=cfg.converter,
        top_k=int(cfg.watch["top_k"]),
    )
    stop = threading.Event()
    log.info("watching %s -> %s (bundle %s)", wc.in_dir, wc.out_dir, b.fingerprint)
    try:
        Watcher(b, wc).run(stop)
    except KeyboardInterrupt:
        stop.set()
    return 0


def cmd_synth(a) -> int:
    corpus = generate_synthetic_corpus(a.n, a.seed)
    paths = write_corpus([text for text, _ in corpus], a.out)
    print(f"wrote {len(paths)} documents to {a.out}")
    return 0


COMMANDS = {
    "ingest": cmd_ingest,
    "dataset": cmd_dataset,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "watch": cmd_watch,
}


def resolve(argv) -> tuple[argparse.Namespace, CliConfig | None]:
    """Parse ``argv`` and merge defaults, config file and flags. ``synth`` takes no config."""
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command is None:
        parser.error("a subcommand is required")
    if a.command == "synth":
        if a.n < 30:
            parser.error("synth: --n must be at least 30")
        return a, None
    return a, CliConfig.from_dict(layered(a.config, _flags(a)))


def run(argv=None) -> int:
    try:
        a, cfg = resolve(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"verdictpipe: configuration error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"verdictpipe: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(
        level=logging.INFO if a.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if cfg is None:
            return cmd_synth(a)
        return COMMANDS[a.command](a, cfg)
    except VerdictError as exc:
        print(f"verdictpipe: {exc.name}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"verdictpipe: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
