"""Layered configuration: defaults < JSON config file < command-line flags."""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .corpus import ConverterConfig
from .errors import ConfigError
from .evaluation import SplitConfig
from .labeler import DEFAULT_PATTERNS, LabelerConfig, load_patterns
from .learners import DEFAULT_SEED, LearnerSpec
from .textprep import PrepConfig, default_stopwords, load_stopwords

ENV_VAR = "VERDICTPIPE_CONFIG"

DEFAULTS: dict = {
    "prep": {"min_token_len": 3, "stopwords_file": None, "ngram_max": 4, "stemmer": "porter"},
    "labeler": {"tail_sentences": 20, "patterns_file": None, "exclude_disposition_sentences": False},
    "vectorizer": {"min_df_ratio": 0.10},
    "learner": {"kind": "gbt", "seed": DEFAULT_SEED, "hyper": {}},
    "split": {"test_ratio": 0.20, "seed": 42},
    "watch": {"poll_interval": 1.0, "stability_window": 2.0, "top_k": 10},
    "converter": {"command": ConverterConfig.command, "timeout": ConverterConfig.timeout},
}

# sections whose values are free-form maps rather than fixed keys
_OPEN_KEYS = {("learner", "hyper")}


def _check_keys(d: dict, schema: dict, where: str = "") -> None:
    if not isinstance(d, dict):
        raise ConfigError(f"{where or 'config'}: expected an object")
    for key, val in d.items():
        path = f"{where}.{key}" if where else key
        if key not in schema:
            raise ConfigError(f"unknown config key {path!r}")
        if isinstance(schema[key], dict) and tuple(path.split(".")) not in _OPEN_KEYS:
            _check_keys(val, schema[key], path)


def merge(base: dict, override: dict) -> dict:
    """Recursive merge; ``None`` values in ``override`` leave ``base`` untouched."""
    out = copy.deepcopy(base)
    for key, val in override.items():
        if val is None:
            continue
        if isinstance(val, dict) and isinstance(out.get(key), dict) and key != "hyper":
            out[key] = merge(out[key], val)
        elif key == "hyper" and isinstance(out.get(key), dict):
            out[key] = {**out[key], **val}
        else:
            out[key] = val
    return out


def load_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    _check_keys(data, DEFAULTS)
    return data


def layered(config_path=None, flags: dict | None = None) -> dict:
    """Defaults, then the config file (explicit path or $VERDICTPIPE_CONFIG), then flags."""
    cfg = copy.deepcopy(DEFAULTS)
    path = config_path or os.environ.get(ENV_VAR)
    if path:
        cfg = merge(cfg, load_file(path))
    if flags:
        _check_keys(flags, DEFAULTS)
        cfg = merge(cfg, flags)
    return cfg


@dataclass(frozen=True)
class CliConfig:
    prep: PrepConfig
    labeler: LabelerConfig
    min_df_ratio: float
    learner: LearnerSpec
    split: SplitConfig
    watch: dict
    converter: ConverterConfig

    @classmethod
    def from_dict(cls, d: dict) -> "CliConfig":
        try:
            p = d["prep"]
            stopwords = load_stopwords(p["stopwords_file"]) if p["stopwords_file"] else default_stopwords()
            prep = PrepConfig(p["min_token_len"], stopwords, p["ngram_max"], p["stemmer"])
            lab = d["labeler"]
            patterns = load_patterns(lab["patterns_file"]) if lab["patterns_file"] else DEFAULT_PATTERNS
            labeler = LabelerConfig(lab["tail_sentences"], patterns, bool(lab["exclude_disposition_sentences"]))
            le = d["learner"]
            learner = LearnerSpec(le["kind"], dict(le["hyper"]), int(le["seed"]))
            split = SplitConfig(float(d["split"]["test_ratio"]), int(d["split"]["seed"]))
            conv = ConverterConfig(d["converter"]["command"], float(d["converter"]["timeout"]))
            return cls(prep, labeler, float(d["vectorizer"]["min_df_ratio"]), learner, split, dict(d["watch"]), conv)
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError, OSError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc
