"""The pipeline's shared config file: one ini per corpus.

Each stage records its effective settings here, so the file doubles as a
provenance trail.  Paths are stored absolute; sections appear as their
stage runs, and later stages check for them to enforce pipeline order.
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .errors import ConfigMissing

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8765
MODEL_SUFFIX = ".model"


def new_config() -> configparser.ConfigParser:
    return configparser.ConfigParser()


def read_config(config_path) -> configparser.ConfigParser:
    path = Path(config_path)
    if not path.is_file():
        raise ConfigMissing(f"{path}: no such config file (run `init` first)")
    parser = configparser.ConfigParser()
    parser.read(path, encoding="utf-8")
    if not parser.has_section("corpus"):
        raise ConfigMissing(f"{path}: missing [corpus] section")
    return parser


def write_config(parser: configparser.ConfigParser, config_path) -> None:
    with open(config_path, "w", encoding="utf-8", newline="\n") as fh:
        parser.write(fh)


def require_stage(parser: configparser.ConfigParser, stage: str, hint: str) -> None:
    """Pipeline order check: the named section must already be recorded."""
    if not parser.has_section(stage):
        raise ConfigMissing(f"stage {stage!r} has not run yet ({hint})")


def corpus_paths(parser: configparser.ConfigParser) -> tuple[Path, Path]:
    """Current corpus files: the prepped ones once prep has run."""
    section = "prep" if parser.has_section("prep") else "corpus"
    return (
        Path(parser.get(section, "corpus_file")),
        Path(parser.get(section, "vocab_file")),
    )


def model_path(models_dir, k: int) -> Path:
    return Path(models_dir) / f"k{k}{MODEL_SUFFIX}"


def available_ks(models_dir) -> list[int]:
    """K values with a model file on disk, ascending."""
    out = []
    directory = Path(models_dir)
    if not directory.is_dir():
        return out
    for path in directory.glob(f"k*{MODEL_SUFFIX}"):
        stem = path.name[1 : -len(MODEL_SUFFIX)]
        if stem.isdigit():
            out.append(int(stem))
    return sorted(out)
