"""Pipeline driver: init -> prep -> train -> serve as subcommands.

Each stage records its effective settings in the corpus config file, and
later stages refuse to run until their predecessors have (clear errors
instead of confusing downstream failures).  Failures print one JSON line
to stderr and exit nonzero so scripts can parse them.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from importlib import resources
from pathlib import Path

from . import lda, project, server
from .corpus import (
    DEFAULT_MIN_FREQ,
    apply_stoplist,
    build_corpus,
    frequency_report,
    idf_report,
    load_corpus,
    load_stoplist,
    prep_thresholds,
    save_corpus,
)
from .errors import ModelMissing, NoDocuments
from .segment import TokenSequence, load_lexicon, segment

DEFAULT_LEXICON = "data/ancient_words.txt"
PREVIEW_ROWS = 20


def _bundled(name: str):
    return resources.files("topicshelf").joinpath(name)


def _read_documents(corpus_dir: Path) -> list[tuple[str, str]]:
    paths = sorted(corpus_dir.rglob("*.txt"))
    docs = [
        (p.relative_to(corpus_dir).as_posix(), p.read_text(encoding="utf-8"))
        for p in paths
    ]
    if not docs:
        raise NoDocuments(f"no .txt documents under {corpus_dir}")
    return docs


def _tokenize(docs: list[tuple[str, str]], tokenizer: str, dictionary) -> list[TokenSequence]:
    if tokenizer == "plain":
        return [TokenSequence(doc_id, text.split()) for doc_id, text in docs]
    # "ltc": dictionary segmentation, character frequencies from this corpus
    char_freq = Counter(ch for _, text in docs for ch in text)
    lex_path = dictionary if dictionary else _bundled(DEFAULT_LEXICON)
    lexicon = load_lexicon(lex_path, char_freq)
    return [segment(text, lexicon, doc_id=doc_id) for doc_id, text in docs]


def cmd_init(args) -> int:
    corpus_dir = Path(args.corpus_location).resolve()
    if not corpus_dir.is_dir():
        raise NoDocuments(f"{corpus_dir}: not a directory")
    docs = _read_documents(corpus_dir)
    sequences = _tokenize(docs, args.tokenizer, args.dictionary)
    corpus = build_corpus(sequences, min_freq=args.freq)

    out_dir = Path(args.output).resolve()
    out_dir.mkdir(parents=True, exist_ok=True)
    name = corpus_dir.name
    corpus_file = out_dir / f"{name}.corpus"
    vocab_file = out_dir / f"{name}.vocab.txt"
    save_corpus(corpus, corpus_file, vocab_file)

    parser = project.new_config()
    parser["corpus"] = {
        "name": name,
        "corpus_file": str(corpus_file),
        "vocab_file": str(vocab_file),
        "documents_dir": str(corpus_dir),
        "tokenizer": args.tokenizer,
        "min_freq": str(args.freq),
    }
    config_path = out_dir / f"{name}.ini"
    project.write_config(parser, config_path)
    print(
        f"init: {len(docs)} documents, {corpus.n_tokens} tokens, "
        f"{len(corpus.vocabulary.id_to_word)} vocabulary types "
        f"(dropped words occurring <= {args.freq} times)"
    )
    print(f"config written to {config_path}")
    return 0


def _prompt_bounds(corpus) -> tuple[int, int | None]:
    """Interactive threshold choice, shown the extremes of the frequency table."""
    table = frequency_report(corpus, len(corpus.vocabulary.id_to_word))
    print("most frequent words:")
    for word, count in table[:PREVIEW_ROWS]:
        print(f"  {count:>8}  {word}")
    print("least frequent words:")
    for word, count in table[-PREVIEW_ROWS:]:
        print(f"  {count:>8}  {word}")
    raw_low = input("low threshold (keep words with count >= this) [0]: ").strip()
    raw_high = input("high threshold (keep words with count <= this) [none]: ").strip()
    return int(raw_low) if raw_low else 0, int(raw_high) if raw_high else None


def cmd_prep(args) -> int:
    parser = project.read_config(args.config)
    corpus = load_corpus(
        parser.get("corpus", "corpus_file"), parser.get("corpus", "vocab_file")
    )

    low, high = args.low, args.high
    if low is None and high is None and sys.stdin.isatty():
        low, high = _prompt_bounds(corpus)
    low = 0 if low is None else low

    before_types = len(corpus.vocabulary.id_to_word)
    before_tokens = corpus.n_tokens
    if args.stopword_file:
        corpus = apply_stoplist(corpus, load_stoplist(args.stopword_file))
        record = corpus.provenance["filters"][-1]
        print(
            f"stoplist: removed {record['types_removed']} types, "
            f"{before_tokens - corpus.n_tokens} tokens"
        )
    mid_tokens = corpus.n_tokens
    corpus = prep_thresholds(corpus, low=low, high=high)
    record = corpus.provenance["filters"][-1]
    print(
        f"thresholds [{low}, {'inf' if high is None else high}]: removed "
        f"{record['types_removed_low']} rare types ({record['tokens_removed_low']} tokens), "
        f"{record['types_removed_high']} common types ({record['tokens_removed_high']} tokens)"
    )
    print(
        f"prep: {before_types} -> {len(corpus.vocabulary.id_to_word)} types, "
        f"{before_tokens} -> {corpus.n_tokens} tokens"
        f" ({mid_tokens - corpus.n_tokens} removed by thresholds)"
    )

    config_dir = Path(args.config).resolve().parent
    name = parser.get("corpus", "name")
    corpus_file = config_dir / f"{name}.prep.corpus"
    vocab_file = config_dir / f"{name}.prep.vocab.txt"
    save_corpus(corpus, corpus_file, vocab_file)

    parser["prep"] = {
        "completed": "true",
        "corpus_file": str(corpus_file),
        "vocab_file": str(vocab_file),
        "stopword_file": str(args.stopword_file) if args.stopword_file else "",
        "low": str(low),
        "high": "" if high is None else str(high),
    }
    project.write_config(parser, args.config)
    return 0


def cmd_train(args) -> int:
    parser = project.read_config(args.config)
    project.require_stage(parser, "prep", "run `prep` before `train`")
    corpus = load_corpus(*project.corpus_paths(parser))
    if len(set(args.k)) != len(args.k):
        raise ValueError("K values must be distinct")

    config_dir = Path(args.config).resolve().parent
    name = parser.get("corpus", "name")
    models_dir = config_dir / f"{name}.models"
    models_dir.mkdir(parents=True, exist_ok=True)

    for k in args.k:
        config = lda.TrainConfig(
            k=k, iterations=args.iter, seed=lda.derive_seed(args.seed, k)
        )
        started = time.perf_counter()
        model = lda.train(corpus, config)
        elapsed = time.perf_counter() - started
        path = project.model_path(models_dir, k)
        lda.save_model(model, path)
        print(f"k={k}: {args.iter} sweeps in {elapsed:.2f} s -> {path}")

    parser["train"] = {
        "models_dir": str(models_dir),
        "ks": " ".join(str(k) for k in sorted(args.k)),
        "iterations": str(args.iter),
        "seed": str(args.seed),
    }
    project.write_config(parser, args.config)
    return 0


def cmd_serve(args) -> int:
    parser = project.read_config(args.config)
    if not parser.has_section("train"):
        raise ModelMissing("no trained models recorded (run `train` first)")

    service = server.ServiceConfig(
        config_path=args.config,
        host=args.host,
        port=args.port,
        fulltext_enabled=args.fulltext,
        static_dir=args.static_dir,
    )
    host, port = server.resolve_host_port(service, parser)
    server._check_port_free(host, port)  # fail before claiming to serve
    parser["serve"] = {
        "host": host,
        "port": str(port),
        "fulltext": "true" if args.fulltext else "false",
        "static_dir": args.static_dir or parser.get("serve", "static_dir", fallback=""),
    }
    project.write_config(parser, args.config)
    print(f"serving on http://{host}:{port}/ (fulltext={'on' if args.fulltext else 'off'})")
    server.serve(service)
    return 0


def cmd_report(args) -> int:
    parser = project.read_config(args.config)
    corpus = load_corpus(*project.corpus_paths(parser))
    if args.kind == "freq":
        for word, count in frequency_report(corpus, args.n):
            print(f"{count}\t{word}")
    else:
        for word, value in idf_report(corpus)[: args.n]:
            print(f"{value:.6f}\t{word}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="topicshelf",
        description="build, train, and serve explorable topic models",
    )
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="segment documents and build the corpus")
    p.add_argument("corpus_location", help="directory of plain-text documents")
    p.add_argument("--tokenizer", choices=("ltc", "plain"), default="ltc")
    p.add_argument("--freq", type=int, default=DEFAULT_MIN_FREQ,
                   help="drop words occurring this many times or fewer")
    p.add_argument("--dictionary", default=None,
                   help="segmentation word list (default: bundled classical list)")
    p.add_argument("--output", default=".", help="where to write corpus + config")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("prep", help="apply stoplist and frequency thresholds")
    p.add_argument("config")
    p.add_argument("--stopword-file", default=None)
    p.add_argument("--low", type=int, default=None)
    p.add_argument("--high", type=int, default=None)
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("train", help="train one model per K")
    p.add_argument("config")
    p.add_argument("-k", type=int, nargs="+", required=True)
    p.add_argument("--iter", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    for alias in ("serve", "launch"):
        p = sub.add_parser(alias, help="serve the JSON API and UI")
        p.add_argument("config")
        p.add_argument("--fulltext", action="store_true",
                       help="expose full document texts over the API")
        p.add_argument("--port", type=int, default=None)
        p.add_argument("--host", default=None)
        p.add_argument("--static-dir", default=None)
        p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="print frequency or idf tables")
    p.add_argument("config")
    p.add_argument("--kind", choices=("freq", "idf"), default="freq")
    p.add_argument("-n", type=int, default=PREVIEW_ROWS)
    p.set_defaults(func=cmd_report)
    return root


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130
    except Exception as exc:
        line = {"error": type(exc).__name__, "detail": str(exc)}
        print(json.dumps(line, ensure_ascii=False), file=sys.stderr)
        return 1
