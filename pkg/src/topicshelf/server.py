"""Read-only JSON API over a trained model suite, plus static UI hosting.

All state is loaded once at startup and never mutated, so every endpoint
is a pure read and identical requests get byte-identical responses for
the lifetime of the process.  Anything that would fail lazily (missing
models, vocabulary drift between corpus and model files) fails at load
time instead.
"""

from __future__ import annotations

import os
import socket
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import explore, lda, project, topicmap
from .corpus import Corpus, load_corpus
from .errors import (
    IndexOutOfRange,
    ModelMissing,
    NoKnownTerms,
    PortInUse,
    TooFewPoints,
    UnknownDocument,
    UnknownTerm,
)
from .lda import ModelSuite, TopicModel
from .topicmap import TopicMapLayout

SCHEMA_VERSION = 1
HOST_ENV = "TOPICSHELF_HOST"
PORT_ENV = "TOPICSHELF_PORT"


@dataclass(frozen=True)
class ServiceConfig:
    config_path: str
    host: str | None = None
    port: int | None = None
    fulltext_enabled: bool = False
    ks: tuple[int, ...] | None = None  # None = every model file found
    static_dir: str | None = None


@dataclass(eq=False)
class ExplorerState:
    """Everything the endpoints read; immutable after load."""

    corpus: Corpus
    suite: ModelSuite
    layout: TopicMapLayout | None
    documents_dir: Path | None
    fulltext_enabled: bool
    static_dir: Path | None = None
    _texts: dict[str, str] = field(default_factory=dict)

    def model(self, k: int) -> TopicModel:
        if k not in self.suite.models:
            raise ModelMissing(f"no model with K={k} loaded")
        return self.suite.models[k]

    def document_text(self, doc_id: str) -> str | None:
        """Full text for one document id, cached; None when unavailable."""
        if doc_id in self._texts:
            return self._texts[doc_id]
        if self.documents_dir is None or doc_id not in self.corpus.doc_ids:
            return None
        path = (self.documents_dir / doc_id).resolve()
        # the doc_ids check above already confines ids to known documents;
        # this guards the filesystem against symlinked escapes as well
        if not str(path).startswith(str(self.documents_dir.resolve()) + os.sep):
            return None
        if not path.is_file():
            return None
        text = path.read_text(encoding="utf-8")
        self._texts[doc_id] = text
        return text


def load_state(config: ServiceConfig) -> ExplorerState:
    """Load corpus, models, and the topic map; fail fast on any mismatch."""
    parser = project.read_config(config.config_path)
    if not parser.has_section("train"):
        raise ModelMissing("no trained models recorded (run `train` first)")
    corpus_file, vocab_file = project.corpus_paths(parser)
    corpus = load_corpus(corpus_file, vocab_file)

    models_dir = parser.get("train", "models_dir")
    found = project.available_ks(models_dir)
    wanted = sorted(config.ks) if config.ks else found
    if not wanted:
        raise ModelMissing(f"no model files under {models_dir} (run `train` first)")
    missing = [k for k in wanted if k not in found]
    if missing:
        raise ModelMissing(f"no model file for K={missing} under {models_dir}")

    models = {
        k: lda.load_model(project.model_path(models_dir, k), corpus.vocabulary)
        for k in wanted
    }
    suite = ModelSuite(corpus.vocabulary.sha256(), models)

    try:
        layout = topicmap.build_layout(suite)
    except TooFewPoints:
        layout = None

    documents_dir = None
    if parser.has_option("corpus", "documents_dir"):
        documents_dir = Path(parser.get("corpus", "documents_dir"))

    # empty string means "no bundle"; Path("") would resolve to cwd
    static_dir = Path(config.static_dir) if config.static_dir else None
    if static_dir is None and parser.get("serve", "static_dir", fallback=""):
        static_dir = Path(parser.get("serve", "static_dir"))

    return ExplorerState(
        corpus=corpus,
        suite=suite,
        layout=layout,
        documents_dir=documents_dir,
        fulltext_enabled=config.fulltext_enabled,
        static_dir=static_dir,
    )


def _query_terms(model: TopicModel, q: str) -> list[str]:
    """Whitespace-separated query tokens, split to characters when the
    token itself is out of vocabulary (queries arrive unsegmented)."""
    terms: list[str] = []
    for token in q.split():
        if token in model.vocabulary.word_to_id:
            terms.append(token)
        else:
            terms.extend(token)
    return terms


def _ranked_json(ranking: list[explore.RankedDocument]) -> list[dict]:
    return [
        {
            "doc_id": r.doc_id,
            "similarity": float(r.similarity),
            "topic_mix": [float(x) for x in r.topic_mix],
        }
        for r in ranking
    ]


def _not_found(request: Request, exc: Exception) -> JSONResponse:
    detail = exc.args[0] if exc.args else str(exc)
    return JSONResponse(
        status_code=404, content={"v": SCHEMA_VERSION, "error": str(detail)}
    )


def create_app(state: ExplorerState) -> FastAPI:
    app = FastAPI(title="topicshelf", docs_url=None, redoc_url=None)
    for exc_type in (
        UnknownDocument,
        UnknownTerm,
        IndexOutOfRange,
        NoKnownTerms,
        ModelMissing,
    ):
        app.add_exception_handler(exc_type, _not_found)

    @app.get("/api/models")
    def models() -> dict:
        return {"v": SCHEMA_VERSION, "ks": sorted(state.suite.models)}

    @app.get("/api/docs")
    def docs(q: str = "", limit: int = explore.DEFAULT_AUTOCOMPLETE_LIMIT) -> dict:
        hits = explore.autocomplete(state.corpus.doc_ids, q, limit)
        return {"v": SCHEMA_VERSION, "docs": hits}

    @app.get("/api/map")
    def topic_map() -> dict:
        if state.layout is None:
            raise ModelMissing("topic map needs at least three pooled topics")
        return {
            "v": SCHEMA_VERSION,
            "params": state.layout.params,
            "points": state.layout.points,
        }

    @app.get("/api/map/saturation")
    def saturation(term: str) -> dict:
        weights = topicmap.term_saturation(state.suite, term)
        return {
            "v": SCHEMA_VERSION,
            "term": term,
            "saturation": {ref.label(): value for ref, value in weights.items()},
        }

    @app.get("/api/doc/{doc_id:path}/text")
    def document_text(doc_id: str):
        if not state.fulltext_enabled:
            raise UnknownDocument("full text serving is disabled")
        text = state.document_text(doc_id)
        if text is None:
            raise UnknownDocument(doc_id)
        return {"v": SCHEMA_VERSION, "doc_id": doc_id, "text": text}

    @app.get("/api/{k}/doc/{doc_id:path}/similar")
    def similar(
        k: int,
        doc_id: str,
        limit: int | None = None,
        sort_topic: int | None = None,
    ) -> dict:
        ranking = explore.similar_documents(state.model(k), doc_id, limit)
        if sort_topic is not None:
            # reorder the visible window only; the result set stays put
            ranking = explore.sort_by_topic(ranking, sort_topic)
        return {
            "v": SCHEMA_VERSION,
            "k": k,
            "focal": doc_id,
            "docs": _ranked_json(ranking),
        }

    @app.get("/api/{k}/doc/{doc_id:path}/topics")
    def doc_topics(k: int, doc_id: str) -> dict:
        model = state.model(k)
        try:
            row = model.theta[model.doc_ids.index(doc_id)]
        except ValueError:
            raise UnknownDocument(doc_id) from None
        return {
            "v": SCHEMA_VERSION,
            "k": k,
            "doc_id": doc_id,
            "topic_mix": [float(x) for x in row],
        }

    @app.get("/api/{k}/topic/{topic}/words")
    def topic_words(k: int, topic: int, n: int = topicmap.LAYOUT_WORDS) -> dict:
        pairs = lda.top_words(state.model(k), topic, n)
        return {
            "v": SCHEMA_VERSION,
            "k": k,
            "topic": topic,
            "words": [{"word": w, "prob": p} for w, p in pairs],
        }

    @app.get("/api/{k}/topic/{topic}/docs")
    def topic_docs(k: int, topic: int, limit: int | None = None) -> dict:
        ranking = explore.top_documents_for_topic(state.model(k), topic, limit)
        return {
            "v": SCHEMA_VERSION,
            "k": k,
            "topic": topic,
            "docs": _ranked_json(ranking),
        }

    @app.get("/api/{k}/search")
    def search(
        k: int,
        q: str,
        limit: int | None = None,
        sort_topic: int | None = None,
    ) -> dict:
        model = state.model(k)
        terms = _query_terms(model, q)
        if not terms:
            raise NoKnownTerms(f"query {q!r} has no usable terms")
        mix = explore.pseudo_topic_mix(model, terms)
        ranking = explore.term_search(model, terms)
        if limit is not None:
            ranking = ranking[:limit]
        if sort_topic is not None:
            ranking = explore.sort_by_topic(ranking, sort_topic)
        return {
            "v": SCHEMA_VERSION,
            "k": k,
            "query": q,
            "topic_mix": [float(x) for x in mix],
            "docs": _ranked_json(ranking),
        }

    if state.static_dir is not None and state.static_dir.is_dir():
        app.mount("/", StaticFiles(directory=state.static_dir, html=True))
    else:

        @app.get("/", response_class=PlainTextResponse)
        def root() -> str:
            return "topicshelf API is running; no UI bundle configured\n"

    return app


def _check_port_free(host: str, port: int) -> None:
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise PortInUse(f"cannot bind {host}:{port}: {exc}") from exc
    finally:
        probe.close()


def resolve_host_port(config: ServiceConfig, parser) -> tuple[str, int]:
    """Explicit argument beats environment variable beats config file."""
    host = config.host or os.environ.get(HOST_ENV)
    port = config.port
    if port is None and os.environ.get(PORT_ENV):
        port = int(os.environ[PORT_ENV])
    if parser.has_section("serve"):
        host = host or parser.get("serve", "host", fallback=None)
        if port is None:
            port = parser.getint("serve", "port", fallback=None)
    return host or project.DEFAULT_HOST, port if port is not None else project.DEFAULT_PORT


def serve(config: ServiceConfig) -> None:
    """Load everything, then block serving HTTP until interrupted."""
    import uvicorn

    parser = project.read_config(config.config_path)
    state = load_state(config)
    host, port = resolve_host_port(config, parser)
    _check_port_free(host, port)
    app = create_app(state)
    uvicorn.run(app, host=host, port=port, log_level="info")
