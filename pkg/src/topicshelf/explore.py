"""Document-shelf queries over a trained topic model.

All operations are read-only over an immutable TopicModel and return
rankings that are total and deterministic: scores sort descending and
every tie breaks by doc_id ascending, so repeated calls (and independent
implementations) agree on the exact order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NoKnownTerms, UnknownDocument
from .lda import TopicModel
from .metrics import similarity

log = logging.getLogger(__name__)

DEFAULT_AUTOCOMPLETE_LIMIT = 20


@dataclass(frozen=True, eq=False)
class RankedDocument:
    doc_id: str
    similarity: float  # in [0, 1]
    topic_mix: np.ndarray  # the document's theta row


def _ranked(model: TopicModel, scores: list[float]) -> list[RankedDocument]:
    order = sorted(
        range(len(scores)), key=lambda d: (-scores[d], model.doc_ids[d])
    )
    return [
        RankedDocument(model.doc_ids[d], scores[d], model.theta[d]) for d in order
    ]


def similar_documents(
    model: TopicModel, focal: str, limit: int | None = None
) -> list[RankedDocument]:
    """Every document ranked by topic-mix similarity to the focal one.

    The focal document is always first: its theta row compared with itself
    gives similarity exactly 1, and it is pinned ahead of any other
    document that happens to tie.
    """
    try:
        focal_index = model.doc_ids.index(focal)
    except ValueError:
        raise UnknownDocument(focal) from None
    focal_row = model.theta[focal_index]
    scores = [float(similarity(focal_row, row)) for row in model.theta]
    ranking = _ranked(model, scores)
    ranking.sort(key=lambda r: r.doc_id != focal)  # stable: focal to front
    return ranking[:limit] if limit is not None else ranking


def sort_by_topic(
    candidates: list[RankedDocument], topic: int
) -> list[RankedDocument]:
    """Reorder a result list by each document's proportion of one topic."""
    if candidates and not 0 <= topic < len(candidates[0].topic_mix):
        raise IndexOutOfRange(f"topic {topic} outside the model")
    return sorted(
        candidates, key=lambda r: (-float(r.topic_mix[topic]), r.doc_id)
    )


def top_documents_for_topic(
    model: TopicModel, topic: int, limit: int | None = None
) -> list[RankedDocument]:
    """All documents ranked by theta for one topic; score is that theta."""
    if not 0 <= topic < model.k:
        raise IndexOutOfRange(f"topic {topic} outside [0, {model.k})")
    scores = [float(row[topic]) for row in model.theta]
    ranking = _ranked(model, scores)
    return ranking[:limit] if limit is not None else ranking


def pseudo_topic_mix(model: TopicModel, terms: list[str]) -> np.ndarray:
    """Topic-space pseudo-document for a term query.

    Steps: spread probability uniformly over the distinct in-vocabulary
    query terms (duplicates collapse); score every topic's word
    distribution against that vector with the JSD-based similarity; then
    normalize the topic scores into a distribution by their sum.
    """
    known, dropped = [], []
    for term in dict.fromkeys(terms):  # preserve first-appearance order
        (known if term in model.vocabulary else dropped).append(term)
    if not known:
        raise NoKnownTerms(f"no query term is in the vocabulary: {terms}")
    if dropped:
        log.warning("dropping out-of-vocabulary terms: %s", " ".join(dropped))

    pseudo_words = np.zeros(len(model.vocabulary), dtype=np.float64)
    for term in known:
        pseudo_words[model.vocabulary.word_to_id[term]] = 1.0 / len(known)

    scores = np.array(
        [similarity(pseudo_words, row) for row in model.phi], dtype=np.float64
    )
    total = float(scores.sum())
    if total <= 0.0:
        raise NoKnownTerms("query has zero similarity to every topic")
    return scores / total


def term_search(model: TopicModel, terms: list[str]) -> list[RankedDocument]:
    """Topic-mediated search: documents ranked against the pseudo-document.

    Because ranking happens in topic space, a document can score highly
    without containing any query term.
    """
    mix = pseudo_topic_mix(model, terms)
    scores = [float(similarity(mix, row)) for row in model.theta]
    return _ranked(model, scores)


def autocomplete(
    doc_ids: list[str], query: str, limit: int = DEFAULT_AUTOCOMPLETE_LIMIT
) -> list[str]:
    """Case-sensitive substring completion over document labels."""
    return sorted(d for d in doc_ids if query in d)[:limit]
