"""Bag-of-words corpus: vocabulary, token-id streams, filtering, reports.

A Corpus is immutable once built; every filtering operation returns a new
Corpus with re-packed ids and an updated provenance snapshot.  Documents
that end up empty are kept (length 0) so document ids stay aligned with
the source tree, and their count is logged and recorded.
"""

from __future__ import annotations

import hashlib
import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus, InvalidBounds
from .segment import TokenSequence
from .storage import read_container, take, write_container

log = logging.getLogger(__name__)

CORPUS_MAGIC = b"TSCO"
DEFAULT_MIN_FREQ = 5


@dataclass(frozen=True)
class Vocabulary:
    """Bijection between word strings and ids [0, V)."""

    id_to_word: tuple[str, ...]
    word_to_id: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mapping = {w: i for i, w in enumerate(self.id_to_word)}
        if len(mapping) != len(self.id_to_word):
            raise ValueError("duplicate words in vocabulary")
        object.__setattr__(self, "word_to_id", mapping)

    def __len__(self):
        return len(self.id_to_word)

    def __contains__(self, word):
        return word in self.word_to_id

    def sha256(self) -> str:
        digest = hashlib.sha256("\n".join(self.id_to_word).encode("utf-8"))
        return digest.hexdigest()


@dataclass(eq=False)
class Corpus:
    vocabulary: Vocabulary
    doc_ids: list[str]
    doc_tokens: list[np.ndarray]  # uint32 id streams, parallel to doc_ids
    provenance: dict

    def __len__(self):
        return len(self.doc_ids)

    @property
    def n_tokens(self) -> int:
        return int(sum(len(t) for t in self.doc_tokens))

    def word_counts(self) -> np.ndarray:
        """Corpus frequency of every vocabulary id."""
        counts = np.zeros(len(self.vocabulary), dtype=np.int64)
        for tokens in self.doc_tokens:
            np.add.at(counts, tokens, 1)
        return counts

    def document_frequencies(self) -> np.ndarray:
        """Number of documents containing each vocabulary id."""
        freqs = np.zeros(len(self.vocabulary), dtype=np.int64)
        for tokens in self.doc_tokens:
            freqs[np.unique(tokens)] += 1
        return freqs


def build_corpus(docs: list[TokenSequence], min_freq: int = DEFAULT_MIN_FREQ) -> Corpus:
    """Assemble a corpus keeping only words with frequency > min_freq.

    Vocabulary ids follow first appearance in the token stream, which
    fixes them deterministically for a given document order.
    """
    if not docs:
        raise ValueError("no documents to build a corpus from")
    ids = [d.doc_id for d in docs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate doc_ids in input")

    counts: Counter[str] = Counter()
    for doc in docs:
        counts.update(doc.tokens)

    word_to_id: dict[str, int] = {}
    for doc in docs:
        for tok in doc.tokens:
            if counts[tok] > min_freq and tok not in word_to_id:
                word_to_id[tok] = len(word_to_id)

    vocab = Vocabulary(tuple(sorted(word_to_id, key=word_to_id.get)))
    doc_tokens = [
        np.array(
            [word_to_id[t] for t in doc.tokens if t in word_to_id], dtype=np.uint32
        )
        for doc in docs
    ]
    corpus = Corpus(
        vocabulary=vocab,
        doc_ids=ids,
        doc_tokens=doc_tokens,
        provenance={"min_freq": min_freq, "filters": []},
    )
    if corpus.n_tokens == 0:
        raise EmptyCorpus("every document is empty after frequency filtering")
    _report_empty(corpus)
    return corpus


def _report_empty(corpus: Corpus) -> None:
    empty = sum(1 for t in corpus.doc_tokens if len(t) == 0)
    corpus.provenance["empty_documents"] = empty
    if empty:
        log.warning("%d documents are empty after filtering (retained)", empty)


def _rebuild(corpus: Corpus, keep_mask: np.ndarray, filter_record: dict) -> Corpus:
    """New corpus keeping only the vocabulary ids where keep_mask is true."""
    old_words = corpus.vocabulary.id_to_word
    new_words = tuple(w for w, keep in zip(old_words, keep_mask) if keep)
    remap = np.full(len(old_words), np.iinfo(np.uint32).max, dtype=np.uint32)
    remap[keep_mask] = np.arange(len(new_words), dtype=np.uint32)
    doc_tokens = [
        remap[tokens[keep_mask[tokens]]].astype(np.uint32)
        for tokens in corpus.doc_tokens
    ]
    provenance = dict(corpus.provenance)
    provenance["filters"] = list(provenance.get("filters", [])) + [filter_record]
    rebuilt = Corpus(
        vocabulary=Vocabulary(new_words),
        doc_ids=list(corpus.doc_ids),
        doc_tokens=doc_tokens,
        provenance=provenance,
    )
    _report_empty(rebuilt)
    return rebuilt


def load_stoplist(path) -> set[str]:
    """UTF-8 stoplist, one word per line; blank lines ignored."""
    with open(path, encoding="utf-8") as fh:
        words = {line.strip() for line in fh}
    words.discard("")
    return words


def apply_stoplist(corpus: Corpus, stops: set[str]) -> Corpus:
    """Drop every stoplisted word from vocabulary and documents.

    Stop words absent from the vocabulary are ignored; applying the same
    list twice is a no-op the second time.
    """
    keep = np.array(
        [w not in stops for w in corpus.vocabulary.id_to_word], dtype=bool
    )
    removed = int((~keep).sum())
    return _rebuild(
        corpus, keep, {"kind": "stoplist", "types_removed": removed}
    )


def prep_thresholds(corpus: Corpus, low: int = 0, high: int | None = None) -> Corpus:
    """Keep only words whose corpus frequency lies in [low, high].

    high=None means no upper bound.  The numbers of types and tokens each
    bound removed are recorded in provenance for interactive display.
    """
    bound = math.inf if high is None else high
    if low > bound:
        raise InvalidBounds(f"low={low} exceeds high={high}")
    counts = corpus.word_counts()
    below = counts < low
    above = counts > bound
    record = {
        "kind": "thresholds",
        "low": low,
        "high": high,
        "types_removed_low": int(below.sum()),
        "tokens_removed_low": int(counts[below].sum()),
        "types_removed_high": int(above.sum()),
        "tokens_removed_high": int(counts[above].sum()),
    }
    return _rebuild(corpus, ~(below | above), record)


def frequency_report(corpus: Corpus, n: int) -> list[tuple[str, int]]:
    """Top-n words by exact corpus frequency, ties by word id."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = corpus.word_counts()
    order = np.lexsort((np.arange(len(counts)), -counts))
    words = corpus.vocabulary.id_to_word
    return [(words[i], int(counts[i])) for i in order[:n]]


def idf_report(corpus: Corpus) -> list[tuple[str, float]]:
    """Inverse document frequency ln(D / d_w) for every present word.

    Ascending idf, so fully ubiquitous words (idf exactly 0) list first.
    Words contained in no document are omitted.
    """
    if len(corpus) < 1:
        raise ValueError("corpus has no documents")
    d_total = len(corpus)
    doc_freqs = corpus.document_frequencies()
    words = corpus.vocabulary.id_to_word
    entries = [
        (words[i], math.log(d_total / df))
        for i, df in enumerate(doc_freqs)
        if df > 0
    ]
    entries.sort(key=lambda pair: (pair[1], corpus.vocabulary.word_to_id[pair[0]]))
    return entries


# --- persistence -------------------------------------------------------------

def save_corpus(corpus: Corpus, corpus_path, vocab_path) -> None:
    """Write the id streams container plus the one-word-per-line vocabulary."""
    with open(vocab_path, "w", encoding="utf-8", newline="\n") as fh:
        for word in corpus.vocabulary.id_to_word:
            fh.write(word + "\n")
    header = {
        "doc_ids": list(corpus.doc_ids),
        "doc_lengths": [int(len(t)) for t in corpus.doc_tokens],
        "provenance": corpus.provenance,
        "vocab_sha256": corpus.vocabulary.sha256(),
        "vocab_size": len(corpus.vocabulary),
    }
    arrays = [t.astype("<u4") for t in corpus.doc_tokens]
    write_container(corpus_path, CORPUS_MAGIC, header, arrays)


def load_corpus(corpus_path, vocab_path) -> Corpus:
    with open(vocab_path, encoding="utf-8") as fh:
        words = tuple(line.rstrip("\n") for line in fh if line.rstrip("\n"))
    vocab = Vocabulary(words)
    header, payload = read_container(corpus_path, CORPUS_MAGIC)
    if header["vocab_sha256"] != vocab.sha256():
        raise ValueError(
            f"{corpus_path}: vocabulary file does not match corpus container"
        )
    doc_tokens = []
    offset = 0
    for length in header["doc_lengths"]:
        arr, offset = take(payload, offset, np.uint32, length)
        doc_tokens.append(arr.astype(np.uint32))
    return Corpus(
        vocabulary=vocab,
        doc_ids=list(header["doc_ids"]),
        doc_tokens=doc_tokens,
        provenance=header["provenance"],
    )
