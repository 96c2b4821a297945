"""Corpus construction, filtering, reports, and persistence."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topicshelf.corpus import (
    Corpus,
    Vocabulary,
    apply_stoplist,
    build_corpus,
    frequency_report,
    idf_report,
    load_corpus,
    load_stoplist,
    prep_thresholds,
    save_corpus,
)
from topicshelf.errors import EmptyCorpus, InvalidBounds
from topicshelf.segment import TokenSequence


def seqs(*docs):
    return [TokenSequence(f"doc{i}", list(toks)) for i, toks in enumerate(docs)]


# --- build_corpus -------------------------------------------------------------

def test_default_cutoff_drops_words_at_or_below_five():
    corpus = build_corpus(seqs("a a a a a a b".split()))
    assert corpus.vocabulary.id_to_word == ("a",)
    assert corpus.doc_tokens[0].tolist() == [0] * 6


def test_min_freq_zero_keeps_all_distinct_words():
    corpus = build_corpus(seqs("x y y z".split()), min_freq=0)
    assert set(corpus.vocabulary.id_to_word) == {"x", "y", "z"}


def test_ids_follow_first_appearance():
    corpus = build_corpus(seqs("b a b a c".split()), min_freq=0)
    assert corpus.vocabulary.id_to_word == ("b", "a", "c")
    assert corpus.doc_tokens[0].tolist() == [0, 1, 0, 1, 2]


def test_filtered_out_documents_are_retained_empty():
    corpus = build_corpus(seqs(["a"] * 6, ["b"]), min_freq=5)
    assert len(corpus) == 2
    assert len(corpus.doc_tokens[1]) == 0
    assert corpus.provenance["empty_documents"] == 1


def test_all_documents_empty_raises():
    with pytest.raises(EmptyCorpus):
        build_corpus(seqs(["a"], ["b"]), min_freq=5)


def test_no_documents_rejected():
    with pytest.raises(ValueError):
        build_corpus([])


def test_duplicate_doc_ids_rejected():
    docs = [TokenSequence("same", ["a"]), TokenSequence("same", ["b"])]
    with pytest.raises(ValueError):
        build_corpus(docs, min_freq=0)


def test_vocabulary_rejects_duplicates():
    with pytest.raises(ValueError):
        Vocabulary(("a", "a"))


# --- apply_stoplist -----------------------------------------------------------

def test_empty_stoplist_is_identity():
    corpus = build_corpus(seqs("a b a".split()), min_freq=0)
    out = apply_stoplist(corpus, set())
    assert out.vocabulary.id_to_word == corpus.vocabulary.id_to_word
    assert out.doc_tokens[0].tolist() == corpus.doc_tokens[0].tolist()


def test_stoplist_covering_vocabulary_leaves_empty_vocab():
    corpus = build_corpus(seqs("a b".split()), min_freq=0)
    out = apply_stoplist(corpus, {"a", "b"})
    assert len(out.vocabulary) == 0
    assert all(len(t) == 0 for t in out.doc_tokens)


def test_stoplist_preserves_relative_id_order():
    corpus = build_corpus(seqs("a b c d".split()), min_freq=0)
    out = apply_stoplist(corpus, {"b"})
    assert out.vocabulary.id_to_word == ("a", "c", "d")
    assert out.doc_tokens[0].tolist() == [0, 1, 2]


def test_unknown_stop_words_ignored():
    corpus = build_corpus(seqs("a b".split()), min_freq=0)
    out = apply_stoplist(corpus, {"zzz"})
    assert out.vocabulary.id_to_word == corpus.vocabulary.id_to_word


@given(
    st.lists(
        st.lists(st.sampled_from("abcdef"), min_size=1, max_size=12),
        min_size=1,
        max_size=6,
    ),
    st.sets(st.sampled_from("abcdef")),
)
@settings(max_examples=60)
def test_stoplist_idempotent(docs, stops):
    corpus = build_corpus(
        [TokenSequence(str(i), toks) for i, toks in enumerate(docs)], min_freq=0
    )
    once = apply_stoplist(corpus, stops)
    twice = apply_stoplist(once, stops)
    assert once.vocabulary.id_to_word == twice.vocabulary.id_to_word
    for a, b in zip(once.doc_tokens, twice.doc_tokens):
        assert a.tolist() == b.tolist()


# --- reports ------------------------------------------------------------------

def test_frequency_report_counts_and_order():
    corpus = build_corpus(seqs("x x y".split()), min_freq=0)
    assert frequency_report(corpus, 2) == [("x", 2), ("y", 1)]


def test_frequency_report_ties_break_by_id():
    corpus = build_corpus(seqs("b a b a".split()), min_freq=0)
    assert frequency_report(corpus, 2) == [("b", 2), ("a", 2)]


def test_frequency_report_requires_positive_n():
    corpus = build_corpus(seqs(["a"]), min_freq=0)
    with pytest.raises(ValueError):
        frequency_report(corpus, 0)


@given(
    st.lists(
        st.lists(st.sampled_from("abcde"), min_size=0, max_size=15),
        min_size=1,
        max_size=8,
    ).filter(lambda docs: any(docs))
)
@settings(max_examples=60)
def test_frequency_report_sums_to_token_count(docs):
    corpus = build_corpus(
        [TokenSequence(str(i), toks) for i, toks in enumerate(docs)], min_freq=0
    )
    report = frequency_report(corpus, len(corpus.vocabulary))
    assert sum(count for _, count in report) == corpus.n_tokens


def test_idf_zero_for_ubiquitous_word():
    corpus = build_corpus(seqs("a b".split(), "a c".split(), ["a"]), min_freq=0)
    idf = dict(idf_report(corpus))
    assert idf["a"] == 0.0


def test_idf_one_of_three_documents():
    corpus = build_corpus(seqs("a b".split(), ["a"], ["a"]), min_freq=0)
    idf = dict(idf_report(corpus))
    assert math.isclose(idf["b"], math.log(3), rel_tol=0, abs_tol=1e-12)
    assert math.isclose(idf["b"], 1.0986122886681098, abs_tol=1e-12)


def test_idf_omits_absent_words():
    # A vocabulary entry with no surviving tokens should not be listed.
    corpus = Corpus(
        vocabulary=Vocabulary(("a", "ghost")),
        doc_ids=["d0"],
        doc_tokens=[np.array([0], dtype=np.uint32)],
        provenance={},
    )
    assert [w for w, _ in idf_report(corpus)] == ["a"]


def test_idf_sorted_ascending():
    corpus = build_corpus(seqs("a b".split(), ["a"], ["a"]), min_freq=0)
    values = [v for _, v in idf_report(corpus)]
    assert values == sorted(values)


# --- prep_thresholds ----------------------------------------------------------

def test_thresholds_identity_bounds():
    corpus = build_corpus(seqs("a a b".split()), min_freq=0)
    out = prep_thresholds(corpus, low=0, high=None)
    assert out.vocabulary.id_to_word == corpus.vocabulary.id_to_word
    assert out.doc_tokens[0].tolist() == corpus.doc_tokens[0].tolist()


def test_thresholds_low_bound():
    corpus = build_corpus(seqs(["a"] * 10 + ["b"] * 2), min_freq=0)
    out = prep_thresholds(corpus, low=3)
    assert out.vocabulary.id_to_word == ("a",)


def test_thresholds_both_bounds():
    corpus = build_corpus(seqs(["a"] * 10 + ["b"] * 4 + ["c"] * 2), min_freq=0)
    out = prep_thresholds(corpus, low=3, high=5)
    assert out.vocabulary.id_to_word == ("b",)
    record = out.provenance["filters"][-1]
    assert record["types_removed_low"] == 1
    assert record["tokens_removed_low"] == 2
    assert record["types_removed_high"] == 1
    assert record["tokens_removed_high"] == 10


def test_thresholds_invalid_bounds():
    corpus = build_corpus(seqs(["a"]), min_freq=0)
    with pytest.raises(InvalidBounds):
        prep_thresholds(corpus, low=5, high=2)


def test_refiltering_never_grows_vocabulary():
    corpus = build_corpus(seqs("a a a b b c".split()), min_freq=0)
    out = corpus
    for low in (0, 2, 3):
        out = prep_thresholds(out, low=low)
        assert len(out.vocabulary) <= len(corpus.vocabulary)


# --- persistence --------------------------------------------------------------

def test_stoplist_file_roundtrip(tmp_path):
    path = tmp_path / "stops.txt"
    path.write_text("之\n\n其\n之\n", encoding="utf-8")
    assert load_stoplist(path) == {"之", "其"}


def test_save_load_roundtrip_bit_identical(tmp_path):
    corpus = build_corpus(
        seqs("之 乎 者 也 之".split(), ["之"], []), min_freq=0
    )
    corpus_path = tmp_path / "demo.corpus"
    vocab_path = tmp_path / "demo.vocab"
    save_corpus(corpus, corpus_path, vocab_path)
    first = corpus_path.read_bytes()
    first_vocab = vocab_path.read_bytes()

    loaded = load_corpus(corpus_path, vocab_path)
    assert loaded.vocabulary.id_to_word == corpus.vocabulary.id_to_word
    assert loaded.doc_ids == corpus.doc_ids
    for a, b in zip(loaded.doc_tokens, corpus.doc_tokens):
        assert a.tolist() == b.tolist()
    assert loaded.provenance == corpus.provenance

    save_corpus(loaded, corpus_path, vocab_path)
    assert corpus_path.read_bytes() == first
    assert vocab_path.read_bytes() == first_vocab


def test_load_rejects_mismatched_vocabulary(tmp_path):
    corpus = build_corpus(seqs("a b".split()), min_freq=0)
    save_corpus(corpus, tmp_path / "c.corpus", tmp_path / "c.vocab")
    (tmp_path / "c.vocab").write_text("a\nz\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_corpus(tmp_path / "c.corpus", tmp_path / "c.vocab")
