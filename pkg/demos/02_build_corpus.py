"""
From text files to a filtered bag-of-words corpus
=================================================

Walks the sample corpus (thirty short chapters from five classical
collections, bundled with the test suite), segments every file, and
shows what the frequency filter and the stoplist each take away.
"""

from importlib import resources
from pathlib import Path

from topicshelf.corpus import (
    apply_stoplist,
    build_corpus,
    frequency_report,
    load_stoplist,
    prep_thresholds,
)
from topicshelf.segment import load_lexicon, segment

REPO = Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO / "tests" / "fixtures" / "mini_corpus"

lexicon = load_lexicon(resources.files("topicshelf").joinpath("data/ancient_words.txt"))
docs = []
for path in sorted(CORPUS_DIR.rglob("*.txt")):
    doc_id = path.relative_to(CORPUS_DIR).as_posix()
    docs.append(segment(path.read_text(encoding="utf-8"), lexicon, doc_id=doc_id))
print(f"{len(docs)} documents, {sum(len(d.tokens) for d in docs)} raw tokens")

# keep everything first, to see the unfiltered picture
full = build_corpus(docs, min_freq=0)
print(f"unfiltered vocabulary: {len(full.vocabulary)} types")
print("top ten words:")
for word, count in frequency_report(full, 10):
    print(f"  {word:>4}  {count}")

# the default cutoff keeps only words seen more than five times
corpus = build_corpus(docs)
print(f"\ndefault filter: {len(corpus.vocabulary)} types, {corpus.n_tokens} tokens")

# grammatical particles dominate classical text and say nothing about
# topics, so the usual next step is a stoplist
stops = load_stoplist(
    resources.files("topicshelf").joinpath("data/stopwords_classical.txt")
)
stopped = apply_stoplist(corpus, stops)
print(f"after stoplist: {len(stopped.vocabulary)} types, {stopped.n_tokens} tokens")
print("top ten words now:")
for word, count in frequency_report(stopped, 10):
    print(f"  {word:>4}  {count}")

# threshold prep trims both tails: words too rare to estimate and
# words so common they behave like stopwords
prepped = prep_thresholds(stopped, low=3, high=60)
print(f"\nafter thresholds [3, 60]: {len(prepped.vocabulary)} types")

# every filtering step is recorded on the corpus, so a saved corpus
# file carries its own preprocessing history
for record in prepped.provenance["filters"]:
    print(" ", record)
