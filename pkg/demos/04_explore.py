"""
Finding documents through topic space
=====================================

Once a model is trained, every document is a point on the topic
simplex and Jensen-Shannon similarity turns that into a search
space.  Two moves matter: "more like this document" and "documents
matching these terms", and the second works even when a document
never contains the query term, because the comparison happens in
topic space.
"""

from importlib import resources
from pathlib import Path

from topicshelf.corpus import apply_stoplist, build_corpus, load_stoplist
from topicshelf.explore import (
    autocomplete,
    pseudo_topic_mix,
    similar_documents,
    term_search,
)
from topicshelf.lda import TrainConfig, train
from topicshelf.metrics import js_distance, similarity
from topicshelf.segment import load_lexicon, segment

REPO = Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO / "tests" / "fixtures" / "mini_corpus"

# the distance underneath everything: Jensen-Shannon, in bits, square
# rooted to make it a metric, flipped to a similarity
p, q = (1.0, 0.0), (0.5, 0.5)
print(f"js_distance((1,0),(.5,.5)) = {js_distance(p, q):.6f}")
print(f"similarity  = 1 - distance = {similarity(p, q):.6f}")

lexicon = load_lexicon(resources.files("topicshelf").joinpath("data/ancient_words.txt"))
docs = [
    segment(p.read_text(encoding="utf-8"), lexicon, doc_id=p.relative_to(CORPUS_DIR).as_posix())
    for p in sorted(CORPUS_DIR.rglob("*.txt"))
]
stops = load_stoplist(
    resources.files("topicshelf").joinpath("data/stopwords_classical.txt")
)
corpus = apply_stoplist(build_corpus(docs, min_freq=2), stops)
model = train(corpus, TrainConfig(k=5, iterations=300, seed=11, alpha=0.5))

# name completion over document ids
print("\nids containing 'laozi':", autocomplete(model.doc_ids, "laozi"))

focal = "laozi/ch01.txt"
print(f"\nclosest to {focal}:")
for r in similar_documents(model, focal)[:6]:
    print(f"  {r.similarity:.4f}  {r.doc_id}")

# term search builds a pseudo-document over the query terms, scores it
# against each topic's word distribution, and ranks by the resulting mix
query = ["天下", "民"]
mix = pseudo_topic_mix(model, query)
print(f"\nquery {query} as a topic mixture: {[round(float(x), 3) for x in mix]}")
print("best matches:")
for r in term_search(model, query)[:6]:
    print(f"  {r.similarity:.4f}  {r.doc_id}")

# the top hits need not contain the literal terms
hits = [r.doc_id for r in term_search(model, query)[:6]]
for doc in docs:
    if doc.doc_id in hits and "天下" not in doc.tokens:
        print(f"  note: {doc.doc_id} never says 天下 and still ranks")
