"""
A map of topics across several model sizes
==========================================

There is no single right K.  Train a handful of models, pool all
their topics, measure pairwise Jensen-Shannon distances between the
word distributions, and project the pooled set to the plane with
Isomap.  Related topics from different K land near each other, so
the map shows which themes are stable across model sizes.
"""

from importlib import resources
from pathlib import Path

from topicshelf.corpus import apply_stoplist, build_corpus, load_stoplist
from topicshelf.lda import train_suite
from topicshelf.segment import load_lexicon, segment
from topicshelf.topicmap import build_layout, term_saturation, topic_distance_matrix

REPO = Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO / "tests" / "fixtures" / "mini_corpus"

lexicon = load_lexicon(resources.files("topicshelf").joinpath("data/ancient_words.txt"))
docs = [
    segment(p.read_text(encoding="utf-8"), lexicon, doc_id=p.relative_to(CORPUS_DIR).as_posix())
    for p in sorted(CORPUS_DIR.rglob("*.txt"))
]
stops = load_stoplist(
    resources.files("topicshelf").joinpath("data/stopwords_classical.txt")
)
corpus = apply_stoplist(build_corpus(docs, min_freq=2), stops)

suite = train_suite(corpus, ks=[3, 5, 8], iterations=300, seed=11)
dist = topic_distance_matrix(suite)
print(f"pooled topics: {dist.shape[0]}  (3 + 5 + 8)")
print(f"distance range: {dist[dist > 0].min():.3f} .. {dist.max():.3f}")

layout = build_layout(suite, n_neighbors=6, clusters=4)
print("\nmap points (size shrinks as K grows, so coarse topics plot behind):")
for pt in layout.points:
    words = " ".join(pt["words"][:4])
    print(
        f"  k={pt['k']} t={pt['topic']}  ({pt['x']:+.2f}, {pt['y']:+.2f})"
        f"  size={pt['size']:.0f} cluster={pt['cluster']}  {words}"
    )

# recolor the map by how much each topic cares about one term
sat = term_saturation(suite, "道")
strongest = sorted(sat, key=lambda ref: -sat[ref])[:3]
print("\ntopics most saturated with 道:")
for ref in strongest:
    print(f"  {ref.label()}  {sat[ref]:.2f}")

print(
    "\nthe interactive version of this map, with the document shelf,\n"
    "is one command away:\n"
    "  topicshelf init <dir> && topicshelf prep <name>.ini &&\n"
    "  topicshelf train <name>.ini -k 3 5 8 --iter 300 && topicshelf serve <name>.ini"
)
