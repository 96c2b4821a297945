"""Train and interactively explore LDA topic models over unsegmented CJK corpora.

The package is organized as a pipeline of small, independently testable
modules:

- :mod:`topicshelf.ingest` -- raw HTML/text -> clean, simplified plain text
- :mod:`topicshelf.segment` -- dictionary-driven word segmentation (mmseg)
- :mod:`topicshelf.corpus` -- vocabulary building, filtering, reports
- :mod:`topicshelf.lda` -- collapsed Gibbs training of a topic-model suite
- :mod:`topicshelf.metrics` -- KL / Jensen-Shannon divergence and distance
- :mod:`topicshelf.explore` -- similarity ranking, re-sorting, term search
- :mod:`topicshelf.topicmap` -- pooled-topic isomap layout and clustering
- :mod:`topicshelf.server` -- read-only JSON API plus static UI hosting
- :mod:`topicshelf.cli` -- init / prep / train / serve pipeline driver
"""

__version__ = "0.1.0"
