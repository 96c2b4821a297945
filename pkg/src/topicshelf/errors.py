"""Exception types shared across the pipeline.

Each class corresponds to one failure mode of the public API; callers can
catch the base classes (ValueError / KeyError / ...) or the specific type.
"""


class DimensionMismatch(ValueError):
    """Two distributions passed to a metric have different lengths."""


class InvalidDistribution(ValueError):
    """Vector is not a probability distribution (negative mass or bad sum)."""


class NoContainer(ValueError):
    """No element in the document matches the container selector."""


class DecodeError(ValueError):
    """Payload bytes decode under none of the candidate encodings."""


class EmptyCorpus(ValueError):
    """Corpus has no usable tokens (all documents empty after filtering)."""


class InvalidBounds(ValueError):
    """Frequency thresholds with low > high."""


class DegenerateVocabulary(ValueError):
    """Training needs at least two vocabulary types."""


class IndexOutOfRange(IndexError):
    """Topic index outside [0, K)."""


class UnknownDocument(KeyError):
    """Document id not present in the model."""


class UnknownTerm(KeyError):
    """Query term not present in the vocabulary."""


class NoKnownTerms(ValueError):
    """Every query term is out of vocabulary."""


class VocabularyMismatch(ValueError):
    """Model and corpus were built against different vocabularies."""


class TooFewPoints(ValueError):
    """Clustering asked for more clusters than there are points."""


class DegenerateSpectrum(UserWarning):
    """Embedding found fewer than two positive eigenvalues; y is zeroed."""


class ModelMissing(FileNotFoundError):
    """A referenced model file does not exist on disk."""


class ConfigMissing(FileNotFoundError):
    """The pipeline config file does not exist or a stage ran out of order."""


class PortInUse(OSError):
    """Another process is already bound to the requested serving port."""


class NoDocuments(FileNotFoundError):
    """Corpus directory contains no readable documents."""
