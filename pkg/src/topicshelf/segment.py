"""Dictionary-driven word segmentation for unspaced CJK text.

Implements complex maximum matching: at each position every chunk of up
to three consecutive candidate words (lexicon entries or single
characters) is scored by four ordered rules -- greatest total length,
greatest mean word length, smallest word-length variance, greatest sum of
single-character morphemic freedom (log corpus frequency) -- and the
winning chunk's first word is emitted.  Remaining ties go to the
lexicographically earliest chunk, so output is fully deterministic.

Non-CJK characters (Latin text, digits, punctuation, whitespace) are hard
token boundaries: chunks never span them and they are not emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

CHUNK_WINDOW = 3

# CJK ideograph blocks; CJK punctuation is deliberately excluded so that
# it acts as a boundary like any other punctuation.
_CJK_RANGES = (
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2EBEF),
    (0x30000, 0x3134F),
)


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


@dataclass(frozen=True)
class Lexicon:
    """Multi-character word list plus per-character corpus frequencies.

    Single-character entries are redundant (every character is always a
    segmentation candidate) and are dropped on construction.  char_freq
    feeds rule 4; when empty, every character scores log(1) = 0 and the
    rule is a no-op.
    """

    words: frozenset[str]
    char_freq: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        multi = frozenset(w for w in self.words if len(w) > 1)
        object.__setattr__(self, "words", multi)
        by_len: dict[int, set[str]] = {}
        for w in multi:
            by_len.setdefault(len(w), set()).add(w)
        object.__setattr__(self, "_by_length", sorted(by_len.items()))

    def matches_at(self, text: str, pos: int) -> list[str]:
        """Lexicon words that start at text[pos], shortest first."""
        found = []
        for length, words in self._by_length:
            cand = text[pos : pos + length]
            if len(cand) == length and cand in words:
                found.append(cand)
        return found

    def freedom(self, ch: str) -> float:
        return math.log(max(self.char_freq.get(ch, 1), 1))


@dataclass
class TokenSequence:
    doc_id: str
    tokens: list[str]


def load_lexicon(path, char_freq: dict[str, int] | None = None) -> Lexicon:
    """Read a UTF-8 dictionary file, one word per line.

    Blank lines are ignored and duplicates collapse.  Raises OSError for
    unreadable files and UnicodeDecodeError for non-UTF-8 content.
    """
    with open(path, encoding="utf-8") as fh:
        words = {line.strip() for line in fh}
    words.discard("")
    return Lexicon(frozenset(words), dict(char_freq or {}))


def _chunks_from(run: str, pos: int, lexicon: Lexicon):
    """All candidate chunks of up to CHUNK_WINDOW words starting at pos."""
    chunks: list[tuple[str, ...]] = []

    def extend(at: int, words: tuple[str, ...]):
        if len(words) == CHUNK_WINDOW or at == len(run):
            chunks.append(words)
            return
        extend(at + 1, words + (run[at],))
        for w in lexicon.matches_at(run, at):
            extend(at + len(w), words + (w,))

    extend(pos, ())
    return chunks


def _pick_best(chunks: list[tuple[str, ...]], lexicon: Lexicon) -> tuple[str, ...]:
    """Apply rules 1-4 then the lexicographic tie-break.

    Rules 1-3 reduce to integer comparisons: with equal total length,
    greater mean means fewer words, and with equal total and word count,
    smaller variance means a smaller sum of squared lengths.
    """
    best = None
    best_key = None
    for chunk in chunks:
        lens = [len(w) for w in chunk]
        total = sum(lens)
        n = len(chunk)
        sum_sq = sum(l * l for l in lens)
        freedom = sum(lexicon.freedom(w) for w in chunk if len(w) == 1)
        key = (total, -n, -sum_sq, freedom)
        if (
            best_key is None
            or key > best_key
            or (key == best_key and chunk < best)
        ):
            best, best_key = chunk, key
    return best


def _segment_run(run: str, lexicon: Lexicon) -> list[str]:
    out = []
    pos = 0
    while pos < len(run):
        best = _pick_best(_chunks_from(run, pos, lexicon), lexicon)
        out.append(best[0])
        pos += len(best[0])
    return out


def segment(text: str, lexicon: Lexicon, doc_id: str = "") -> TokenSequence:
    """Segment the CJK content of text into words.

    Every CJK character lands in exactly one output token, in order;
    characters outside the lexicon fall back to single-character tokens.
    """
    tokens: list[str] = []
    run_start = None
    for i, ch in enumerate(text):
        if is_cjk(ch):
            if run_start is None:
                run_start = i
        elif run_start is not None:
            tokens.extend(_segment_run(text[run_start:i], lexicon))
            run_start = None
    if run_start is not None:
        tokens.extend(_segment_run(text[run_start:], lexicon))
    return TokenSequence(doc_id=doc_id, tokens=tokens)
