"""Raw download tree to clean plain-text documents.

Pipeline per file: decode bytes, pull the text out of the configured
container element, convert traditional characters to simplified, then
partition the results into kept / flagged-for-review / dropped.  Every
input file gets one line in the ingestion report, so a run is auditable
without diffing directory trees.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from html.parser import HTMLParser
from importlib import resources
from pathlib import Path, PurePosixPath

from .errors import DecodeError, NoContainer, NoDocuments

log = logging.getLogger(__name__)

DEFAULT_SELECTOR = ".snr2"
FALLBACK_ENCODINGS = ("utf-8", "gb18030")
REPORT_NAME = "ingest-report.jsonl"
INDEX_LINK_RATIO = 0.6

# Conservative review markers: vocabulary that points at modern prose, not
# the classical register.  Configurable; flagged files are reported, never
# silently deleted.
DEFAULT_MODERN_WORDS = (
    "的",
    "吗",
    "呢",
    "我们",
    "你们",
    "他们",
    "这个",
    "那个",
    "什么",
    "为什么",
    "怎么",
    "没有",
    "现在",
)

# Tags that imply a line break in rendered text.
_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "table", "tr", "td", "th",
    "h1", "h2", "h3", "h4", "h5", "h6", "blockquote", "pre", "hr",
    "section", "article", "header", "footer", "dt", "dd", "dl",
}
_VOID_TAGS = {"br", "hr", "img", "input", "meta", "link", "area", "base", "col"}


@dataclass(frozen=True)
class RawDocument:
    source_path: str
    payload: bytes
    encoding_hint: str | None = None


@dataclass(frozen=True)
class CleanDocument:
    doc_id: str  # relative path with .txt extension
    label: str  # display string: path segments without the extension
    text: str


@dataclass
class FilterReport:
    kept: list[CleanDocument] = field(default_factory=list)
    flagged: list[CleanDocument] = field(default_factory=list)
    dropped: list[CleanDocument] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        return {
            "kept": len(self.kept),
            "flagged": len(self.flagged),
            "dropped": len(self.dropped),
        }


def decode_payload(raw: RawDocument) -> str:
    """Decode with the declared hint first, then the fallback encodings.

    Decoding is strict everywhere: a file that decodes under no candidate
    is an error, never silently replaced characters.
    """
    tried = []
    candidates = ((raw.encoding_hint,) if raw.encoding_hint else ()) + FALLBACK_ENCODINGS
    for name in candidates:
        try:
            return raw.payload.decode(name)
        except (UnicodeDecodeError, LookupError):
            tried.append(name)
    raise DecodeError(f"{raw.source_path}: undecodable under {', '.join(tried)}")


def _parse_selector(selector: str) -> tuple[str | None, str | None, str | None]:
    """Split 'tag.class', '.class', '#id', or 'tag' into its parts."""
    selector = selector.strip()
    if not selector:
        raise ValueError("empty container selector")
    if "#" in selector:
        tag, _, ident = selector.partition("#")
        return tag or None, None, ident
    if "." in selector:
        tag, _, cls = selector.partition(".")
        return tag or None, cls, None
    return selector, None, None


class _ContainerParser(HTMLParser):
    """Collects the text of the first element matching a simple selector."""

    def __init__(self, selector: str):
        super().__init__(convert_charrefs=True)
        self.want_tag, self.want_class, self.want_id = _parse_selector(selector)
        self.container_tag: str | None = None
        self.depth = 0
        self.done = False
        self.pieces: list[str] = []
        self.anchor_depth = 0
        self.anchor_chars = 0
        self.text_chars = 0

    def _matches(self, tag: str, attrs) -> bool:
        if self.want_tag and tag != self.want_tag:
            return False
        attrs = dict(attrs)
        if self.want_class is not None:
            return self.want_class in (attrs.get("class") or "").split()
        if self.want_id is not None:
            return attrs.get("id") == self.want_id
        return True

    def handle_starttag(self, tag, attrs):
        if self.done:
            return
        if self.container_tag is None:
            if self._matches(tag, attrs):
                self.container_tag = tag
                self.depth = 1
            return
        # depth counts only the container's own tag name, which survives
        # the unclosed inline tags common in scraped HTML
        if tag == self.container_tag and tag not in _VOID_TAGS:
            self.depth += 1
        if tag == "a":
            self.anchor_depth += 1
        if tag in _BLOCK_TAGS:
            self.pieces.append("\n")

    def handle_endtag(self, tag):
        if self.done or self.container_tag is None:
            return
        if tag == "a" and self.anchor_depth:
            self.anchor_depth -= 1
        if tag == self.container_tag:
            self.depth -= 1
            if self.depth == 0:
                self.done = True
                return
        if tag in _BLOCK_TAGS:
            self.pieces.append("\n")

    def handle_data(self, data):
        if self.done or self.container_tag is None:
            return
        self.pieces.append(data)
        stripped = len("".join(data.split()))
        self.text_chars += stripped
        if self.anchor_depth:
            self.anchor_chars += stripped

    def link_ratio(self) -> float:
        if self.text_chars == 0:
            return 0.0
        return self.anchor_chars / self.text_chars


def _normalize(text: str) -> str:
    lines = (" ".join(line.split()) for line in text.replace("\xa0", " ").split("\n"))
    return "\n".join(line for line in lines if line)


def _extract(markup: str, selector: str, source: str) -> tuple[str, float]:
    parser = _ContainerParser(selector)
    parser.feed(markup)
    parser.close()
    if parser.container_tag is None:
        raise NoContainer(f"{source}: nothing matches selector {selector!r}")
    return _normalize("".join(parser.pieces)), parser.link_ratio()


def extract_text(raw: RawDocument, container_selector: str = DEFAULT_SELECTOR) -> str:
    """Text inside the first element matching the selector, tags stripped."""
    text, _ = _extract(decode_payload(raw), container_selector, raw.source_path)
    return text


def looks_like_index(raw: RawDocument, container_selector: str = DEFAULT_SELECTOR) -> bool:
    """Heuristic: mostly link text means a navigation/index page."""
    _, ratio = _extract(decode_payload(raw), container_selector, raw.source_path)
    return ratio > INDEX_LINK_RATIO


# --- traditional -> simplified ------------------------------------------------

def load_conversion_table() -> dict[str, str]:
    """Bundled single-character map; duplicate keys warn and keep the first."""
    table: dict[str, str] = {}
    data = resources.files("topicshelf").joinpath("data/trad2simp.tsv")
    for line in data.read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        source, _, target = line.partition("\t")
        if source in table:
            log.warning("conversion table: duplicate mapping for %r kept first", source)
            continue
        table[source] = target
    return table


_TRANSLATION: dict[int, str] | None = None


def to_simplified(text: str) -> str:
    """Replace every mapped traditional character; everything else passes.

    Idempotent because no mapping target is itself a mapping source.
    """
    global _TRANSLATION
    if _TRANSLATION is None:
        _TRANSLATION = {ord(t): s for t, s in load_conversion_table().items()}
    return text.translate(_TRANSLATION)


# --- filtering ------------------------------------------------------------------

def filter_documents(
    docs: list[CleanDocument],
    modern_words: tuple[str, ...] = DEFAULT_MODERN_WORDS,
) -> FilterReport:
    """Partition documents into kept, flagged-for-review, and dropped.

    Empty documents are dropped outright; documents containing any modern
    vocabulary marker go to `flagged` so a human can review them, mirroring
    a manual cleanup step rather than automating the deletion.
    """
    report = FilterReport()
    for doc in docs:
        if not doc.text:
            report.dropped.append(doc)
        elif any(marker in doc.text for marker in modern_words):
            report.flagged.append(doc)
        else:
            report.kept.append(doc)
    return report


# --- directory pipeline -----------------------------------------------------------

def ingest_tree(
    src_dir,
    out_dir,
    container_selector: str = DEFAULT_SELECTOR,
    modern_words: tuple[str, ...] = DEFAULT_MODERN_WORDS,
    encoding_hint: str | None = None,
) -> dict:
    """Mirror a tree of .html/.txt sources into clean UTF-8 .txt files.

    Writes kept and flagged documents (flagged ones still need review, so
    they stay on disk), skips dropped and failed ones, and records one
    line per input file in the JSONL ingestion report.  Returns summary
    counts.
    """
    src = Path(src_dir)
    out = Path(out_dir)
    paths = sorted(
        p for p in src.rglob("*") if p.suffix.lower() in (".html", ".htm", ".txt")
    )
    if not paths:
        raise NoDocuments(f"no .html or .txt files under {src}")
    out.mkdir(parents=True, exist_ok=True)

    records = []
    docs: list[CleanDocument] = []
    index_suspects: set[str] = set()
    originals: dict[str, str] = {}
    for path in paths:
        rel = PurePosixPath(path.relative_to(src).as_posix())
        doc_id = str(rel.with_suffix(".txt"))
        if doc_id in originals:
            records.append(
                {
                    "path": str(rel),
                    "doc_id": doc_id,
                    "action": "error",
                    "reason": "DuplicateDocumentId",
                    "detail": f"collides with {originals[doc_id]}",
                }
            )
            continue
        raw = RawDocument(str(path), path.read_bytes(), encoding_hint)
        try:
            if path.suffix.lower() in (".html", ".htm"):
                text, ratio = _extract(
                    decode_payload(raw), container_selector, raw.source_path
                )
                if ratio > INDEX_LINK_RATIO:
                    index_suspects.add(doc_id)
            else:
                text = _normalize(decode_payload(raw))
        except (NoContainer, DecodeError) as exc:
            records.append(
                {
                    "path": str(rel),
                    "doc_id": doc_id,
                    "action": "error",
                    "reason": type(exc).__name__,
                    "detail": str(exc),
                }
            )
            continue
        originals[doc_id] = str(rel)
        docs.append(
            CleanDocument(
                doc_id=doc_id,
                label=str(rel.with_suffix("")),
                text=to_simplified(text),
            )
        )

    partition = filter_documents(docs, modern_words)
    status = {doc.doc_id: "dropped-empty" for doc in partition.dropped}
    for doc in partition.kept:
        status[doc.doc_id] = "written"
    for doc in partition.flagged:
        status[doc.doc_id] = "written-flagged"

    for doc in sorted(docs, key=lambda d: d.doc_id):
        action = status[doc.doc_id]
        flags = []
        if action == "written-flagged":
            flags.append("modern-vocabulary")
        if doc.doc_id in index_suspects:
            flags.append("index-suspect")
        if action != "dropped-empty":
            target = out / doc.doc_id
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(doc.text + "\n")
        records.append(
            {
                "path": originals[doc.doc_id],
                "doc_id": doc.doc_id,
                "action": action,
                "reason": None,
                "flags": flags,
            }
        )

    records.sort(key=lambda r: r["path"])
    with open(out / REPORT_NAME, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            fh.write("\n")

    summary = partition.counts
    summary["errors"] = sum(1 for r in records if r["action"] == "error")
    summary["index_suspects"] = len(index_suspects)
    summary["total"] = len(paths)
    return summary
