"""
Scraped HTML to clean one-text-per-file corpus
==============================================

Raw input is a tree of saved web pages: navigation chrome around one
content container, traditional-script text, link-only index pages,
and the odd file in a legacy encoding.  ingest_tree walks the tree,
pulls the container's text, converts to simplified script, filters
obvious junk, and writes a mirrored tree of plain .txt files plus a
line-per-input report of what happened.
"""

import json
import tempfile
from pathlib import Path

from topicshelf.ingest import RawDocument, extract_text, ingest_tree, to_simplified

PAGE = """<html><body>
<div class="menu"><a href="/">home</a> <a href="/next">next</a></div>
<div class="snr2">
  <h2>老子&nbsp;第一章</h2>
  <p>道可道，非常道。名可名，非常名。</p>
  <p>無名天地之始；有名萬物之母。</p>
</div>
<div class="footer">copyright</div>
</body></html>"""

INDEX = """<html><body><div class="snr2">
<a href="c1">第一章</a><a href="c2">第二章</a><a href="c3">第三章</a>
</div></body></html>"""

# extraction alone: first matching container, block tags become line
# breaks, markup and surrounding chrome vanish
raw = RawDocument("laozi/ch01.html", PAGE.encode("utf-8"), None)
print(extract_text(raw, ".snr2"))

# script conversion is a plain character map, already idempotent
trad = "無名天地之始"
print(f"\n{trad} -> {to_simplified(trad)}")

with tempfile.TemporaryDirectory() as tmp:
    src = Path(tmp, "raw")
    (src / "laozi").mkdir(parents=True)
    (src / "laozi" / "ch01.html").write_text(PAGE, encoding="utf-8")
    (src / "laozi" / "index.html").write_text(INDEX, encoding="utf-8")
    (src / "laozi" / "empty.html").write_text(
        '<div class="snr2"></div>', encoding="utf-8"
    )

    out = Path(tmp, "clean")
    summary = ingest_tree(src, out)
    print(f"\n{summary}")

    for path in sorted(out.rglob("*.txt")):
        print(f"\n--- {path.relative_to(out)}")
        print(path.read_text(encoding="utf-8"), end="")

    # the report keeps one record per input, including the ones that
    # were not written, so nothing disappears silently
    print("\n--- ingest-report.jsonl")
    for line in (out / "ingest-report.jsonl").read_text().splitlines():
        record = json.loads(line)
        print(f"  {record['path']:<18} {record['action']:<9} flags={record.get('flags', [])}")
