"""Rule-based removal of redundant description content.

Five rules run in a fixed order: URL spans, doctest demonstrations, directory
listings, dashed parameter-table sections, then whitespace collapsing.
Records whose cleaned text keeps fewer than three words are marked dropped.
Cleaning is idempotent and never lengthens the text; every removed character
is attributed to exactly one rule.
"""
from __future__ import annotations

import html
import re
from dataclasses import dataclass, field

from .ingest import PairRecord

MIN_WORDS = 3

RULE_DECODE = "decode_entities"
RULE_URL = "strip_urls"
RULE_DOCTEST = "strip_doctests"
RULE_LISTING = "strip_directory_listings"
RULE_PARAMS = "strip_parameter_tables"
RULE_COLLAPSE = "collapse_whitespace"

RULE_ORDER = (RULE_DECODE, RULE_URL, RULE_DOCTEST, RULE_LISTING, RULE_PARAMS,
              RULE_COLLAPSE)


@dataclass
class CleanReport:
    """What the pipeline did to one description."""

    rules_fired: dict[str, int] = field(default_factory=dict)
    removed_chars: dict[str, int] = field(default_factory=dict)
    before_len: int = 0
    after_len: int = 0
    dropped: bool = False

    def record(self, rule, hits, removed):
        if hits:
            self.rules_fired[rule] = self.rules_fired.get(rule, 0) + hits
        if removed:
            self.removed_chars[rule] = self.removed_chars.get(rule, 0) + removed


_URL_RE = re.compile(r"<\s*https?://[^>]*>|https?://\S+")
_DOCTEST_MARK = ">>>"
_DASHES_RE = re.compile(r"^\s*-{3,}\s*$")
_SECTION_HEADERS = frozenset(
    ("parameters", "returns", "raises", "yields", "examples", "example",
     "attributes", "notes", "see also", "references", "other parameters",
     "args", "arguments", "usage"))
_PARAM_ENTRY_RE = re.compile(r"^\s*[*\w.\[\]]+\s*:\s*\S")
_FILE_EXT_RE = re.compile(r"\b\w[\w\-]*\.(?!\d)[A-Za-z][A-Za-z0-9]{0,4}\b")
_PATHSEP_RE = re.compile(r"[\w.\-]+[/\\][\w.\-]")


def _decode_entities(text):
    # to fixpoint: corpus text carries doubly-escaped entities like &amp;gt;
    for _ in range(20):
        decoded = html.unescape(text)
        if decoded == text:
            break
        text = decoded
    return text


def _strip_urls(text):
    return _URL_RE.subn("", text)


def _strip_doctests(lines):
    """Remove prompt lines from their ``>>>`` onward plus trailing output lines."""
    out = []
    hits = 0
    skipping = False
    for line in lines:
        mark = line.find(_DOCTEST_MARK)
        if mark != -1:
            hits += 1
            skipping = True
            head = line[:mark].rstrip()
            if head:
                out.append(head)
            continue
        if skipping:
            if not line.strip():
                skipping = False
                out.append(line)
            continue
        out.append(line)
    return out, hits


def _is_listing_line(line):
    stripped = line.strip()
    if not stripped or len(stripped) > 120:
        return False
    if _PATHSEP_RE.search(stripped):
        return True
    words = stripped.split()
    if len(words) <= 4 and all(re.fullmatch(r"[\w.\-/\\]+", w) for w in words):
        if _FILE_EXT_RE.search(stripped):
            return True
        if len(line) - len(line.lstrip()) >= 4:
            return True
    return False


def _strip_listings(lines):
    """Remove runs of >= 2 consecutive path/indent-listing lines."""
    flags = [_is_listing_line(ln) for ln in lines]
    out = []
    hits = 0
    i = 0
    while i < len(lines):
        if flags[i]:
            j = i
            while j < len(lines) and flags[j]:
                j += 1
            if j - i >= 2:
                hits += 1
                i = j
                continue
        out.append(lines[i])
        i += 1
    return out, hits


def _strip_param_tables(lines):
    """Remove a section header with a dashed underline and its entries."""
    out = []
    hits = 0
    i = 0
    while i < len(lines):
        if (i + 1 < len(lines)
                and lines[i].strip().lower().rstrip(":") in _SECTION_HEADERS
                and _DASHES_RE.match(lines[i + 1])):
            hits += 1
            i += 2
            while i < len(lines):
                line = lines[i]
                if (not line.strip() or line[:1] in (" ", "\t")
                        or _PARAM_ENTRY_RE.match(line) or _DASHES_RE.match(line)
                        or line.strip().lower().rstrip(":") in _SECTION_HEADERS):
                    i += 1
                    continue
                break
            continue
        out.append(lines[i])
        i += 1
    return out, hits


def clean_doc(doc):
    """Apply the rule pipeline to one description; returns (text, report)."""
    report = CleanReport(before_len=len(doc))
    text = _decode_entities(doc)
    report.record(RULE_DECODE, int(text != doc), len(doc) - len(text))

    text2, url_hits = _strip_urls(text)
    report.record(RULE_URL, url_hits, len(text) - len(text2))
    text = text2

    lines = text.split("\n")
    lines2, dt_hits = _strip_doctests(lines)
    kept = "\n".join(lines2)
    report.record(RULE_DOCTEST, dt_hits, len(text) - len(kept))
    text = kept

    lines3, ls_hits = _strip_listings(text.split("\n"))
    kept = "\n".join(lines3)
    report.record(RULE_LISTING, ls_hits, len(text) - len(kept))
    text = kept

    lines4, pt_hits = _strip_param_tables(text.split("\n"))
    kept = "\n".join(lines4)
    report.record(RULE_PARAMS, pt_hits, len(text) - len(kept))
    text = kept

    collapsed = " ".join(text.split())
    report.record(RULE_COLLAPSE, int(collapsed != text), len(text) - len(collapsed))
    report.after_len = len(collapsed)
    report.dropped = len(collapsed.split()) < MIN_WORDS
    return collapsed, report


def clean_corpus(records):
    """Clean every record's doc; dropped records are excluded from the output.

    Returns (cleaned records, aggregate) where aggregate counts rule firings,
    drops, and totals across the corpus.
    """
    cleaned = []
    aggregate = {"total": 0, "kept": 0, "dropped": 0,
                 "rules_fired": {rule: 0 for rule in RULE_ORDER},
                 "removed_chars": {rule: 0 for rule in RULE_ORDER}}
    for rec in records:
        aggregate["total"] += 1
        text, report = clean_doc(rec.doc)
        for rule, n in report.rules_fired.items():
            aggregate["rules_fired"][rule] += n
        for rule, n in report.removed_chars.items():
            aggregate["removed_chars"][rule] += n
        if report.dropped:
            aggregate["dropped"] += 1
            continue
        aggregate["kept"] += 1
        cleaned.append(PairRecord(rec.id, rec.code, text))
    return cleaned, aggregate
