"""Parser for Web of Science Core Collection "Plain Text" full-record exports.

The format is a tagged-record file: each field starts with a two-letter
tag followed by a space ("PY 2013", "CR ..."), continuation lines are
indented with exactly three spaces and belong to the most recent tag,
"ER" terminates a record and "EF" terminates the file.  Every line of a
CR block (tagged line and continuations alike) is one cited-reference
entry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

_YEAR_RE = re.compile(r"^\d{4}$")
_VOLUME_RE = re.compile(r"^V(\d+)$")
_PAGE_RE = re.compile(r"^P([A-Za-z0-9]+)$")


class ExportTooLargeError(ValueError):
    """Input stream exceeded the configured byte limit."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"input exceeds the size limit of {limit} bytes")


class EmptyEntryError(ValueError):
    """A cited-reference entry was empty."""


@dataclass(frozen=True)
class CitedReference:
    """One cited-reference entry, decomposed into its fields.

    ``raw`` is always the verbatim entry text (tag/indent stripped,
    trailing whitespace trimmed); the remaining fields are best-effort.
    """

    raw: str
    author: str = ""
    rpy: int | None = None
    source: str = ""
    volume: int | None = None
    page: str | None = None
    doi: str | None = None


@dataclass(frozen=True)
class CitingRecord:
    """One publication from an export: its year plus cited references."""

    publication_year: int | None
    cited_references: tuple[CitedReference, ...]
    source_line_range: tuple[int, int]


@dataclass
class ParseReport:
    records_parsed: int = 0
    references_parsed: int = 0
    references_without_year: int = 0
    malformed_lines: list[tuple[int, str]] = field(default_factory=list)


def parse_cited_reference(entry: str) -> CitedReference:
    """Decompose one cited-reference line into author/year/source/etc.

    Segments are separated by ", ".  The first segment is the author,
    the first bare 4-digit segment in [1000, 2999] is the reference
    publication year, and segments after the year are either special
    forms (V<digits> volume, P<alnum> page, "DOI " prefix) or pieces of
    the source title.  Total on non-empty input: unrecognized text just
    lands in the loosest matching field.
    """
    if not entry.strip():
        raise EmptyEntryError("empty cited-reference entry")

    segments = entry.split(", ")

    rpy: int | None = None
    year_idx: int | None = None
    for i, seg in enumerate(segments):
        if _YEAR_RE.match(seg) and 1000 <= int(seg) <= 2999:
            rpy = int(seg)
            year_idx = i
            break

    author = segments[0] if year_idx != 0 else ""

    source_parts: list[str] = []
    volume: int | None = None
    page: str | None = None
    doi: str | None = None
    if year_idx is not None:
        for seg in segments[year_idx + 1:]:
            m = _VOLUME_RE.match(seg)
            if m and volume is None:
                volume = int(m.group(1))
                continue
            m = _PAGE_RE.match(seg)
            if m and page is None:
                page = m.group(1)
                continue
            if seg.startswith("DOI ") and doi is None and seg[4:].startswith("10."):
                doi = seg[4:]
                continue
            source_parts.append(seg)

    return CitedReference(
        raw=entry,
        author=author,
        rpy=rpy,
        source=" ".join(source_parts),
        volume=volume,
        page=page,
        doi=doi,
    )


def _decode_line(raw: bytes, line_no: int, report: ParseReport) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        report.malformed_lines.append((line_no, "undecodable bytes replaced"))
        return raw.decode("utf-8", errors="replace")


def parse_export(
    stream: BinaryIO | Iterable[bytes],
    max_bytes: int = 15 * 2 ** 20,
) -> tuple[list[CitingRecord], ParseReport]:
    """Stream-parse an export into citing records plus a parse report.

    Single pass over the byte stream; raises ExportTooLargeError as soon
    as more than ``max_bytes`` have been read.  An optional UTF-8 BOM is
    stripped.  Undecodable bytes are replaced and noted in the report.
    """
    if max_bytes <= 0:
        raise ValueError("max_bytes must be positive")

    records: list[CitingRecord] = []
    report = ParseReport()

    bytes_read = 0
    current_tag = ""
    record_year: int | None = None
    record_refs: list[CitedReference] = []
    record_start: int | None = None

    def add_reference(text: str, line_no: int) -> None:
        text = text.rstrip()
        if not text:
            report.malformed_lines.append((line_no, "empty cited-reference entry"))
            return
        try:
            ref = parse_cited_reference(text)
        except Exception as exc:  # totality net; parse errors keep the raw text
            report.malformed_lines.append((line_no, str(exc)))
            ref = CitedReference(raw=text)
        record_refs.append(ref)
        report.references_parsed += 1
        if ref.rpy is None:
            report.references_without_year += 1

    for line_no, raw in enumerate(stream, start=1):
        bytes_read += len(raw)
        if bytes_read > max_bytes:
            raise ExportTooLargeError(max_bytes)

        line = _decode_line(raw, line_no, report).rstrip("\r\n")
        if line_no == 1:
            line = line.lstrip("\ufeff")

        if not line.strip():
            current_tag = ""
            continue

        if line.startswith("   ") and not line[3:4].isspace():
            # continuation of the most recent tag
            if record_start is None:
                record_start = line_no
            if current_tag == "CR":
                add_reference(line[3:], line_no)
            continue

        tag = line[:2]
        value = line[3:] if len(line) > 3 and line[2] == " " else ""

        if line.rstrip() == "EF":
            break
        if line.rstrip() == "ER":
            records.append(
                CitingRecord(
                    publication_year=record_year,
                    cited_references=tuple(record_refs),
                    source_line_range=(record_start or line_no, line_no),
                )
            )
            report.records_parsed += 1
            record_year = None
            record_refs = []
            record_start = None
            current_tag = ""
            continue

        if record_start is None:
            record_start = line_no
        current_tag = tag
        if tag == "PY":
            if _YEAR_RE.match(value.strip()) and 1000 <= int(value) <= 2999:
                record_year = int(value)
            else:
                report.malformed_lines.append((line_no, f"unparseable PY value {value!r}"))
        elif tag == "CR":
            add_reference(value, line_no)
        # every other tag is skipped without error

    return records, report
