"""Searchable index of cited-reference variants.

Rows are grouped strictly by the full variant tuple (author, year,
source, volume, page, doi) — no fuzzy merging, so spelling variants of
the same work stay distinct.  Multi mode additionally keys by the
citing publication year.  Search is an AND of case-insensitive
substring matches over the displayed text columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence
from urllib.parse import quote

from rpyscope.core import YearRange
from rpyscope.wos import CitedReference, CitingRecord

SCHOLAR_URL = "https://scholar.google.com/scholar?q="
DOI_URL = "https://doi.org/"

SORT_KEYS = ("author", "rpy", "source", "times", "cpy")


class UnknownSortKeyError(ValueError):
    def __init__(self, key: str):
        super().__init__(f"unknown sort key {key!r}; valid keys: {', '.join(SORT_KEYS)}")


@dataclass(frozen=True)
class ResolvedLink:
    kind: Literal["doi", "scholar"]
    url: str


@dataclass(frozen=True)
class IndexRow:
    author: str
    rpy_label: str  # "RPY1980" or empty
    source: str
    times_referenced: int
    link: ResolvedLink
    cpy_label: str | None = None  # "CPY2013", multi mode only

    @cached_property
    def haystack(self) -> str:
        """Lowercased text columns joined for substring search; the
        newline separator cannot occur in a query token."""
        fields = [self.author, self.rpy_label, self.source, self.cpy_label or ""]
        return "\n".join(fields).lower()


@dataclass(frozen=True)
class Query:
    tokens: tuple[str, ...] = ()
    sort_key: str = "times"
    sort_direction: Literal["asc", "desc"] = "desc"
    limit: int | None = 40


def resolve_link(ref: CitedReference) -> ResolvedLink:
    """DOI link when available, otherwise a Google Scholar search."""
    if ref.doi:
        return ResolvedLink(kind="doi", url=DOI_URL + ref.doi)
    parts = [p for p in (ref.author, ref.source, str(ref.rpy) if ref.rpy else "") if p]
    query = " ".join(parts) if parts else ref.raw
    return ResolvedLink(kind="scholar", url=SCHOLAR_URL + quote(query, safe=""))


def build_index(
    records: Iterable[CitingRecord],
    mode: Literal["standard", "multi"] = "standard",
    rng: YearRange = YearRange(),
) -> list[IndexRow]:
    """Aggregate parsed references into table rows with citation counts.

    References with a year outside the range are dropped; references
    without any year are retained (their year label is empty).  In multi
    mode, records lacking a publication year are skipped since they
    cannot be assigned a citing-year label.
    """
    groups: dict[tuple, tuple[int, CitedReference]] = {}
    for record in records:
        cpy = record.publication_year
        if mode == "multi" and cpy is None:
            continue
        for ref in record.cited_references:
            if ref.rpy is not None and ref.rpy not in rng:
                continue
            key = (ref.author, ref.rpy, ref.source, ref.volume, ref.page, ref.doi)
            if mode == "multi":
                key = key + (cpy,)
            times, first = groups.get(key, (0, ref))
            groups[key] = (times + 1, first)

    rows = []
    for key, (times, first) in groups.items():
        rows.append(
            IndexRow(
                author=first.author,
                rpy_label=f"RPY{first.rpy}" if first.rpy is not None else "",
                source=first.source,
                times_referenced=times,
                link=resolve_link(first),
                cpy_label=f"CPY{key[-1]}" if mode == "multi" else None,
            )
        )
    rows.sort(key=lambda r: (r.author, r.source, r.rpy_label, r.cpy_label or ""))
    for row in rows:
        row.haystack  # populate the search cache up front
    return rows


def _match(row: IndexRow, tokens: Sequence[str]) -> bool:
    haystack = row.haystack
    return all(tok in haystack for tok in tokens)


def filter_sort(rows: Iterable[IndexRow], query: Query) -> list[IndexRow]:
    """All matching rows, fully sorted, without the row limit applied.

    Rows are expected in build_index order, which is ascending (author,
    source); a single stable sort then leaves ties in exactly that
    order for either direction (Python's reverse=True keeps equal keys
    in input order).
    """
    if query.sort_key not in SORT_KEYS:
        raise UnknownSortKeyError(query.sort_key)

    tokens = [t.lower() for t in query.tokens if t]
    if tokens:
        matched = [r for r in rows if _match(r, tokens)]
    else:
        matched = list(rows)

    key_funcs = {
        "author": lambda r: r.author,
        "rpy": lambda r: r.rpy_label,
        "source": lambda r: r.source,
        "times": lambda r: r.times_referenced,
        "cpy": lambda r: r.cpy_label or "",
    }
    matched.sort(key=key_funcs[query.sort_key], reverse=query.sort_direction == "desc")
    return matched


def search(rows: Iterable[IndexRow], query: Query) -> list[IndexRow]:
    """Filter, sort, and truncate to the query's row limit."""
    matched = filter_sort(rows, query)
    if query.limit is not None:
        return matched[: query.limit]
    return matched
