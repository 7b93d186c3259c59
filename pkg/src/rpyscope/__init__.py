"""Reference publication year spectroscopy toolkit.

Parses Web of Science Core Collection plain-text exports, computes
standard and citing-year-segmented spectroscopy analyses, and serves
searchable reference tables through a CLI and an HTTP API.
"""

from rpyscope.wos import (
    CitedReference,
    CitingRecord,
    EmptyEntryError,
    ExportTooLargeError,
    ParseReport,
    parse_cited_reference,
    parse_export,
)
from rpyscope.core import (
    HeatmapMatrix,
    SpectroSeries,
    YearRange,
    count_by_rpy,
    deviation_series,
    multi_rpys,
    rank_transform,
    standard_rpys,
)
from rpyscope.refindex import (
    IndexRow,
    Query,
    ResolvedLink,
    UnknownSortKeyError,
    build_index,
    resolve_link,
    search,
)

__version__ = "0.1.0"

__all__ = [
    "CitedReference",
    "CitingRecord",
    "EmptyEntryError",
    "ExportTooLargeError",
    "HeatmapMatrix",
    "IndexRow",
    "ParseReport",
    "Query",
    "ResolvedLink",
    "SpectroSeries",
    "UnknownSortKeyError",
    "YearRange",
    "build_index",
    "count_by_rpy",
    "deviation_series",
    "multi_rpys",
    "parse_cited_reference",
    "parse_export",
    "rank_transform",
    "resolve_link",
    "search",
    "standard_rpys",
]
