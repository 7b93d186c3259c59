"""Spectroscopy math: per-year reference counts, 5-year-median
deviations, citing-year segmentation, and the per-row rank transform.

Deviations are kept exact (Fraction) because the median of an
even-sized window at a range edge can be half-integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from rpyscope.wos import CitingRecord


@dataclass(frozen=True)
class YearRange:
    """Inclusive range of reference publication years."""

    first: int = 1900
    last: int = 1999

    def __post_init__(self):
        if self.first > self.last:
            raise ValueError(f"invalid year range {self.first}..{self.last}")

    def years(self) -> range:
        return range(self.first, self.last + 1)

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.first <= year <= self.last


@dataclass(frozen=True)
class SpectroSeries:
    """Per-year raw counts and median deviations for one citing set."""

    range: YearRange
    count: Mapping[int, int]
    deviation: Mapping[int, Fraction]


@dataclass(frozen=True)
class HeatmapMatrix:
    """Per-(citing year, reference year) counts, deviations, and ranks."""

    cpy_rows: tuple[int, ...]
    range: YearRange
    count: Mapping[tuple[int, int], int]
    deviation: Mapping[tuple[int, int], Fraction]
    rank: Mapping[tuple[int, int], float]
    records_without_cpy: int = 0


def count_by_rpy(records: Iterable[CitingRecord], rng: YearRange) -> dict[int, int]:
    """Tally cited references by reference publication year.

    References without a year, or with a year outside the range, are
    excluded.  The result is zero-filled over the whole range.
    """
    counts = dict.fromkeys(rng.years(), 0)
    for record in records:
        for ref in record.cited_references:
            if ref.rpy is not None and ref.rpy in rng:
                counts[ref.rpy] += 1
    return counts


def _median(values: Sequence[int]) -> Fraction:
    ordered = sorted(values)
    n = len(ordered)
    if n % 2:
        return Fraction(ordered[n // 2])
    return Fraction(ordered[n // 2 - 1] + ordered[n // 2], 2)


def deviation_series(count: Mapping[int, int], rng: YearRange) -> dict[int, Fraction]:
    """Difference of each year's count from its 5-year-median.

    The window for year n is {n-2 .. n+2} clipped to the range, so the
    first and last two years use truncated 3- or 4-value windows.
    """
    result: dict[int, Fraction] = {}
    for n in rng.years():
        window = [count[y] for y in range(max(n - 2, rng.first), min(n + 2, rng.last) + 1)]
        result[n] = Fraction(count[n]) - _median(window)
    return result


def standard_rpys(records: Iterable[CitingRecord], rng: YearRange) -> SpectroSeries:
    """Standard analysis: counts plus deviations over the year range."""
    records = list(records)
    count = count_by_rpy(records, rng)
    return SpectroSeries(range=rng, count=count, deviation=deviation_series(count, rng))


def rank_transform(deviations: Sequence) -> list[float]:
    """Normalize a row of deviations to [0, 1] by ascending fractional rank.

    Ties receive the mean of the rank positions they occupy; a length-1
    row maps to 0.5.
    """
    n = len(deviations)
    if n == 0:
        raise ValueError("rank_transform requires at least one value")
    if n == 1:
        return [0.5]

    order = sorted(range(n), key=lambda i: deviations[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and deviations[order[j + 1]] == deviations[order[i]]:
            j += 1
        mean_rank = (i + j) / 2 + 1  # 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return [(r - 1) / (n - 1) for r in ranks]


def multi_rpys(records: Iterable[CitingRecord], rng: YearRange) -> HeatmapMatrix:
    """Segment the citing set by publication year and analyze each segment.

    Records without a publication year are excluded from the matrix and
    counted in ``records_without_cpy``.
    """
    by_cpy: dict[int, list[CitingRecord]] = {}
    skipped = 0
    for record in records:
        if record.publication_year is None:
            skipped += 1
        else:
            by_cpy.setdefault(record.publication_year, []).append(record)

    cpy_rows = tuple(sorted(by_cpy))
    count: dict[tuple[int, int], int] = {}
    deviation: dict[tuple[int, int], Fraction] = {}
    rank: dict[tuple[int, int], float] = {}
    for cpy in cpy_rows:
        row_count = count_by_rpy(by_cpy[cpy], rng)
        row_dev = deviation_series(row_count, rng)
        years = list(rng.years())
        row_rank = rank_transform([row_dev[y] for y in years])
        for y, r in zip(years, row_rank):
            count[(cpy, y)] = row_count[y]
            deviation[(cpy, y)] = row_dev[y]
            rank[(cpy, y)] = r

    return HeatmapMatrix(
        cpy_rows=cpy_rows,
        range=rng,
        count=count,
        deviation=deviation,
        rank=rank,
        records_without_cpy=skipped,
    )


def format_deviation(value: Fraction) -> str:
    """Render an exact deviation: integer when whole, else one decimal."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{float(value):.1f}"
