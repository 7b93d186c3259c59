"""Command-line front end: batch analyses as CSV/JSON, or serve the API.

Commands:
    rpyscope standard <file>   per-year count and median deviation
    rpyscope multi <file>      per-(cpy, rpy) count, deviation, rank
    rpyscope table <file>      searchable reference table
    rpyscope serve             run the HTTP service
"""

from __future__ import annotations

import csv
import json
import sys

import click

from rpyscope.core import YearRange, format_deviation, multi_rpys, standard_rpys
from rpyscope.refindex import Query, UnknownSortKeyError, build_index, filter_sort
from rpyscope.wos import ExportTooLargeError, parse_export


def _shared_options(fn):
    fn = click.option("--from", "from_year", type=int, default=1900, show_default=True,
                      help="First reference publication year.")(fn)
    fn = click.option("--to", "to_year", type=int, default=1999, show_default=True,
                      help="Last reference publication year.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", show_default=True)(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False, writable=True),
                      default=None, help="Output path (default: standard output).")(fn)
    return fn


def _year_range(from_year: int, to_year: int) -> YearRange:
    try:
        return YearRange(from_year, to_year)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_file(path: str):
    try:
        with open(path, "rb") as fh:
            records, report = parse_export(fh)
    except FileNotFoundError:
        raise click.ClickException(f"no such file: {path}")
    except ExportTooLargeError as exc:
        raise click.ClickException(str(exc))
    if report.records_parsed == 0:
        click.echo(f"no records found in {path} "
                   f"(lines flagged: {len(report.malformed_lines)})", err=True)
        sys.exit(1)
    return records, report


def _emit(rows, header, fmt, out, json_payload):
    """Write delimited rows (csv) or the prebuilt payload (json)."""
    sink = open(out, "w", newline="") if out else sys.stdout
    try:
        if fmt == "csv":
            writer = csv.writer(sink)
            writer.writerow(header)
            writer.writerows(rows)
        else:
            json.dump(json_payload, sink, indent=2)
            sink.write("\n")
    finally:
        if out:
            sink.close()


@click.group()
@click.version_option(package_name="rpyscope")
def main():
    """Reference publication year spectroscopy over WoS plain-text exports."""


@main.command()
@click.argument("input_file", type=click.Path())
@_shared_options
def standard(input_file, from_year, to_year, fmt, out):
    """Per-year reference counts and 5-year-median deviations."""
    rng = _year_range(from_year, to_year)
    records, _ = _parse_file(input_file)
    series = standard_rpys(records, rng)
    rows = [
        (y, series.count[y], format_deviation(series.deviation[y]))
        for y in rng.years()
    ]
    payload = {
        "range": {"from": rng.first, "to": rng.last},
        "rows": [
            {"year": y, "count": series.count[y], "deviation": float(series.deviation[y])}
            for y in rng.years()
        ],
    }
    _emit(rows, ("year", "count", "deviation"), fmt, out, payload)


@main.command()
@click.argument("input_file", type=click.Path())
@_shared_options
def multi(input_file, from_year, to_year, fmt, out):
    """Citing-year-segmented analysis: count, deviation, rank per cell."""
    rng = _year_range(from_year, to_year)
    records, _ = _parse_file(input_file)
    matrix = multi_rpys(records, rng)
    cells = [(cpy, rpy) for cpy in matrix.cpy_rows for rpy in rng.years()]
    rows = [
        (c[0], c[1], matrix.count[c], format_deviation(matrix.deviation[c]),
         f"{matrix.rank[c]:.6f}")
        for c in cells
    ]
    payload = {
        "range": {"from": rng.first, "to": rng.last},
        "cpys": list(matrix.cpy_rows),
        "rows": [
            {"cpy": c[0], "rpy": c[1], "count": matrix.count[c],
             "deviation": float(matrix.deviation[c]), "rank": matrix.rank[c]}
            for c in cells
        ],
    }
    _emit(rows, ("cpy", "rpy", "count", "deviation", "rank"), fmt, out, payload)


@main.command()
@click.argument("input_file", type=click.Path())
@click.option("--query", "query_text", default="", help="Whitespace-separated search tokens.")
@click.option("--sort", "sort_key", default="times", show_default=True)
@click.option("--dir", "direction", type=click.Choice(["asc", "desc"]),
              default="desc", show_default=True)
@click.option("--limit", type=int, default=None, help="Maximum rows (default: all).")
@click.option("--mode", type=click.Choice(["standard", "multi"]), default="standard",
              show_default=True, help="Group rows per citing year in multi mode.")
@_shared_options
def table(input_file, query_text, sort_key, direction, limit, mode,
          from_year, to_year, fmt, out):
    """Searchable cited-reference table."""
    rng = _year_range(from_year, to_year)
    records, _ = _parse_file(input_file)
    index = build_index(records, mode=mode, rng=rng)
    query = Query(tokens=tuple(query_text.split()), sort_key=sort_key,
                  sort_direction=direction, limit=limit)
    try:
        matched = filter_sort(index, query)
    except UnknownSortKeyError as exc:
        raise click.UsageError(str(exc))
    if limit is not None:
        matched = matched[:limit]

    multi_mode = mode == "multi"
    header = ["author", "rpy", "source", "times"] + (["cpy"] if multi_mode else []) + ["link"]
    rows = []
    for r in matched:
        row = [r.author, r.rpy_label, r.source, r.times_referenced]
        if multi_mode:
            row.append(r.cpy_label)
        row.append(r.link.url)
        rows.append(row)
    payload = {
        "total_matches": len(matched),
        "rows": [
            {"author": r.author, "rpy": r.rpy_label, "source": r.source,
             "times": r.times_referenced, "cpy": r.cpy_label,
             "link": {"kind": r.link.kind, "url": r.link.url}}
            for r in matched
        ],
    }
    _emit(rows, header, fmt, out, payload)


@main.command()
@click.option("--bind", default="127.0.0.1:8000", show_default=True,
              help="address:port to listen on")
@click.option("--max-upload-bytes", type=int, default=15 * 2 ** 20, show_default=True)
@click.option("--session-ttl", type=float, default=3600.0, show_default=True,
              help="Idle session lifetime in seconds.")
@click.option("--static-dir", type=click.Path(file_okay=False), default=None,
              help="Directory of web client assets to serve at /.")
def serve(bind, max_upload_bytes, session_ttl, static_dir):
    """Run the HTTP analysis service."""
    import uvicorn

    from rpyscope.service import ServiceConfig, create_app

    host, _, port = bind.rpartition(":")
    config = ServiceConfig(
        max_upload_bytes=max_upload_bytes,
        session_ttl_seconds=session_ttl,
        static_dir=static_dir,
    )
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
