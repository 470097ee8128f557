"""Trend tables: exact desk-scale counts next to the asymptotic reference curves."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Iterator

from .codes import greedy_code, unique_scs_census, vt_sizes
from .errors import InputError
from .graph import DeletionGraph, good_triple_census, good_triple_reference, triangle_census, \
    triangle_reference
from .report import ExperimentRow

KINDS = ("triangles", "good-triples", "unique-scs", "code-sizes")


def _rows(kind: str, ns: Iterable[int], k: int, abc: tuple[int, int, int] | None,
          workers: int) -> Iterator[ExperimentRow]:
    for n in ns:
        if n < 2:
            raise InputError("reference curves need n >= 2")
        if kind == "triangles":
            yield ExperimentRow(n, k, triangle_census(DeletionGraph(n, k), workers),
                                triangle_reference(n, k))
        elif kind == "good-triples":
            a, b, c = abc or (k, k, k)
            count = good_triple_census(n, a, b, c)
            alt = good_triple_reference(n, a, b, c, log_exponent=a + b - c)
            yield ExperimentRow(n, k, count, good_triple_reference(n, a, b, c),
                                {"a": a, "b": b, "c": c, "reference_alt": alt,
                                 "ratio_alt": count / alt})
        elif kind == "unique-scs":
            report = unique_scs_census(n, k, workers)
            yield ExperimentRow(n, k, report.count, report.reference_value)
        elif kind == "code-sizes":
            vt = max(vt_sizes(n)) if k == 1 else None
            greedy = len(greedy_code(n, k))
            best = max(greedy, vt or 0)
            yield ExperimentRow(n, k, best, 2.0**n / n**k, {
                "vt": "" if vt is None else vt,
                "greedy": greedy,
                "vt_floor": "" if vt is None else 2.0**n / (n + 1),
                "levenshtein_lower": 2.0**n / n ** (2 * k),
                "levenshtein_upper": 2.0**n / n**k,
                "improved_lower": 2.0**n * math.log2(n) / n ** (2 * k),
            })
        else:
            raise InputError(f"unknown experiment kind {kind!r}; choose from {', '.join(KINDS)}")


def experiment_trends(kind: str, n_range: Iterable[int], k: int,
                      out_path: str | Path | None = None,
                      abc: tuple[int, int, int] | None = None,
                      workers: int = 1) -> list[ExperimentRow]:
    """One row per n; written as CSV to ``out_path`` if given.

    A partially written file is removed if any row fails (for instance on a
    resource guard), so a CSV on disk is always complete.
    """
    if kind not in KINDS:
        raise InputError(f"unknown experiment kind {kind!r}; choose from {', '.join(KINDS)}")
    rows: list[ExperimentRow] = []
    if out_path is None:
        rows.extend(_rows(kind, n_range, k, abc, workers))
        return rows
    path = Path(out_path)
    try:
        with path.open("w", newline="") as fh:
            writer = None
            for row in _rows(kind, n_range, k, abc, workers):
                rows.append(row)
                record = row.as_record()
                if writer is None:
                    writer = _writer(fh, list(record))
                writer.writerow(record)
                fh.flush()
    except BaseException:
        path.unlink(missing_ok=True)
        raise
    return rows


def _writer(fh, fields: list[str]) -> csv.DictWriter:
    w = csv.DictWriter(fh, fieldnames=fields, quoting=csv.QUOTE_NONNUMERIC,
                       lineterminator="\n")
    w.writeheader()
    return w


def rows_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    if records:
        w = _writer(buf, list(records[0]))
        w.writerows(records)
    return buf.getvalue()
