"""Per-column statistics: boundaries, seeded sample, equi-width histogram.

These are the three statistics slices a generation prompt can carry. Numeric
columns get all three; text columns get distinct count and sample only.
Everything is a pure function of (data, sample_size, bucket_count, seed), so
columns can be computed in any order or in parallel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import StatisticsError
from .schema import SchemaCatalog, TableData
from .seeding import subseed

DEFAULT_SAMPLE_SIZE = 1000
DEFAULT_BUCKET_COUNT = 32


@dataclass(frozen=True)
class Bucket:
    lo: float
    hi: float
    frequency: int


@dataclass(frozen=True)
class ColumnStatistics:
    table: str
    column: str
    value_type: str
    row_count: int
    distinct_count: int
    sample: tuple
    min: float | int | str | None = None
    max: float | int | str | None = None
    histogram: tuple[Bucket, ...] | None = None
    empty: bool = False

    def bucket_of(self, value: float) -> int:
        """Index of the bucket holding `value` (lo <= v < hi, last inclusive)."""
        if self.histogram is None:
            raise StatisticsError(f"{self.table}.{self.column} has no histogram")
        edges = [b.lo for b in self.histogram] + [self.histogram[-1].hi]
        idx = int(np.searchsorted(np.asarray(edges), value, side="right")) - 1
        return min(max(idx, 0), len(self.histogram) - 1)


# Statistics for a whole dataset, keyed by (table, column).
StatsMap = dict


def compute_statistics(
    data: TableData,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    bucket_count: int = DEFAULT_BUCKET_COUNT,
    seed: int = 0,
) -> list[ColumnStatistics]:
    """Compute statistics for every column of one table.

    Sampling is uniform without replacement and reproducible from the seed;
    each column draws from its own sub-seed so results do not depend on
    column evaluation order.
    """
    if bucket_count < 1:
        raise StatisticsError("bucket_count must be >= 1")
    if sample_size < 1:
        raise StatisticsError("sample_size must be >= 1")

    out = []
    for name, values in data.columns.items():
        numeric = values.dtype.kind in ("i", "f")
        n = data.row_count
        if n == 0:
            out.append(
                ColumnStatistics(
                    table=data.table,
                    column=name,
                    value_type=_value_type_of(values),
                    row_count=0,
                    distinct_count=0,
                    sample=(),
                    empty=True,
                )
            )
            continue

        rng = np.random.default_rng(subseed(seed, "stats", data.table, name))
        take = min(sample_size, n)
        sample_idx = rng.choice(n, size=take, replace=False)
        sample = tuple(_to_python(values[i]) for i in sample_idx)
        distinct = int(len(np.unique(values)))

        if not numeric:
            out.append(
                ColumnStatistics(
                    table=data.table,
                    column=name,
                    value_type="text",
                    row_count=n,
                    distinct_count=distinct,
                    sample=sample,
                )
            )
            continue

        vmin = _to_python(values.min())
        vmax = _to_python(values.max())
        edges = np.linspace(float(vmin), float(vmax), bucket_count + 1)
        # lo <= v < hi per bucket, last bucket inclusive of max
        idx = np.searchsorted(edges, values.astype(np.float64), side="right") - 1
        idx = np.clip(idx, 0, bucket_count - 1)
        freqs = np.bincount(idx, minlength=bucket_count)
        histogram = tuple(
            Bucket(float(edges[i]), float(edges[i + 1]), int(freqs[i]))
            for i in range(bucket_count)
        )
        out.append(
            ColumnStatistics(
                table=data.table,
                column=name,
                value_type="integer" if values.dtype.kind == "i" else "decimal",
                row_count=n,
                distinct_count=distinct,
                sample=sample,
                min=vmin,
                max=vmax,
                histogram=histogram,
            )
        )
    return out


def build_stats_map(
    catalog: SchemaCatalog,
    data: dict[str, TableData],
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    bucket_count: int = DEFAULT_BUCKET_COUNT,
    seed: int = 0,
) -> StatsMap:
    """Statistics for every loaded table, keyed by (table, column)."""
    stats: StatsMap = {}
    for tdef in catalog.tables:
        if tdef.name not in data:
            continue
        for cs in compute_statistics(data[tdef.name], sample_size, bucket_count, seed):
            stats[(cs.table, cs.column)] = cs
    return stats


def _value_type_of(values: np.ndarray) -> str:
    kind = values.dtype.kind
    if kind == "i":
        return "integer"
    if kind == "f":
        return "decimal"
    return "text"


def _to_python(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return str(value)


def stats_to_json(stats: StatsMap) -> dict:
    doc: dict = {}
    for (table, column), cs in sorted(stats.items()):
        entry = {
            "type": cs.value_type,
            "row_count": cs.row_count,
            "distinct_count": cs.distinct_count,
            "sample": list(cs.sample),
            "empty": cs.empty,
        }
        if cs.min is not None:
            entry["min"] = cs.min
            entry["max"] = cs.max
        if cs.histogram is not None:
            entry["histogram"] = [[b.lo, b.hi, b.frequency] for b in cs.histogram]
        doc.setdefault(table, {})[column] = entry
    return doc


def stats_from_json(doc: dict) -> StatsMap:
    stats: StatsMap = {}
    for table, columns in doc.items():
        for column, entry in columns.items():
            histogram = None
            if "histogram" in entry:
                histogram = tuple(Bucket(lo, hi, int(f)) for lo, hi, f in entry["histogram"])
            stats[(table, column)] = ColumnStatistics(
                table=table,
                column=column,
                value_type=entry["type"],
                row_count=int(entry["row_count"]),
                distinct_count=int(entry["distinct_count"]),
                sample=tuple(entry["sample"]),
                min=entry.get("min"),
                max=entry.get("max"),
                histogram=histogram,
                empty=bool(entry.get("empty", False)),
            )
    return stats


def save_stats(stats: StatsMap, path: str | Path, seed: int | None = None) -> None:
    doc = {"seed": seed, "statistics": stats_to_json(stats)}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_stats(path: str | Path) -> StatsMap:
    doc = json.loads(Path(path).read_text())
    return stats_from_json(doc["statistics"])
