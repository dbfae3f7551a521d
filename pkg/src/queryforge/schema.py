"""Schema catalog and columnar table data.

The catalog is the validation ground truth for every generated query: table
and column names, value types, primary keys, and foreign-key edges. Data is
loaded once into immutable columnar arrays and shared read-only afterwards.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataLoadError, SchemaError

VALUE_TYPES = ("integer", "decimal", "text")


@dataclass(frozen=True)
class ColumnDef:
    name: str
    value_type: str  # one of VALUE_TYPES


@dataclass(frozen=True)
class TableDef:
    name: str
    columns: tuple[ColumnDef, ...]
    primary_key: str

    def column(self, name: str) -> ColumnDef | None:
        for col in self.columns:
            if col.name == name:
                return col
        return None

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]


@dataclass(frozen=True)
class ForeignKey:
    child_table: str
    child_column: str
    parent_table: str
    parent_column: str

    def __str__(self) -> str:
        return (
            f"{self.child_table}.{self.child_column} -> "
            f"{self.parent_table}.{self.parent_column}"
        )


@dataclass(frozen=True)
class SchemaCatalog:
    tables: tuple[TableDef, ...]
    foreign_keys: tuple[ForeignKey, ...]
    _by_name: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {t.name: t for t in self.tables})

    def table(self, name: str) -> TableDef | None:
        return self._by_name.get(name.lower())

    def has_table(self, name: str) -> bool:
        return name.lower() in self._by_name

    def table_names(self) -> list[str]:
        return [t.name for t in self.tables]

    def column_type(self, table: str, column: str) -> str | None:
        tdef = self.table(table)
        if tdef is None:
            return None
        cdef = tdef.column(column.lower())
        return cdef.value_type if cdef else None

    def indexed_columns(self, table: str) -> set[str]:
        """Columns with a declared index; primary keys are indexed by default."""
        tdef = self.table(table)
        return {tdef.primary_key} if tdef else set()

    def fk_edges(self, tables: set[str] | None = None) -> list[ForeignKey]:
        """Foreign-key edges, optionally restricted to endpoints within `tables`."""
        edges = list(self.foreign_keys)
        if tables is not None:
            edges = [
                e for e in edges if e.child_table in tables and e.parent_table in tables
            ]
        return edges

    def is_fk_edge(self, t1: str, c1: str, t2: str, c2: str) -> bool:
        for fk in self.foreign_keys:
            if (fk.child_table, fk.child_column, fk.parent_table, fk.parent_column) in (
                (t1, c1, t2, c2),
                (t2, c2, t1, c1),
            ):
                return True
        return False


@dataclass(frozen=True)
class TableData:
    """One table's rows in columnar form; arrays are typed per the schema."""

    table: str
    columns: dict[str, np.ndarray]
    row_count: int

    def column(self, name: str) -> np.ndarray:
        return self.columns[name]


def _parse_fk_ref(ref: str, location: str) -> tuple[str, str]:
    parts = ref.split(".")
    if len(parts) != 2 or not all(parts):
        raise SchemaError(f"foreign key reference {ref!r} is not of the form table.column", location)
    return parts[0].strip().lower(), parts[1].strip().lower()


def load_catalog(schema_file: str | Path) -> SchemaCatalog:
    """Load and validate a schema catalog from its JSON file.

    Identifiers are folded to lowercase. Raises SchemaError with a JSON-path
    style location for parse errors, duplicate names, bad types, and
    dangling or type-mismatched foreign keys.
    """
    path = Path(schema_file)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read schema file: {exc}", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"schema file is not valid JSON: {exc}", str(path)) from exc

    tables_raw = raw.get("tables")
    if not isinstance(tables_raw, list) or not tables_raw:
        raise SchemaError("no tables", "tables")

    tables: list[TableDef] = []
    seen_tables: set[str] = set()
    for ti, traw in enumerate(tables_raw):
        loc = f"tables[{ti}]"
        name = str(traw.get("name", "")).strip().lower()
        if not name:
            raise SchemaError("table has no name", loc)
        if name in seen_tables:
            raise SchemaError(f"duplicate table {name!r}", loc)
        seen_tables.add(name)

        cols_raw = traw.get("columns")
        if not isinstance(cols_raw, list) or not cols_raw:
            raise SchemaError(f"table {name!r} has no columns", f"{loc}.columns")
        columns: list[ColumnDef] = []
        seen_cols: set[str] = set()
        for ci, craw in enumerate(cols_raw):
            cloc = f"{loc}.columns[{ci}]"
            cname = str(craw.get("name", "")).strip().lower()
            ctype = str(craw.get("type", "")).strip().lower()
            if not cname:
                raise SchemaError("column has no name", cloc)
            if cname in seen_cols:
                raise SchemaError(f"duplicate column {name}.{cname}", cloc)
            if ctype not in VALUE_TYPES:
                raise SchemaError(
                    f"column {name}.{cname} has unknown type {ctype!r}"
                    f" (expected one of {', '.join(VALUE_TYPES)})",
                    cloc,
                )
            seen_cols.add(cname)
            columns.append(ColumnDef(cname, ctype))

        pk = str(traw.get("primary_key", "")).strip().lower()
        if pk not in seen_cols:
            raise SchemaError(
                f"primary key {pk!r} is not a column of table {name!r}",
                f"{loc}.primary_key",
            )
        tables.append(TableDef(name, tuple(columns), pk))

    catalog_no_fk = SchemaCatalog(tuple(tables), ())

    fks: list[ForeignKey] = []
    for fi, fraw in enumerate(raw.get("foreign_keys", [])):
        loc = f"foreign_keys[{fi}]"
        child_t, child_c = _parse_fk_ref(str(fraw.get("from", "")), loc)
        parent_t, parent_c = _parse_fk_ref(str(fraw.get("to", "")), loc)
        for t, c in ((child_t, child_c), (parent_t, parent_c)):
            tdef = catalog_no_fk.table(t)
            if tdef is None:
                raise SchemaError(f"foreign key references missing table {t!r}", loc)
            if tdef.column(c) is None:
                raise SchemaError(f"foreign key references missing column {t}.{c}", loc)
        child_type = catalog_no_fk.column_type(child_t, child_c)
        parent_type = catalog_no_fk.column_type(parent_t, parent_c)
        if child_type != parent_type:
            raise SchemaError(
                f"foreign key {child_t}.{child_c} ({child_type}) -> "
                f"{parent_t}.{parent_c} ({parent_type}) joins different value types",
                loc,
            )
        fks.append(ForeignKey(child_t, child_c, parent_t, parent_c))

    return SchemaCatalog(tuple(tables), tuple(fks))


def _convert_column(values: list[str], value_type: str, table: str, column: str) -> np.ndarray:
    if value_type == "text":
        return np.asarray(values, dtype=object)
    out = np.empty(len(values), dtype=np.int64 if value_type == "integer" else np.float64)
    for i, text in enumerate(values):
        text = text.strip()
        try:
            out[i] = int(text) if value_type == "integer" else float(text)
        except ValueError:
            raise DataLoadError(
                f"value {text!r} in {value_type} column {table}.{column}"
                f" (data row {i}) is not a {value_type}"
            ) from None
    return out


def load_table_data(catalog: SchemaCatalog, data_dir: str | Path) -> dict[str, TableData]:
    """Load <table>.csv for every catalog table into typed columnar arrays.

    The header row must contain exactly the schema's columns (any order).
    Raises DataLoadError naming the file, row, or column at fault.
    """
    data_dir = Path(data_dir)
    out: dict[str, TableData] = {}
    for tdef in catalog.tables:
        path = data_dir / f"{tdef.name}.csv"
        if not path.exists():
            raise DataLoadError(f"missing data file for table {tdef.name!r}: {path}")
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DataLoadError(f"{path}: file is empty (expected a header row)") from None
            header = [h.strip().lower() for h in header]
            expected = tdef.column_names()
            if sorted(header) != sorted(expected):
                raise DataLoadError(
                    f"{path}: header {header} does not match schema columns {expected}"
                )
            raw_cols: dict[str, list[str]] = {name: [] for name in header}
            for ri, row in enumerate(reader):
                if len(row) != len(header):
                    raise DataLoadError(
                        f"{path}: row {ri} has {len(row)} fields, expected {len(header)}"
                    )
                for name, cell in zip(header, row):
                    raw_cols[name].append(cell)
        columns = {}
        for cdef in tdef.columns:
            columns[cdef.name] = _convert_column(
                raw_cols[cdef.name], cdef.value_type, tdef.name, cdef.name
            )
        out[tdef.name] = TableData(tdef.name, columns, len(raw_cols[header[0]]))
    return out
