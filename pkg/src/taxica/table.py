"""Contingency tables and the correspondence model derived from them.

A contingency table is a labeled I x J matrix of nonnegative counts. All
analyses consume the derived correspondence model: the probability matrix
P = counts / n, its margins r and c, and the residual matrix R0 = P - r c'
measuring departure from row/column independence.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError

__all__ = [
    "ContingencyTable",
    "CorrespondenceModel",
    "parse_table",
    "serialize_table",
    "validate_table",
    "build_model",
]


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Labeled nonnegative count matrix.

    Attributes:
        row_labels: unique labels for the I rows.
        col_labels: unique labels for the J columns.
        counts: I x J float64 array, nonnegative, read-only.
        n: grand total of all counts (strictly positive).
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    counts: np.ndarray
    n: float = field(init=False)

    def __post_init__(self) -> None:
        counts = np.array(self.counts, dtype=np.float64, copy=True)
        if counts.ndim != 2:
            raise ValidationError("counts must be a 2-D matrix")
        row_labels = tuple(str(x) for x in self.row_labels)
        col_labels = tuple(str(x) for x in self.col_labels)
        if counts.shape != (len(row_labels), len(col_labels)):
            raise ValidationError(
                f"counts shape {counts.shape} does not match "
                f"{len(row_labels)} row and {len(col_labels)} column labels"
            )
        if counts.shape[0] < 1 or counts.shape[1] < 1:
            raise ValidationError("table must have at least one row and one column")
        if not np.all(np.isfinite(counts)):
            i, j = np.argwhere(~np.isfinite(counts))[0]
            raise ValidationError(
                f"non-finite count at row '{row_labels[i]}', column '{col_labels[j]}'"
            )
        if np.any(counts < 0):
            i, j = np.argwhere(counts < 0)[0]
            raise ValidationError(
                f"negative count at row '{row_labels[i]}', column '{col_labels[j]}'"
            )
        for axis_name, labels in (("row", row_labels), ("column", col_labels)):
            seen: set[str] = set()
            for lab in labels:
                if lab in seen:
                    raise ValidationError(f"duplicate {axis_name} label '{lab}'")
                seen.add(lab)
        total = float(counts.sum())
        if total <= 0.0:
            raise ValidationError("table total is zero (n = 0)")
        counts.setflags(write=False)
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n", total)

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def is_integer_valued(self) -> bool:
        return bool(np.all(self.counts == np.floor(self.counts)))

    def __repr__(self) -> str:
        i, j = self.shape
        return f"ContingencyTable({i}x{j}, n={self.n:g})"


@dataclass(frozen=True, eq=False)
class CorrespondenceModel:
    """Probability matrix, margins and independence residuals of one table.

    Invariants (all enforced at construction):
        * P sums to 1,
        * r and c are the margins of P and strictly positive,
        * every row sum and column sum of R0 is 0 up to 1e-12.
    """

    table: ContingencyTable
    P: np.ndarray
    r: np.ndarray
    c: np.ndarray
    R0: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.P, self.r, self.c, self.R0):
            arr.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.P.shape

    def __repr__(self) -> str:
        i, j = self.shape
        return f"CorrespondenceModel({i}x{j}, n={self.table.n:g})"


def parse_table(csv_text: str, delimiter: str = ",") -> ContingencyTable:
    """Parse CSV text into a :class:`ContingencyTable`.

    The first row is a header holding the J column labels; its first cell
    (usually blank or ``id``) is ignored. Every following row is a row label
    followed by J numeric cells. Raises :class:`ParseError` naming the
    offending row and column on malformed input, and :class:`ValidationError`
    for an all-zero table.
    """
    rows: list[list[str]] = []
    try:
        for rec in csv.reader(io.StringIO(csv_text), delimiter=delimiter):
            if rec and any(cell.strip() != "" for cell in rec):
                rows.append(rec)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV: {exc}") from exc
    if not rows:
        raise ParseError("empty table: no header row found")
    header = [cell.strip() for cell in rows[0]]
    col_labels = header[1:]
    if not col_labels:
        raise ParseError("empty table: header defines no data columns")
    if len(rows) == 1:
        raise ParseError("empty table: no data rows")

    row_labels: list[str] = []
    data: list[list[float]] = []
    for line_no, rec in enumerate(rows[1:], start=2):
        label = rec[0].strip()
        cells = rec[1:]
        if len(cells) != len(col_labels):
            raise ParseError(
                f"row '{label}' (line {line_no}) has {len(cells)} cells, "
                f"expected {len(col_labels)}"
            )
        values = []
        for j, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"non-numeric cell '{cell.strip()}' at row '{label}', "
                    f"column '{col_labels[j]}'"
                ) from None
            if not math.isfinite(value):
                raise ParseError(
                    f"non-finite cell at row '{label}', column '{col_labels[j]}'"
                )
            if value < 0:
                raise ParseError(
                    f"negative entry {value:g} at row '{label}', "
                    f"column '{col_labels[j]}'"
                )
            values.append(value)
        row_labels.append(label)
        data.append(values)

    for axis_name, labels in (("row", row_labels), ("column", col_labels)):
        seen: set[str] = set()
        for lab in labels:
            if lab in seen:
                raise ParseError(f"duplicate {axis_name} label '{lab}'")
            seen.add(lab)

    return ContingencyTable(tuple(row_labels), tuple(col_labels), np.array(data))


def _format_count(value: float) -> str:
    value = float(value)
    if value == int(value) and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def serialize_table(table: ContingencyTable, delimiter: str = ",") -> str:
    """Render a table as CSV text; ``parse_table`` inverts it exactly."""
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(("",) + table.col_labels)
    for label, row in zip(table.row_labels, table.counts):
        writer.writerow((label,) + tuple(_format_count(v) for v in row))
    return out.getvalue()


def validate_table(
    table: ContingencyTable, policy: str = "drop"
) -> tuple[ContingencyTable, list[str]]:
    """Remove or reject all-zero rows and columns.

    Under ``drop`` (the default) every all-zero line is removed and a warning
    naming its label is returned; under ``reject`` their presence raises
    :class:`ValidationError`. The returned table has strictly positive
    margins, which every downstream analysis requires.
    """
    if policy not in ("drop", "reject"):
        raise ValueError(f"unknown policy {policy!r}, expected 'drop' or 'reject'")
    zero_rows = np.flatnonzero(table.counts.sum(axis=1) == 0)
    zero_cols = np.flatnonzero(table.counts.sum(axis=0) == 0)
    if zero_rows.size == 0 and zero_cols.size == 0:
        return table, []
    names = [f"row '{table.row_labels[i]}'" for i in zero_rows]
    names += [f"column '{table.col_labels[j]}'" for j in zero_cols]
    if policy == "reject":
        raise ValidationError("all-zero lines present: " + ", ".join(names))
    warnings = [f"{name} dropped (all entries zero)" for name in names]
    keep_r = [i for i in range(table.shape[0]) if i not in set(zero_rows)]
    keep_c = [j for j in range(table.shape[1]) if j not in set(zero_cols)]
    reduced = ContingencyTable(
        tuple(table.row_labels[i] for i in keep_r),
        tuple(table.col_labels[j] for j in keep_c),
        table.counts[np.ix_(keep_r, keep_c)],
    )
    return reduced, warnings


def build_model(table: ContingencyTable) -> CorrespondenceModel:
    """Build the correspondence model (P, margins, residuals) of a table.

    The table must have no all-zero row or column (run
    :func:`validate_table` first), so that the diagonal weight matrices
    Diag(r) and Diag(c) are positive definite.
    """
    counts = table.counts
    if np.any(counts.sum(axis=1) == 0) or np.any(counts.sum(axis=0) == 0):
        raise ValidationError(
            "table has an all-zero row or column; run validate_table first"
        )
    P = counts / table.n
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    R0 = P - np.outer(r, c)
    return CorrespondenceModel(table=table, P=P, r=r, c=c, R0=R0)
