"""Reduction of a table to the minimal representative of its equivalence class.

Two rows (or columns) with proportional entries carry the same profile, and
merging them changes neither CA nor TCA results (Nishisato's principle of
equivalent partitioning, which generalizes distributional equivalence).
Repeatedly merging proportional lines terminates in a unique smallest table,
the minimal representative; its sparsity summary is the one that
characterizes the whole equivalence class.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .table import ContingencyTable

__all__ = ["MergeStep", "ReductionTrace", "proportional", "reduce_to_minimal", "apply_grouping"]


@dataclass(frozen=True)
class MergeStep:
    """One merge of proportional lines; indices refer to the original table."""

    axis: str  # "row" or "col"
    merged_indices: tuple[int, ...]
    new_label: str


@dataclass(frozen=True, eq=False)
class ReductionTrace:
    """Full provenance of a reduction.

    ``row_groups`` and ``col_groups`` partition the original row and column
    indices; entry (i, j) of ``minimal`` is the sum of the original entries
    over ``row_groups[i] x col_groups[j]``.
    """

    original: ContingencyTable
    minimal: ContingencyTable
    steps: tuple[MergeStep, ...]
    row_groups: tuple[tuple[int, ...], ...]
    col_groups: tuple[tuple[int, ...], ...]

    @property
    def is_already_minimal(self) -> bool:
        return not self.steps


def proportional(x, y, tol: float = 1e-9) -> bool:
    """Test whether two nonnegative vectors are proportional.

    Uses cross-multiplication, (sum y) * x == (sum x) * y, so that integer
    inputs compare exactly with ``tol=0`` and no profile division is needed.
    Each elementwise difference is allowed ``tol`` relative to the larger of
    the two sides. Raises :class:`ValidationError` on a zero-sum vector.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValidationError("vectors must be one-dimensional and of equal length")
    sx = float(x.sum())
    sy = float(y.sum())
    if sx <= 0 or sy <= 0:
        raise ValidationError("proportionality is undefined for zero-sum vectors")
    lhs = sy * x
    rhs = sx * y
    return bool(np.all(np.abs(lhs - rhs) <= tol * np.maximum(np.abs(lhs), np.abs(rhs))))


def _proportional_groups(lines: np.ndarray, tol: float) -> list[list[int]]:
    """Partition line indices by transitive proportionality.

    The grouping derives from the full pairwise relation (union-find over all
    pairs), so the result does not depend on evaluation order.
    """
    m = lines.shape[0]
    parent = list(range(m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    sums = lines.sum(axis=1)
    for i in range(m):
        for j in range(i + 1, m):
            lhs = sums[j] * lines[i]
            rhs = sums[i] * lines[j]
            if np.all(np.abs(lhs - rhs) <= tol * np.maximum(np.abs(lhs), np.abs(rhs))):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def reduce_to_minimal(table: ContingencyTable, tol: float = 1e-9) -> ReductionTrace:
    """Merge proportional lines until no two rows or columns are proportional.

    Alternates full row passes and column passes until a fixed point: merging
    rows can make columns proportional and vice versa. Within a pass all
    groups merge at once; a merged line is labeled by joining its members'
    original labels with "+". The grand total n is preserved and the result
    is unique up to the ordering induced by the original table.
    """
    counts = table.counts
    if np.any(counts.sum(axis=1) == 0) or np.any(counts.sum(axis=0) == 0):
        raise ValidationError("table has an all-zero line; run validate_table first")

    work = counts.copy()
    row_groups: list[list[int]] = [[i] for i in range(table.shape[0])]
    col_groups: list[list[int]] = [[j] for j in range(table.shape[1])]
    steps: list[MergeStep] = []

    def merge_axis(axis: str) -> bool:
        nonlocal work, row_groups, col_groups
        lines = work if axis == "row" else work.T
        groups = _proportional_groups(lines, tol)
        if all(len(g) == 1 for g in groups):
            return False
        orig_groups = row_groups if axis == "row" else col_groups
        labels = table.row_labels if axis == "row" else table.col_labels
        new_orig: list[list[int]] = []
        merged_lines = []
        for g in groups:
            members = sorted(idx for cur in g for idx in orig_groups[cur])
            new_orig.append(members)
            merged_lines.append(lines[g].sum(axis=0))
            if len(g) > 1:
                steps.append(
                    MergeStep(
                        axis=axis,
                        merged_indices=tuple(members),
                        new_label="+".join(labels[i] for i in members),
                    )
                )
        merged = np.array(merged_lines)
        if axis == "row":
            work = merged
            row_groups = new_orig
        else:
            work = merged.T
            col_groups = new_orig
        return True

    while True:
        changed = merge_axis("row")
        changed = merge_axis("col") or changed
        if not changed:
            break

    def group_label(members: list[int], labels: tuple[str, ...]) -> str:
        return "+".join(labels[i] for i in members)

    minimal = ContingencyTable(
        tuple(group_label(g, table.row_labels) for g in row_groups),
        tuple(group_label(g, table.col_labels) for g in col_groups),
        work,
    )
    return ReductionTrace(
        original=table,
        minimal=minimal,
        steps=tuple(steps),
        row_groups=tuple(tuple(g) for g in row_groups),
        col_groups=tuple(tuple(g) for g in col_groups),
    )


def apply_grouping(table: ContingencyTable, row_groups, col_groups) -> ContingencyTable:
    """Re-apply a saved partition, summing each group into one line.

    Both arguments must partition the row and column index ranges exactly;
    overlapping or incomplete partitions raise :class:`ValidationError`.
    """
    I, J = table.shape
    row_groups = [sorted(int(i) for i in g) for g in row_groups]
    col_groups = [sorted(int(j) for j in g) for g in col_groups]
    for name, groups, size in (("row", row_groups, I), ("column", col_groups, J)):
        flat = sorted(i for g in groups for i in g)
        if flat != list(range(size)):
            raise ValidationError(f"{name} groups are not a partition of 0..{size - 1}")
    grouped_rows = np.array([table.counts[g].sum(axis=0) for g in row_groups])
    grouped = np.array([grouped_rows[:, g].sum(axis=1) for g in col_groups]).T
    return ContingencyTable(
        tuple("+".join(table.row_labels[i] for i in g) for g in row_groups),
        tuple("+".join(table.col_labels[j] for j in g) for g in col_groups),
        grouped,
    )
