"""Exact linear algebra over Z and Z/2."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Self

import numpy as np

from .algebra import AbelianGroupStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"Entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> Self:
        if cols is None:
            if not rows:
                raise ValueError("Column count is required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, int]], cols: int) -> Self:
        dense = []
        for row in rows:
            line = [0] * cols
            for j, v in row.items():
                line[j] = v
            dense.append(line)
        return cls.from_rows(dense, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return IntegerMatrix.from_rows(
            [
                [sum(self.entries[i][t] * other.entries[t][j] for t in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ],
            other.cols,
        )


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix

    def diagonal_matrix(self) -> IntegerMatrix:
        rows, cols = self.left.rows, self.right.cols
        return IntegerMatrix.from_rows(
            [
                [self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(cols)]
                for i in range(rows)
            ],
            cols,
        )


class _SmithReducer:
    """Elementary row and column reduction keeping left @ m @ right == a."""

    def __init__(self, matrix: IntegerMatrix, track: bool = True):
        self.a = matrix.to_lists()
        self.m, self.n = matrix.rows, matrix.cols
        self.track = track
        self.left = IntegerMatrix.identity(self.m).to_lists() if track else []
        self.right = IntegerMatrix.identity(self.n).to_lists() if track else []

    def _swap_rows(self, i: int, j: int):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.track:
            self.left[i], self.left[j] = self.left[j], self.left[i]

    def _swap_cols(self, i: int, j: int):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.right:
                row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, factor: int):
        # row_target += factor * row_source
        a = self.a
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        if self.track:
            left = self.left
            left[target] = [x + factor * y for x, y in zip(left[target], left[source])]

    def _add_col(self, target: int, source: int, factor: int):
        for row in self.a:
            row[target] += factor * row[source]
        if self.track:
            for row in self.right:
                row[target] += factor * row[source]

    def _negate_row(self, i: int):
        self.a[i] = [-x for x in self.a[i]]
        if self.track:
            self.left[i] = [-x for x in self.left[i]]

    def _smallest(self, t: int) -> tuple[int, int] | None:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                v = self.a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return i, j
        return None if best is None else (best[1], best[2])

    def _non_divisible(self, t: int) -> int | None:
        d = self.a[t][t]
        for i in range(t + 1, self.m):
            if any(self.a[i][j] % d for j in range(t + 1, self.n)):
                return i
        return None

    def _step(self, t: int) -> bool:
        while True:
            pivot = self._smallest(t)
            if pivot is None:
                return False
            self._swap_rows(t, pivot[0])
            self._swap_cols(t, pivot[1])
            d = self.a[t][t]
            cleared = True
            for i in range(t + 1, self.m):
                if self.a[i][t]:
                    self._add_row(i, t, -(self.a[i][t] // d))
                    cleared = cleared and not self.a[i][t]
            for j in range(t + 1, self.n):
                if self.a[t][j]:
                    self._add_col(j, t, -(self.a[t][j] // d))
                    cleared = cleared and not self.a[t][j]
            if not cleared:
                continue
            bad = self._non_divisible(t)
            if bad is not None:
                self._add_row(t, bad, 1)
                continue
            if d < 0:
                self._negate_row(t)
            return True

    def run(self) -> SmithForm:
        size = min(self.m, self.n)
        for t in range(size):
            if not self._step(t):
                break
        diagonal = tuple(self.a[i][i] for i in range(size))
        left = IntegerMatrix.from_rows(self.left, self.m) if self.track else IntegerMatrix.zeros(0, self.m)
        right = IntegerMatrix.from_rows(self.right, self.n) if self.track else IntegerMatrix.zeros(0, self.n)
        return SmithForm(diagonal, left, right)


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms: left @ m @ right is diagonal."""
    logger.debug(f"smith_normal_form on {m.rows}x{m.cols}")
    return _SmithReducer(m).run()


def smith_diagonal(m: IntegerMatrix) -> tuple[int, ...]:
    return _SmithReducer(m, track=False).run().diagonal


def cokernel_structure(relations: IntegerMatrix, ambient_dim: int) -> AbelianGroupStructure:
    if relations.cols != ambient_dim:
        raise ValueError(
            f"Relation matrix has {relations.cols} columns, expected {ambient_dim}"
        )
    if relations.rows == 0:
        return AbelianGroupStructure(rank=ambient_dim)
    nonzero = [d for d in smith_diagonal(relations) if d]
    return AbelianGroupStructure(
        rank=ambient_dim - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


@dataclass(frozen=True)
class EchelonRow:
    pivot: int
    entries: dict[int, int]


def _axpy(target: dict[int, int], source: Mapping[int, int], factor: int):
    for j, v in source.items():
        value = target.get(j, 0) + factor * v
        if value:
            target[j] = value
        else:
            target.pop(j, None)


def integer_row_echelon(
    rows: Iterable[Mapping[int, int]], column_order: Sequence[int]
) -> list[EchelonRow]:
    """Row echelon form over Z, pivoting on columns in the given order.

    Each returned row vanishes on every column processed before its pivot,
    and its pivot entry is positive.
    """
    active = [{j: v for j, v in row.items() if v} for row in rows]
    active = [row for row in active if row]
    result: list[EchelonRow] = []
    for col in column_order:
        hits = [row for row in active if row.get(col)]
        if not hits:
            continue
        active = [row for row in active if not row.get(col)]
        while len(hits) > 1:
            hits.sort(key=lambda row: abs(row[col]))
            head, rest = hits[0], []
            for row in hits[1:]:
                _axpy(row, head, -(row[col] // head[col]))
                if row.get(col):
                    rest.append(row)
                elif row:
                    active.append(row)
            hits = [head, *rest]
        head = hits[0]
        if head[col] < 0:
            head = {j: -v for j, v in head.items()}
        result.append(EchelonRow(col, head))
    return result


def back_substitute(echelon: list[EchelonRow]) -> list[EchelonRow]:
    """Clear every unit pivot column out of the other rows."""
    rows = [EchelonRow(r.pivot, dict(r.entries)) for r in echelon]
    units = [r for r in rows if r.entries[r.pivot] == 1]
    for unit in reversed(units):
        for row in rows:
            if row is not unit and row.entries.get(unit.pivot):
                _axpy(row.entries, unit.entries, -row.entries[unit.pivot])
    return rows


@dataclass(frozen=True)
class F2Reduction:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]
    kernel: np.ndarray

    @property
    def basis(self) -> np.ndarray:
        return self.matrix[: self.rank]


def to_f2(matrix, cols: int | None = None) -> np.ndarray:
    arr = np.array(matrix, dtype=object)
    if arr.size == 0:
        return np.zeros((arr.shape[0] if arr.ndim == 2 else 0, cols or 0), dtype=np.uint8)
    return (arr % 2).astype(np.uint8)


def f2_row_reduce(matrix, cols: int | None = None) -> F2Reduction:
    """Reduced row echelon form over Z/2 together with a nullspace basis."""
    mat = to_f2(matrix, cols).copy()
    m, n = mat.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        pivot = next((r for r in range(row, m) if mat[r, col]), None)
        if pivot is None:
            continue
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        for r in range(m):
            if r != row and mat[r, col]:
                mat[r, :] ^= mat[row, :]
        pivots.append(col)
        row += 1
    pivot_set = set(pivots)
    kernel = []
    for free in (c for c in range(n) if c not in pivot_set):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for r, col in enumerate(pivots):
            if mat[r, free]:
                vec[col] = 1
        kernel.append(vec)
    kernel_arr = np.vstack(kernel) if kernel else np.zeros((0, n), dtype=np.uint8)
    return F2Reduction(matrix=mat, rank=len(pivots), pivots=tuple(pivots), kernel=kernel_arr)


def f2_rank(matrix, cols: int | None = None) -> int:
    return f2_row_reduce(matrix, cols).rank


def f2_same_span(a: np.ndarray, b: np.ndarray) -> bool:
    """True when the rows of a and b span the same subspace."""
    if a.shape[1] != b.shape[1]:
        return False
    ra, rb = f2_rank(a, a.shape[1]), f2_rank(b, b.shape[1])
    return ra == rb == f2_rank(np.vstack([a, b]), a.shape[1])
