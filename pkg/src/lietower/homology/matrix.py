"""Sparse integer matrices with arbitrary-precision entries."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

import numpy as np

_INT64_SAFE = 1 << 62


class IntegerMatrix:
    """Column-major sparse integer matrix.

    Columns are dicts ``{row: value}`` holding Python ints, so nothing ever
    overflows.  ``csc()`` exports int64 arrays for the reduction kernels
    when the entries fit, and object arrays otherwise.
    """

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        clean = []
        for col in columns:
            c = {int(i): int(v) for i, v in col.items() if v}
            if any(i < 0 or i >= rows for i in c):
                raise ValueError("row index out of range")
            clean.append(c)
        self._columns = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = int(v)
        return cls(rows, cols, columns)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def from_json(cls, text: str | dict) -> "IntegerMatrix":
        doc = json.loads(text) if isinstance(text, str) else text
        entries = [[int(x) for x in row] for row in doc["entries"]]
        return cls.from_dense(entries, cols=int(doc["cols"])) if entries else cls(int(doc["rows"]), int(doc["cols"]))

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> dict[int, int]:
        return dict(self._columns[j])

    def columns(self) -> list[dict[int, int]]:
        return [dict(c) for c in self._columns]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._columns[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def is_zero(self) -> bool:
        return not any(self._columns)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_dense(), dtype=object).reshape(self.rows, self.cols)

    def max_abs(self) -> int:
        return max((abs(v) for c in self._columns for v in c.values()), default=0)

    def csc(self):
        """(indptr, indices, data) with row indices ascending inside each column."""
        indptr = np.zeros(self.cols + 1, dtype=np.int64)
        idx: list[int] = []
        val: list[int] = []
        for j, col in enumerate(self._columns):
            for i in sorted(col):
                idx.append(i)
                val.append(col[i])
            indptr[j + 1] = len(idx)
        dtype = np.int64 if self.max_abs() < _INT64_SAFE else object
        return indptr, np.array(idx, dtype=np.int64), np.array(val, dtype=dtype)

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        mine = self._columns
        for col in other._columns:
            acc: dict[int, int] = {}
            for k, b in col.items():
                for i, a in mine[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            out.append(acc)
        return IntegerMatrix(self.rows, other.cols, out)

    def transpose(self) -> "IntegerMatrix":
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i][j] = v
        return IntegerMatrix(self.cols, self.rows, out)

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def __mul__(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, [{i: k * v for i, v in c.items()} for c in self._columns])

    __rmul__ = __mul__

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self._columns, other._columns):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, 0) + v
            out.append(c)
        return IntegerMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + other * -1

    def __neg__(self) -> "IntegerMatrix":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    __hash__ = None  # mutable-looking value type; not a dict key

    def select_columns(self, js: Iterable[int]) -> "IntegerMatrix":
        js = list(js)
        return IntegerMatrix(self.rows, len(js), [self._columns[j] for j in js])

    def to_json_obj(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(v) for v in row] for row in self.to_dense()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntegerMatrix({self.to_dense()})"
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_dense()
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1
