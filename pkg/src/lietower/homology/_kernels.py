"""Sparse column reduction of integer boundary matrices.

Two interchangeable backends:

* ``reduce_columns_numba``: int64 arithmetic in an ``@njit`` loop.  Any
  intermediate above ``_LIMIT`` in absolute value aborts with ``OVERFLOW``
  and the caller reruns the exact backend.
* ``reduce_columns_python``: Python ints, exact for any input.

Set ``LIETOWER_NUMBA=0`` to force the Python backend everywhere.

Both perform left-to-right reduction: while the lowest entry of column j
sits in a row already owned by an earlier column p, subtract a multiple
of column p.  With ``track`` the column operations are also applied to an
identity matrix V, so that R = ∂·V.  Columns flagged in ``clear`` are
skipped (treated as zero); the caller must only clear columns it knows to
be redundant after a unimodular change of basis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd

import numpy as np

NONUNIT = 1  # some pivot is not ±1; ranks are right, torsion is undecided
OVERFLOW = 2  # int64 backend gave up
SCALED = 4  # a column was rescaled, so V is not unimodular

_LIMIT = 1 << 52

try:  # pragma: no cover - exercised implicitly
    from numba import njit
    from numba.typed import List as NumbaList

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("LIETOWER_NUMBA", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")


@dataclass
class Reduction:
    low: np.ndarray  # lowest row of each reduced column, -1 if zero
    lead: list  # entry at ``low`` (Python ints)
    status: int
    v_columns: list | None = None  # list of {row: value} when tracked

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.low >= 0))

    @property
    def all_unit(self) -> bool:
        """Every surviving pivot is ±1: the image is a direct summand."""
        return all(abs(self.lead[j]) == 1 for j in np.flatnonzero(self.low >= 0))

    @property
    def unimodular_v(self) -> bool:
        return not (self.status & SCALED)


# ----------------------------------------------------------------------------
# exact Python backend

def reduce_columns_python(indptr, indices, data, n_rows, clear=None, track=False) -> Reduction:
    n_cols = len(indptr) - 1
    pivot_of_row: dict[int, int] = {}
    reduced: list[dict[int, int] | None] = [None] * n_cols
    v_cols: list[dict[int, int]] = []
    low = np.full(n_cols, -1, dtype=np.int64)
    lead: list[int] = [0] * n_cols
    status = 0
    for j in range(n_cols):
        vcol = {j: 1}
        if clear is not None and clear[j]:
            if track:
                v_cols.append(vcol)
            continue
        col = {}
        for t in range(indptr[j], indptr[j + 1]):
            val = int(data[t])
            if val:
                col[int(indices[t])] = val
        while col:
            r = max(col)
            p = pivot_of_row.get(r)
            if p is None:
                break
            a, b = col[r], lead[p]
            if a % b == 0:
                q, s = a // b, 1
            else:
                status |= NONUNIT | SCALED
                g = gcd(a, b)
                q, s = a // g, b // g
            pcol = reduced[p]
            if s != 1:
                col = {i: s * v for i, v in col.items()}
                vcol = {i: s * v for i, v in vcol.items()}
            for i, v in pcol.items():
                nv = col.get(i, 0) - q * v
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
            if track:
                for i, v in v_cols[p].items():
                    nv = vcol.get(i, 0) - q * v
                    if nv:
                        vcol[i] = nv
                    else:
                        vcol.pop(i, None)
        if col:
            r = max(col)
            low[j] = r
            lead[j] = col[r]
            pivot_of_row[r] = j
            reduced[j] = col
            if abs(col[r]) != 1:
                status |= NONUNIT
        if track:
            v_cols.append(vcol)
    return Reduction(low, lead, status, v_cols if track else None)


# ----------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _axpy(xi, xv, q, yi, yv, s):
        """s*x - q*y for sparse vectors with ascending indices; drops zeros.

        Returns (idx, val, overflowed).
        """
        out_i = np.empty(len(xi) + len(yi), dtype=np.int64)
        out_v = np.empty(len(xi) + len(yi), dtype=np.int64)
        a = 0
        b = 0
        k = 0
        bad = False
        while a < len(xi) or b < len(yi):
            if b >= len(yi) or (a < len(xi) and xi[a] < yi[b]):
                idx = xi[a]
                val = s * xv[a]
                a += 1
            elif a >= len(xi) or yi[b] < xi[a]:
                idx = yi[b]
                val = -q * yv[b]
                b += 1
            else:
                idx = xi[a]
                val = s * xv[a] - q * yv[b]
                a += 1
                b += 1
            if val != 0:
                if val > _LIMIT or val < -_LIMIT:
                    bad = True
                out_i[k] = idx
                out_v[k] = val
                k += 1
        return out_i[:k], out_v[:k], bad

    @njit(cache=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _reduce_nb(indptr, indices, data, n_rows, clear, track):
        n_cols = len(indptr) - 1
        pivot_of_row = np.full(n_rows, -1, dtype=np.int64)
        low = np.full(n_cols, -1, dtype=np.int64)
        lead = np.zeros(n_cols, dtype=np.int64)
        empty = np.empty(0, dtype=np.int64)
        cols_i = NumbaList()
        cols_v = NumbaList()
        v_i = NumbaList()
        v_v = NumbaList()
        status = 0
        for j in range(n_cols):
            vi = np.array([j], dtype=np.int64)
            vv = np.array([1], dtype=np.int64)
            if clear[j]:
                cols_i.append(empty)
                cols_v.append(empty)
                if track:
                    v_i.append(vi)
                    v_v.append(vv)
                continue
            ci = indices[indptr[j]:indptr[j + 1]].copy()
            cv = data[indptr[j]:indptr[j + 1]].copy()
            order = np.argsort(ci)
            ci = ci[order]
            cv = cv[order]
            while len(ci) > 0:
                r = ci[len(ci) - 1]
                p = pivot_of_row[r]
                if p < 0:
                    break
                a = cv[len(cv) - 1]
                b = lead[p]
                if a % b == 0:
                    q = a // b
                    s = 1
                else:
                    status |= NONUNIT | SCALED
                    g = _gcd(a, b)
                    q = a // g
                    s = b // g
                ci, cv, bad = _axpy(ci, cv, q, cols_i[p], cols_v[p], s)
                if bad:
                    return low, lead, status | OVERFLOW, cols_i, cols_v, v_i, v_v
                if track:
                    vi, vv, bad = _axpy(vi, vv, q, v_i[p], v_v[p], s)
                    if bad:
                        return low, lead, status | OVERFLOW, cols_i, cols_v, v_i, v_v
            if len(ci) > 0:
                r = ci[len(ci) - 1]
                low[j] = r
                lead[j] = cv[len(cv) - 1]
                pivot_of_row[r] = j
                if lead[j] != 1 and lead[j] != -1:
                    status |= NONUNIT
            cols_i.append(ci)
            cols_v.append(cv)
            if track:
                v_i.append(vi)
                v_v.append(vv)
        return low, lead, status, cols_i, cols_v, v_i, v_v


def reduce_columns_numba(indptr, indices, data, n_rows, clear=None, track=False) -> Reduction:
    n_cols = len(indptr) - 1
    if clear is None:
        clear = np.zeros(n_cols, dtype=np.bool_)
    low, lead, status, _, _, v_i, v_v = _reduce_nb(
        np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64),
        np.asarray(data, dtype=np.int64), int(n_rows), np.asarray(clear, dtype=np.bool_), bool(track))
    v_cols = None
    if track and not status & OVERFLOW:
        v_cols = [dict(zip(v_i[j].tolist(), v_v[j].tolist())) for j in range(n_cols)]
    return Reduction(low, [int(x) for x in lead], status, v_cols)


def reduce_columns(indptr, indices, data, n_rows, clear=None, track=False, backend=None) -> Reduction:
    """Dispatch to the numba kernel when enabled and the data fits int64."""
    if backend is None:
        backend = "numba" if numba_enabled() else "python"
    if backend == "numba" and np.asarray(data).dtype == np.int64:
        out = reduce_columns_numba(indptr, indices, data, n_rows, clear, track)
        if not out.status & OVERFLOW:
            return out
    return reduce_columns_python(indptr, indices, data, n_rows, clear, track)
