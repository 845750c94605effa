"""Smith normal form over Z with unimodular transforms."""

from __future__ import annotations

from .matrix import IntegerMatrix


def smith_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(S, U, V)`` with ``S == U @ m @ V``, U and V unimodular and
    ``S`` diagonal with ``d1 | d2 | ...``, all ``d_i >= 0``.
    """
    rows, cols = m.shape
    a = m.to_dense()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    # V is kept transposed so that column operations become row operations
    vt = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        vt[i], vt[j] = vt[j], vt[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                ra[k] -= q * rs[k]
        ua, us = u[dst], u[src]
        for k in range(rows):
            if us[k]:
                ua[k] -= q * us[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        va, vs = vt[dst], vt[src]
        for k in range(cols):
            if vs[k]:
                va[k] -= q * vs[k]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                if row[j] and (best is None or abs(row[j]) < best[0]):
                    best = (abs(row[j]), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        done = False
            if not done:
                # a smaller remainder exists in row or column t; move it to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            d = a[t][t]
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % d), None)
            if bad is None:
                break
            # pull the offending row into row t and restart the elimination
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    s = IntegerMatrix.from_dense(a, cols=cols)
    U = IntegerMatrix.from_dense(u, cols=rows)
    V = IntegerMatrix.from_dense(vt, cols=cols).transpose()
    return s, U, V


def invariant_factors(m: IntegerMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    s, _, _ = smith_normal_form(m)
    return [s[i, i] for i in range(min(s.shape)) if s[i, i]]
