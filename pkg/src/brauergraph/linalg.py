"""Incremental exact row reduction over the rationals.

Rows are sparse ``{column: Fraction}`` dicts.  The pivot of a row is its
largest column index, so that reducing a vector leaves a residual supported
on the small-index columns; callers exploit this to prefer short basis
representatives.
"""

from __future__ import annotations

from fractions import Fraction


class RowSpace:
    """A row space maintained in reduced echelon form (pivot = max column)."""

    def __init__(self):
        self.rows = {}  # pivot column -> row dict, pivot coefficient 1

    def reduce(self, vec):
        """Residual of vec modulo the current row space (vec is not mutated)."""
        out = dict(vec)
        while out:
            p = max(out)
            if out[p] == 0:
                del out[p]
                continue
            row = self.rows.get(p)
            if row is None:
                break
            c = out[p]
            for col, val in row.items():
                new = out.get(col, Fraction(0)) - c * val
                if new:
                    out[col] = new
                else:
                    out.pop(col, None)
        return {c: v for c, v in out.items() if v}

    def add(self, vec):
        """Insert vec; returns True if it enlarged the space."""
        res = self.reduce(vec)
        if not res:
            return False
        p = max(res)
        inv = Fraction(1) / res[p]
        row = {c: v * inv for c, v in res.items()}
        # keep existing rows fully reduced against the new pivot
        for q, other in list(self.rows.items()):
            if p in other:
                c = other[p]
                merged = dict(other)
                for col, val in row.items():
                    new = merged.get(col, Fraction(0)) - c * val
                    if new:
                        merged[col] = new
                    else:
                        merged.pop(col, None)
                self.rows[q] = merged
        self.rows[p] = row
        return True

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return set(self.rows)

    def contains(self, vec):
        return not self.reduce(vec)


def solve_in_span(rows, target):
    """Express target as a rational combination of the given sparse rows.

    Returns the coefficient list or None.  Small dense elimination; fine at
    the sizes used here.
    """
    cols = sorted({c for r in rows for c in r} | set(target))
    col_ix = {c: i for i, c in enumerate(cols)}
    mat = [[Fraction(0)] * (len(rows) + 1) for _ in cols]
    for j, r in enumerate(rows):
        for c, v in r.items():
            mat[col_ix[c]][j] = v
    for c, v in target.items():
        mat[col_ix[c]][len(rows)] = v
    m, nc = len(mat), len(rows)
    piv_rows = []
    r = 0
    for j in range(nc):
        k = next((i for i in range(r, m) if mat[i][j] != 0), None)
        if k is None:
            piv_rows.append(None)
            continue
        mat[r], mat[k] = mat[k], mat[r]
        inv = Fraction(1) / mat[r][j]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][j] != 0:
                f = mat[i][j]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, m):
        if mat[i][nc] != 0:
            return None
    coeffs = [Fraction(0)] * nc
    for j, pr in enumerate(piv_rows):
        if pr is not None:
            coeffs[j] = mat[pr][nc]
    return coeffs
