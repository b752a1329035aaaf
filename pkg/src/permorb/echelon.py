"""Exact sparse reduced row-echelon forms over Q.

Rows are sparse dicts with gmpy2.mpq entries, kept fully reduced in both
directions: each stored row has coefficient 1 at its pivot column and
entry 0 at every other pivot column.  Because of that, reducing a new
vector is a single pass over its pivot-column support, and the final rows
have support only on their pivot plus the non-pivot (free) columns, which
for the spaces built here form a thin block.

The reduced row-echelon form of a span is unique, so the result does not
depend on the order in which generators are inserted.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class SparseRref:
    """Incrementally built reduced row-echelon basis of a growing span."""

    def __init__(self):
        self.rows: dict[int, dict[int, mpq]] = {}  # pivot column -> row
        self._col_usage: dict[int, set[int]] = {}  # column -> pivots of rows using it

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict[int, mpq]:
        """Residue of vec modulo the current span (vec is not modified)."""
        res = {c: _to_mpq(v) for c, v in vec.items() if v}
        rows = self.rows
        for c in [c for c in res if c in rows]:
            coeff = res.get(c)
            if not coeff:
                continue
            for col, val in rows[c].items():
                s = res.get(col, 0) - coeff * val
                if s:
                    res[col] = s
                else:
                    res.pop(col, None)
        return res

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict) -> bool:
        """Add vec to the span; returns True when the rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        pivot = min(res)
        inv = 1 / res[pivot]
        row = {c: v * inv for c, v in res.items()}
        # eliminate the new pivot column from every row that uses it
        usage = self._col_usage
        for other in list(usage.get(pivot, ())):
            orow = self.rows[other]
            coeff = orow.pop(pivot)
            usage[pivot].discard(other)
            for col, val in row.items():
                if col == pivot:
                    continue
                s = orow.get(col, 0) - coeff * val
                if s:
                    if col not in orow:
                        usage.setdefault(col, set()).add(other)
                    orow[col] = s
                elif col in orow:
                    del orow[col]
                    usage[col].discard(other)
        self.rows[pivot] = row
        for col in row:
            if col != pivot:
                usage.setdefault(col, set()).add(pivot)
        return True

    def extend(self, vecs) -> int:
        grew = 0
        for v in vecs:
            if self.insert(v):
                grew += 1
        return grew

    def sorted_rows(self) -> list[tuple[int, dict[int, mpq]]]:
        """Rows by ascending pivot column; pivots strictly increasing."""
        return sorted(self.rows.items())

    def row_entries(self) -> list[list[tuple[int, str]]]:
        """Serializable form: per row, (column, \"p/q\") pairs, pivot first."""
        out = []
        for piv, row in self.sorted_rows():
            cells = [(piv, str(row[piv]))]
            cells += [(c, str(v)) for c, v in sorted(row.items()) if c != piv]
            out.append(cells)
        return out

    @staticmethod
    def from_row_entries(entries) -> "SparseRref":
        rref = SparseRref()
        for cells in entries:
            piv = cells[0][0]
            row = {int(c): mpq(v) for c, v in cells}
            rref.rows[piv] = row
            for col in row:
                if col != piv:
                    rref._col_usage.setdefault(col, set()).add(piv)
        return rref
