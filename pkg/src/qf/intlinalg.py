"""Exact sparse integer matrices, Smith normal form, and homology of a pair of boundary maps.

All arithmetic uses Python integers, so there is no overflow anywhere.
Matrices are stored in coordinate form with 0-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

# Below this size the active submatrix is materialized densely; the
# dict-of-rows representation only pays off while the matrix is large.
_DENSE_CUTOFF = 200


class NotAComplex(Exception):
    """The two boundary maps do not compose to zero."""


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d <= 0 for d in self.factors):
            raise ValueError("invariant factors must be positive")
        for d, e in zip(self.factors, self.factors[1:]):
            if e % d != 0:
                raise ValueError(f"factors break the divisibility chain: {d} | {e} fails")

    @property
    def rank(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus torsion chain d1 | d2 | ...."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d != 0:
                raise ValueError(f"torsion breaks the divisibility chain: {d} | {e} fails")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


class SparseIntMatrix:
    """Integer matrix in coordinate form; zero entries are never stored."""

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        if isinstance(entries, Mapping):
            items = entries.items()
        else:
            items = (((r, c), v) for r, c, v in entries)
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside a {rows}x{cols} matrix")
            if (r, c) in self.entries:
                raise ValueError(f"duplicate coordinate ({r},{c})")
            if v != 0:
                self.entries[(r, c)] = int(v)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def entry(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    @classmethod
    def from_dense(cls, dense: Iterable[Iterable[int]]) -> "SparseIntMatrix":
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        if any(len(row) != cols for row in dense):
            raise ValueError("ragged rows")
        return cls(rows, cols, ((r, c, v) for r, row in enumerate(dense)
                                for c, v in enumerate(row) if v))

    def mul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        left_by_col: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in self.entries.items():
            left_by_col.setdefault(c, []).append((r, v))
        acc: dict[tuple[int, int], int] = {}
        for (k, c), v2 in other.entries.items():
            for r, v1 in left_by_col.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, 0) + v1 * v2
        return SparseIntMatrix(self.rows, other.cols,
                               {k: v for k, v in acc.items() if v})

    def is_zero(self) -> bool:
        return not self.entries

    def to_coordinate_text(self) -> str:
        """Coordinate format: header "rows cols nnz", then one "r c v" line per entry."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {self.entries[(r, c)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coordinate_text(cls, text: str) -> "SparseIntMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty coordinate text")
        rows, cols, nnz = (int(t) for t in lines[0].split())
        if len(lines) - 1 != nnz:
            raise ValueError(f"header promises {nnz} entries, found {len(lines) - 1}")
        triples = []
        for ln in lines[1:]:
            r, c, v = ln.split()
            triples.append((int(r), int(c), int(v)))
        return cls(rows, cols, triples)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SparseIntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _chain_fix(values: list[int]) -> tuple[int, ...]:
    # diag(a, b) ~ diag(gcd, lcm) by unimodular moves, so pairwise repair is exact.
    ds = sorted(abs(v) for v in values if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                if ds[j] % ds[i]:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] * ds[j] // g
                    changed = True
        ds.sort()
    return tuple(ds)


def _dense_diagonalize(a: list[list[int]]) -> list[int]:
    """Diagonalize a small dense integer matrix in place; returns the diagonal values."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    key = (abs(v), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            a[bi], a[t] = a[t], a[bi]
        if bj != t:
            for row in a:
                row[bj], row[t] = row[t], row[bj]
        pivot = a[t][t]
        clean = True
        for i in range(t + 1, m):
            v = a[i][t]
            if v:
                q = v // pivot
                if q:
                    arow, prow = a[i], a[t]
                    for j in range(t, n):
                        arow[j] -= q * prow[j]
                if a[i][t]:
                    clean = False  # remainder smaller than the pivot; re-pivot
        if clean:
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    q = v // pivot
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
        if clean:
            diag.append(abs(pivot))
            t += 1
    return diag


def smith_normal_form(m: SparseIntMatrix) -> SNFResult:
    """Invariant factors of an integer matrix.

    Sparse elimination greedily pivots on +-1 entries, preferring short rows and
    light columns to limit fill-in; ties break on (row, col). Once no unit pivot
    is left, or the active block fits under the dense cutoff, the remainder is
    handled densely and the divisibility chain is repaired at the end.
    """
    rows: list[dict[int, int]] = [dict() for _ in range(m.rows)]
    col_rows: dict[int, set[int]] = {}
    for (r, c), v in m.entries.items():
        rows[r][c] = v
        col_rows.setdefault(c, set()).add(r)
    live = {r for r in range(m.rows) if rows[r]}

    units = 0
    while live:
        if len(live) < _DENSE_CUTOFF and len(col_rows) < _DENSE_CUTOFF:
            break
        pick = None
        for r in live:
            row = rows[r]
            key_r = (len(row), r)
            if pick is not None and key_r >= pick[0]:
                continue
            unit_cols = [c for c, v in row.items() if v == 1 or v == -1]
            if unit_cols:
                c = min(unit_cols, key=lambda cc: (len(col_rows[cc]), cc))
                pick = (key_r, r, c)
        if pick is None:
            break
        _, pr, pc = pick
        prow = rows[pr]
        pv = prow[pc]
        for r2 in list(col_rows[pc]):
            if r2 == pr:
                continue
            row2 = rows[r2]
            f = row2[pc] * pv  # pv is +-1, so f*pv == row2[pc]/pv
            for cc, vv in prow.items():
                new = row2.get(cc, 0) - f * vv
                if new:
                    row2[cc] = new
                    col_rows.setdefault(cc, set()).add(r2)
                else:
                    if row2.pop(cc, None) is not None:
                        col_rows[cc].discard(r2)
            if not row2:
                live.discard(r2)
        for cc in prow:
            s = col_rows.get(cc)
            if s is not None:
                s.discard(pr)
                if not s:
                    del col_rows[cc]
        rows[pr] = {}
        live.discard(pr)
        units += 1

    live_rows = sorted(live)
    live_cols = sorted({c for r in live_rows for c in rows[r]})
    col_index = {c: j for j, c in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for i, r in enumerate(live_rows):
        for c, v in rows[r].items():
            dense[i][col_index[c]] = v
    diag = _dense_diagonalize(dense)
    return SNFResult((1,) * units + _chain_fix(diag))


def homology_of_pair(d_low: SparseIntMatrix, d_high: SparseIntMatrix) -> AbelianGroup:
    """Isomorphism type of ker(d_low) / im(d_high).

    d_low maps the middle chain group down, d_high maps into it, so
    d_low.cols == d_high.rows and d_low * d_high must vanish.
    """
    if d_low.cols != d_high.rows:
        raise ValueError(f"incompatible dimensions: d_low is {d_low.rows}x{d_low.cols}, "
                         f"d_high is {d_high.rows}x{d_high.cols}")
    if not d_low.mul(d_high).is_zero():
        raise NotAComplex("d_low * d_high != 0")
    rank_low = smith_normal_form(d_low).rank
    snf_high = smith_normal_form(d_high)
    free = d_low.cols - rank_low - snf_high.rank
    torsion = tuple(d for d in snf_high.factors if d > 1)
    return AbelianGroup(free, torsion)
