"""Reduced integral homology of small simplicial complexes.

Boundary matrices are reduced over the integers: a sparse pass eliminates
unit pivots (chosen Markowitz-style to limit fill), and whatever survives
goes through a dense Smith reduction with exact arithmetic.  This yields
ranks and invariant factors, hence reduced Betti numbers and torsion, with
no floating point anywhere.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class HomologySummary:
    """Reduced Betti numbers by degree and torsion coefficients per degree."""

    reduced_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def trivial(self) -> bool:
        return all(b == 0 for b in self.reduced_betti) and all(
            not t for t in self.torsion
        )

    def to_dict(self) -> dict:
        return {
            "reduced_betti": list(self.reduced_betti),
            "torsion": [list(t) for t in self.torsion],
            "trivial": self.trivial,
        }


class _SparseMatrix:
    """Row-major sparse integer matrix supporting unit-pivot elimination."""

    def __init__(self, n_rows: int, n_cols: int):
        self.rows: dict[int, dict[int, int]] = {}
        self.col_index: dict[int, set[int]] = {}
        self.n_rows = n_rows
        self.n_cols = n_cols

    def set(self, r: int, c: int, val: int) -> None:
        if val == 0:
            return
        self.rows.setdefault(r, {})[c] = val
        self.col_index.setdefault(c, set()).add(r)

    def _discard(self, r: int, c: int) -> None:
        row = self.rows.get(r)
        if row is not None and c in row:
            del row[c]
            if not row:
                del self.rows[r]
        rows_in_col = self.col_index.get(c)
        if rows_in_col is not None:
            rows_in_col.discard(r)
            if not rows_in_col:
                del self.col_index[c]

    def add_multiple(
        self, target: int, source: int, factor: int
    ) -> list[tuple[int, int]]:
        """row[target] += factor * row[source]; returns entries that became unit."""
        new_units: list[tuple[int, int]] = []
        if factor == 0:
            return new_units
        source_row = self.rows.get(source, {})
        for c, val in list(source_row.items()):
            current = self.rows.get(target, {}).get(c, 0)
            new = current + factor * val
            if new == 0:
                self._discard(target, c)
            else:
                self.rows.setdefault(target, {})[c] = new
                self.col_index.setdefault(c, set()).add(target)
                if new in (1, -1) and current not in (1, -1):
                    new_units.append((target, c))
        return new_units

    def _cost(self, r: int, c: int) -> int:
        return (len(self.rows[r]) - 1) * (len(self.col_index[c]) - 1)

    def eliminate_unit_pivots(self) -> int:
        """Clear rows/columns through +-1 pivots; returns pivots eliminated.

        A unit pivot lets its column be cleared by row operations, after
        which the pivot row clears for free; both are removed.  Pivots come
        off a lazily revalidated min-heap on the fill estimate
        (row_nnz - 1) * (col_nnz - 1), which keeps fill-in tame on boundary
        matrices.
        """
        heap: list[tuple[int, int, int]] = []
        for r, row in self.rows.items():
            for c, val in row.items():
                if val in (1, -1):
                    heap.append((self._cost(r, c), r, c))
        heapq.heapify(heap)

        eliminated = 0
        while heap:
            cost, r, c = heapq.heappop(heap)
            row = self.rows.get(r)
            if row is None or c not in row or row[c] not in (1, -1):
                continue
            current = self._cost(r, c)
            if current > cost:
                heapq.heappush(heap, (current, r, c))
                continue
            val = row[c]
            for other in list(self.col_index.get(c, ())):
                if other == r:
                    continue
                other_val = self.rows[other][c]
                # other_val - (other_val * val) * val == 0 exactly since |val| == 1
                for unit in self.add_multiple(other, r, -other_val * val):
                    heapq.heappush(heap, (self._cost(*unit), *unit))
            for col in list(self.rows.get(r, {})):
                self._discard(r, col)
            eliminated += 1
        return eliminated

    def dense_remainder(self) -> list[list[int]]:
        live_rows = sorted(self.rows)
        live_cols = sorted({c for row in self.rows.values() for c in row})
        col_pos = {c: i for i, c in enumerate(live_cols)}
        out = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, val in self.rows[r].items():
                out[i][col_pos[c]] = val
        return out


def _dense_smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonalize over Z by elementary operations; returns the diagonal."""
    if not mat or not mat[0]:
        return []
    m, n = len(mat), len(mat[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # Locate the smallest nonzero entry in the remaining block.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if mat[i][j] != 0 and (
                    pivot is None or abs(mat[i][j]) < abs(mat[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        mat[t], mat[pi] = mat[pi], mat[t]
        for row in mat:
            row[t], row[pj] = row[pj], row[t]
        p = mat[t][t]
        dirty = False
        for i in range(t + 1, m):
            if mat[i][t] != 0:
                q = mat[i][t] // p
                for j in range(t, n):
                    mat[i][j] -= q * mat[t][j]
                if mat[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if mat[t][j] != 0:
                q = mat[t][j] // p
                for i in range(t, m):
                    mat[i][j] -= q * mat[i][t]
                if mat[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # nonzero remainders appeared; repeat with smaller pivot
        diag.append(abs(p))
        t += 1
    return diag


def _invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Normalize a diagonal to the divisibility chain d1 | d2 | ..."""
    factors = [abs(d) for d in diagonal if d != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a != 0:
                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
    return sorted(factors)


@dataclass(frozen=True)
class BoundaryReduction:
    rank: int
    torsion: tuple[int, ...]


def reduce_boundary(
    n_rows: int, n_cols: int, entries: dict[tuple[int, int], int]
) -> BoundaryReduction:
    """Rank and invariant factors (>1) of an integer matrix."""
    sparse = _SparseMatrix(n_rows, n_cols)
    for (r, c), val in entries.items():
        sparse.set(r, c, val)
    rank = sparse.eliminate_unit_pivots()
    remainder = sparse.dense_remainder()
    diag = _dense_smith_diagonal(remainder)
    factors = _invariant_factors(diag)
    rank += len(factors)
    return BoundaryReduction(
        rank=rank, torsion=tuple(d for d in factors if d > 1)
    )


def boundary_entries(
    faces: Sequence[tuple[int, ...]], cells: Sequence[tuple[int, ...]]
) -> dict[tuple[int, int], int]:
    """Signed incidence of q-cells over their (q-1)-faces.

    Cells are sorted vertex tuples; the i-th face omits the i-th vertex and
    carries sign (-1)^i.
    """
    face_index = {f: i for i, f in enumerate(faces)}
    entries: dict[tuple[int, int], int] = {}
    for j, cell in enumerate(cells):
        for i in range(len(cell)):
            face = cell[:i] + cell[i + 1 :]
            entries[(face_index[face], j)] = -1 if i % 2 else 1
    return entries


def reduced_homology_of_chain(
    simplices_by_dim: Sequence[Sequence[tuple[int, ...]]],
) -> HomologySummary:
    """Reduced homology of a simplicial complex given per-dimension cells.

    ``simplices_by_dim[q]`` lists the q-simplices as sorted vertex tuples.
    The augmentation map to the empty simplex is included, so degree 0
    reports components minus one.
    """
    dims = len(simplices_by_dim)
    counts = [len(simplices_by_dim[q]) for q in range(dims)]

    reductions: list[BoundaryReduction] = []
    # Augmentation: one row, a column of ones per vertex.
    aug = {(0, j): 1 for j in range(counts[0])} if counts[0] else {}
    reductions.append(reduce_boundary(1, counts[0], aug))
    for q in range(1, dims):
        entries = boundary_entries(
            simplices_by_dim[q - 1], simplices_by_dim[q]
        )
        reductions.append(reduce_boundary(counts[q - 1], counts[q], entries))

    betti: list[int] = []
    torsion: list[tuple[int, ...]] = []
    for q in range(dims):
        rank_q = reductions[q].rank
        rank_next = reductions[q + 1].rank if q + 1 < dims else 0
        betti.append(counts[q] - rank_q - rank_next)
        torsion.append(reductions[q + 1].torsion if q + 1 < dims else ())
    return HomologySummary(
        reduced_betti=tuple(betti), torsion=tuple(torsion)
    )
