"""Exact linear algebra over prime fields F_p: rank and kernel dimension.

Two elimination paths share one entry point, ``rank``:

* dense numpy elimination for matrices under ``DENSE_COL_LIMIT`` columns;
* above that, sparse elimination that first peels fill-free pivots
  (rows or columns with a single nonzero entry, eliminated with zero
  fill) and then finishes the remaining core, densifying it when it is
  small enough and otherwise running Markowitz-style minimum-fill
  pivoting on the dict-of-rows representation.

Both paths are deterministic for a given matrix.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .permgroup import DegreeMismatchError

DENSE_COL_LIMIT = 2000
DENSE_CELL_LIMIT = 25_000_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


class PrimeFieldMatrix:
    """A matrix over F_p stored as sparse (row, col) -> value entries."""

    def __init__(self, modulus: int, nrows: int, ncols: int, entries: dict):
        _require_prime(modulus)
        self.modulus = modulus
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries  # {(r, c): v} with 0 < v < p

    @staticmethod
    def from_triples(modulus: int, nrows: int, ncols: int, triples) -> PrimeFieldMatrix:
        """Build from (row, col, value) triples; duplicate positions are summed."""
        _require_prime(modulus)
        acc: dict = {}
        for r, c, v in triples:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r},{c}) outside {nrows}x{ncols}")
            key = (r, c)
            acc[key] = (acc.get(key, 0) + v) % modulus
        return PrimeFieldMatrix(modulus, nrows, ncols,
                                {k: v for k, v in acc.items() if v})

    @staticmethod
    def from_dense(modulus: int, array) -> PrimeFieldMatrix:
        A = np.asarray(array)
        if A.ndim != 2:
            raise ValueError("expected a 2-d array")
        A = np.mod(A, modulus)
        rs, cs = np.nonzero(A)
        entries = {(int(r), int(c)): int(A[r, c]) for r, c in zip(rs, cs)}
        return PrimeFieldMatrix(modulus, A.shape[0], A.shape[1], entries)

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            A[r, c] = v
        return A

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> PrimeFieldMatrix:
        return PrimeFieldMatrix(self.modulus, self.ncols, self.nrows,
                                {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: PrimeFieldMatrix) -> PrimeFieldMatrix:
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        if self.ncols != other.nrows:
            raise DegreeMismatchError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        rows_b: dict[int, list] = {}
        for (k, c), v in other.entries.items():
            rows_b.setdefault(k, []).append((c, v))
        acc: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in rows_b.get(k, ()):
                key = (r, c)
                acc[key] = (acc.get(key, 0) + v * w) % self.modulus
        return PrimeFieldMatrix(self.modulus, self.nrows, other.ncols,
                                {k: v for k, v in acc.items() if v})

    def __repr__(self) -> str:
        return (f"<PrimeFieldMatrix {self.nrows}x{self.ncols} mod {self.modulus} "
                f"nnz={self.nnz}>")


def _rank_dense(A: np.ndarray, p: int) -> int:
    """Row-echelon rank of an int64 array mod p (in place on a copy)."""
    A = np.mod(A, p).astype(np.int64, copy=True)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        r += 1
    return r


def _rank_sparse(M: PrimeFieldMatrix) -> int:
    p = M.modulus
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in M.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    rank = 0
    row_q = deque(sorted(rows))
    col_q = deque(sorted(cols))

    def kill_row(r):
        for c2 in rows[r]:
            s = cols.get(c2)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c2]
                else:
                    col_q.append(c2)
        del rows[r]

    def peel():
        nonlocal rank
        while row_q or col_q:
            while row_q:
                r = row_q.popleft()
                if r not in rows or len(rows[r]) != 1:
                    continue
                (c,) = rows[r]
                # Pivot on the lone entry: clearing column c touches no
                # other column, so there is no fill.
                for r2 in sorted(cols[c]):
                    if r2 == r:
                        continue
                    del rows[r2][c]
                    if rows[r2]:
                        row_q.append(r2)
                    else:
                        del rows[r2]
                del cols[c]
                del rows[r]
                rank += 1
            while col_q:
                c = col_q.popleft()
                if c not in cols or len(cols[c]) != 1:
                    continue
                (r,) = cols[c]
                # Lone entry in its column: no row update needed either.
                del cols[c]
                del rows[r][c]
                for c2 in sorted(rows[r]):
                    cols[c2].discard(r)
                    if not cols[c2]:
                        del cols[c2]
                    else:
                        col_q.append(c2)
                del rows[r]
                rank += 1
                break  # rescan rows first; they may have new singletons

    while True:
        peel()
        if not rows:
            return rank
        nr, nc = len(rows), len(cols)
        if nr * nc <= DENSE_CELL_LIMIT:
            row_ids = sorted(rows)
            col_ids = sorted(cols)
            col_pos = {c: j for j, c in enumerate(col_ids)}
            A = np.zeros((nr, nc), dtype=np.int64)
            for i, r in enumerate(row_ids):
                for c, v in rows[r].items():
                    A[i, col_pos[c]] = v
            if nc < nr:
                A = A.T
            return rank + _rank_dense(A, p)

        # Markowitz step: pivot of minimal fill estimate among the
        # sparsest rows, then return to peeling.
        cand_rows = sorted(rows, key=lambda r: (len(rows[r]), r))[:16]
        best = None
        for r in cand_rows:
            for c in sorted(rows[r]):
                score = (len(rows[r]) - 1) * (len(cols[c]) - 1)
                key = (score, len(cols[c]), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, r, c = best
        inv = pow(rows[r][c], -1, p)
        prow = sorted(rows[r].items())
        for r2 in sorted(cols[c]):
            if r2 == r:
                continue
            f = rows[r2][c] * inv % p
            row2 = rows[r2]
            for c2, v2 in prow:
                new = (row2.get(c2, 0) - f * v2) % p
                if new:
                    if c2 not in row2:
                        cols[c2].add(r2)
                    row2[c2] = new
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
            if row2:
                row_q.append(r2)
            else:
                del rows[r2]
        kill_row(r)
        rank += 1


def _peel_coo(rows: np.ndarray, cols: np.ndarray, vals: np.ndarray):
    """Batch-eliminate all singleton-row and singleton-column pivots.

    A lone entry in its row (or column) can be pivoted on without
    modifying any other entry beyond dropping the pivot's column (row),
    so whole batches go at once with numpy counting.  Returns the
    accumulated rank and the remaining core triples.
    """
    rank_acc = 0
    while rows.size:
        row_counts = np.bincount(rows)
        singleton = row_counts[rows] == 1
        if singleton.any():
            pivot_cols = np.unique(cols[singleton])
            rank_acc += int(pivot_cols.size)
            keep = ~np.isin(cols, pivot_cols)
            rows, cols, vals = rows[keep], cols[keep], vals[keep]
            continue
        col_counts = np.bincount(cols)
        singleton = col_counts[cols] == 1
        if singleton.any():
            pivot_rows = np.unique(rows[singleton])
            rank_acc += int(pivot_rows.size)
            keep = ~np.isin(rows, pivot_rows)
            rows, cols, vals = rows[keep], cols[keep], vals[keep]
            continue
        break
    return rank_acc, rows, cols, vals


def rank_coo(p: int, nrows: int, ncols: int, rows, cols, vals) -> int:
    """Rank over F_p from coordinate arrays (duplicates summed)."""
    _require_prime(p)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.mod(np.asarray(vals, dtype=np.int64), p)
    if rows.size:
        # Sum duplicate positions, then drop explicit zeros.
        packed = rows * ncols + cols
        uniq, inv = np.unique(packed, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(summed, inv, vals)
        summed %= p
        nz = summed != 0
        rows, cols = np.divmod(uniq[nz], ncols)
        vals = summed[nz]
    if rows.size == 0:
        return 0

    peeled, rows, cols, vals = _peel_coo(rows, cols, vals)
    if rows.size == 0:
        return peeled

    alive_rows = np.unique(rows)
    alive_cols = np.unique(cols)
    nr, nc = len(alive_rows), len(alive_cols)
    if nr * nc <= DENSE_CELL_LIMIT:
        A = np.zeros((nr, nc), dtype=np.int64)
        A[np.searchsorted(alive_rows, rows), np.searchsorted(alive_cols, cols)] = vals
        if nc < nr:
            A = A.T
        return peeled + _rank_dense(A, p)
    core = PrimeFieldMatrix(p, nrows, ncols,
                            {(int(r), int(c)): int(v) for r, c, v in zip(rows, cols, vals)})
    return peeled + _rank_sparse(core)


def rank(M: PrimeFieldMatrix) -> int:
    """Rank of M over F_p."""
    _require_prime(M.modulus)
    if M.nrows == 0 or M.ncols == 0 or not M.entries:
        return 0
    if M.ncols <= DENSE_COL_LIMIT and M.nrows * M.ncols <= DENSE_CELL_LIMIT:
        return _rank_dense(M.to_dense(), M.modulus)
    nnz = M.nnz
    rows = np.fromiter((k[0] for k in M.entries), dtype=np.int64, count=nnz)
    cols = np.fromiter((k[1] for k in M.entries), dtype=np.int64, count=nnz)
    vals = np.fromiter(M.entries.values(), dtype=np.int64, count=nnz)
    return rank_coo(M.modulus, M.nrows, M.ncols, rows, cols, vals)


def kernel_dimension(M: PrimeFieldMatrix) -> int:
    """Dimension of the null space: ncols - rank."""
    return M.ncols - rank(M)
