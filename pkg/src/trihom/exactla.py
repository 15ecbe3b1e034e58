"""Exact sparse integer/rational linear algebra.

Everything here is exact: ranks come from division-free integer
elimination (cross-multiplication with per-row content removal, dense
Bareiss fallback), nullspaces and solves from Fraction elimination, and
modular ranks serve as an independent cross-check.  No floating point.
"""

from __future__ import annotations

import hashlib
import os
import random
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import MalformedPairing, NoSolution, ResourceLimit

DEFAULT_MAX_MATRIX_CELLS = 100_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _max_cells() -> int:
    return int(os.environ.get("AK_MAX_MATRIX", DEFAULT_MAX_MATRIX_CELLS))


class SparseIntMatrix:
    """Rows of sorted (col, value) pairs; no explicit zeros."""

    __slots__ = ("num_rows", "num_cols", "rows")

    def __init__(
        self,
        num_rows: int,
        num_cols: int,
        rows: Iterable[Iterable[tuple[int, int]]],
    ):
        self.num_rows = num_rows
        self.num_cols = num_cols
        self.rows: list[tuple[tuple[int, int], ...]] = []
        for row in rows:
            entries = tuple(sorted((c, int(v)) for c, v in row if v != 0))
            cols = [c for c, _ in entries]
            if any(not 0 <= c < num_cols for c in cols) or len(set(cols)) != len(cols):
                raise ValueError("bad column indices in sparse row")
            self.rows.append(entries)
        if len(self.rows) != num_rows:
            raise ValueError("row count mismatch")

    @staticmethod
    def from_dense(dense: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        nr = len(dense)
        nc = len(dense[0]) if nr else 0
        return SparseIntMatrix(
            nr, nc, [[(j, v) for j, v in enumerate(row) if v] for row in dense]
        )

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.num_cols for _ in range(self.num_rows)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i][c] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        cols: list[list[tuple[int, int]]] = [[] for _ in range(self.num_cols)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                cols[c].append((i, v))
        return SparseIntMatrix(self.num_cols, self.num_rows, cols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.num_rows} {self.num_cols}\n".encode())
        for i, row in enumerate(self.rows):
            for c, v in row:
                h.update(f"{i} {c} {v};".encode())
        return h.hexdigest()

    def to_matrixmarket(self) -> str:
        lines = [
            "%%MatrixMarket matrix coordinate integer general",
            f"{self.num_rows} {self.num_cols} {self.nnz}",
        ]
        for i, row in enumerate(self.rows):
            for c, v in row:
                lines.append(f"{i + 1} {c + 1} {v}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_matrixmarket(text: str) -> "SparseIntMatrix":
        lines = [
            ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")
        ]
        if not lines:
            raise MalformedPairing("empty MatrixMarket input")
        nr, nc, nnz = (int(x) for x in lines[0].split())
        rows: list[list[tuple[int, int]]] = [[] for _ in range(nr)]
        for ln in lines[1 : 1 + nnz]:
            i, j, v = ln.split()
            rows[int(i) - 1].append((int(j) - 1, int(v)))
        return SparseIntMatrix(nr, nc, rows)


def _row_content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
        if g == 1:
            break
    return g or 1


def _bareiss_rank_dense(dense: list[list[int]]) -> int:
    """Classic fraction-free Bareiss elimination; entries stay minors."""
    rows = [r[:] for r in dense]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                rows[i][j] = (rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
    return r


def rank(m: SparseIntMatrix) -> int:
    """Exact rank over the rationals, division-free integer elimination.

    Sparse path: Markowitz-flavoured pivoting with cross-multiplication and
    per-row content removal (content never changes rank); dense Bareiss when
    the working set gets dense.
    """
    if m.num_rows * m.num_cols > _max_cells():
        raise ResourceLimit(
            f"matrix {m.num_rows}x{m.num_cols} exceeds AK_MAX_MATRIX cell limit"
        )
    work = [dict(row) for row in m.rows if row]
    rank_count = 0
    while work:
        cells = sum(len(r) for r in work)
        if work and cells > 0.25 * len(work) * m.num_cols and len(work) <= 600:
            dense = [[0] * m.num_cols for _ in range(len(work))]
            for i, row in enumerate(work):
                for c, v in row.items():
                    dense[i][c] = v
            return rank_count + _bareiss_rank_dense(dense)
        col_count: dict[int, int] = {}
        for row in work:
            for c in row:
                col_count[c] = col_count.get(c, 0) + 1
        best = None
        for i, row in enumerate(work):
            for c in row:
                score = (len(row) - 1) * (col_count[c] - 1)
                if best is None or score < best[0]:
                    best = (score, i, c)
            if best and best[0] == 0:
                break
        _, pi, pc = best
        pivot_row = work.pop(pi)
        pv = pivot_row[pc]
        rank_count += 1
        new_work = []
        for row in work:
            f = row.get(pc)
            if f:
                merged = {c: v * pv for c, v in row.items() if c != pc}
                for c, v in pivot_row.items():
                    if c == pc:
                        continue
                    nv = merged.get(c, 0) - f * v
                    if nv:
                        merged[c] = nv
                    elif c in merged:
                        del merged[c]
                if merged:
                    g = _row_content(merged)
                    if g > 1:
                        merged = {c: v // g for c, v in merged.items()}
                    new_work.append(merged)
            else:
                new_work.append(row)
        work = new_work
    return rank_count


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def default_primes(m: SparseIntMatrix, count: int = 3, bits: int = 62) -> list[int]:
    """Deterministic primes seeded from the matrix content hash."""
    rng = random.Random(int(m.content_hash(), 16))
    primes: list[int] = []
    while len(primes) < count:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        while not is_probable_prime(n):
            n += 2
        if n not in primes:
            primes.append(n)
    return primes


def _rank_mod_p_exact(m: SparseIntMatrix, p: int) -> int:
    """Python-int elimination mod p, for primes too large for the kernels."""
    work = []
    for row in m.rows:
        d = {c: v % p for c, v in row if v % p}
        if d:
            work.append(d)
    r = 0
    pivots: list[tuple[int, dict[int, int]]] = []
    for row in work:
        for pc, prow in pivots:
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = (row.get(c, 0) - f * v) % p
                    if nv:
                        row[c] = nv
                    elif c in row:
                        del row[c]
        if row:
            pc = min(row)
            inv = pow(row[pc], p - 2, p)
            row = {c: (v * inv) % p for c, v in row.items()}
            pivots.append((pc, row))
            r += 1
    return r


def modular_rank(m: SparseIntMatrix, primes: Sequence[int]) -> int:
    """max over primes of rank mod p; a certified lower bound for rank()."""
    if len(primes) < 2:
        raise ValueError("need at least 2 primes")
    best = 0
    for p in primes:
        if p < (1 << 31) and m.num_rows and m.num_cols:
            dense = np.zeros((m.num_rows, m.num_cols), dtype=np.int64)
            for i, row in enumerate(m.rows):
                for c, v in row:
                    dense[i, c] = v % p
            r = _kernels.rank_mod_p(dense, p)
        else:
            r = _rank_mod_p_exact(m, p)
        best = max(best, r)
    return best


def _reduce_rows_tracked(
    m: SparseIntMatrix,
) -> tuple[
    list[tuple[int, dict[int, Fraction], dict[int, Fraction]]],
    list[dict[int, Fraction]],
]:
    """Echelonize rows over Q, tracking each reduced row as a combination of
    the original rows.  Returns (echelon pivots, combinations of zero rows)."""
    echelon: list[tuple[int, dict[int, Fraction], dict[int, Fraction]]] = []
    zero_combos: list[dict[int, Fraction]] = []
    for i, source in enumerate(m.rows):
        row = {c: Fraction(v) for c, v in source}
        combo = {i: Fraction(1)}
        for pc, prow, pcombo in echelon:
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, Fraction(0)) - f * v
                    if nv:
                        row[c] = nv
                    elif c in row:
                        del row[c]
                for c, v in pcombo.items():
                    nv = combo.get(c, Fraction(0)) - f * v
                    if nv:
                        combo[c] = nv
                    elif c in combo:
                        del combo[c]
        if row:
            pc = min(row)
            f = row[pc]
            row = {c: v / f for c, v in row.items()}
            combo = {c: v / f for c, v in combo.items()}
            echelon.append((pc, row, combo))
        else:
            zero_combos.append(combo)
    return echelon, zero_combos


def left_nullspace(m: SparseIntMatrix) -> list[list[Fraction]]:
    """Basis of {y : y M = 0}, as dense Fraction vectors of length num_rows."""
    _, zero_combos = _reduce_rows_tracked(m)
    out = []
    for combo in zero_combos:
        vec = [Fraction(0)] * m.num_rows
        for i, v in combo.items():
            vec[i] = v
        out.append(vec)
    return out


def solve_combination(
    m: SparseIntMatrix, target: Sequence[int | Fraction]
) -> list[Fraction]:
    """Coefficients x with x M = target, or raise NoSolution."""
    if len(target) != m.num_cols:
        raise ValueError("target length mismatch")
    echelon, _ = _reduce_rows_tracked(m)
    t = {c: Fraction(v) for c, v in enumerate(target) if v}
    combo: dict[int, Fraction] = {}
    for pc, prow, pcombo in echelon:
        f = t.get(pc)
        if f:
            for c, v in prow.items():
                nv = t.get(c, Fraction(0)) - f * v
                if nv:
                    t[c] = nv
                elif c in t:
                    del t[c]
            for c, v in pcombo.items():
                combo[c] = combo.get(c, Fraction(0)) + f * v
    if t:
        raise NoSolution("target is independent of the rows")
    vec = [Fraction(0)] * m.num_rows
    for i, v in combo.items():
        vec[i] = v
    return vec
