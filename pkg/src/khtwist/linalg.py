"""Exact rank of sparse rational matrices.

The rank pipeline has two phases.  Structural pivots first: a row or column
with a single nonzero entry can be pivoted away without touching any other
value, so those are peeled off in vectorized rounds.  The remaining core is
eliminated exactly over the integers (rows are rescaled fraction-free, which
preserves rank), with a Markowitz-style pivot choice to limit fill-in.

The core eliminator exists twice: a jit-compiled int64 kernel with explicit
magnitude guards (the fast path), and a pure Python version on arbitrary
precision integers.  Whenever a kernel multiplication could leave the safe
int64 range the block falls back to the Python path, so results are exact in
all cases.  No floating point is used anywhere.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import KhtwistError
from ._elim import eliminate_int64, OPERAND_LIMIT


@dataclass
class SparseRationalMatrix:
    rows: int
    cols: int
    entries: list = field(default_factory=list)  # (row, col, value) triplets

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise KhtwistError(f"entry ({r},{c}) out of range")
            if v == 0:
                raise KhtwistError(f"explicit zero stored at ({r},{c})")
            if (r, c) in seen:
                raise KhtwistError(f"duplicate entry at ({r},{c})")
            seen.add((r, c))

    def transpose(self):
        return SparseRationalMatrix(
            self.cols, self.rows, [(c, r, v) for r, c, v in self.entries])

    def to_dense(self):
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            dense[r][c] = Fraction(v)
        return dense

    def matmul(self, other):
        """self @ other, exact; used for d^2 checks on small complexes."""
        if self.cols != other.rows:
            raise KhtwistError("dimension mismatch in matmul")
        by_row = {}
        for r, c, v in other.entries:
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for r, c, v in self.entries:
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                acc[key] = acc.get(key, 0) + v * v2
        entries = [(r, c, v) for (r, c), v in acc.items() if v != 0]
        return SparseRationalMatrix(self.rows, other.cols, entries)


def rank(matrix, verify_mod_prime=False):
    """Exact rank over the rationals.

    With verify_mod_prime=True the rank is recomputed modulo a random 62-bit
    prime as a cross-check; disagreement aborts with an error.
    """
    int_entries = _clear_denominators(matrix.entries)
    result = _rank_int(matrix.rows, matrix.cols, int_entries)
    if verify_mod_prime:
        p = _random_prime_62()
        modular = _rank_mod_p(matrix.rows, matrix.cols, int_entries, p)
        if modular != result:
            raise KhtwistError(
                f"rank mismatch: exact {result} vs mod-{p} {modular}")
    return result


def _clear_denominators(entries):
    """Scale each row to integers (rank-preserving)."""
    by_row = {}
    for r, c, v in entries:
        by_row.setdefault(r, []).append((c, v))
    out = []
    for r, items in by_row.items():
        scale = 1
        for _, v in items:
            if isinstance(v, Fraction):
                scale = scale * v.denominator // gcd(scale, v.denominator)
        for c, v in items:
            w = v * scale
            if isinstance(w, Fraction):
                assert w.denominator == 1
                w = w.numerator
            out.append((r, c, int(w)))
    return out


def _rank_int(nrows, ncols, entries):
    if not entries:
        return 0
    rows = np.fromiter((e[0] for e in entries), dtype=np.int64, count=len(entries))
    cols = np.fromiter((e[1] for e in entries), dtype=np.int64, count=len(entries))
    vals = [e[2] for e in entries]
    peeled, rem_idx = _structural_peel(nrows, ncols, rows, cols)
    if max((abs(v) for v in vals), default=0) <= OPERAND_LIMIT:
        varr = np.fromiter((int(v) for v in vals), dtype=np.int64,
                           count=len(vals))
        fast = _core_rank_jit(rows[rem_idx], cols[rem_idx], varr[rem_idx])
        if fast >= 0:
            return peeled + fast
    core = [(int(rows[i]), int(cols[i]), vals[i]) for i in rem_idx]
    return peeled + _core_rank_int(core)


def rank_int_coo(nrows, ncols, rows, cols, vals):
    """Rank of an integer COO matrix given as numpy arrays (engine fast path)."""
    if len(rows) == 0:
        return 0
    peeled, rem_idx = _structural_peel(nrows, ncols, rows, cols)
    fast = _core_rank_jit(rows[rem_idx], cols[rem_idx],
                          vals[rem_idx].astype(np.int64))
    if fast >= 0:
        return peeled + fast
    core = [(int(rows[i]), int(cols[i]), int(vals[i])) for i in rem_idx]
    return peeled + _core_rank_int(core)


def _core_rank_jit(rows, cols, vals):
    """Run the jit kernel on a core; compresses indices and sorts entries.

    Returns -1 when the kernel aborts on a potential int64 overflow.
    """
    if len(rows) == 0:
        return 0
    _, r_comp = np.unique(rows, return_inverse=True)
    cvals, c_comp = np.unique(cols, return_inverse=True)
    nr = int(r_comp.max()) + 1
    nc = len(cvals)
    order = np.argsort(r_comp * nc + c_comp, kind="stable")
    return int(eliminate_int64(
        np.ascontiguousarray(r_comp[order]),
        np.ascontiguousarray(c_comp[order]),
        np.ascontiguousarray(vals[order]), nr, nc))


def _structural_peel(nrows, ncols, rows, cols):
    """Pivot away singleton rows/columns in vectorized rounds.

    Such pivots delete their row and column without modifying any remaining
    value, so this phase is exact for any nonzero entries.  Returns the count
    of pivots taken and the indices of the surviving entries.
    """
    alive = np.ones(len(rows), dtype=bool)
    dead_row = np.zeros(nrows, dtype=bool)
    dead_col = np.zeros(ncols, dtype=bool)
    pivots = 0
    while True:
        r_alive = rows[alive]
        c_alive = cols[alive]
        if len(r_alive) == 0:
            break
        ccount = np.bincount(c_alive, minlength=ncols)
        rcount = np.bincount(r_alive, minlength=nrows)
        progressed = False
        # singleton columns: their unique entries pivot; distinct rows only
        cand = np.flatnonzero(alive)[ccount[c_alive] == 1]
        if len(cand):
            _, first = np.unique(rows[cand], return_index=True)
            chosen = cand[first]
            dead_row[rows[chosen]] = True
            dead_col[cols[chosen]] = True
            pivots += len(chosen)
            progressed = True
        else:
            # singleton rows: same game transposed
            cand = np.flatnonzero(alive)[rcount[r_alive] == 1]
            if len(cand):
                _, first = np.unique(cols[cand], return_index=True)
                chosen = cand[first]
                dead_row[rows[chosen]] = True
                dead_col[cols[chosen]] = True
                pivots += len(chosen)
                progressed = True
        if not progressed:
            break
        alive &= ~(dead_row[rows] | dead_col[cols])
    return pivots, np.flatnonzero(alive)


def _core_rank_int(entries):
    """Exact integer elimination with Markowitz-flavoured pivoting.

    Rows may be rescaled by nonzero integers (fraction-free update), which
    leaves the rank unchanged; a gcd pass keeps the entries small.
    """
    if not entries:
        return 0
    row_data = {}
    col_rows = {}
    for r, c, v in entries:
        row_data.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)
    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    rank_count = 0
    while heap:
        nnz, c = heapq.heappop(heap)
        rs = col_rows.get(c)
        if not rs:
            continue
        if len(rs) != nnz:  # stale heap entry
            heapq.heappush(heap, (len(rs), c))
            continue
        # pivot row: fewest entries, then smallest index
        r = min(rs, key=lambda x: (len(row_data[x]), x))
        pivot = row_data[r][c]
        prow = row_data.pop(r)
        for cc in prow:
            col_rows[cc].discard(r)
        touched = set()
        for r2 in list(col_rows[c]):
            row2 = row_data[r2]
            v = row2[c]
            if v % pivot == 0:
                f = v // pivot
                for cc, pv in prow.items():
                    w = row2.get(cc, 0) - f * pv
                    if w:
                        row2[cc] = w
                        if r2 not in col_rows.setdefault(cc, set()):
                            col_rows[cc].add(r2)
                            touched.add(cc)
                    elif cc in row2:
                        del row2[cc]
                        col_rows[cc].discard(r2)
                        touched.add(cc)
            else:
                for cc in row2:
                    row2[cc] *= pivot
                for cc, pv in prow.items():
                    w = row2.get(cc, 0) - v * pv
                    if w:
                        row2[cc] = w
                        if r2 not in col_rows.setdefault(cc, set()):
                            col_rows[cc].add(r2)
                            touched.add(cc)
                    elif cc in row2:
                        del row2[cc]
                        col_rows[cc].discard(r2)
                        touched.add(cc)
                g = 0
                for w in row2.values():
                    g = gcd(g, w)
                if g > 1:
                    for cc in row2:
                        row2[cc] //= g
            if not row2:
                del row_data[r2]
        del col_rows[c]
        rank_count += 1
        for cc in touched:
            if col_rows.get(cc):
                heapq.heappush(heap, (len(col_rows[cc]), cc))
    return rank_count


def _rank_mod_p(nrows, ncols, entries, p):
    """Plain sparse elimination modulo a prime (verification path only)."""
    row_data = {}
    for r, c, v in entries:
        w = v % p
        if w:
            row_data.setdefault(r, {})[c] = w
    rank_count = 0
    rows_left = list(row_data)
    while rows_left:
        r = rows_left.pop()
        row = row_data.pop(r, None)
        if not row:
            continue
        c = min(row)
        inv = pow(row[c], -1, p)
        norm = {cc: (v * inv) % p for cc, v in row.items()}
        rank_count += 1
        for r2, row2 in row_data.items():
            v2 = row2.get(c)
            if v2:
                for cc, pv in norm.items():
                    w = (row2.get(cc, 0) - v2 * pv) % p
                    if w:
                        row2[cc] = w
                    else:
                        row2.pop(cc, None)
    return rank_count


def _random_prime_62(rng=random):
    while True:
        candidate = rng.getrandbits(62) | (1 << 61) | 1
        if _is_probable_prime(candidate):
            return candidate


def _is_probable_prime(n, rounds=20):
    if n < 4:
        return n in (2, 3)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = random.randrange(2, n - 1)
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
