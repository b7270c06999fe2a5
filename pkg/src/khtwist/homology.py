"""Graded homology ranks, normalization, i_max and the Euler-characteristic
Jones polynomial.

Two routes produce the same unnormalized table:

* homology_table(complex, diagram): consumes a GradedComplex built by
  khcomplex.build_complex, ranks every block with linalg.rank.  Reference
  path, fine up to a dozen crossings.
* khovanov_table(diagram): streaming engine that assembles differential
  layers as integer numpy/scipy blocks, checks d^2 = 0 on the fly and ranks
  each (i, j) block before discarding it.  Same basis conventions, same
  exact integer arithmetic, much faster and memory-bounded per layer.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from math import comb

import numpy as np
from scipy import sparse as _sp

from .cube import circle_map, resolve
from .diagram import crossing_counts
from .errors import (
    AlreadyNormalized,
    BudgetExceeded,
    ComplexNotValid,
    EmptyTable,
    KhtwistError,
)
from .khcomplex import verify_d_squared
from .laurent import LaurentPoly, exact_divide, substitute
from .linalg import rank as exact_rank
from .linalg import rank_int_coo


@dataclass(frozen=True)
class KhovanovTable:
    ranks: dict          # (i, j) -> positive rank
    n_plus: int
    n_minus: int
    crossings: int
    fingerprint: str
    normalized: bool

    def support(self):
        return sorted(self.ranks)

    def total_rank(self):
        return sum(self.ranks.values())


def _meta(diagram):
    n_plus, n_minus, _ = crossing_counts(diagram)
    return n_plus, n_minus, len(diagram.crossings), diagram.fingerprint()


def homology_table(complex_, diagram):
    """Unnormalized homology ranks from an assembled GradedComplex."""
    if not verify_d_squared(complex_):
        raise ComplexNotValid(f"d^2 != 0 at block {complex_.failure}")
    block_ranks = {key: exact_rank(blk) for key, blk in complex_.blocks.items()}
    ranks = {}
    for (i, j), dim in complex_.dims.items():
        h = dim - block_ranks.get((i, j), 0) - block_ranks.get((i - 1, j), 0)
        if h < 0:
            raise KhtwistError(f"negative rank at ({i},{j})")
        if h:
            ranks[(i, j)] = h
    n_plus, n_minus, c, fp = _meta(diagram)
    return KhovanovTable(ranks, n_plus, n_minus, c, fp, normalized=False)


def normalize(table):
    """Apply the (n_plus, n_minus) grading shift; support moves into
    i in [-n_minus, n_plus]."""
    if table.normalized:
        raise AlreadyNormalized("table is already normalized")
    ranks = {(i - table.n_minus, j + table.n_plus - 2 * table.n_minus): r
             for (i, j), r in table.ranks.items()}
    return replace(table, ranks=ranks, normalized=True)


def i_max(table):
    """Maximal homological degree with nonzero normalized homology."""
    if not table.normalized:
        raise KhtwistError("i_max is defined on normalized tables")
    if not table.ranks:
        raise EmptyTable("table has no nonzero ranks")
    return max(i for i, _ in table.ranks)


def max_degree(table):
    """Maximal homological degree with a nonzero entry (any table)."""
    if not table.ranks:
        raise EmptyTable("table has no nonzero ranks")
    return max(i for i, _ in table.ranks)


def euler_polynomial(table):
    """Graded Euler characteristic sum((-1)^i q^j rank) as a q-polynomial."""
    coeffs = {}
    for (i, j), r in table.ranks.items():
        term = r if i % 2 == 0 else -r
        coeffs[j] = coeffs.get(j, 0) + term
    return LaurentPoly(coeffs, var="q", unit=1)


def jones_from_kh(table):
    """Jones polynomial in t^{1/2} from a normalized table."""
    if not table.normalized:
        raise KhtwistError("jones_from_kh needs a normalized table")
    q_plus_qinv = LaurentPoly({1: 1, -1: 1}, var="q", unit=1)
    quotient = exact_divide(euler_polynomial(table), q_plus_qinv)
    return substitute(quotient, "q->-t^(1/2)")


# --- table serialization ---

def serialize_table(table):
    lines = [
        "format=1",
        f"n_plus={table.n_plus}",
        f"n_minus={table.n_minus}",
        f"crossings={table.crossings}",
        f"fingerprint={table.fingerprint}",
        f"normalized={'true' if table.normalized else 'false'}",
        "i j rank",
    ]
    for (i, j) in sorted(table.ranks):
        lines.append(f"{i} {j} {table.ranks[(i, j)]}")
    return "\n".join(lines) + "\n"


def parse_table(text):
    meta = {}
    ranks = {}
    in_rows = False
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line == "i j rank":
            in_rows = True
            continue
        if in_rows:
            i, j, r = line.split()
            ranks[(int(i), int(j))] = int(r)
        else:
            key, _, value = line.partition("=")
            meta[key] = value
    return KhovanovTable(
        ranks,
        n_plus=int(meta["n_plus"]),
        n_minus=int(meta["n_minus"]),
        crossings=int(meta["crossings"]),
        fingerprint=meta.get("fingerprint", ""),
        normalized=meta.get("normalized") == "true",
    )


# --- streaming engine ---

_POP16 = np.array([bin(x).count("1") for x in range(1 << 16)], dtype=np.int8)


def _popcount(arr):
    return _POP16[arr & 0xFFFF] + _POP16[(arr >> 16) & 0xFFFF]


def _layer_index(i, masks, decs):
    """Dims of layer i, plus per-mask arrays giving each labeling's q-grading
    and its column index inside its (i, j) block."""
    dims = {}
    offsets = {}
    for mask in masks:
        k = decs[mask].circle_count
        for t in range(k + 1):
            j = i + k - 2 * t
            offsets[(mask, j)] = dims.get((i, j), 0)
            dims[(i, j)] = dims.get((i, j), 0) + comb(k, t)
    jarrs = {}
    idxarrs = {}
    for mask in masks:
        k = decs[mask].circle_count
        labs = np.arange(1 << k, dtype=np.int64)
        pc = _popcount(labs).astype(np.int64)
        order = np.argsort(pc, kind="stable")
        ranks_in_group = np.empty(1 << k, dtype=np.int64)
        group_sizes = np.bincount(pc, minlength=k + 1)
        group_starts = np.concatenate(([0], np.cumsum(group_sizes)[:-1]))
        ranks_in_group[order] = np.arange(1 << k) - group_starts[pc[order]]
        offs = np.array([offsets[(mask, i + k - 2 * t)] for t in range(k + 1)],
                        dtype=np.int64)
        jarrs[mask] = (i + k - 2 * pc).astype(np.int8)
        idxarrs[mask] = (offs[pc] + ranks_in_group).astype(np.int64)
    return dims, jarrs, idxarrs


def _layer_blocks(diagram, i, masks_i, decs_i, decs_next, jarrs, idxarrs,
                  idxarrs_next):
    """All d^i entries, bucketed per q-grading j.

    Returns {j: (rows, cols, vals)} with int numpy arrays; values are the
    cube-edge signs, exactly +-1.
    """
    c = len(diagram.crossings)
    chunks = []  # (j_arr, col_arr, row_arr, sign)
    for mask in masks_i:
        dec0 = decs_i[mask]
        k = dec0.circle_count
        labs = np.arange(1 << k, dtype=np.int64)
        jsrc = jarrs[mask]
        cols = idxarrs[mask]
        for pos in range(c):
            bit = 1 << pos
            if mask & bit:
                continue
            mask2 = mask | bit
            dec1 = decs_next[mask2]
            kind, perm, extra = circle_map(diagram, dec0, dec1, pos)
            sign = -1 if bin(mask & (bit - 1)).count("1") % 2 else 1
            tgt_idx = idxarrs_next[mask2]
            if kind == "merge":
                c1, c2, ct = extra
                bits1 = (labs >> c1) & 1
                bits2 = (labs >> c2) & 1
                tgt = (bits1 | bits2) << ct
                for b in range(k):
                    if b != c1 and b != c2:
                        tgt = tgt | (((labs >> b) & 1) << perm[b])
                keep = (bits1 & bits2) == 0
                chunks.append((jsrc[keep], cols[keep], tgt_idx[tgt[keep]], sign))
            else:
                cs, t1, t2 = extra
                base = np.zeros(1 << k, dtype=np.int64)
                for b in range(k):
                    if b != cs:
                        base = base | (((labs >> b) & 1) << perm[b])
                bs = (labs >> cs) & 1
                term_a = base | (1 << t1) | (bs << t2)
                chunks.append((jsrc, cols, tgt_idx[term_a], sign))
                ones = bs == 0
                term_b = base[ones] | (1 << t2)
                chunks.append((jsrc[ones], cols[ones], tgt_idx[term_b], sign))
    if not chunks:
        return {}
    all_j = np.concatenate([ch[0] for ch in chunks])
    all_c = np.concatenate([ch[1] for ch in chunks])
    all_r = np.concatenate([ch[2] for ch in chunks])
    all_v = np.concatenate([np.full(len(ch[0]), ch[3], dtype=np.int8)
                            for ch in chunks])
    out = {}
    for j in np.unique(all_j):
        sel = all_j == j
        out[int(j)] = (all_r[sel], all_c[sel], all_v[sel])
    return out


def khovanov_table(diagram, budget=16, threads=1):
    """Unnormalized homology table via the streaming layer-by-layer engine.

    d^{i+1} d^i = 0 is verified exactly (integer sparse products) for every
    layer pair before the earlier layer is discarded; a failure raises
    ComplexNotValid.
    """
    c = len(diagram.crossings)
    if c > budget:
        raise BudgetExceeded(f"{c} crossings exceeds budget {budget}")

    by_weight = [[] for _ in range(c + 1)]
    for mask in range(1 << c):
        by_weight[bin(mask).count("1")].append(mask)

    dims = {}
    block_ranks = {}
    prev_blocks = None  # {j: scipy csr} of layer i-1, for the d^2 check

    decs_i = {m: resolve(diagram, m) for m in by_weight[0]}
    dims_i, jarrs, idxarrs = _layer_index(0, by_weight[0], decs_i)
    dims.update(dims_i)

    for i in range(c + 1):
        if i == c:
            decs_next, idxarrs_next = {}, {}
            layer = {}
        else:
            decs_next = {m: resolve(diagram, m) for m in by_weight[i + 1]}
            dims_next, jarrs_next, idxarrs_next = _layer_index(
                i + 1, by_weight[i + 1], decs_next)
            dims.update(dims_next)
            layer = _layer_blocks(diagram, i, by_weight[i], decs_i, decs_next,
                                  jarrs, idxarrs, idxarrs_next)

        cur_blocks = {}
        for j, (rows, cols, vals) in layer.items():
            mat = _sp.coo_matrix(
                (vals.astype(np.int32), (rows, cols)),
                shape=(dims[(i + 1, j)], dims[(i, j)])).tocsr()
            cur_blocks[j] = mat
        # exact d^2 = 0 check against the previous layer
        if prev_blocks is not None:
            for j, prev in prev_blocks.items():
                nxt = cur_blocks.get(j)
                if nxt is not None and (nxt @ prev).count_nonzero() != 0:
                    raise ComplexNotValid(f"d^2 != 0 at block ({i - 1},{j})")

        items = sorted(layer.items())
        if threads > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(
                    lambda kv: rank_int_coo(
                        dims[(i + 1, kv[0])], dims[(i, kv[0])], *kv[1]),
                    items))
            for (j, _), r in zip(items, results):
                block_ranks[(i, j)] = r
        else:
            for j, (rows, cols, vals) in items:
                block_ranks[(i, j)] = rank_int_coo(
                    dims[(i + 1, j)], dims[(i, j)], rows, cols, vals)

        prev_blocks = cur_blocks
        if i < c:
            decs_i, jarrs, idxarrs = decs_next, jarrs_next, idxarrs_next

    ranks = {}
    for (i, j), dim in dims.items():
        h = dim - block_ranks.get((i, j), 0) - block_ranks.get((i - 1, j), 0)
        if h < 0:
            raise KhtwistError(f"negative rank at ({i},{j})")
        if h:
            ranks[(i, j)] = h
    n_plus, n_minus, cc, fp = _meta(diagram)
    return KhovanovTable(ranks, n_plus, n_minus, cc, fp, normalized=False)
