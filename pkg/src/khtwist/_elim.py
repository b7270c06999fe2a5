"""Jit-compiled integer elimination kernel for the sparse rank core.

Rows live in a shared pool of (column, value) arrays, sorted by column.
Column occupancy is tracked with exact counts plus a lazily pruned linked
list of candidate rows per column; pivots come off a lazy binary heap keyed
by column count.  Every row combination is fraction-free: with pivot p and
eliminated value v, row2 <- (p/g) * row2 - (v/g) * prow for g = gcd(p, v),
followed by a gcd pass.  Rescaling a row by a nonzero integer preserves
rank, so the count of pivots taken is the exact rank.

All values stay in int64.  Before any multiplication both operands are
checked against OPERAND_LIMIT; a potential overflow aborts the kernel
(return value -1) and the caller re-runs the block on Python integers.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# products of two operands below the limit fit in 61 bits, so a difference
# of two products cannot overflow int64
OPERAND_LIMIT = 1 << 30


@njit(cache=True, nogil=True)
def _gcd64(a, b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _heap_push(heap, size, key):
    if size >= len(heap):
        heap = np.concatenate((heap, heap))
    i = size
    heap[i] = key
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return heap, size + 1


@njit(cache=True, nogil=True)
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        small = left
        right = left + 1
        if right < size and heap[right] < heap[left]:
            small = right
        if heap[i] <= heap[small]:
            break
        heap[i], heap[small] = heap[small], heap[i]
        i = small
    return top, size


@njit(cache=True, nogil=True)
def _find_col(pcol, start, length, c):
    """Index of column c within a sorted row segment, or -1."""
    lo = start
    hi = start + length
    while lo < hi:
        mid = (lo + hi) >> 1
        if pcol[mid] < c:
            lo = mid + 1
        else:
            hi = mid
    if lo < start + length and pcol[lo] == c:
        return lo
    return -1


@njit(cache=True, nogil=True)
def eliminate_int64(row_idx, col_idx, values, nrows, ncols):
    """Exact rank of the compressed COO core; -1 on magnitude overflow.

    Indices must be compressed to 0..nrows-1 / 0..ncols-1 and the entry
    list must be sorted by (row, column) with no duplicates.
    """
    nnz = len(values)
    if nnz == 0:
        return 0

    # row pool, sized with headroom for fill-in; grown by doubling
    cap = 4 * nnz + 16
    pcol = np.empty(cap, np.int64)
    pval = np.empty(cap, np.int64)
    row_start = np.zeros(nrows, np.int64)
    row_len = np.zeros(nrows, np.int64)
    row_cap = np.zeros(nrows, np.int64)
    pool_end = 0

    col_cnt = np.zeros(ncols, np.int64)
    for t in range(nnz):
        col_cnt[col_idx[t]] += 1

    # per-column candidate rows as linked lists with lazy invalidation
    cr_cap = 4 * nnz + 16
    cr_row = np.empty(cr_cap, np.int64)
    cr_next = np.empty(cr_cap, np.int64)
    cr_head = np.full(ncols, -1, np.int64)
    cr_end = 0
    row_seen = np.full(nrows, -1, np.int64)  # dedupe stamp per pivot step

    t = 0
    while t < nnz:
        r = row_idx[t]
        begin = t
        while t < nnz and row_idx[t] == r:
            pcol[pool_end] = col_idx[t]
            pval[pool_end] = values[t]
            pool_end += 1
            t += 1
        row_start[r] = pool_end - (t - begin)
        row_len[r] = t - begin
        row_cap[r] = t - begin
        for u in range(begin, t):
            c = col_idx[u]
            cr_row[cr_end] = r
            cr_next[cr_end] = cr_head[c]
            cr_head[c] = cr_end
            cr_end += 1

    # lazy min-heap of (count, column) packed into one int64 key
    heap = np.empty(2 * nnz + ncols + 16, np.int64)
    heap_size = 0
    for c in range(ncols):
        if col_cnt[c] > 0:
            heap, heap_size = _heap_push(heap, heap_size, col_cnt[c] * ncols + c)

    scratch_cap = 64
    cand_row = np.empty(scratch_cap, np.int64)
    cand_pos = np.empty(scratch_cap, np.int64)
    prow_col = np.empty(scratch_cap, np.int64)
    prow_val = np.empty(scratch_cap, np.int64)
    merge_col = np.empty(scratch_cap, np.int64)
    merge_val = np.empty(scratch_cap, np.int64)

    rank_count = 0
    stamp = 0
    while heap_size > 0:
        key, heap_size = _heap_pop(heap, heap_size)
        cnt = key // ncols
        c = key % ncols
        if col_cnt[c] == 0:
            continue
        if cnt != col_cnt[c]:
            heap, heap_size = _heap_push(heap, heap_size, col_cnt[c] * ncols + c)
            continue

        # collect live candidate rows, pruning stale list nodes
        n_cand = 0
        node = cr_head[c]
        cr_head[c] = -1
        stamp += 1
        while node >= 0:
            r = cr_row[node]
            node = cr_next[node]
            if row_len[r] == 0 or row_seen[r] == stamp:
                continue
            pos = _find_col(pcol, row_start[r], row_len[r], c)
            if pos < 0:
                continue
            row_seen[r] = stamp
            if n_cand >= len(cand_row):
                cand_row = np.concatenate((cand_row, cand_row))
                cand_pos = np.concatenate((cand_pos, cand_pos))
            cand_row[n_cand] = r
            cand_pos[n_cand] = pos
            n_cand += 1
        if n_cand == 0:
            col_cnt[c] = 0
            continue

        # pivot row: prefer unit pivots, then fewest entries, then index
        best = 0
        for s in range(1, n_cand):
            r = cand_row[s]
            b = cand_row[best]
            r_unit = 0 if abs(pval[cand_pos[s]]) == 1 else 1
            b_unit = 0 if abs(pval[cand_pos[best]]) == 1 else 1
            if (r_unit, row_len[r], r) < (b_unit, row_len[b], b):
                best = s
        pr = cand_row[best]
        p = pval[cand_pos[best]]
        plen = row_len[pr]
        if plen > len(prow_col):
            prow_col = np.empty(2 * plen, np.int64)
            prow_val = np.empty(2 * plen, np.int64)
        ps = row_start[pr]
        for s in range(plen):
            prow_col[s] = pcol[ps + s]
            prow_val[s] = pval[ps + s]

        # retire the pivot row
        row_len[pr] = 0
        for s in range(plen):
            cc = prow_col[s]
            col_cnt[cc] -= 1
            if cc != c and col_cnt[cc] > 0:
                heap, heap_size = _heap_push(
                    heap, heap_size, col_cnt[cc] * ncols + cc)

        for s in range(n_cand):
            r2 = cand_row[s]
            if r2 == pr:
                continue
            v = pval[cand_pos[s]]
            g = _gcd64(p, v)
            m2 = p // g
            mv = v // g
            if abs(m2) > OPERAND_LIMIT or abs(mv) > OPERAND_LIMIT:
                return -1

            l2 = row_len[r2]
            s2 = row_start[r2]
            need = l2 + plen
            if need > len(merge_col):
                merge_col = np.empty(2 * need, np.int64)
                merge_val = np.empty(2 * need, np.int64)

            ia = 0
            ib = 0
            out = 0
            while ia < l2 or ib < plen:
                if ib >= plen or (ia < l2 and pcol[s2 + ia] < prow_col[ib]):
                    x = pval[s2 + ia]
                    if abs(x) > OPERAND_LIMIT:
                        return -1
                    merge_col[out] = pcol[s2 + ia]
                    merge_val[out] = m2 * x
                    out += 1
                    ia += 1
                elif ia >= l2 or prow_col[ib] < pcol[s2 + ia]:
                    y = prow_val[ib]
                    if abs(y) > OPERAND_LIMIT:
                        return -1
                    cc = prow_col[ib]
                    merge_col[out] = cc
                    merge_val[out] = -mv * y
                    out += 1
                    ib += 1
                    col_cnt[cc] += 1
                    heap, heap_size = _heap_push(
                        heap, heap_size, col_cnt[cc] * ncols + cc)
                    if cr_end >= cr_cap:
                        cr_row = np.concatenate((cr_row, cr_row))
                        cr_next = np.concatenate((cr_next, cr_next))
                        cr_cap *= 2
                    cr_row[cr_end] = r2
                    cr_next[cr_end] = cr_head[cc]
                    cr_head[cc] = cr_end
                    cr_end += 1
                else:
                    x = pval[s2 + ia]
                    y = prow_val[ib]
                    if abs(x) > OPERAND_LIMIT or abs(y) > OPERAND_LIMIT:
                        return -1
                    w = m2 * x - mv * y
                    cc = pcol[s2 + ia]
                    ia += 1
                    ib += 1
                    if w != 0:
                        merge_col[out] = cc
                        merge_val[out] = w
                        out += 1
                    else:
                        col_cnt[cc] -= 1
                        if col_cnt[cc] > 0:
                            heap, heap_size = _heap_push(
                                heap, heap_size, col_cnt[cc] * ncols + cc)

            if out > 0 and abs(m2) != 1:
                g = 0
                for u in range(out):
                    g = _gcd64(g, merge_val[u])
                if g > 1:
                    for u in range(out):
                        merge_val[u] //= g

            if out <= row_cap[r2]:
                for u in range(out):
                    pcol[s2 + u] = merge_col[u]
                    pval[s2 + u] = merge_val[u]
            else:
                newcap = 2 * out
                if pool_end + newcap > cap:
                    grow = max(2 * cap, pool_end + newcap + 16)
                    npcol = np.empty(grow, np.int64)
                    npval = np.empty(grow, np.int64)
                    npcol[:pool_end] = pcol[:pool_end]
                    npval[:pool_end] = pval[:pool_end]
                    pcol = npcol
                    pval = npval
                    cap = grow
                row_start[r2] = pool_end
                row_cap[r2] = newcap
                for u in range(out):
                    pcol[pool_end + u] = merge_col[u]
                    pval[pool_end + u] = merge_val[u]
                pool_end += newcap
            row_len[r2] = out

        col_cnt[c] = 0
        rank_count += 1

    return rank_count
