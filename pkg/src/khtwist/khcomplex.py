"""Bigraded rational Khovanov chain complex of a diagram.

Basis conventions: inside one smoothing, circles follow the canonical
ordering of the decomposition and a basis label assignment is a bitmask
(bit set = label X on that circle, clear = label 1).  Within a block (i, j)
the basis runs over smoothing masks ascending, then label masks ascending.
The q-grading of a basis vector is (#1-labels - #X-labels) + |eps|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cube import circle_map, resolve
from .errors import BudgetExceeded, ComplexNotValid
from .linalg import SparseRationalMatrix


@dataclass(frozen=True)
class FrobeniusData:
    """The rank-2 Frobenius algebra V = span{1, X}; labels are bits (X=1).

    mult maps a pair of input bits to the output terms ((bit, coeff), ...);
    comult maps one input bit to terms (((bit1, bit2), coeff), ...).
    """
    mult: dict = field(default_factory=lambda: {
        (0, 0): ((0, 1),),
        (0, 1): ((1, 1),),
        (1, 0): ((1, 1),),
        (1, 1): (),
    })
    comult: dict = field(default_factory=lambda: {
        0: (((0, 1), 1), ((1, 0), 1)),
        1: (((1, 1), 1),),
    })

    @staticmethod
    def degree(bit):
        return -1 if bit else 1


FROBENIUS = FrobeniusData()


@dataclass
class GradedComplex:
    """Sparse differential blocks per (homological degree i, q-grading j).

    blocks[(i, j)] maps the (i, j) basis to the (i+1, j) basis.
    """
    dims: dict
    blocks: dict
    crossings: int
    failure: tuple = None  # set by verify_d_squared on the offending (i, j)


def _rank_colex(lab, binom_row_limit=64):
    """Rank of a label bitmask among equal-popcount masks in ascending order."""
    r = 0
    m = 0
    pos = 0
    while lab:
        if lab & 1:
            r += comb(pos, m + 1)
            m += 1
        lab >>= 1
        pos += 1
    return r


def _layer_offsets(i, masks, decs):
    """Per-(mask, j) basis offsets and per-(i, j) dimensions."""
    dims = {}
    offsets = {}
    for mask in masks:
        k = decs[mask].circle_count
        for t in range(k + 1):
            j = i + k - 2 * t
            offsets[(mask, j)] = dims.get((i, j), 0)
            dims[(i, j)] = dims.get((i, j), 0) + comb(k, t)
    return dims, offsets


def build_complex(diagram, budget=16):
    """Assemble all differential blocks of the cube complex of `diagram`."""
    c = len(diagram.crossings)
    if c > budget:
        raise BudgetExceeded(f"{c} crossings exceeds budget {budget}")
    decs = {mask: resolve(diagram, mask) for mask in range(1 << c)}
    by_weight = [[] for _ in range(c + 1)]
    for mask in range(1 << c):
        by_weight[bin(mask).count("1")].append(mask)

    dims = {}
    offsets = {}
    for i in range(c + 1):
        d_i, o_i = _layer_offsets(i, by_weight[i], decs)
        for key, v in d_i.items():
            dims[key] = v
        offsets.update(o_i)

    entries = {}  # (i, j) -> list of triplets

    def emit(i, j, row, col, val):
        entries.setdefault((i, j), []).append((row, col, val))

    for i in range(c):
        for mask in by_weight[i]:
            dec0 = decs[mask]
            k = dec0.circle_count
            for pos in range(c):
                bit = 1 << pos
                if mask & bit:
                    continue
                mask2 = mask | bit
                dec1 = decs[mask2]
                kind, perm, extra = circle_map(diagram, dec0, dec1, pos)
                sign = -1 if bin(mask & (bit - 1)).count("1") % 2 else 1
                for lab in range(1 << k):
                    t = bin(lab).count("1")
                    j = i + k - 2 * t
                    col = offsets[(mask, j)] + _rank_colex(lab)
                    src_bits = [(lab >> b) & 1 for b in range(k)]
                    if kind == "merge":
                        c1, c2, ct = extra
                        out_terms = FROBENIUS.mult[(src_bits[c1], src_bits[c2])]
                        for out_bit, coeff in out_terms:
                            tgt = out_bit << ct
                            for b in range(k):
                                if b not in (c1, c2) and src_bits[b]:
                                    tgt |= 1 << perm[b]
                            row = offsets[(mask2, j)] + _rank_colex(tgt)
                            emit(i, j, row, col, sign * coeff)
                    else:
                        cs, t1, t2 = extra
                        base = 0
                        for b in range(k):
                            if b != cs and src_bits[b]:
                                base |= 1 << perm[b]
                        for (b1, b2), coeff in FROBENIUS.comult[src_bits[cs]]:
                            tgt = base | (b1 << t1) | (b2 << t2)
                            row = offsets[(mask2, j)] + _rank_colex(tgt)
                            emit(i, j, row, col, sign * coeff)

    blocks = {}
    for (i, j), triplets in entries.items():
        blocks[(i, j)] = SparseRationalMatrix(
            rows=dims.get((i + 1, j), 0), cols=dims[(i, j)], entries=triplets)
    return GradedComplex(dims=dims, blocks=blocks, crossings=c)


def verify_d_squared(complex_):
    """True iff every composable pair of blocks multiplies to zero exactly."""
    for (i, j), block in sorted(complex_.blocks.items()):
        nxt = complex_.blocks.get((i + 1, j))
        if nxt is None:
            continue
        product = nxt.matmul(block)
        if product.entries:
            complex_.failure = (i, j)
            return False
    complex_.failure = None
    return True


def dump_blocks(complex_):
    """Plain-text sparse-triplet dump: one entry per line `i j row col num den`."""
    lines = []
    for (i, j) in sorted(complex_.blocks):
        block = complex_.blocks[(i, j)]
        for r, c, v in sorted(block.entries):
            num, den = (v.numerator, v.denominator) if hasattr(v, "denominator") \
                else (v, 1)
            lines.append(f"{i} {j} {r} {c} {num} {den}")
    return "\n".join(lines) + ("\n" if lines else "")
