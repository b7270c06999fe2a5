"""Cube of resolutions: smoothings, circle decompositions, edge data.

Smoothing masks are plain ints (bit j = smoothing of crossing j, PD order).
The 0-smoothing of a crossing (a, b, c, d) joins a-b and c-d, the
1-smoothing joins a-d and b-c; crossingless free loops are appended after
the edge circles in every decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LengthMismatch, NotACubeEdge, PositionAlreadyOne


@dataclass(frozen=True)
class SmoothingIndex:
    epsilon: tuple  # 0/1 entries, one per crossing

    @property
    def weight(self):
        return sum(self.epsilon)

    @property
    def mask(self):
        m = 0
        for i, b in enumerate(self.epsilon):
            if b:
                m |= 1 << i
        return m

    @classmethod
    def from_mask(cls, mask, length):
        return cls(tuple((mask >> i) & 1 for i in range(length)))


@dataclass(frozen=True)
class CircleDecomposition:
    circle_count: int
    arc_to_circle: dict  # edge label -> circle index (edge circles only)
    min_edges: tuple     # representative (minimum) edge per edge circle


@dataclass(frozen=True)
class CubeEdge:
    from_mask: int
    to_mask: int
    position: int
    kind: str             # "merge" or "split"
    sign_exponent: int    # l(eps, eps')
    source_circles: tuple  # merged pair (c1, c2) or split source (cs,)
    target_circles: tuple  # merge target (ct,) or split pair (t1, t2)


def _as_mask(eps, length):
    if isinstance(eps, SmoothingIndex):
        eps = eps.epsilon
    if isinstance(eps, int):
        if eps >> length:
            raise LengthMismatch(f"mask {eps:#x} too wide for {length} crossings")
        return eps
    eps = tuple(eps)
    if len(eps) != length:
        raise LengthMismatch(f"smoothing length {len(eps)} != {length} crossings")
    m = 0
    for i, b in enumerate(eps):
        if b:
            m |= 1 << i
    return m


def smoothing_pairs(crossing_edges, bit):
    a, b, c, d = crossing_edges
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


def resolve(diagram, eps):
    """Circle decomposition of the smoothing D_eps (union-find over edges)."""
    c = len(diagram.crossings)
    mask = _as_mask(eps, c)
    n_edges = diagram.edge_count
    parent = list(range(n_edges + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, cr in enumerate(diagram.crossings):
        for u, v in smoothing_pairs(cr.edges, (mask >> j) & 1):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)

    reps = sorted({find(e) for e in range(1, n_edges + 1)})
    index = {r: i for i, r in enumerate(reps)}
    arc_to_circle = {e: index[find(e)] for e in range(1, n_edges + 1)}
    return CircleDecomposition(
        circle_count=len(reps) + diagram.free_loops,
        arc_to_circle=arc_to_circle,
        min_edges=tuple(reps),
    )


def edge_sign(eps, position):
    """(-1)^l with l = number of 1 entries before `position`."""
    if isinstance(eps, SmoothingIndex):
        eps = eps.epsilon
    if isinstance(eps, int):
        if (eps >> position) & 1:
            raise PositionAlreadyOne(f"bit {position} already set")
        l = bin(eps & ((1 << position) - 1)).count("1")
    else:
        if eps[position] != 0:
            raise PositionAlreadyOne(f"entry {position} already 1")
        l = sum(eps[:position])
    return -1 if l % 2 else 1


def classify_edge(diagram, eps_from, eps_to):
    """Classify the cube edge eps_from -> eps_to as a merge or a split."""
    c = len(diagram.crossings)
    m0 = _as_mask(eps_from, c)
    m1 = _as_mask(eps_to, c)
    diff = m0 ^ m1
    if diff == 0 or diff & (diff - 1) or m0 & diff:
        raise NotACubeEdge(f"{m0:#x} -> {m1:#x} is not a 0->1 single-bit flip")
    position = diff.bit_length() - 1
    dec0 = resolve(diagram, m0)
    dec1 = resolve(diagram, m1)
    touched = diagram.crossings[position].edges
    s0 = sorted({dec0.arc_to_circle[e] for e in touched})
    s1 = sorted({dec1.arc_to_circle[e] for e in touched})
    l = bin(m0 & ((1 << position) - 1)).count("1")
    if dec1.circle_count == dec0.circle_count - 1:
        kind = "merge"
        if len(s0) != 2 or len(s1) != 1:
            raise NotACubeEdge("inconsistent merge circle data")
    elif dec1.circle_count == dec0.circle_count + 1:
        kind = "split"
        if len(s0) != 1 or len(s1) != 2:
            raise NotACubeEdge("inconsistent split circle data")
    else:
        raise NotACubeEdge(
            f"circle count changed by {dec1.circle_count - dec0.circle_count}")
    return CubeEdge(m0, m1, position, kind, l, tuple(s0), tuple(s1))


def circle_map(diagram, dec0, dec1, position):
    """Correspondence of circles across the cube edge at `position`.

    Returns (kind, perm, extra) where perm maps every untouched source
    circle index to its target index (free loops included); for a merge,
    extra = (c1, c2, ct); for a split, extra = (cs, t1, t2).
    """
    touched = diagram.crossings[position].edges
    s0 = sorted({dec0.arc_to_circle[e] for e in touched})
    s1 = sorted({dec1.arc_to_circle[e] for e in touched})
    ec0, ec1 = len(dec0.min_edges), len(dec1.min_edges)
    k0 = dec0.circle_count
    perm = [-1] * k0
    for i in range(ec0):
        if i not in s0:
            perm[i] = dec1.arc_to_circle[dec0.min_edges[i]]
    for j in range(dec0.circle_count - ec0):  # free loops ride along
        perm[ec0 + j] = ec1 + j
    if len(s0) == 2:
        return "merge", perm, (s0[0], s0[1], s1[0])
    return "split", perm, (s0[0], s1[0], s1[1])
