"""Oriented link diagrams as PD codes.

A crossing is a tuple (a, b, c, d) of edge labels read counterclockwise
starting at the incoming under-strand edge a; the under-strand runs a -> c.
Crossing signs and the global orientation are inferred at construction time,
and diagrams are immutable afterwards.
"""

from __future__ import annotations

import hashlib
import re
from collections import deque
from dataclasses import dataclass

from .errors import (
    AmbiguousOrientation,
    EdgeDegreeError,
    IncoherentRegion,
    IndexOutOfRange,
    MalformedSyntax,
    NoMarkedRegion,
    OrientationInconsistent,
)


@dataclass(frozen=True)
class Crossing:
    edges: tuple  # (a, b, c, d), counterclockwise from the incoming under-edge
    sign: int     # +1 if the over-strand runs d -> b, else -1


@dataclass(frozen=True)
class TwistRegion:
    """Marked two-strand region.  Each entry of edge_pair is an edge label,
    or a string "L<k>" naming the k-th crossingless loop (1-based)."""
    edge_pair: tuple
    coherent: bool = True


class LinkDiagram:
    """Validated oriented PD diagram.

    free_loops counts crossingless unknot components, which PD codes cannot
    express.  Construction checks edge degrees, infers a global orientation
    and computes crossing signs; failures raise the dedicated errors.
    """

    __slots__ = ("crossings", "edge_count", "free_loops", "marked_region",
                 "heads", "tails")

    def __init__(self, crossing_tuples, free_loops=0, marked_region=None):
        tuples = [tuple(int(x) for x in t) for t in crossing_tuples]
        if free_loops < 0:
            raise MalformedSyntax("free_loops must be nonnegative")
        if not tuples and free_loops == 0:
            raise MalformedSyntax("diagram has no crossings and no loops")
        self._validate_edges(tuples)
        heads, tails, signs = self._orient(tuples)
        self.crossings = tuple(Crossing(t, s) for t, s in zip(tuples, signs))
        self.edge_count = 2 * len(tuples)
        self.free_loops = free_loops
        self.heads = heads  # edge -> (crossing index, slot) of arriving end
        self.tails = tails
        if marked_region is not None:
            self._validate_mark(marked_region)
        self.marked_region = marked_region

    # --- validation ---

    @staticmethod
    def _validate_edges(tuples):
        counts = {}
        for t in tuples:
            if len(t) != 4:
                raise MalformedSyntax(f"crossing {t} is not a 4-tuple")
            for e in t:
                if e < 1:
                    raise MalformedSyntax(f"edge label {e} is not positive")
                counts[e] = counts.get(e, 0) + 1
        n_edges = 2 * len(tuples)
        for e in range(1, n_edges + 1):
            if counts.get(e, 0) != 2:
                raise EdgeDegreeError(
                    f"edge {e} appears {counts.get(e, 0)} times, expected 2")
        extra = set(counts) - set(range(1, n_edges + 1))
        if extra:
            raise EdgeDegreeError(f"labels {sorted(extra)} outside 1..{n_edges}")

    def _validate_mark(self, mark):
        e1, e2 = mark.edge_pair
        if e1 == e2:
            raise MalformedSyntax("marked edges must be distinct")
        for e in (e1, e2):
            if isinstance(e, str):
                m = re.fullmatch(r"L(\d+)", e)
                if not m or not 1 <= int(m.group(1)) <= self.free_loops:
                    raise MalformedSyntax(f"bad loop reference {e!r}")
            elif not 1 <= e <= self.edge_count:
                raise MalformedSyntax(f"marked edge {e} does not exist")

    @staticmethod
    def _orient(tuples):
        """Infer edge directions; return head/tail occurrence maps and signs.

        Each edge occurrence carries a boolean "arriving here".  Under slots
        force it (a arrives, c departs); the over pair of every crossing has
        exactly one arrival, linking the two occurrences; 2-coloring does the
        rest.  Uncolorable components are conflicts, uncolored ones ambiguous.
        """
        occs = {}  # edge -> [(ci, slot), ...]
        for ci, t in enumerate(tuples):
            for slot, e in enumerate(t):
                occs.setdefault(e, []).append((ci, slot))
        # nodes are occurrences; "different" edges between node pairs
        value = {}
        adj = {}
        forced = []
        for e, olist in occs.items():
            adj.setdefault(olist[0], []).append(olist[1])
            adj.setdefault(olist[1], []).append(olist[0])
        for ci, t in enumerate(tuples):
            adj.setdefault((ci, 1), []).append((ci, 3))
            adj.setdefault((ci, 3), []).append((ci, 1))
            forced.append(((ci, 0), True))
            forced.append(((ci, 2), False))
        for node, val in forced:
            if node in value:
                if value[node] != val:
                    raise OrientationInconsistent(
                        f"conflicting orientation at crossing {node[0]}")
                continue
            value[node] = val
            queue = deque([node])
            while queue:
                cur = queue.popleft()
                for nxt in adj.get(cur, ()):
                    want = not value[cur]
                    if nxt in value:
                        if value[nxt] != want:
                            raise OrientationInconsistent(
                                f"orientation conflict near crossing {nxt[0]}")
                    else:
                        value[nxt] = want
                        queue.append(nxt)
        for e, olist in occs.items():
            for o in olist:
                if o not in value:
                    raise AmbiguousOrientation(
                        f"edge {e} lies on a component with no inferable direction")
        heads, tails = {}, {}
        for e, olist in occs.items():
            arriving = [o for o in olist if value[o]]
            if len(arriving) != 1:
                raise OrientationInconsistent(
                    f"edge {e} has {len(arriving)} arriving ends")
            heads[e] = arriving[0]
            tails[e] = olist[0] if olist[1] == arriving[0] else olist[1]
        signs = []
        for ci, t in enumerate(tuples):
            signs.append(1 if value[(ci, 3)] else -1)
        return heads, tails, signs

    # --- basic data ---

    def __len__(self):
        return len(self.crossings)

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (tuple(c.edges for c in self.crossings)
                == tuple(c.edges for c in other.crossings)
                and self.free_loops == other.free_loops
                and self.marked_region == other.marked_region)

    def __repr__(self):
        return f"LinkDiagram({len(self.crossings)} crossings, {self.free_loops} loops)"

    def fingerprint(self):
        return hashlib.sha256(serialize_pd(self).encode()).hexdigest()[:16]


def crossing_counts(diagram):
    """Return (n_plus, n_minus, writhe)."""
    n_plus = sum(1 for c in diagram.crossings if c.sign > 0)
    n_minus = len(diagram.crossings) - n_plus
    return n_plus, n_minus, n_plus - n_minus


def is_connected(diagram):
    """True when the underlying 4-valent graph is connected.

    Free loops are separate components, so any diagram with free loops and
    at least one crossing (or two or more free loops) is disconnected.
    """
    c = len(diagram.crossings)
    if c == 0:
        return diagram.free_loops <= 1
    if diagram.free_loops:
        return False
    owner = {}
    parent = list(range(c))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, crossing in enumerate(diagram.crossings):
        for e in crossing.edges:
            if e in owner:
                parent[find(owner[e])] = find(idx)
            else:
                owner[e] = idx
    return len({find(i) for i in range(c)}) == 1


def global_smoothing_circles(diagram, which):
    """s0 (which=0) or s1 (which=1): circles after smoothing every crossing
    the same way."""
    from .cube import resolve

    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    eps = (which << len(diagram.crossings)) - which if which else 0
    # all-0 mask is 0; all-1 mask is 2^c - 1
    if which == 1:
        eps = (1 << len(diagram.crossings)) - 1
    return resolve(diagram, eps).circle_count


# --- PD text format ---

_CROSSING_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_TOKEN_RE = re.compile(r"X\([^)]*\)|\S+")


def parse_pd(text):
    """Parse PD text: `X(a,b,c,d)` terms plus optional `loops=<k>` and
    `mark=<e1>,<e2>` headers; `#` starts a comment."""
    loops = 0
    mark = None
    tuples = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0]
        for token in _TOKEN_RE.findall(line):
            if token.startswith("loops="):
                try:
                    loops = int(token[len("loops="):])
                except ValueError:
                    raise MalformedSyntax(f"bad header {token!r}")
            elif token.startswith("mark="):
                parts = token[len("mark="):].split(",")
                if len(parts) != 2:
                    raise MalformedSyntax(f"bad header {token!r}")
                pair = tuple(p if p.startswith("L") else _int_label(p)
                             for p in parts)
                mark = TwistRegion(pair, coherent=True)
            else:
                m = _CROSSING_RE.fullmatch(token)
                if not m:
                    raise MalformedSyntax(f"unrecognized token {token!r}")
                tuples.append(tuple(int(g) for g in m.groups()))
    return LinkDiagram(tuples, free_loops=loops, marked_region=mark)


def _int_label(text):
    try:
        v = int(text)
    except ValueError:
        raise MalformedSyntax(f"bad edge label {text!r}")
    return v


def serialize_pd(diagram):
    """Deterministic text form; parse_pd(serialize_pd(D)) reproduces D."""
    lines = []
    if diagram.free_loops:
        lines.append(f"loops={diagram.free_loops}")
    if diagram.marked_region is not None:
        e1, e2 = diagram.marked_region.edge_pair
        lines.append(f"mark={e1},{e2}")
    for c in diagram.crossings:
        lines.append("X(%d,%d,%d,%d)" % c.edges)
    return "\n".join(lines) + "\n"


# --- generators and surgeries ---

def braid_closure(word, strands):
    """Closure of a braid word (signed generator indices, 1-based)."""
    if strands < 1:
        raise IndexOutOfRange("strands must be >= 1")
    for g in word:
        if g == 0 or abs(g) > strands - 1:
            raise IndexOutOfRange(f"generator {g} outside 1..{strands - 1}")
    current = list(range(1, strands + 1))  # edge label at each position
    touched = [False] * strands
    next_label = strands + 1
    tuples = []
    for g in word:
        i = abs(g) - 1  # left position of the two strands involved
        p, q = current[i], current[i + 1]
        l_new, r_new = next_label, next_label + 1
        next_label += 2
        if g > 0:
            # positive: under-strand is the right one (q -> l_new)
            tuples.append((q, r_new, l_new, p))
        else:
            # negative: under-strand is the left one (p -> r_new)
            tuples.append((p, q, r_new, l_new))
        current[i], current[i + 1] = l_new, r_new
        touched[i] = touched[i + 1] = True
    # close up: identify the final edge at each position with the initial one
    rename = {}
    for i in range(strands):
        if touched[i]:
            rename[current[i]] = i + 1
    tuples = [tuple(rename.get(e, e) for e in t) for t in tuples]
    free_loops = sum(1 for t in touched if not t)
    # compress labels to 1..2c
    used = sorted({e for t in tuples for e in t})
    compress = {e: i + 1 for i, e in enumerate(used)}
    tuples = [tuple(compress[e] for e in t) for t in tuples]
    return LinkDiagram(tuples, free_loops=free_loops)


def mirror(diagram):
    """Swap over and under strands everywhere; signs negate."""
    tuples = []
    for c in diagram.crossings:
        a, b, cc, d = c.edges
        # new incoming under-edge is the old incoming over-edge
        tuples.append((d, a, b, cc) if c.sign > 0 else (b, cc, d, a))
    return LinkDiagram(tuples, free_loops=diagram.free_loops,
                       marked_region=diagram.marked_region)


def insert_half_twists(diagram, n):
    """Insert n positive half-twists at the marked two-strand region.

    The twists are realized as a 2-braid of n positive crossings spliced into
    the two marked edges; the marked region is carried forward to the top of
    the stack so insertions compose.
    """
    if diagram.marked_region is None:
        raise NoMarkedRegion("diagram has no marked region")
    if not diagram.marked_region.coherent:
        raise IncoherentRegion("marked strands must cross the disk coherently")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return diagram

    ref1, ref2 = diagram.marked_region.edge_pair
    tuples = [list(c.edges) for c in diagram.crossings]
    free_loops = diagram.free_loops
    next_label = diagram.edge_count + 1

    def start_label(ref):
        nonlocal next_label, free_loops
        if isinstance(ref, str):  # crossingless loop: opens with a fresh label
            free_loops -= 1
            lab = next_label
            next_label += 1
            return lab, ("loop", lab)
        return ref, ("edge", diagram.heads[ref])

    p, close_left = start_label(ref1)
    q, close_right = start_label(ref2)

    new_tuples = []
    for _ in range(n):
        l_new, r_new = next_label, next_label + 1
        next_label += 2
        new_tuples.append([q, r_new, l_new, p])
        p, q = l_new, r_new

    # reconnect the strand tops: left exits into ref1's head, right into ref2's
    rename = {}
    for final, closure in ((p, close_left), (q, close_right)):
        kind, target = closure
        if kind == "loop":
            rename[final] = target
        else:
            ci, slot = target
            tuples[ci][slot] = final
    all_tuples = [tuple(rename.get(e, e) for e in t)
                  for t in tuples + new_tuples]
    used = sorted({e for t in all_tuples for e in t})
    compress = {e: i + 1 for i, e in enumerate(used)}
    all_tuples = [tuple(compress[e] for e in t) for t in all_tuples]
    new_mark = TwistRegion(
        (compress[rename.get(p, p)], compress[rename.get(q, q)]),
        coherent=True)
    return LinkDiagram(all_tuples, free_loops=free_loops,
                       marked_region=new_mark)
