import pytest

from khtwist.cube import (SmoothingIndex, classify_edge, circle_map,
                          edge_sign, resolve, smoothing_pairs)
from khtwist.diagram import LinkDiagram, braid_closure
from khtwist.errors import LengthMismatch, NotACubeEdge, PositionAlreadyOne


def test_smoothing_pairs():
    assert smoothing_pairs((1, 2, 3, 4), 0) == ((1, 2), (3, 4))
    assert smoothing_pairs((1, 2, 3, 4), 1) == ((1, 4), (2, 3))


def test_smoothing_index_round_trip():
    s = SmoothingIndex((1, 0, 1))
    assert s.weight == 2
    assert s.mask == 0b101
    assert SmoothingIndex.from_mask(0b101, 3) == s


def test_resolve_trefoil_extremes(left_trefoil):
    assert resolve(left_trefoil, 0).circle_count == 3
    assert resolve(left_trefoil, 0b111).circle_count == 2
    # accepts masks, sequences and SmoothingIndex alike
    assert resolve(left_trefoil, (1, 1, 1)).circle_count == 2
    assert resolve(left_trefoil, SmoothingIndex((1, 1, 1))).circle_count == 2
    with pytest.raises(LengthMismatch):
        resolve(left_trefoil, (1, 1))
    with pytest.raises(LengthMismatch):
        resolve(left_trefoil, 0b1000)


def test_free_loops_counted():
    d = LinkDiagram([], free_loops=2)
    assert resolve(d, 0).circle_count == 2


def test_edge_sign():
    assert edge_sign(0b000, 1) == 1
    assert edge_sign(0b001, 1) == -1
    assert edge_sign(0b101, 1) == -1
    assert edge_sign((1, 0, 1), 1) == -1
    with pytest.raises(PositionAlreadyOne):
        edge_sign(0b010, 1)


def test_classify_edges_trefoil(left_trefoil):
    # from the all-0 smoothing every step merges two of the three circles
    for pos in range(3):
        e = classify_edge(left_trefoil, 0, 1 << pos)
        assert e.kind == "merge"
        assert len(e.source_circles) == 2
        assert len(e.target_circles) == 1
    # from weight 2 to the all-1 smoothing a circle splits off
    e = classify_edge(left_trefoil, 0b011, 0b111)
    assert e.kind == "split"


def test_classify_rejects_non_edges(left_trefoil):
    with pytest.raises(NotACubeEdge):
        classify_edge(left_trefoil, 0b001, 0b001)
    with pytest.raises(NotACubeEdge):
        classify_edge(left_trefoil, 0b001, 0b110)
    with pytest.raises(NotACubeEdge):
        classify_edge(left_trefoil, 0b011, 0b001)


def test_circle_map_consistency(left_trefoil):
    for mask in range(8):
        for pos in range(3):
            if mask & (1 << pos):
                continue
            dec0 = resolve(left_trefoil, mask)
            dec1 = resolve(left_trefoil, mask | (1 << pos))
            kind, perm, extra = circle_map(left_trefoil, dec0, dec1, pos)
            edge = classify_edge(left_trefoil, mask, mask | (1 << pos))
            assert kind == edge.kind
            # untouched circles map injectively onto untouched targets
            touched_src = set(extra[:2] if kind == "merge" else extra[:1])
            images = [perm[i] for i in range(dec0.circle_count)
                      if i not in touched_src]
            assert len(set(images)) == len(images)


def test_circle_map_free_loops_ride_along():
    d = LinkDiagram([(1, 2, 2, 1)], free_loops=2)
    dec0 = resolve(d, 0)
    dec1 = resolve(d, 1)
    kind, perm, extra = circle_map(d, dec0, dec1, 0)
    ec0 = len(dec0.min_edges)
    ec1 = len(dec1.min_edges)
    assert perm[ec0] == ec1 and perm[ec0 + 1] == ec1 + 1


def test_cube_edge_counts(left_trefoil):
    d = braid_closure([1, -2, 1, -2], 3)
    c = len(d)
    total = sum(resolve(d, m).circle_count for m in range(1 << c))
    # every smoothing has at least one circle; sanity envelope only
    assert total >= 1 << c
