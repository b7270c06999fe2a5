import pytest
from hypothesis import given, settings, strategies as st

from conftest import LEFT_TREFOIL_PD, marked_left_trefoil
from khtwist.diagram import (LinkDiagram, TwistRegion, braid_closure,
                             crossing_counts, global_smoothing_circles,
                             insert_half_twists, mirror, parse_pd,
                             serialize_pd)
from khtwist.errors import (AmbiguousOrientation, EdgeDegreeError,
                            IndexOutOfRange, MalformedSyntax, NoMarkedRegion)


def test_parse_left_trefoil(left_trefoil):
    assert len(left_trefoil) == 3
    assert all(c.sign == -1 for c in left_trefoil.crossings)
    assert crossing_counts(left_trefoil) == (0, 3, -3)


def test_serialize_round_trip(left_trefoil):
    text = serialize_pd(left_trefoil)
    again = parse_pd(text)
    assert again == left_trefoil
    assert serialize_pd(again) == text


def test_parse_headers_and_comments():
    d = parse_pd("# a two component unlink\nloops=2\nmark=L1,L2\n")
    assert d.free_loops == 2
    assert d.marked_region.edge_pair == ("L1", "L2")


def test_parse_rejects_bad_input():
    with pytest.raises(MalformedSyntax):
        parse_pd("X(1,2,3)")
    with pytest.raises(MalformedSyntax):
        parse_pd("Y(1,2,3,4)")
    with pytest.raises(EdgeDegreeError):
        parse_pd("X(1,1,1,1)")
    with pytest.raises(EdgeDegreeError):
        parse_pd("X(1,2,3,5) X(3,5,1,2)")


def test_mark_validation():
    with pytest.raises(MalformedSyntax):
        LinkDiagram([(1, 2, 4, 3), (3, 4, 6, 5), (5, 6, 2, 1)],
                    marked_region=TwistRegion((1, 1)))
    with pytest.raises(MalformedSyntax):
        LinkDiagram([], free_loops=1, marked_region=TwistRegion(("L1", "L2")))


def test_braid_closure_counts():
    right_trefoil = braid_closure([1, 1, 1], 2)
    assert crossing_counts(right_trefoil) == (3, 0, 3)
    with_idle_strand = braid_closure([1, 1], 3)
    assert with_idle_strand.free_loops == 1
    with pytest.raises(IndexOutOfRange):
        braid_closure([2], 2)
    with pytest.raises(IndexOutOfRange):
        braid_closure([0], 2)


def test_mirror_swaps_signs(left_trefoil):
    m = mirror(left_trefoil)
    assert crossing_counts(m) == (3, 0, 3)
    assert mirror(m) == left_trefoil


def test_global_smoothing_circles(left_trefoil):
    assert global_smoothing_circles(left_trefoil, 0) == 3
    assert global_smoothing_circles(left_trefoil, 1) == 2


def test_insert_counts_and_marks():
    base = marked_left_trefoil()
    for n in range(5):
        d = insert_half_twists(base, n)
        assert len(d) == 3 + n
        n_plus, n_minus, _ = crossing_counts(d)
        assert (n_plus, n_minus) == (n, 3)
        assert d.marked_region is not None


def test_insert_zero_is_identity():
    base = marked_left_trefoil()
    assert insert_half_twists(base, 0) == base


def test_insert_requires_mark(left_trefoil):
    with pytest.raises(NoMarkedRegion):
        insert_half_twists(left_trefoil, 1)


def test_unlink_twists_give_torus_diagrams():
    base = LinkDiagram([], free_loops=2,
                       marked_region=TwistRegion(("L1", "L2")))
    hopf = insert_half_twists(base, 2)
    assert crossing_counts(hopf) == (2, 0, 2)
    assert hopf.free_loops == 0


def test_s0_stable_under_twisting():
    base = marked_left_trefoil()
    s0 = global_smoothing_circles(base, 0)
    for n in range(1, 7):
        assert global_smoothing_circles(insert_half_twists(base, n), 0) == s0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=4).flatmap(
    lambda k: st.tuples(
        st.just(k),
        st.lists(st.integers(min_value=1, max_value=k - 1)
                 .flatmap(lambda g: st.sampled_from([g, -g])),
                 min_size=1, max_size=10))))
def test_braid_closures_are_valid(data):
    strands, word = data
    try:
        d = braid_closure(word, strands)
    except AmbiguousOrientation:
        # components lying entirely over the rest are rejected by design
        return
    # edge-degree and label-range invariants hold by construction
    counts = {}
    for c in d.crossings:
        for e in c.edges:
            counts[e] = counts.get(e, 0) + 1
    assert all(v == 2 for v in counts.values())
    assert set(counts) == set(range(1, 2 * len(d) + 1))
    n_plus, n_minus, _ = crossing_counts(d)
    assert n_plus + n_minus == len(d)
    assert serialize_pd(parse_pd(serialize_pd(d))) == serialize_pd(d)
