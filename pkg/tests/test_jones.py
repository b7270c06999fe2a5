import pytest

from khtwist.diagram import braid_closure, mirror, parse_pd
from khtwist.jones import (BracketEvaluator, jones_polynomial,
                           kauffman_bracket, skein_check)
from khtwist.laurent import LaurentPoly


def test_bracket_axioms():
    unknot = braid_closure([], 1)
    assert kauffman_bracket(unknot) == LaurentPoly.one("A", 1)
    two_unlink = parse_pd("loops=2")
    delta = LaurentPoly({2: -1, -2: -1}, "A", 1)
    assert kauffman_bracket(two_unlink) == delta
    # positive kink multiplies the bracket by -A^3
    kink = braid_closure([1], 2)
    assert kauffman_bracket(kink) == LaurentPoly({3: -1}, "A", 1)
    negative_kink = braid_closure([-1], 2)
    assert kauffman_bracket(negative_kink) == LaurentPoly({-3: -1}, "A", 1)


def test_jones_left_trefoil(left_trefoil):
    assert jones_polynomial(left_trefoil).render() \
        == "t^(-1) + t^(-3) - t^(-4)"


def test_jones_unknot_families():
    # all these diagrams present the unknot
    for word, strands in (([], 1), ([1], 2), ([-1], 2), ([1, 1, -1], 2)):
        v = jones_polynomial(braid_closure(word, strands))
        assert v == LaurentPoly.one("t", 2)


def test_jones_mirror_symmetry(left_trefoil):
    for d in (left_trefoil, braid_closure([1, 1], 2),
              braid_closure([1, -2, 1, -2], 3)):
        v = jones_polynomial(d)
        vm = jones_polynomial(mirror(d))
        flipped = LaurentPoly({-e: c for e, c in v.coeffs.items()}, "t", 2)
        assert vm == flipped


def test_skein_triple_holds():
    l_plus = braid_closure([1, 1, 1], 2)   # right trefoil
    l_minus = braid_closure([1], 2)        # unknot
    l_zero = braid_closure([1, 1], 2)      # positive Hopf link
    assert skein_check(l_plus, l_minus, l_zero)


def test_skein_triple_fails_for_wrong_zero_resolution():
    l_plus = braid_closure([1, 1, 1], 2)
    l_minus = braid_closure([1], 2)
    wrong_zero = braid_closure([], 1)      # unknot is not the 0-resolution
    assert not skein_check(l_plus, l_minus, wrong_zero)


def test_bracket_memo_reuse():
    ev = BracketEvaluator()
    d = braid_closure([1, 1, 1], 2)
    tuples = [c.edges for c in d.crossings]
    first = ev.raw(tuples)
    assert ev.raw(tuples) is first
