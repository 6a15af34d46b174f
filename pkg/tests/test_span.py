"""Span composition, strict units, the associator and abstract equality."""

import pytest
from hypothesis import given, settings, strategies as st

from vkspan import finset
from vkspan.catkit import (
    FINSET, FunctorCat, arrow_category, arrow_object, identity_nat,
)
from vkspan.finset import FinFn, FinSet, all_bijections, canonical_set
from vkspan.span import (
    Span, TwoCell, abstract_equal, abstract_equalities, associator,
    compose_spans, graph, horizontal_compose, identity_span,
    identity_two_cell, two_cell_inverse, two_cells_between,
    vertical_compose,
)

from strategies import composable_spans, finset_spans


def fn(dom, cod, pairs):
    return FinFn(FinSet(dom), FinSet(cod), dict(pairs))


# --- composition and units ---


def test_graph_of_identity_is_identity_span():
    x = canonical_set(3)
    assert graph(FINSET, finset.identity(x)) == identity_span(FINSET, x)


@given(finset_spans())
def test_identity_spans_are_strict_units(s):
    assert compose_spans(identity_span(FINSET, s.tgt), s) == s
    assert compose_spans(s, identity_span(FINSET, s.src)) == s


@given(st.data())
def test_graph_is_strict_homomorphism(data):
    a = canonical_set(data.draw(st.integers(0, 3)), prefix="a")
    b = canonical_set(data.draw(st.integers(1, 3)), prefix="b")
    c = canonical_set(data.draw(st.integers(1, 3)), prefix="c")
    f = data.draw(st.sampled_from(list(finset.all_functions(a, b))))
    g = data.draw(st.sampled_from(list(finset.all_functions(b, c))))
    assert compose_spans(graph(FINSET, g), graph(FINSET, f)) \
        == graph(FINSET, finset.compose(g, f))


def test_multirelation_composite_carrier_is_the_match_set():
    # x0 relates a0 to b0, x1 relates a1 to b1; y0 and y1 both start
    # from b0.  The only matches are x0 with either y, so the
    # composite carrier has exactly those two pairs.
    s1 = Span(FINSET,
              fn(["x0", "x1"], ["a0", "a1"], [("x0", "a0"), ("x1", "a1")]),
              fn(["x0", "x1"], ["b0", "b1"], [("x0", "b0"), ("x1", "b1")]))
    s2 = Span(FINSET,
              fn(["y0", "y1"], ["b0", "b1"], [("y0", "b0"), ("y1", "b0")]),
              fn(["y0", "y1"], ["c0"], [("y0", "c0"), ("y1", "c0")]))
    comp = compose_spans(s2, s1)
    assert comp.carrier == FinSet(["(x0,y0)", "(x0,y1)"])
    assert comp.left("(x0,y1)") == "a0"
    assert comp.right("(x0,y1)") == "c0"


def test_compose_spans_rejects_boundary_mismatch():
    s = Span(FINSET, fn(["x"], ["a"], [("x", "a")]),
             fn(["x"], ["b"], [("x", "b")]))
    with pytest.raises(AssertionError):
        compose_spans(s, s)


# --- 2-cells ---


def test_two_cell_requires_commuting_witness():
    two = canonical_set(2)
    collapse = FinFn(two, two, {"x0": "x0", "x1": "x0"})
    s = Span(FINSET, finset.identity(two), collapse)
    t = Span(FINSET, finset.identity(two), finset.identity(two))
    # any witness into t must reproduce the identity left leg of s,
    # hence be the identity, and that fails against the right legs
    with pytest.raises(AssertionError):
        TwoCell(s, t, finset.identity(two))
    assert two_cells_between(s, t) == []


def test_two_cells_between_full_collapse_spans():
    two = canonical_set(2)
    one = canonical_set(1)
    bang = FinFn(two, one, {"x0": "x0", "x1": "x0"})
    s = Span(FINSET, bang, bang)
    # both legs collapse, so every carrier endomorphism commutes
    assert len(two_cells_between(s, s)) == 4
    i = identity_span(FINSET, two)
    assert len(two_cells_between(i, i)) == 1


@given(finset_spans())
def test_vertical_with_identity_is_unchanged(s):
    cells = two_cells_between(s, s)
    ident = identity_two_cell(s)
    for c in cells:
        assert vertical_compose(ident, c) == c
        assert vertical_compose(c, ident) == c


def test_two_cell_inverse_roundtrip():
    two = canonical_set(2)
    swap = FinFn(two, two, {"x0": "x1", "x1": "x0"})
    bang = FinFn(two, canonical_set(1), {"x0": "x0", "x1": "x0"})
    s = Span(FINSET, bang, bang)
    c = TwoCell(s, s, swap)
    assert c.is_invertible()
    assert vertical_compose(two_cell_inverse(c), c) == identity_two_cell(s)
    assert vertical_compose(c, two_cell_inverse(c)) == identity_two_cell(s)


@given(composable_spans(n=2))
def test_horizontal_of_identities_is_identity(chain):
    s1, s2 = chain
    comp = compose_spans(s2, s1)
    assert horizontal_compose(identity_two_cell(s2), identity_two_cell(s1)) \
        == identity_two_cell(comp)


@given(st.data())
def test_horizontal_of_carrier_bijections_is_a_bijection(data):
    s1, s2 = data.draw(composable_spans(n=2))
    base = FINSET

    def relabel(s, tag):
        fresh = FinSet(["%s%s" % (tag, x) for x in s.carrier])
        phi = FinFn(s.carrier, fresh, {x: "%s%s" % (tag, x) for x in s.carrier})
        inv = finset.inverse(phi)
        t = Span(base, finset.compose(s.left, inv), finset.compose(s.right, inv))
        return TwoCell(s, t, phi)

    c = relabel(s1, "L")
    d = relabel(s2, "R")
    h = horizontal_compose(d, c)
    assert h.is_invertible()
    assert h.src == compose_spans(s2, s1)


# --- associativity ---


@given(st.data())
def test_associator_with_identity_middle_is_identity(data):
    mid = canonical_set(data.draw(st.integers(1, 2)), prefix="m")
    f = data.draw(finset_spans(tgt=mid))
    h = data.draw(finset_spans(src=mid))
    g = identity_span(FINSET, mid)
    cell = associator(f, g, h)
    assert cell.src == cell.tgt
    assert finset.is_identity(cell.witness)


@given(st.data())
@settings(max_examples=40)
def test_associator_on_graphs_is_identity(data):
    sets = [canonical_set(data.draw(st.integers(1, 3)), prefix="g%d" % i)
            for i in range(4)]
    fns = [data.draw(st.sampled_from(list(finset.all_functions(a, b))))
           for a, b in zip(sets, sets[1:])]
    f, g, h = (graph(FINSET, fk) for fk in fns)
    cell = associator(f, g, h)
    assert cell.src == cell.tgt
    assert finset.is_identity(cell.witness)


@given(composable_spans(n=4))
@settings(max_examples=60, deadline=None)
def test_pentagon(chain):
    f, g, h, k = chain
    gf = compose_spans(g, f)
    hg = compose_spans(h, g)
    kh = compose_spans(k, h)

    one_step = vertical_compose(associator(f, g, kh),
                                associator(gf, h, k))
    other = vertical_compose(
        horizontal_compose(associator(g, h, k), identity_two_cell(f)),
        vertical_compose(associator(f, hg, k),
                         horizontal_compose(identity_two_cell(k),
                                            associator(f, g, h))))
    assert one_step == other


@given(composable_spans(n=3))
@settings(max_examples=30, deadline=None)
def test_associator_is_invertible_two_cell(chain):
    f, g, h = chain
    cell = associator(f, g, h)
    inv = two_cell_inverse(cell)
    assert vertical_compose(inv, cell) == identity_two_cell(cell.src)


# --- abstract equality ---


@given(finset_spans())
def test_abstract_equal_is_reflexive(s):
    phi = abstract_equal(s, s)
    assert phi is not None


@given(st.data())
def test_abstract_equal_symmetric_and_transitive_on_relabelings(data):
    s = data.draw(finset_spans())
    perms = list(all_bijections(s.carrier, s.carrier))
    sigma = data.draw(st.sampled_from(perms))
    t = Span(FINSET, finset.compose(s.left, sigma),
             finset.compose(s.right, sigma))
    phi = abstract_equal(t, s)
    assert phi is not None
    # symmetry: the inverse witnesses equality the other way round
    back = finset.inverse(phi)
    assert finset.compose(t.left, back) == s.left
    assert finset.compose(t.right, back) == s.right
    # transitivity through a second relabeling
    tau = data.draw(st.sampled_from(perms))
    u = Span(FINSET, finset.compose(t.left, tau),
             finset.compose(t.right, tau))
    psi = abstract_equal(u, t)
    assert psi is not None
    assert finset.compose(s.left, finset.compose(phi, psi)) == u.left


def test_abstract_equal_distinguishes_genuinely_different_spans():
    two = canonical_set(2)
    one = canonical_set(1)
    bang = FinFn(two, one, {"x0": "x0", "x1": "x0"})
    diag = Span(FINSET, bang, finset.identity(two))
    collapse = Span(FINSET, bang, FinFn(two, two, {"x0": "x0", "x1": "x0"}))
    assert abstract_equal(diag, collapse) is None


def test_abstract_equalities_can_be_plural():
    # a span whose legs both collapse admits every carrier permutation
    two = canonical_set(2)
    bang = FinFn(two, canonical_set(1), {"x0": "x0", "x1": "x0"})
    s = Span(FINSET, bang, bang)
    assert len(abstract_equalities(s, s)) == 2


# --- spans over a functor category base ---


def test_spans_over_the_arrow_category():
    base = arrow_category()
    x = arrow_object(FinFn(canonical_set(2), canonical_set(1),
                           {"x0": "x0", "x1": "x0"}))
    i = identity_span(base, x)
    assert compose_spans(i, i) == i
    for w in base.all_morphisms(x, x):
        gw = graph(base, w)
        assert compose_spans(gw, identity_span(base, x)) == gw
        assert compose_spans(gw, graph(base, identity_nat(x))) == gw


def test_graph_strictness_over_the_arrow_category():
    base = arrow_category()
    x = arrow_object(FinFn(canonical_set(1), canonical_set(1), {"x0": "x0"}))
    y = arrow_object(FinFn(canonical_set(2), canonical_set(1),
                           {"x0": "x0", "x1": "x0"}))
    for f in base.all_morphisms(x, y):
        for g in base.all_morphisms(y, x):
            assert compose_spans(graph(base, g), graph(base, f)) \
                == graph(base, base.compose(g, f))
